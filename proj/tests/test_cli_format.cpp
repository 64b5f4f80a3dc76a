#include "atomkit/error.hpp"
#include "atomkit/format.hpp"
#include "atomkit/table.hpp"

#include <doctest.h>
#include <json.hpp>

#include <charconv>
#include <clocale>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

using namespace atomkit;

namespace {

double parse(const std::string& s)
{
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    REQUIRE(ec == std::errc());
    REQUIRE(p == s.data() + s.size());
    return v;
}

}  // namespace

TEST_CASE("fmt17 round-trips doubles")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(-30, 30);
    for (int i = 0; i < 2000; ++i) {
        double x = std::ldexp(U(rng), int(U(rng)));
        CHECK(parse(fmt17(x)) == x);
    }
    for (double x : {0.0, -0.5, 1.0 / 3, 8 * 3.14159265358979323846 / 3, 1e-300, 6.02214076e23,
                     std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max()})
        CHECK(parse(fmt17(x)) == x);
    CHECK(fmt17(-0.5) == "-0.5");
    CHECK(fmt17(0.1) == "0.10000000000000001");
    CHECK(fmt17(NAN) == "nan");
    CHECK(fmt17(-INFINITY) == "-inf");
    // independent of the C locale
    std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
    CHECK(fmt17(2.5) == "2.5");
    std::setlocale(LC_NUMERIC, "C");
}

TEST_CASE("CSV and JSON tables")
{
    Table t({{"n"}, {"E", Dimension::energy}, {"ok"}, {"label"}});
    t.add({1LL, -0.5, true, std::string("plain")});
    t.add({2LL, -0.125, false, std::string("with, comma \"q\"")});
    t.add({3LL, 1.0 / 3, true, std::string("x")});
    CHECK_THROWS_AS(t.add({1LL}), DomainError);

    std::ostringstream csv;
    write_csv(csv, t);
    CHECK(csv.str() == "n,E,ok,label\n1,-0.5,true,plain\n2,-0.125,false,\"with, comma \"\"q\"\"\"\n"
                       "3,0.33333333333333331,true,x\n");

    std::ostringstream js;
    write_json(js, t);
    auto j = nlohmann::json::parse(js.str());
    CHECK(j["columns"][1] == "E");
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][2][1].get<double>() == 1.0 / 3);
    CHECK(j["rows"][1][3] == "with, comma \"q\"");
    CHECK(j["rows"][0][2] == true);
    CHECK(js.str().find("0.33333333333333331") != std::string::npos);

    Table bad({{"x"}});
    bad.add({NAN});
    std::ostringstream b;
    write_json(b, bad);
    CHECK(nlohmann::json::parse(b.str())["rows"][0][0].is_null());
}

TEST_CASE("unit conversion at the boundary")
{
    Table t({{"n"}, {"E", Dimension::energy}, {"r", Dimension::length}});
    t.add({1LL, -0.5, 2.0});
    auto au = convert_units(t, UnitSystem::atomic);
    CHECK(au.columns[1].name == "E_hartree");
    CHECK(std::get<double>(au.rows[0][1]) == -0.5);
    auto si = convert_units(t, UnitSystem::si);
    CHECK(si.columns[1].name == "E_J");
    CHECK(si.columns[2].name == "r_m");
    CHECK(std::get<double>(si.rows[0][1]) == doctest::Approx(-0.5 * 4.3597447222071e-18).epsilon(1e-15));
    CHECK(std::get<double>(si.rows[0][2]) == doctest::Approx(2 * 5.29177210903e-11).epsilon(1e-15));
    CHECK(std::get<long long>(si.rows[0][0]) == 1);
    auto g = convert_units(t, UnitSystem::gaussian);
    CHECK(g.columns[1].name == "E_erg");
    CHECK(std::get<double>(g.rows[0][1]) == doctest::Approx(-0.5 * 4.3597447222071e-11).epsilon(1e-15));
    // atomic field unit in gauss, and tesla
    CHECK(conversion_factor(Dimension::field, UnitSystem::gaussian) == doctest::Approx(1.7152553e7).epsilon(1e-6));
    CHECK(conversion_factor(Dimension::field, UnitSystem::si) == doctest::Approx(1.7152553e3).epsilon(1e-6));
    CHECK(parse_units("si") == UnitSystem::si);
    CHECK_THROWS_AS(parse_units("furlongs"), DomainError);
}

TEST_CASE("fine-structure constant from the environment")
{
    setenv("ATOMKIT_ALPHA", "0.01", 1);
    CHECK(Constants::from_env().alpha == 0.01);
    setenv("ATOMKIT_ALPHA", "abc", 1);
    CHECK_THROWS_AS(Constants::from_env(), DomainError);
    setenv("ATOMKIT_ALPHA", "2", 1);
    CHECK_THROWS_AS(Constants::from_env(), DomainError);
    unsetenv("ATOMKIT_ALPHA");
    CHECK(Constants::from_env().alpha == default_alpha);
    CHECK(Constants().larmor(1.0) < 0);
}
