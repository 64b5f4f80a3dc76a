#include "atomkit/error.hpp"
#include "atomkit/quadrature.hpp"
#include "atomkit/response.hpp"
#include "atomkit/spectra.hpp"

#include <doctest.h>

#include <cmath>

using namespace atomkit;
using namespace atomkit::response;
using doctest::Approx;

TEST_CASE("Drude permittivity")
{
    OscillatorSet s{{{0.5, 0.7, 0.0}, {1.2, 0.3, 0.0}}, 0.01};
    auto e0 = drude_epsilon(0, s);
    CHECK(e0.imag() == 0);
    CHECK(e0.real() > 1);
    CHECK(e0.real() == Approx(1 + 4 * pi * 0.01 * (0.7 / 0.25 + 0.3 / 1.44)).epsilon(1e-15));
    CHECK_THROWS_AS(drude_epsilon(0.5, s), PoleError);
    CHECK(std::abs(drude_epsilon(1e8, s) - 1.0) < 1e-15);

    OscillatorSet d{{{0.5, 0.7, 0.02}, {1.2, 0.3, 0.05}}, 0.01};
    // at omega = omega_k the term is purely imaginary: i 4 pi n f / (omega gamma)
    auto at = drude_epsilon(0.5, d);
    auto other = 4 * pi * 0.01 * 0.3 / std::complex<double>(1.44 - 0.25, -0.5 * 0.05);
    CHECK((at - 1.0 - other).real() == Approx(0).scale(1).epsilon(1e-14));
    CHECK((at - 1.0 - other).imag() == Approx(4 * pi * 0.01 * 0.7 / (0.5 * 0.02)).epsilon(1e-14));

    double prev_slope = 0;
    int sign_changes = 0;
    for (int i = 0; i <= 2000; ++i) {
        double w = 0.001 * i;
        CHECK(drude_epsilon(w, d).imag() >= 0);
        double h = 1e-6;
        double slope = (drude_epsilon(w + h, d).real() - drude_epsilon(w - h, d).real()) / (2 * h);
        if (i > 0 && slope * prev_slope < 0) ++sign_changes;
        prev_slope = slope;
    }
    // anomalous dispersion: Re eps decreases across each resonance
    CHECK(sign_changes == 4);
    CHECK((drude_epsilon(0.5 + 1e-3, d).real() - drude_epsilon(0.5 - 1e-3, d).real()) < 0);
    CHECK_THROWS_AS(drude_epsilon(0.1, OscillatorSet{{{0.5, -1, 0}}, 1}), DomainError);
}

TEST_CASE("hydrogen transition strengths")
{
    auto set = hydrogen_transitions(10);
    REQUIRE(set.lines.size() == 9);
    for (std::size_t i = 0; i < set.lines.size(); ++i) {
        const int n = int(i) + 2;
        // closed form |<1s|z|np>|^2 = 2^8 n^7 (n-1)^(2n-5) / (3 (n+1)^(2n+5))
        double closed = std::pow(2.0, 8) * std::pow(n, 7) * std::pow(n - 1.0, 2 * n - 5) /
                        (3 * std::pow(n + 1.0, 2 * n + 5));
        CHECK(set.lines[i].x2 == Approx(closed).epsilon(1e-12));
        CHECK(set.lines[i].omega_1l == Approx(-0.5 + 0.5 / (n * n)).epsilon(1e-15));
    }
    CHECK(set.lines[0].x2 == Approx(std::pow(128 * std::sqrt(2.0) / 243, 2)).epsilon(1e-12));
    CHECK_THROWS_AS(hydrogen_transitions(1), DomainError);
}

TEST_CASE("Kramers-Kronig susceptibility")
{
    auto set = hydrogen_transitions(10);
    const double n = 1e-3;
    CHECK(kk_susceptibility(0, set.lines, n) > 0);
    CHECK(kk_susceptibility(0, set.lines, n, KKConvention::as_printed) < 0);
    CHECK(kk_susceptibility(0, set.lines, n, KKConvention::as_printed) ==
          Approx(-kk_susceptibility(0, set.lines, n)).epsilon(1e-15));
    CHECK(kk_epsilon(0, set.lines, n) == Approx(1 + 4 * pi * kk_susceptibility(0, set.lines, n)));

    // even in omega, increasing on (0, first pole)
    double prev = kk_susceptibility(0, set.lines, n);
    for (int i = 1; i < 375; ++i) {
        double w = 0.001 * i;
        double v = kk_susceptibility(w, set.lines, n);
        CHECK(v == kk_susceptibility(-w, set.lines, n));
        CHECK(v > prev);
        prev = v;
    }

    // pole locations by bisection on 1/chi, which crosses zero at each pole
    for (int k = 2; k <= 5; ++k) {
        const double wk = spectra::schrodinger_level(k) - spectra::schrodinger_level(1);
        const double gap = 0.5 * (spectra::schrodinger_level(k + 1) - spectra::schrodinger_level(k));
        double lo = wk - gap, hi = wk + gap;
        auto inv = [&](double w) { return 1 / kk_susceptibility(w, set.lines, n); };
        // just below the pole chi -> +inf, just above -> -inf
        CHECK(kk_susceptibility(wk - 1e-9, set.lines, n) > 0);
        CHECK(kk_susceptibility(wk + 1e-9, set.lines, n) < 0);
        double flo = inv(lo);
        // find the sign change of 1/chi that is a pole (chi jumps from + to -)
        double a = wk - 1e-6, b = wk + 3.7e-6;
        REQUIRE(inv(a) > 0);
        REQUIRE(inv(b) < 0);
        for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
            double m = 0.5 * (a + b);
            if (m == wk) break;
            if (inv(m) > 0) a = m; else b = m;
        }
        CHECK(std::abs(0.5 * (a + b) - wk) <= 1e-10);
        (void)flo;
        (void)hi;
        CHECK_THROWS_AS(kk_susceptibility(wk, set.lines, n), PoleError);
    }
    CHECK(-set.lines[0].omega_1l == Approx(3.0 / 8).epsilon(1e-15));

    // same pole structure as an undamped Drude model with f = 4 |w| |x|^2
    OscillatorSet d;
    d.n = n;
    for (auto& t : set.lines) d.oscillators.push_back({std::abs(t.omega_1l), 4 * std::abs(t.omega_1l) * t.x2, 0});
    for (double w : {0.0, 0.1, 0.3, 0.4, 0.47, 0.6})
        CHECK(drude_epsilon(w, d).real() == Approx(kk_epsilon(w, set.lines, n)).epsilon(1e-13));

    // tail of the discrete sum is small and positive in the static limit
    double tail = kk_tail_estimate(0, set, n);
    CHECK(tail > 0);
    CHECK(tail < 0.01 * kk_susceptibility(0, set.lines, n));
    auto bigger = hydrogen_transitions(14);
    double extra = kk_susceptibility(0, bigger.lines, n) - kk_susceptibility(0, set.lines, n);
    CHECK(extra < tail);
    CHECK(extra + kk_tail_estimate(0, bigger, n) == Approx(tail).epsilon(0.05));
}

TEST_CASE("Langevin diamagnetism and paramagnetic moment")
{
    Constants k;
    auto R = spectra::radial_wavefunction(1, 0);
    double r2 = oracle::integrate_adaptive([&](double r) { return R(r) * R(r) * r * r * r * r; }, 0, 80, 1e-14);
    CHECK(std::abs(r2 - 3) <= 1e-8);
    double chi = langevin_chi(r2, 1, k);
    CHECK(std::abs(chi - (-k.alpha * k.alpha / 2)) <= 1e-8 * k.alpha * k.alpha / 2);
    CHECK(langevin_chi(0, 5, k) == 0);
    CHECK(langevin_chi(2.0, 3.0, k) == Approx(3 * langevin_chi(2.0, 1.0, k)));
    CHECK(langevin_chi(4.0, 1.0, k) == Approx(2 * langevin_chi(2.0, 1.0, k)));
    for (double v : {0.1, 1.0, 7.0}) CHECK(langevin_chi(v, 1, k) < 0);
    CHECK_THROWS_AS(langevin_chi(-1, 1, k), DomainError);

    CHECK(paramagnetic_moment(0, k) == 0);
    CHECK(paramagnetic_moment(1, k) == Approx(-k.alpha / 2).epsilon(1e-15));
    for (int m = 1; m <= 4; ++m) CHECK(paramagnetic_moment(m, k) + paramagnetic_moment(-m, k) == 0);
}
