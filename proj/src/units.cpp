#include "atomkit/units.hpp"
#include "atomkit/error.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace atomkit {

Constants::Constants(double a, UnitSystem u) : alpha(a), units(u)
{
    if (!(a > 0.0 && a < 1.0))
        throw DomainError("fine-structure constant must lie in (0,1)");
}

Constants Constants::from_env()
{
    const char* s = std::getenv("ATOMKIT_ALPHA");
    if (!s || !*s) return {};
    double a = 0;
    auto [p, ec] = std::from_chars(s, s + std::strlen(s), a);
    if (ec != std::errc() || *p != '\0')
        throw DomainError(std::string("ATOMKIT_ALPHA is not a number: ") + s);
    return Constants(a);
}

// CODATA 2018 atomic units.
namespace {
constexpr double hartree_J = 4.3597447222071e-18;
constexpr double bohr_m = 5.29177210903e-11;
constexpr double time_s = 2.4188843265857e-17;
// Gaussian-based atomic field unit e/a0^2, consistent with omega_L = eB/(2 mu c).
constexpr double field_G = 5.14220674763e11 / 29979.2458;
}  // namespace

double conversion_factor(Dimension d, UnitSystem to)
{
    if (to == UnitSystem::atomic || d == Dimension::none) return 1.0;
    const bool si = to == UnitSystem::si;
    switch (d) {
    case Dimension::energy: return si ? hartree_J : hartree_J * 1e7;
    case Dimension::length: return si ? bohr_m : bohr_m * 1e2;
    case Dimension::area: return si ? bohr_m * bohr_m : bohr_m * bohr_m * 1e4;
    case Dimension::frequency: return 1.0 / time_s;
    case Dimension::time: return time_s;
    case Dimension::velocity: return si ? bohr_m / time_s : bohr_m * 1e2 / time_s;
    case Dimension::field: return si ? field_G * 1e-4 : field_G;
    default: return 1.0;
    }
}

UnitSystem parse_units(const std::string& name)
{
    if (name == "atomic" || name == "au") return UnitSystem::atomic;
    if (name == "si") return UnitSystem::si;
    if (name == "gaussian" || name == "cgs") return UnitSystem::gaussian;
    throw DomainError("unknown unit system: " + name);
}

}  // namespace atomkit

#include "atomkit/format.hpp"

#include <cmath>

namespace atomkit {

std::string fmt17(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, p);
}

}  // namespace atomkit
