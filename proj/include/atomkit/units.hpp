#pragma once

#include <string>

namespace atomkit {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double default_alpha = 1.0 / 137.035999;

enum class UnitSystem { atomic, si, gaussian };

// Atomic units: hbar = mu = |e| = 1, electron charge e = -1, c = 1/alpha.
struct Constants {
    double alpha = default_alpha;
    UnitSystem units = UnitSystem::atomic;

    Constants() = default;
    explicit Constants(double a, UnitSystem u = UnitSystem::atomic);

    double c() const { return 1.0 / alpha; }
    static constexpr double e = -1.0;
    double classical_radius() const { return alpha * alpha; }  // e^2/(mu c^2)
    double larmor(double B) const { return e * B / (2.0 * c()); }

    // Default constants with ATOMKIT_ALPHA applied when set.
    static Constants from_env();
};

enum class Dimension { none, energy, length, frequency, area, time, velocity, field };

// Multiply an atomic-unit value by this to express it in the target system.
double conversion_factor(Dimension d, UnitSystem to);
UnitSystem parse_units(const std::string& name);

}  // namespace atomkit
