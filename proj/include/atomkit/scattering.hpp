#pragma once

#include "atomkit/ode.hpp"
#include "atomkit/units.hpp"

#include <array>
#include <vector>

namespace atomkit::scattering {

inline constexpr double theta_min = 1e-6;  // forward-singularity cutoff

struct CrossSectionSample {
    double theta = 0, phi = 0;
    double value = 0;
};

// Thomson cross sections in units of r_e^2 (r_e = alpha^2 Bohr radii).
double thomson_differential(double phi, double theta);
double thomson_unpolarized(double theta);
double thomson_total();

// 4 pi int sinc(K r) |psi_1|^2 r^2 dr with K = 2 k sin(theta/2), 1s state of scale a.
double atom_form_factor(double k, double theta, double a = 1.0);
double form_factor_K(double K, double a = 1.0);
// |F|^2 times the Thomson differential, units of r_e^2.
double light_scattering_differential(double k, double theta, double phi, double a = 1.0);

// Charges in units of |e|: projectile Q, target Z; mass M, speed v.
double classical_rutherford(double theta, double Q, double Z, double M, double v);
// cot(theta/2) = M b v^2 / (Q Z); attractive (Q Z < 0) gives theta in (pi, 2 pi).
double deflection_angle(double b, double Q, double Z, double M, double v);

struct DeflectionRun {
    double theta = 0;       // measured direction change, in [0, 2 pi)
    double energy_drift = 0;
    long steps = 0;
};
// Newtonian integration M x'' = Q Z x / |x|^3 from (-X, b) with asymptotic speed v.
DeflectionRun deflection_by_trajectory(double b, double Q, double Z, double M, double v,
                                       double X = 1e6, double tol = 1e-12);

// |f|^2 with f = 2 / (K^2 + eps^2) in atomic units, K = 2 k sin(theta/2).
double quantum_rutherford(double theta, double k, double eps);

enum class Conic { ellipse, parabola, hyperbola };

struct TrajectorySample {
    double t;
    std::array<double, 2> x, v;
    double energy, angular_momentum;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double energy0 = 0, angular_momentum0 = 0;
    double max_energy_drift = 0;            // relative to |E0| (absolute when E0 = 0)
    double max_angular_momentum_drift = 0;  // relative to |I0|
    Conic conic = Conic::ellipse;
};

Conic classify_orbit(double energy, double scale);

// x'' = -gm x / |x|^3 over [0, t_end].
Trajectory kepler_trajectory(const std::array<double, 2>& x0, const std::array<double, 2>& v0, double gm,
                             double t_end, double tol = 1e-12);

// sin^2 theta cos^2 phi normalized to unit integral over the sphere.
double photoeffect_pattern(double theta, double phi);

enum class PhotoRegime { short_range, long_range };
double red_bound(double omega1);
PhotoRegime photo_regime(double omega, double omega1);

}  // namespace atomkit::scattering
