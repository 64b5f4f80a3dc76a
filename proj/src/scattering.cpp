#include "atomkit/scattering.hpp"
#include "atomkit/error.hpp"
#include "atomkit/quadrature.hpp"

#include <cmath>
#include <string>

namespace atomkit::scattering {

double thomson_differential(double phi, double theta)
{
    const double c = std::cos(phi), s = std::sin(theta);
    return 1 - c * c * s * s;
}

double thomson_unpolarized(double theta)
{
    const double s = std::sin(theta);
    return 1 - 0.5 * s * s;
}

double thomson_total() { return 8 * pi / 3; }

double form_factor_K(double K, double a)
{
    if (K < 0 || !(a > 0)) throw DomainError("form factor needs K >= 0 and a > 0");
    if (K == 0) return 1.0;
    // |psi_1|^2 = e^{-2r/a} / (pi a^3)
    auto f = [&](double r) {
        const double x = K * r;
        const double sinc = x < 1e-8 ? 1 - x * x / 6 : std::sin(x) / x;
        return 4 / (a * a * a) * sinc * std::exp(-2 * r / a) * r * r;
    };
    return oracle::integrate_adaptive(f, 0, 60 * a, 1e-13);
}

double atom_form_factor(double k, double theta, double a)
{
    if (k < 0) throw DomainError("wave number must be nonnegative");
    return form_factor_K(2 * k * std::sin(theta / 2), a);
}

double light_scattering_differential(double k, double theta, double phi, double a)
{
    const double F = atom_form_factor(k, theta, a);
    return F * F * thomson_differential(phi, theta);
}

double classical_rutherford(double theta, double Q, double Z, double M, double v)
{
    if (theta < theta_min) throw ForwardSingularity("Rutherford cross section diverges at theta -> 0");
    if (theta > pi) throw DomainError("scattering angle must lie in (0, pi]");
    if (!(M > 0) || !(v > 0)) throw DomainError("mass and speed must be positive");
    const double a = Q * Z / (M * v * v);
    const double s = std::sin(theta / 2);
    return a * a / (4 * s * s * s * s);
}

double deflection_angle(double b, double Q, double Z, double M, double v)
{
    if (b == 0) throw HeadOnCollision("impact parameter b = 0 is the head-on degenerate case");
    if (b < 0 || !(v > 0) || !(M > 0)) throw DomainError("need b > 0, v > 0, M > 0");
    if (Q * Z == 0) return 0;
    return 2 * std::atan2(1.0, M * b * v * v / (Q * Z));
}

DeflectionRun deflection_by_trajectory(double b, double Q, double Z, double M, double v, double X, double tol)
{
    if (!(b > 0) || !(v > 0) || !(M > 0)) throw DomainError("need b > 0, v > 0, M > 0");
    const double qz = Q * Z;
    const double r0 = std::hypot(X, b);
    const double E = 0.5 * M * v * v;
    const double v0 = std::sqrt(2 * (E - qz / r0) / M);
    ode::State y{-X, b, v0, 0};
    auto rhs = [&](const ode::State& s, ode::State& d, double) {
        const double r = std::hypot(s[0], s[1]);
        const double f = qz / (M * r * r * r);
        d[0] = s[2];
        d[1] = s[3];
        d[2] = f * s[0];
        d[3] = f * s[1];
    };
    // leave once the particle is back beyond r0 and moving outward
    auto obs = [&](const ode::State& s, double) {
        const double r = std::hypot(s[0], s[1]);
        return !(r > r0 && s[0] * s[2] + s[1] * s[3] > 0);
    };
    ode::Options opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    opt.dt0 = 1e-3 * X / v;
    ode::Stats st;
    const double t_max = 1e3 * X / v;
    ode::integrate_dp45(rhs, y, 0, t_max, opt, obs, &st);
    DeflectionRun run;
    run.steps = st.accepted;
    double th = std::atan2(y[3], y[2]);
    // the angle is measured counterclockwise for the trajectory launched above the axis:
    // repulsion turns the velocity up (positive), attraction down.
    if (th < 0) th += 2 * pi;
    run.theta = th;
    const double r = std::hypot(y[0], y[1]);
    const double Ef = 0.5 * M * (y[2] * y[2] + y[3] * y[3]) + qz / r;
    run.energy_drift = std::abs(Ef - E) / E;
    if (std::hypot(y[0], y[1]) <= r0) throw SolverError("trajectory did not leave the interaction region");
    return run;
}

double quantum_rutherford(double theta, double k, double eps)
{
    if (!(k > 0) || eps < 0) throw DomainError("need k > 0 and eps >= 0");
    if (eps == 0 && theta < theta_min)
        throw ForwardSingularity("unscreened Rutherford cross section diverges at theta -> 0");
    const double s = std::sin(theta / 2);
    const double K = 2 * k * s;
    const double f = 2 / (K * K + eps * eps);
    return f * f;
}

Conic classify_orbit(double energy, double scale)
{
    if (std::abs(energy) <= 1e-14 * scale) return Conic::parabola;
    return energy < 0 ? Conic::ellipse : Conic::hyperbola;
}

Trajectory kepler_trajectory(const std::array<double, 2>& x0, const std::array<double, 2>& v0, double gm,
                             double t_end, double tol)
{
    const double r0 = std::hypot(x0[0], x0[1]);
    if (r0 == 0) throw SingularOrbit("initial position at the force center");
    if (!(gm > 0)) throw DomainError("gravitational parameter must be positive");
    auto energy = [&](const ode::State& s) {
        return 0.5 * (s[2] * s[2] + s[3] * s[3]) - gm / std::hypot(s[0], s[1]);
    };
    auto ang = [](const ode::State& s) { return s[0] * s[3] - s[1] * s[2]; };
    ode::State y{x0[0], x0[1], v0[0], v0[1]};
    Trajectory tr;
    tr.energy0 = energy(y);
    tr.angular_momentum0 = ang(y);
    const double vv = v0[0] * v0[0] + v0[1] * v0[1];
    const double scale = 0.5 * vv + gm / r0;
    tr.conic = classify_orbit(tr.energy0, scale);
    const bool inward = x0[0] * v0[0] + x0[1] * v0[1] < 0;
    if (std::abs(tr.angular_momentum0) <= 1e-14 * r0 * std::sqrt(vv + gm / r0) &&
        (inward || tr.energy0 < 0))
        throw SingularOrbit("radial orbit with zero angular momentum falls into the center");

    auto rhs = [&](const ode::State& s, ode::State& d, double) {
        const double r = std::hypot(s[0], s[1]);
        const double f = -gm / (r * r * r);
        d[0] = s[2];
        d[1] = s[3];
        d[2] = f * s[0];
        d[3] = f * s[1];
    };
    const double escale = tr.energy0 != 0 ? std::abs(tr.energy0) : scale;
    auto record = [&](const ode::State& s, double t) {
        TrajectorySample smp{t, {s[0], s[1]}, {s[2], s[3]}, energy(s), ang(s)};
        tr.max_energy_drift = std::max(tr.max_energy_drift, std::abs(smp.energy - tr.energy0) / escale);
        tr.max_angular_momentum_drift =
            std::max(tr.max_angular_momentum_drift,
                     std::abs(smp.angular_momentum - tr.angular_momentum0) / std::abs(tr.angular_momentum0));
        tr.samples.push_back(smp);
    };
    record(y, 0);
    ode::Options opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    opt.dt0 = 1e-4 * r0 / std::sqrt(vv + gm / r0);
    ode::integrate_dp45(rhs, y, 0, t_end, opt, [&](const ode::State& s, double t) {
        record(s, t);
        return true;
    });
    record(y, t_end);
    return tr;
}

double photoeffect_pattern(double theta, double phi)
{
    const double s = std::sin(theta), c = std::cos(phi);
    return 3 / (4 * pi) * s * s * c * c;
}

double red_bound(double omega1) { return std::abs(omega1); }

PhotoRegime photo_regime(double omega, double omega1)
{
    return std::abs(omega) < red_bound(omega1) ? PhotoRegime::short_range : PhotoRegime::long_range;
}

}  // namespace atomkit::scattering
