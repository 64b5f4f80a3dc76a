#include "atomkit/error.hpp"
#include "atomkit/fields.hpp"
#include "atomkit/quadrature.hpp"

#include <doctest.h>
#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

using namespace atomkit;
using namespace atomkit::fields;
using doctest::Approx;

namespace {

Vec3 cross3(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// A field E = sum u cos(k.x + phase) with u perpendicular to k for every mode.
struct Mode {
    Vec3 k, uE, uB;
    double phase;
};

std::vector<Mode> random_modes(int count, double L, int nmax, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> ni(-nmax, nmax);
    std::normal_distribution<double> nd;
    std::vector<Mode> out;
    while (int(out.size()) < count) {
        Vec3 k{2 * pi * ni(rng) / L, 2 * pi * ni(rng) / L, 2 * pi * ni(rng) / L};
        if (dot3(k, k) == 0) continue;
        Vec3 a{nd(rng), nd(rng), nd(rng)}, b{nd(rng), nd(rng), nd(rng)};
        out.push_back({k, cross3(k, a), cross3(k, b), nd(rng)});
    }
    return out;
}

MaxwellField from_modes(const std::vector<Mode>& modes, int N, double L, double c)
{
    MaxwellField f(3, N, L, c);
    for (std::size_t i = 0; i < f.grid.points(); ++i) {
        auto x = f.grid.x(i);
        for (auto& m : modes) {
            double cs = std::cos(dot3(m.k, x) + m.phase);
            for (int a = 0; a < 3; ++a) {
                f.E(a)[i] += m.uE[a] * cs;
                f.B(a)[i] += m.uB[a] * cs;
            }
        }
    }
    return f;
}

// Real 12-vector (E_cos, E_sin, B_cos, B_sin) for fields u cos(k.x) + w sin(k.x).
// curl(u cos) = -k x u sin, curl(w sin) = k x w cos.
Eigen::Matrix<double, 12, 12> mode_generator(const Vec3& k, double c)
{
    Eigen::Matrix3d K;
    K << 0, -k[2], k[1], k[2], 0, -k[0], -k[1], k[0], 0;
    // curl acting on (cos, sin) coefficients
    Eigen::Matrix<double, 6, 6> curl = Eigen::Matrix<double, 6, 6>::Zero();
    curl.block<3, 3>(0, 3) = K;
    curl.block<3, 3>(3, 0) = -K;
    Eigen::Matrix<double, 12, 12> G = Eigen::Matrix<double, 12, 12>::Zero();
    G.block<6, 6>(0, 6) = c * curl;
    G.block<6, 6>(6, 0) = -c * curl;
    return G;
}

}  // namespace

TEST_CASE("spectral grid transforms")
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    SpectralGrid g(3, 6, 2.0, {"f"});
    for (auto& v : g[0]) v = cplx(nd(rng), nd(rng));
    auto hat = g[0];
    fft_forward(g, hat);
    // naive DFT
    for (std::size_t q : {std::size_t(0), std::size_t(5), std::size_t(37), std::size_t(200)}) {
        cplx s = 0;
        auto k = g.k(q);
        for (std::size_t i = 0; i < g.points(); ++i) s += g[0][i] * std::polar(1.0, -dot3(k, g.x(i)));
        CHECK(std::abs(s - hat[q]) < 1e-12 * std::sqrt(double(g.points())) * 10);
    }
    double p1 = 0, p2 = 0;
    for (auto& v : g[0]) p1 += std::norm(v);
    for (auto& v : hat) p2 += std::norm(v);
    CHECK(p2 / g.points() == Approx(p1).epsilon(1e-12));
    auto back = hat;
    fft_backward(g, back);
    CHECK(max_diff(back, g[0]) < 1e-13);

    // real data has Hermitian-symmetric coefficients
    for (auto& v : g[0]) v = v.real();
    hat = g[0];
    fft_forward(g, hat);
    for (std::size_t q = 0; q < g.points(); ++q) {
        auto k = g.k(q);
        for (std::size_t r = 0; r < g.points(); ++r) {
            auto k2 = g.k(r);
            bool opposite = true;
            for (int a = 0; a < 3; ++a) {
                double s = (k[a] + k2[a]) * g.L / (2 * pi);
                if (std::abs(std::remainder(s, g.N)) > 1e-9) opposite = false;
            }
            if (opposite) CHECK(std::abs(hat[q] - std::conj(hat[r])) < 1e-12);
        }
    }

    CHECK(g.k(3)[2] == Approx(2 * pi * 3 / 2.0));
    CHECK(g.k(4)[2] == Approx(-2 * pi * 2 / 2.0));
    CHECK(g.x(6 * 6 + 6 + 1)[0] == Approx(g.h()));
    CHECK_THROWS_AS(SpectralGrid(2, 8, 1.0, {}), DomainError);
}

TEST_CASE("Maxwell propagator against per-mode matrix exponential")
{
    const double L = 2 * pi, c = 3.0;
    const int N = 8;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 3; ++trial) {
        Vec3 k{double(trial + 1), double(-1 + trial), 2.0};
        Vec3 uc{nd(rng), nd(rng), nd(rng)}, us{nd(rng), nd(rng), nd(rng)}, wc{nd(rng), nd(rng), nd(rng)},
            ws{nd(rng), nd(rng), nd(rng)};
        uc = cross3(k, uc), us = cross3(k, us), wc = cross3(k, wc), ws = cross3(k, ws);
        MaxwellField f(3, N, L, c);
        for (std::size_t i = 0; i < f.grid.points(); ++i) {
            double ph = dot3(k, f.grid.x(i));
            for (int a = 0; a < 3; ++a) {
                f.E(a)[i] = uc[a] * std::cos(ph) + us[a] * std::sin(ph);
                f.B(a)[i] = wc[a] * std::cos(ph) + ws[a] * std::sin(ph);
            }
        }
        const double dt = 0.37;
        auto out = maxwell_propagate(f, {}, 0.0, dt);
        Eigen::Matrix<double, 12, 1> y;
        for (int a = 0; a < 3; ++a) y(a) = uc[a], y(3 + a) = us[a], y(6 + a) = wc[a], y(9 + a) = ws[a];
        Eigen::Matrix<double, 12, 12> G = mode_generator(k, c) * dt;
        Eigen::Matrix<double, 12, 1> z = G.exp() * y;
        double err = 0;
        for (std::size_t i = 0; i < f.grid.points(); ++i) {
            double ph = dot3(k, f.grid.x(i));
            for (int a = 0; a < 3; ++a) {
                err = std::max(err, std::abs(out.E(a)[i] - (z(a) * std::cos(ph) + z(3 + a) * std::sin(ph))));
                err = std::max(err, std::abs(out.B(a)[i] - (z(6 + a) * std::cos(ph) + z(9 + a) * std::sin(ph))));
            }
        }
        CHECK(err < 1e-12 * y.norm() * 10);
    }
}

TEST_CASE("Maxwell free evolution: energy, constraints, plane wave, zero data")
{
    const double L = 2 * pi, c = 137.035999;
    const int N = 16;
    std::mt19937_64 rng(3);
    auto f = from_modes(random_modes(12, L, 5, rng), N, L, c);
    auto d0 = maxwell_diagnostics(f);
    CHECK(d0.div_E_residual < 1e-12);
    CHECK(d0.div_B_residual < 1e-12);
    auto g = f;
    double drift = 0, momdrift = 0;
    for (int s = 0; s < 100; ++s) {
        g = maxwell_propagate(g, {}, 0.01 * s, 0.01);
        auto d = maxwell_diagnostics(g);
        drift = std::max(drift, std::abs(d.energy - d0.energy) / d0.energy);
        for (int a = 0; a < 3; ++a)
            momdrift = std::max(momdrift, std::abs(d.momentum[a] - d0.momentum[a]) / (d0.energy / c));
        CHECK(d.div_E_residual < 1e-10);
        CHECK(d.div_B_residual < 1e-10);
    }
    CHECK(drift < 1e-10);
    CHECK(momdrift < 1e-10);

    // plane wave advances by exact translation
    for (int mode : {1, 3, 7}) {
        auto p0 = plane_wave(N, L, mode, 0.8, c, 0.0);
        double t = 0.0123;
        auto p1 = maxwell_propagate(p0, {}, 0.0, t);
        auto ex = plane_wave(N, L, mode, 0.8, c, t);
        for (int a = 0; a < 6; ++a) CHECK(max_diff(p1.grid[a], ex.grid[a]) < 1e-12);
    }

    MaxwellField z(3, 8, 1.0, c);
    auto z1 = maxwell_propagate(z, {}, 0, 5.0);
    for (int a = 0; a < 6; ++a)
        for (auto& v : z1.grid[a]) CHECK(v == cplx(0));

    // longitudinal E without charge violates Gauss's law
    MaxwellField bad(3, 8, L, c);
    for (std::size_t i = 0; i < bad.grid.points(); ++i) bad.E(0)[i] = std::sin(bad.grid.x(i)[0]);
    CHECK_THROWS_AS(maxwell_propagate(bad, {}, 0, 0.1), ConstraintViolation);

    // uniform charge cannot live in a periodic box
    MaxwellSources uni;
    uni.rho = [](double, const Vec3&) { return 1.0; };
    CHECK_THROWS_AS(maxwell_propagate(z, uni, 0, 0.1), Error);
}

TEST_CASE("Maxwell with harmonic current against augmented matrix exponential")
{
    const double L = 2 * pi, c = 2.0, nu = 1.7;
    const int N = 8;
    const Vec3 k{1, 0, 2};
    const Vec3 j0{0.4, -0.3, 0.5};  // has a longitudinal part, so rho oscillates
    HarmonicSource h;
    h.nu = nu;
    SpectralGrid g(3, N, L, {});
    for (auto& a : h.j_amp) a.assign(g.points(), 0.0);
    for (std::size_t i = 0; i < g.points(); ++i)
        for (int a = 0; a < 3; ++a) h.j_amp[a][i] = j0[a] * std::cos(dot3(k, g.x(i)));
    // rho = (j0.k / nu) sin(k.x) sin(nu t)
    const double rk = dot3(j0, k) / nu;
    auto rho = [&](double t, const Vec3& x) { return rk * std::sin(dot3(k, x)) * std::sin(nu * t); };
    auto P = harmonic_charge(g, h);
    for (std::size_t i = 0; i < g.points(); ++i) {
        CHECK(std::abs(P[i].real()) < 1e-12);
        CHECK(P[i].imag() == Approx(rk * std::sin(dot3(k, g.x(i)))).scale(1).epsilon(1e-12));
    }

    MaxwellField f(3, N, L, c);  // zero field, rho(0) = 0
    // oracle: state (E_cos, E_sin, B_cos, B_sin, cos nu t, sin nu t)
    Eigen::Matrix<double, 14, 14> G = Eigen::Matrix<double, 14, 14>::Zero();
    G.block<12, 12>(0, 0) = mode_generator(k, c);
    for (int a = 0; a < 3; ++a) G(a, 12) = -4 * pi * j0[a];
    G(12, 13) = -nu;
    G(13, 12) = nu;
    auto exact = [&](double t) {
        Eigen::Matrix<double, 14, 1> y = Eigen::Matrix<double, 14, 1>::Zero();
        y(12) = 1;
        Eigen::Matrix<double, 14, 14> M = G * t;
        return Eigen::Matrix<double, 14, 1>(M.exp() * y);
    };
    auto compare = [&](const MaxwellField& out, double t) {
        auto z = exact(t);
        double err = 0, scale = z.head<12>().norm();
        for (std::size_t i = 0; i < g.points(); ++i) {
            double ph = dot3(k, g.x(i));
            for (int a = 0; a < 3; ++a) {
                err = std::max(err, std::abs(out.E(a)[i] - (z(a) * std::cos(ph) + z(3 + a) * std::sin(ph))));
                err = std::max(err, std::abs(out.B(a)[i] - (z(6 + a) * std::cos(ph) + z(9 + a) * std::sin(ph))));
            }
        }
        return err / scale;
    };

    MaxwellSources hs;
    hs.harmonic = h;
    auto a = f;
    for (int s = 0; s < 5; ++s) a = maxwell_propagate(a, hs, 0.3 * s, 0.3);
    CHECK(compare(a, 1.5) < 1e-11);
    auto diag = maxwell_diagnostics(a, rho, 1.5);
    CHECK(diag.div_E_residual < 1e-10);
    CHECK(diag.div_B_residual < 1e-10);

    // midpoint rule on the same source, sampled as a general current
    MaxwellSources gs;
    gs.rho = rho;
    gs.j = [&](double t, const Vec3& x) {
        double v = std::cos(dot3(k, x)) * std::cos(nu * t);
        return Vec3{j0[0] * v, j0[1] * v, j0[2] * v};
    };
    gs.substeps = 200;
    auto b = maxwell_propagate(f, gs, 0.0, 1.5);
    CHECK(compare(b, 1.5) < 1e-4);
    CHECK(maxwell_diagnostics(b, rho, 1.5).div_E_residual < 1e-10);
    gs.substeps = 400;
    auto b2 = maxwell_propagate(f, gs, 0.0, 1.5);
    // second-order convergence of the midpoint rule
    CHECK(compare(b, 1.5) / compare(b2, 1.5) == Approx(4).epsilon(0.05));
}

TEST_CASE("dispersion relations")
{
    DispersionParams p{1.0, 1.0};
    CHECK(dispersion_omega(Dispersion::schrodinger, 2, p) == 2);
    CHECK(dispersion_omega(Dispersion::klein_gordon, 2, p) == Approx(std::sqrt(5.0)));
    CHECK(group_velocity(Dispersion::schrodinger, 2, p) == 2);
    // finite-difference derivative of omega
    for (auto kind : {Dispersion::schrodinger, Dispersion::klein_gordon})
        for (double k : {0.5, 2.0, 7.0}) {
            double h = 1e-5;
            double fd = (dispersion_omega(kind, k + h, p) - dispersion_omega(kind, k - h, p)) / (2 * h);
            CHECK(group_velocity(kind, k, p) == Approx(fd).epsilon(1e-8));
        }
}

TEST_CASE("free dispersive packets")
{
    auto psi0 = gaussian_packet(1, 256, 64.0, {20, 0, 0}, 2.0, {2, 0, 0});
    auto same = free_dispersion_evolve(psi0, Dispersion::schrodinger, 0.0);
    CHECK(max_diff(same.psi[0], psi0[0]) == 0);
    CHECK(same.conserved.charge[0] == Approx(1).epsilon(1e-12));

    std::vector<double> ts;
    for (int i = 0; i <= 10; ++i) ts.push_back(0.5 * i);
    DispersionParams p{1.0, 1.0};
    for (auto kind : {Dispersion::schrodinger, Dispersion::klein_gordon}) {
        auto r = free_dispersion_evolve(psi0, kind, ts, p);
        const auto& cs = r.conserved;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            CHECK(cs.charge[i] == Approx(cs.charge[0]).epsilon(1e-13));
            CHECK(cs.energy[i] == Approx(cs.energy[0]).epsilon(1e-10));
            CHECK(cs.momentum[i][0] == Approx(cs.momentum[0][0]).epsilon(1e-10));
        }
        double v = centroid_velocity(cs, 0);
        double expect = group_velocity(kind, 2.0, p);
        CHECK(std::abs(v - expect) / expect < 0.02);
    }
    // Schroedinger packet energy: |k*|^2/2 + 1/(8 sigma^2)
    auto r = free_dispersion_evolve(psi0, Dispersion::schrodinger, ts, p);
    CHECK(r.conserved.energy[0] == Approx(2.0 + 1.0 / 32).epsilon(1e-10));
    CHECK(r.conserved.momentum[0][0] == Approx(2.0).epsilon(1e-10));

    // 3D packet, the same speeds
    auto q0 = gaussian_packet(3, 64, 32.0, {8, 16, 16}, 2.0, {2, 0, 0});
    std::vector<double> t3{0, 1, 2, 3, 4};
    for (auto kind : {Dispersion::schrodinger, Dispersion::klein_gordon}) {
        auto q = free_dispersion_evolve(q0, kind, t3, p);
        double v = centroid_velocity(q.conserved, 0);
        double expect = group_velocity(kind, 2.0, p);
        CHECK(std::abs(v - expect) / expect < 0.02);
        CHECK(std::abs(centroid_velocity(q.conserved, 1)) < 1e-10);
        CHECK(q.conserved.energy.back() == Approx(q.conserved.energy.front()).epsilon(1e-10));
    }
}

TEST_CASE("Hertz dipole radiation")
{
    const double c = 137.035999, nu = 0.3;
    DipoleSource d;
    const Vec3 p0{0.2, -0.1, 0.7};
    d.p = [&](double t) { return Vec3{p0[0] * std::cos(nu * t), p0[1] * std::cos(nu * t), p0[2] * std::cos(nu * t)}; };
    d.pddot = [&](double t) {
        double s = -nu * nu * std::cos(nu * t);
        return Vec3{p0[0] * s, p0[1] * s, p0[2] * s};
    };
    const double r = 1e4, t = 2.1;
    // along the dipole axis the flux vanishes
    const double pn = std::sqrt(dot3(p0, p0));
    auto ax = hertz_dipole(d, {r * p0[0] / pn, r * p0[1] / pn, r * p0[2] / pn}, t, c);
    auto side = hertz_dipole(d, {r, 0, 0}, t, c);
    CHECK(std::sqrt(dot3(ax.S, ax.S)) <= 1e-15 * std::sqrt(dot3(side.S, side.S)));

    auto a = d.pddot(t - r / c);
    double tot = oracle::sphere_quadrature(
        [&](double th, double ph) {
            Vec3 n{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
            auto h = hertz_dipole(d, {r * n[0], r * n[1], r * n[2]}, t, c);
            // radiation field: transverse, E perpendicular to B, |E| = |B|
            CHECK(std::abs(dot3(h.E, n)) <= 1e-14 * std::sqrt(dot3(h.E, h.E)) + 1e-300);
            CHECK(std::abs(dot3(h.E, h.B)) <= 1e-14 * dot3(h.E, h.E) + 1e-300);
            CHECK(std::sqrt(dot3(h.E, h.E)) == Approx(std::sqrt(dot3(h.B, h.B))).epsilon(1e-13));
            // S = sin^2 theta' p''^2 / (4 pi c^3 r^2) n
            double an = dot3(a, a), ca = dot3(a, n);
            double s2 = an > 0 ? 1 - ca * ca / an : 0;
            CHECK(dot3(h.S, n) == Approx(s2 * an / (4 * pi * c * c * c * r * r)).epsilon(1e-12).scale(1e-300));
            return dot3(h.S, n) * r * r;
        },
        8);
    CHECK(std::abs(tot - hertz_power(a, c)) <= 1e-8 * hertz_power(a, c));
    CHECK(hertz_power({0, 0, 1}, 1.0) == Approx(2.0 / 3));
    CHECK_THROWS_AS(hertz_dipole(d, {0, 0, 0}, t, c), SingularPoint);
}

TEST_CASE("retarded potentials")
{
    const double R = 1.0, c = 137.035999;
    auto bump = [&](double s) { return s < R ? std::pow(1 - s * s / (R * R), 2) : 0.0; };
    auto rho_static = [&](double, const Vec3& y) { return cplx(bump(std::sqrt(dot3(y, y)))); };
    // radial Coulomb oracle
    auto coulomb = [&](double r) {
        double inner = oracle::integrate_adaptive([&](double s) { return 4 * pi * bump(s) * s * s; }, 0, std::min(r, R),
                                                  1e-14);
        double outer =
            r < R ? oracle::integrate_adaptive([&](double s) { return 4 * pi * bump(s) * s; }, r, R, 1e-14) : 0.0;
        return inner / r + outer;
    };
    CHECK(coulomb(3.0) == Approx(4 * pi * 8.0 / 105 / 3.0).epsilon(1e-12));
    for (Vec3 x : {Vec3{2, 0, 0}, Vec3{0.3, -1.2, 1.9}, Vec3{0.2, 0.1, -0.3}, Vec3{0, 0, 0.9}}) {
        auto pot = retarded_potentials(rho_static, {}, R, x, 0.0, c);
        double r = std::sqrt(dot3(x, x));
        CHECK(std::abs(pot.phi - coulomb(r)) <= 1e-8 * coulomb(r));
        CHECK(pot.A[0] == cplx(0));
    }

    // harmonic radial source: phi = e^{-i nu t} (e^{i kappa r}/r) int b(s) sinc(kappa s) s^2 ds
    const double nu = 40.0, kappa = nu / c, t = 0.7;
    auto radial_amp = [&](double r) {
        double re = oracle::integrate_adaptive(
            [&](double s) { return bump(s) * std::sin(kappa * s) / (kappa * s) * s * s; }, 0, R, 1e-14);
        return std::exp(cplx(0, kappa * r)) / r * re;
    };
    auto rho_h = [&](double tt, const Vec3& y) {
        return bump(std::sqrt(dot3(y, y))) * std::exp(cplx(0, -nu * tt)) / (4 * pi);
    };
    Vec3 x{1.5, 2.0, -0.5};
    double r = std::sqrt(dot3(x, x));
    auto pot = retarded_potentials(rho_h, {}, R, x, t, c);
    cplx want = std::exp(cplx(0, -nu * t)) * radial_amp(r);
    CHECK(std::abs(pot.phi - want) <= 1e-8 * std::abs(want));

    // current along e3 with the same profile: A = (1/c) 4 pi J0 e^{-i nu t} x radial amplitude
    const cplx J0(0.3, -0.2);
    auto j_h = [&](double tt, const Vec3& y) {
        cplx v = J0 * bump(std::sqrt(dot3(y, y))) * std::exp(cplx(0, -nu * tt));
        return CVec3{0, 0, v};
    };
    auto potA = retarded_potentials({}, j_h, R, x, t, c);
    cplx wantA = J0 * 4.0 * pi / c * std::exp(cplx(0, -nu * t)) * radial_amp(r);
    CHECK(std::abs(potA.A[2] - wantA) <= 1e-8 * std::abs(wantA));
    CHECK(std::abs(potA.A[0]) < 1e-20);
    CHECK(potA.phi == cplx(0));

    CHECK_THROWS_AS(retarded_potentials(rho_static, {}, INFINITY, x, 0, c), DomainError);
}

TEST_CASE("Fresnel formulas")
{
    const double n1 = 1.0, n2 = 1.5;
    // boundary-condition oracle: tangential E and B continuous
    for (int i = 0; i < 100; ++i) {
        double al = (pi / 2) * i / 100.0;
        double ap = std::asin(n1 / n2 * std::sin(al));
        double ca = std::cos(al), ct = std::cos(ap);
        Eigen::Matrix2d M;
        Eigen::Vector2d rhs;
        // perp: 1 + r = t; n1 ca (1 - r) = n2 ct t
        M << 1, -1, -n1 * ca, -n2 * ct;
        rhs << -1, -n1 * ca;
        Eigen::Vector2d s = M.lu().solve(rhs);
        auto fp = fresnel(al, n1, n2, Polarization::perp);
        CHECK(fp.r.real() == Approx(s(0)).scale(1).epsilon(1e-13));
        CHECK(fp.t.real() == Approx(s(1)).scale(1).epsilon(1e-13));
        // par: ca (1 - r) = ct t; n1 (1 + r) = n2 t
        M << -ca, -ct, n1, -n2;
        rhs << -ca, -n1;
        s = M.lu().solve(rhs);
        auto fq = fresnel(al, n1, n2, Polarization::par);
        CHECK(fq.r.real() == Approx(s(0)).scale(1).epsilon(1e-13));
        CHECK(fq.t.real() == Approx(s(1)).scale(1).epsilon(1e-13));
        for (auto& f : {fp, fq}) {
            CHECK(std::abs(f.R + f.T - 1) <= 1e-12);
            CHECK(f.alpha_refracted == Approx(ap).epsilon(1e-14));
            CHECK_FALSE(f.total_internal_reflection);
        }
    }
    CHECK(fresnel(0, n1, n2, Polarization::perp).r.real() == Approx((n1 - n2) / (n1 + n2)).epsilon(1e-15));
    // Fresnel's sine form for the perpendicular amplitude, up to the overall sign convention
    double al = 0.6, ap = std::asin(n1 / n2 * std::sin(al));
    CHECK(fresnel(al, n1, n2, Polarization::perp).r.real() ==
          Approx(-std::sin(al - ap) / std::sin(al + ap)).epsilon(1e-14));
    CHECK(fresnel(al, n1, n2, Polarization::perp).t.real() ==
          Approx(2 * std::cos(al) * std::sin(ap) / std::sin(al + ap)).epsilon(1e-14));
    CHECK(fresnel(std::atan(n2 / n1), n1, n2, Polarization::par).R <= 1e-10);

    // glass to air beyond the critical angle
    auto tir = fresnel(1.2, 1.5, 1.0, Polarization::perp);
    CHECK(tir.total_internal_reflection);
    CHECK(std::isnan(tir.alpha_refracted));
    CHECK(std::abs(tir.r) == Approx(1).epsilon(1e-14));
    CHECK(tir.T == 0);
    CHECK(std::abs(fresnel(1.2, 1.5, 1.0, Polarization::par).r) == Approx(1).epsilon(1e-14));
    CHECK_THROWS_AS(fresnel(pi / 2, 1, 1.5, Polarization::perp), DomainError);
    CHECK_THROWS_AS(fresnel(0.1, -1, 1.5, Polarization::perp), DomainError);
}

TEST_CASE("classical Zeeman oscillator")
{
    Constants k;
    auto m0 = classical_zeeman_modes(1.3, 0.0, k);
    CHECK(m0.omega_pi == 1.3);
    CHECK(m0.omega_plus == 1.3);
    CHECK(m0.omega_minus == 1.3);

    // exact roots vs the linear approximation
    for (double B : {1.0 / k.alpha * 0.01, 1.0 / k.alpha * 0.1}) {
        double wl = std::abs(k.larmor(B));
        auto m = classical_zeeman_modes(1.0, B, k);
        double dev = std::max(std::abs(m.omega_plus - (1 + wl)), std::abs(m.omega_minus - (1 - wl)));
        CHECK(dev <= wl * wl);
        CHECK(dev >= 0.25 * wl * wl);
        // both are roots of -w^2 + w0^2 = (eB/c) w with the signed frequency of each circular mode
        double g = Constants::e * B / k.c();
        CHECK(-m.omega_plus * m.omega_plus + 1 - g * m.omega_plus == Approx(0).scale(1).epsilon(1e-14));
        CHECK(-m.omega_minus * m.omega_minus + 1 + g * m.omega_minus == Approx(0).scale(1).epsilon(1e-14));
    }

    const double B = 0.1 / k.alpha, T = 2000, dt = 0.1;
    auto m = classical_zeeman_modes(1.0, B, k);
    auto traj = zeeman_oscillator(1.0, B, {1, 0, 1}, {0, 0.3, 0}, T, dt, k);
    REQUIRE(traj.size() == 20000);
    const double dw = 2 * pi / T;
    auto spectrum = [&](int axis, int j) {
        cplx s = 0;
        for (std::size_t i = 0; i < traj.size(); ++i) s += traj[i][axis] * std::polar(1.0, j * dw * dt * i);
        return std::abs(s);
    };
    auto peaks = [&](int axis, int count) {
        int lo = int(0.7 / dw), hi = int(1.3 / dw);
        std::vector<std::pair<double, int>> loc;
        for (int j = lo + 1; j < hi; ++j) {
            double a = spectrum(axis, j);
            if (a > spectrum(axis, j - 1) && a >= spectrum(axis, j + 1)) loc.push_back({a, j});
        }
        std::sort(loc.rbegin(), loc.rend());
        std::vector<double> w;
        for (int i = 0; i < count && i < int(loc.size()); ++i) w.push_back(loc[i].second * dw);
        std::sort(w.begin(), w.end());
        return w;
    };
    auto pz = peaks(2, 1);
    REQUIRE(pz.size() == 1);
    CHECK(std::abs(pz[0] - m.omega_pi) <= 2 * dw);
    auto px = peaks(0, 2);
    REQUIRE(px.size() == 2);
    CHECK(std::abs(px[0] - m.omega_minus) <= 2 * dw);
    CHECK(std::abs(px[1] - m.omega_plus) <= 2 * dw);

    CHECK(larmor_precession_rate(2.0, PrecessionKind::spin, k) / larmor_precession_rate(2.0, PrecessionKind::orbital, k) ==
          2.0);
    CHECK(larmor_precession_rate(2.0, PrecessionKind::orbital, k) < 0);
    CHECK(larmor_precession_rate(0.0, PrecessionKind::spin, k) == 0);
}

TEST_CASE("snapshot export")
{
    SpectralGrid g(1, 4, 2.0, {"u", "psi"});
    for (std::size_t i = 0; i < 4; ++i) {
        g[0][i] = 0.1 * i;
        g[1][i] = cplx(i, -1.0 / 3);
    }
    std::ostringstream os;
    write_csv(os, g);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "x1,u,psi,psi.im");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        if (rows == 4) CHECK(line.substr(0, 4) == "1.5,");
    }
    CHECK(rows == 4);

    const std::string base = "test_fields_snapshot";
    write_raw(base, g);
    std::ifstream hj(base + ".json");
    auto h = nlohmann::json::parse(hj);
    CHECK(h["N"] == 4);
    CHECK(h["L"] == 2.0);
    CHECK(h["components"].size() == 3);
    std::ifstream bin(base + ".bin", std::ios::binary);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(bin)), {});
    REQUIRE(bytes.size() == 3 * 4 * 8);
    // 8th double is psi.re at index 3 == 3.0; last is psi.im == -1/3
    auto read = [&](int idx) {
        std::uint64_t u = 0;
        for (int b = 0; b < 8; ++b) u |= std::uint64_t(bytes[idx * 8 + b]) << (8 * b);
        double v;
        std::memcpy(&v, &u, 8);
        return v;
    };
    CHECK(read(7) == 3.0);
    CHECK(read(11) == -1.0 / 3);
    std::remove((base + ".json").c_str());
    std::remove((base + ".bin").c_str());
}
