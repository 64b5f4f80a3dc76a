#include "atomkit/angular.hpp"
#include "atomkit/error.hpp"
#include "atomkit/fields.hpp"
#include "atomkit/format.hpp"
#include "atomkit/oracle.hpp"
#include "atomkit/response.hpp"
#include "atomkit/scattering.hpp"
#include "atomkit/spectra.hpp"
#include "atomkit/table.hpp"
#include "atomkit/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using atomkit::Column;
using atomkit::Dimension;
using atomkit::Table;
using atomkit::pi;

namespace {

using Runner = std::function<Table()>;

struct Context {
    atomkit::Constants k;
};

const char* line_kind(atomkit::spectra::LineKind k)
{
    using atomkit::spectra::LineKind;
    switch (k) {
    case LineKind::normal: return "normal";
    case LineKind::zeeman_sigma_plus: return "sigma+";
    case LineKind::zeeman_sigma_minus: return "sigma-";
    case LineKind::zeeman_pi: return "pi";
    case LineKind::anomalous: return "anomalous";
    }
    return "";
}

const char* conic_name(atomkit::scattering::Conic c)
{
    using atomkit::scattering::Conic;
    return c == Conic::ellipse ? "ellipse" : c == Conic::parabola ? "parabola" : "hyperbola";
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v;
    if (n == 1) return {a};
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

// ---- spectra

void add_spectrum(CLI::App& app, Context& ctx, Runner& run)
{
    auto* sub = app.add_subcommand("spectrum", "Hydrogen levels. Columns: n, E, degeneracy");
    static int n_max = 5;
    static bool fd = false;
    sub->add_option("--n-max", n_max, "highest principal number")->capture_default_str()->check(CLI::Range(1, 1000));
    sub->add_flag("--oracle", fd, "add E_fd from the finite-difference eigensolver (l = 0, n <= 8)");
    sub->callback([&] {
        run = [&] {
            std::vector<Column> cols{{"n"}, {"E", Dimension::energy}, {"degeneracy"}};
            if (fd) cols.push_back({"E_fd", Dimension::energy});
            Table t(cols);
            for (int n = 1; n <= n_max; ++n) {
                std::vector<atomkit::Cell> row{(long long)n, atomkit::spectra::schrodinger_level(n),
                                               (long long)atomkit::spectra::degeneracy(n)};
                if (fd) {
                    if (n > 8) throw atomkit::DomainError("--oracle supports n <= 8");
                    row.push_back(atomkit::oracle::hydrogen_level_fd(n, 0).energy);
                }
                t.add(row);
            }
            return t;
        };
    });
    (void)ctx;
}

void add_series(CLI::App& app, Context&, Runner& run)
{
    auto* sub = app.add_subcommand("series", "Rydberg-Ritz series n -> m. Columns: n_upper, n_lower, omega");
    static int lower = 1, first = 0, last = 0;
    static bool limit = false;
    sub->add_option("--lower", lower, "lower level m")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--n-first", first, "first upper level (default m+1)");
    sub->add_option("--n-last", last, "last upper level (default m+5)");
    sub->add_flag("--limit", limit, "append the series limit as n_upper = 0");
    sub->callback([&] {
        run = [&] {
            const int a = first ? first : lower + 1, b = last ? last : lower + 5;
            Table t({{"n_upper"}, {"n_lower"}, {"omega", Dimension::frequency}});
            for (auto& l : atomkit::spectra::series_lines(lower, a, b))
                t.add({(long long)l.upper.n, (long long)l.lower.n, l.omega});
            if (limit) t.add({0LL, (long long)lower, atomkit::spectra::series_limit(lower)});
            return t;
        };
    });
}

void add_zeeman(CLI::App& app, Context& ctx, Runner& run)
{
    auto* z = app.add_subcommand("zeeman", "Zeeman effect");
    z->require_subcommand(1);
    {
        auto* s = z->add_subcommand("levels", "Shifted levels for every m. Columns: m, E");
        static int n = 2, l = 1;
        static double B = 0;
        static std::string mode = "orbital";
        s->add_option("--n", n)->capture_default_str();
        s->add_option("--l", l)->capture_default_str();
        s->add_option("--B", B, "field, atomic units")->capture_default_str();
        s->add_option("--mode", mode)->check(CLI::IsMember({"orbital", "pauli+", "pauli-"}))->capture_default_str();
        s->callback([&] {
            run = [&] {
                using atomkit::spectra::ZeemanMode;
                ZeemanMode m = mode == "orbital" ? ZeemanMode::orbital
                             : mode == "pauli+"  ? ZeemanMode::pauli_plus
                                                 : ZeemanMode::pauli_minus;
                Table t({{"m"}, {"E", Dimension::energy}});
                for (int mm = -l; mm <= l; ++mm)
                    t.add({(long long)mm, atomkit::spectra::zeeman_levels(n, l, mm, B, m, ctx.k)});
                return t;
            };
        });
    }
    {
        auto* s = z->add_subcommand("normal", "Normal triplet. Columns: kind, omega");
        static double omega0 = 0.375, B = 0;
        s->add_option("--omega0", omega0)->capture_default_str();
        s->add_option("--B", B)->capture_default_str();
        s->callback([&] {
            run = [&] {
                Table t({{"kind"}, {"omega", Dimension::frequency}});
                for (auto& l : atomkit::spectra::normal_zeeman_triplet(omega0, B, ctx.k))
                    t.add({std::string(line_kind(l.kind)), l.omega});
                return t;
            };
        });
    }
    {
        auto* s = z->add_subcommand("anomalous", "Anomalous Zeeman line between terms (L, J, M). Columns: omega, g_upper, g_lower");
        static int L = 1, L2 = 0;
        static std::string J = "3/2", M = "1/2", J2 = "1/2", M2 = "1/2";
        static double omega0 = 0.375, B = 0;
        static bool dj0 = false;
        s->add_option("--L", L)->capture_default_str();
        s->add_option("--J", J)->capture_default_str();
        s->add_option("--M", M)->capture_default_str();
        s->add_option("--L2", L2)->capture_default_str();
        s->add_option("--J2", J2)->capture_default_str();
        s->add_option("--M2", M2)->capture_default_str();
        s->add_option("--omega0", omega0)->capture_default_str();
        s->add_option("--B", B)->capture_default_str();
        s->add_flag("--allow-dj0", dj0, "also admit J' = J");
        s->callback([&] {
            run = [&] {
                using atomkit::parse_halfint;
                atomkit::spectra::Term up{L, parse_halfint(J), parse_halfint(M)};
                atomkit::spectra::Term lo{L2, parse_halfint(J2), parse_halfint(M2)};
                auto line = atomkit::spectra::anomalous_zeeman_lines(up, lo, omega0, B, ctx.k, dj0);
                Table t({{"omega", Dimension::frequency}, {"g_upper"}, {"g_lower"}});
                t.add({line.omega, atomkit::angular::lande_g(up.L, up.J), atomkit::angular::lande_g(lo.L, lo.J)});
                return t;
            };
        });
    }
    {
        auto* s = z->add_subcommand("classical", "Classical oscillator modes. Columns: omega_pi, omega_plus, omega_minus");
        static double omega0 = 1, B = 0;
        s->add_option("--omega0", omega0)->capture_default_str();
        s->add_option("--B", B)->capture_default_str();
        s->callback([&] {
            run = [&] {
                auto m = atomkit::fields::classical_zeeman_modes(omega0, B, ctx.k);
                Table t({{"omega_pi", Dimension::frequency}, {"omega_plus", Dimension::frequency},
                         {"omega_minus", Dimension::frequency}});
                t.add({m.omega_pi, m.omega_plus, m.omega_minus});
                return t;
            };
        });
    }
    {
        auto* s = z->add_subcommand("lande", "Lande factor. Columns: L, J, g, g_exact");
        static int L = 1;
        static std::string J = "3/2";
        s->add_option("--L", L)->capture_default_str();
        s->add_option("--J", J)->capture_default_str();
        s->callback([&] {
            run = [&] {
                auto j = atomkit::parse_halfint(J);
                Table t({{"L"}, {"J"}, {"g"}, {"g_exact"}});
                t.add({(long long)L, j.str(), atomkit::angular::lande_g(L, j), atomkit::angular::lande_g_exact(L, j).str()});
                return t;
            };
        });
    }
}

void add_dirac(CLI::App& app, Context& ctx, Runner& run)
{
    auto* sub = app.add_subcommand(
        "dirac", "Dirac levels in units of mu c^2. Columns: n_r, l, E_mc2, E_approx_mc2, binding, termination_residual");
    static int nr = -1, l = -1, sum_max = 3;
    sub->add_option("--nr", nr, "radial number (with --l prints one row)");
    sub->add_option("--l", l, "orbital number");
    sub->add_option("--sum-max", sum_max, "table of all n_r + l <= sum-max otherwise")->capture_default_str();
    sub->callback([&] {
        run = [&] {
            Table t({{"n_r"}, {"l"}, {"E_mc2"}, {"E_approx_mc2"}, {"binding", Dimension::energy},
                     {"termination_residual"}});
            auto row = [&](int a, int b) {
                const double E = atomkit::spectra::dirac_level(a, b, ctx.k.alpha);
                auto s = atomkit::spectra::dirac_radial_series(a, b, ctx.k.alpha);
                t.add({(long long)a, (long long)b, E, atomkit::spectra::dirac_level_approx(a, b, ctx.k.alpha),
                       (E - 1) * ctx.k.c() * ctx.k.c(), s.termination_residual});
            };
            if ((nr >= 0) != (l >= 0)) throw atomkit::DomainError("give both --nr and --l, or neither");
            if (nr >= 0) row(nr, l);
            else
                for (int a = 0; a <= sum_max; ++a)
                    for (int b = 0; a + b <= sum_max; ++b) row(a, b);
            return t;
        };
    });
}

void add_select(CLI::App& app, Context&, Runner& run)
{
    auto* sub = app.add_subcommand(
        "select", "Dipole selection rule. Columns: l, m, l2, m2, allowed[, n, n2, dipole_x, dipole_y, dipole_z]");
    static int l = 0, m = 0, l2 = 1, m2 = 0, n = 0, n2 = 0;
    sub->add_option("--l", l)->capture_default_str();
    sub->add_option("--m", m)->capture_default_str();
    sub->add_option("--l2", l2)->capture_default_str();
    sub->add_option("--m2", m2)->capture_default_str();
    sub->add_option("--n", n, "with --n2: also print |<a|x_p|b>| from quadrature");
    sub->add_option("--n2", n2);
    sub->callback([&] {
        run = [&] {
            std::vector<Column> cols{{"l"}, {"m"}, {"l2"}, {"m2"}, {"allowed"}};
            const bool quad = n > 0 || n2 > 0;
            if (quad)
                for (const char* c : {"n", "n2", "dipole_x", "dipole_y", "dipole_z"})
                    cols.push_back({c, std::string(c).rfind("dipole", 0) == 0 ? Dimension::length : Dimension::none});
            Table t(cols);
            std::vector<atomkit::Cell> row{(long long)l, (long long)m, (long long)l2, (long long)m2,
                                           atomkit::spectra::selection_allowed(l, m, l2, m2)};
            if (quad) {
                if (n <= l || n2 <= l2 || m < -l || m > l || m2 < -l2 || m2 > l2)
                    throw atomkit::DomainError("invalid state labels for the dipole quadrature");
                row.push_back((long long)n);
                row.push_back((long long)n2);
                using atomkit::oracle::Axis;
                for (Axis p : {Axis::x, Axis::y, Axis::z})
                    row.push_back(std::abs(atomkit::oracle::dipole_matrix_element({n, l, m}, {n2, l2, m2}, p)));
            }
            t.add(row);
            return t;
        };
    });
}

// ---- scattering

void add_scatter(CLI::App& app, Context& ctx, Runner& run)
{
    namespace sc = atomkit::scattering;
    auto* s = app.add_subcommand("scatter", "Scattering cross sections");
    s->require_subcommand(1);
    {
        auto* c = s->add_subcommand("thomson", "Thomson scattering in units of r_e^2. Columns: theta, phi, dsigma_re2 or sigma_re2");
        static bool total = false;
        static int samples = 7;
        static double phi = 0;
        c->add_flag("--total", total, "print the total cross section");
        c->add_option("--samples", samples, "theta samples over [0, pi]")->capture_default_str();
        c->add_option("--phi", phi, "azimuth of the incident polarization")->capture_default_str();
        c->callback([&] {
            run = [&] {
                if (total) {
                    Table t({{"sigma_re2"}});
                    t.add({sc::thomson_total()});
                    return t;
                }
                Table t({{"theta"}, {"phi"}, {"dsigma_re2"}, {"unpolarized_re2"}});
                for (double th : linspace(0, pi, samples))
                    t.add({th, phi, sc::thomson_differential(phi, th), sc::thomson_unpolarized(th)});
                return t;
            };
        });
    }
    {
        auto* c = s->add_subcommand("formfactor", "Atom form factor F(K). Columns: K, F, closed_form");
        static double a = 1, kmax = 10;
        static int samples = 11;
        c->add_option("--a", a, "length scale")->capture_default_str();
        c->add_option("--K-max", kmax)->capture_default_str();
        c->add_option("--samples", samples)->capture_default_str();
        c->callback([&] {
            run = [&] {
                Table t({{"K"}, {"F"}, {"closed_form"}});
                for (double K : linspace(0, kmax, samples))
                    t.add({K, sc::form_factor_K(K, a), std::pow(1 + K * K * a * a / 4, -2)});
                return t;
            };
        });
    }
    {
        auto* c = s->add_subcommand("rutherford",
                                    "Rutherford cross section. Columns: theta, classical, quantum (Q=-1, Z=1, M=1, v=k)");
        static double Q = 1, Z = 1, M = 1, v = 1, eps = 0;
        static int samples = 20;
        c->add_option("--Q", Q)->capture_default_str();
        c->add_option("--Z", Z)->capture_default_str();
        c->add_option("--M", M)->capture_default_str();
        c->add_option("--v", v)->capture_default_str();
        c->add_option("--eps", eps, "screening for the quantum formula")->capture_default_str();
        c->add_option("--samples", samples)->capture_default_str();
        c->callback([&] {
            run = [&] {
                Table t({{"theta"}, {"classical", Dimension::area}, {"quantum", Dimension::area}});
                for (int i = 1; i <= samples; ++i) {
                    const double th = pi * i / samples;
                    t.add({th, sc::classical_rutherford(th, Q, Z, M, v), sc::quantum_rutherford(th, M * v, eps)});
                }
                return t;
            };
        });
    }
    {
        auto* c = s->add_subcommand("deflection", "Deflection angle from trajectories. Columns: b, theta_formula, theta_trajectory, energy_drift");
        static std::vector<double> bs{0.1, 1, 10};
        static double Q = 1, Z = 1, M = 1, v = 1;
        c->add_option("--b", bs, "impact parameters")->capture_default_str();
        c->add_option("--Q", Q)->capture_default_str();
        c->add_option("--Z", Z)->capture_default_str();
        c->add_option("--M", M)->capture_default_str();
        c->add_option("--v", v)->capture_default_str();
        c->callback([&] {
            run = [&] {
                Table t({{"b", Dimension::length}, {"theta_formula"}, {"theta_trajectory"}, {"energy_drift"}});
                for (double b : bs) {
                    auto r = sc::deflection_by_trajectory(b, Q, Z, M, v);
                    t.add({b, sc::deflection_angle(b, Q, Z, M, v), r.theta, r.energy_drift});
                }
                return t;
            };
        });
    }
    {
        auto* c = s->add_subcommand("photo", "Photoeffect angular law and red bound. Columns: theta, phi, pattern");
        static double omega = 0, omega1 = -0.5;
        static int samples = 7;
        c->add_option("--omega", omega, "photon frequency; with it prints regime instead")->capture_default_str();
        c->add_option("--omega1", omega1, "bound level")->capture_default_str();
        c->add_option("--samples", samples)->capture_default_str();
        c->callback([&] {
            run = [&] {
                if (omega > 0) {
                    Table t({{"omega", Dimension::frequency}, {"red_bound", Dimension::frequency}, {"regime"}});
                    t.add({omega, sc::red_bound(omega1), std::string(sc::photo_regime(omega, omega1) == sc::PhotoRegime::long_range ? "long_range" : "short_range")});
                    return t;
                }
                Table t({{"theta"}, {"phi"}, {"pattern"}});
                for (double th : linspace(0, pi, samples)) t.add({th, 0.0, sc::photoeffect_pattern(th, 0.0)});
                return t;
            };
        });
    }
    (void)ctx;
}

void add_kepler(CLI::App& app, Context&, Runner& run)
{
    auto* sub = app.add_subcommand("kepler", "Kepler orbit. Columns: t, x1, x2, v1, v2, energy, angular_momentum, conic");
    static std::vector<double> x{1, 0}, v{0, 1};
    static double gm = 1, t_end = 2 * pi;
    static int every = 1;
    sub->add_option("--x", x, "initial position")->expected(2)->capture_default_str();
    sub->add_option("--v", v, "initial velocity")->expected(2)->capture_default_str();
    sub->add_option("--gm", gm)->capture_default_str();
    sub->add_option("--t-end", t_end)->capture_default_str();
    sub->add_option("--every", every, "print every k-th accepted step")->capture_default_str()->check(CLI::PositiveNumber);
    sub->callback([&] {
        run = [&] {
            auto tr = atomkit::scattering::kepler_trajectory({x[0], x[1]}, {v[0], v[1]}, gm, t_end);
            Table t({{"t", Dimension::time}, {"x1", Dimension::length}, {"x2", Dimension::length}, {"v1", Dimension::velocity},
                     {"v2", Dimension::velocity}, {"energy", Dimension::energy}, {"angular_momentum"}, {"conic"}});
            for (std::size_t i = 0; i < tr.samples.size(); ++i) {
                if (i % every && i + 1 != tr.samples.size()) continue;
                auto& s = tr.samples[i];
                t.add({s.t, s.x[0], s.x[1], s.v[0], s.v[1], s.energy, s.angular_momentum, std::string(conic_name(tr.conic))});
            }
            return t;
        };
    });
}

// ---- fields

void add_fields(CLI::App& app, Context& ctx, Runner& run)
{
    namespace fl = atomkit::fields;
    auto* f = app.add_subcommand("fields", "Spectral field evolution and radiation");
    f->require_subcommand(1);
    {
        auto* s = f->add_subcommand("planewave", "Plane wave advanced by the spectral propagator. Columns: step, t, energy, max_error, div_E, div_B");
        static int N = 16, mode = 1, steps = 10;
        static double L = 2 * pi, dt = 0.01, E0 = 1;
        static std::string raw;
        s->add_option("--N", N)->capture_default_str();
        s->add_option("--L", L)->capture_default_str();
        s->add_option("--mode", mode)->capture_default_str();
        s->add_option("--steps", steps)->capture_default_str();
        s->add_option("--dt", dt)->capture_default_str();
        s->add_option("--E0", E0)->capture_default_str();
        s->add_option("--raw", raw, "write the final snapshot to BASE.bin and BASE.json");
        s->callback([&] {
            run = [&] {
                const double c = ctx.k.c();
                auto F = fl::plane_wave(N, L, mode, E0, c, 0);
                Table t({{"step"}, {"t", Dimension::time}, {"energy", Dimension::energy}, {"max_error"}, {"div_E"}, {"div_B"}});
                for (int i = 0; i <= steps; ++i) {
                    if (i) F = fl::maxwell_propagate(F, {}, (i - 1) * dt, dt);
                    auto ex = fl::plane_wave(N, L, mode, E0, c, i * dt);
                    double err = 0;
                    for (int a = 0; a < 6; ++a)
                        for (std::size_t p = 0; p < F.grid.points(); ++p) err = std::max(err, std::abs(F.grid[a][p] - ex.grid[a][p]));
                    auto d = fl::maxwell_diagnostics(F);
                    t.add({(long long)i, i * dt, d.energy, err, d.div_E_residual, d.div_B_residual});
                }
                if (!raw.empty()) fl::write_raw(raw, F.grid);
                return t;
            };
        });
    }
    {
        auto* s = f->add_subcommand("packet", "Free Gaussian packet. Columns: t, charge, energy, momentum1, centroid1");
        static int dims = 1, N = 256, samples = 11;
        static double L = 64, sigma = 2, kstar = 2, t_end = 5, mass = 1, c = 1;
        static std::string kind = "schrodinger", raw;
        s->add_option("--kind", kind)->check(CLI::IsMember({"schrodinger", "klein-gordon"}))->capture_default_str();
        s->add_option("--dims", dims)->check(CLI::IsMember({1, 3}))->capture_default_str();
        s->add_option("--N", N)->capture_default_str();
        s->add_option("--L", L)->capture_default_str();
        s->add_option("--sigma", sigma)->capture_default_str();
        s->add_option("--k", kstar, "carrier wave number along x1")->capture_default_str();
        s->add_option("--t-end", t_end)->capture_default_str();
        s->add_option("--samples", samples)->capture_default_str()->check(CLI::Range(2, 100000));
        s->add_option("--mass", mass)->capture_default_str();
        s->add_option("--c", c, "wave speed for Klein-Gordon")->capture_default_str();
        s->add_option("--raw", raw, "write the final field to BASE.bin and BASE.json");
        s->callback([&] {
            run = [&] {
                auto psi = fl::gaussian_packet(dims, N, L, {L / 4, L / 2, L / 2}, sigma, {kstar, 0, 0});
                auto K = kind == "schrodinger" ? fl::Dispersion::schrodinger : fl::Dispersion::klein_gordon;
                auto r = fl::free_dispersion_evolve(psi, K, linspace(0, t_end, samples), {mass, c});
                Table t({{"t"}, {"charge"}, {"energy"}, {"momentum1"}, {"centroid1"}});
                const auto& cs = r.conserved;
                for (std::size_t i = 0; i < cs.t.size(); ++i)
                    t.add({cs.t[i], cs.charge[i], cs.energy[i], cs.momentum[i][0], cs.centroid[i][0]});
                if (!raw.empty()) fl::write_raw(raw, r.psi);
                std::cerr << "centroid velocity " << atomkit::fmt17(fl::centroid_velocity(cs, 0)) << ", group velocity "
                          << atomkit::fmt17(fl::group_velocity(K, kstar, {mass, c})) << "\n";
                return t;
            };
        });
    }
    {
        auto* s = f->add_subcommand("hertz", "Hertz dipole far field for p = cos(nu t) e3. Columns: theta, S_r, S_r_expected");
        static double nu = 0.3, r = 1e4, t0 = 0;
        static int samples = 7;
        s->add_option("--nu", nu)->capture_default_str();
        s->add_option("--r", r)->capture_default_str();
        s->add_option("--t", t0)->capture_default_str();
        s->add_option("--samples", samples)->capture_default_str();
        s->callback([&] {
            run = [&] {
                const double c = ctx.k.c();
                fl::DipoleSource d;
                d.p = [](double s) { return fl::Vec3{0, 0, std::cos(nu * s)}; };
                d.pddot = [](double s) { return fl::Vec3{0, 0, -nu * nu * std::cos(nu * s)}; };
                Table t({{"theta"}, {"S_r"}, {"S_r_expected"}});
                for (double th : linspace(0, pi, samples)) {
                    fl::Vec3 n{std::sin(th), 0, std::cos(th)};
                    auto h = fl::hertz_dipole(d, {r * n[0], r * n[1], r * n[2]}, t0, c);
                    const double a = d.pddot(t0 - r / c)[2];
                    t.add({th, h.S[0] * n[0] + h.S[2] * n[2],
                           std::sin(th) * std::sin(th) * a * a / (4 * pi * c * c * c * r * r)});
                }
                return t;
            };
        });
    }
}

void add_fresnel(CLI::App& app, Context&, Runner& run)
{
    auto* sub = app.add_subcommand(
        "fresnel", "Fresnel amplitudes. Columns: alpha, alpha_refracted, r_perp_re, r_perp_im, t_perp, r_par_re, r_par_im, t_par, R_perp, T_perp, R_par, T_par, tir");
    static double n1 = 1, n2 = 1.5;
    static std::vector<double> alphas;
    static int samples = 10;
    sub->add_option("--n1", n1)->capture_default_str();
    sub->add_option("--n2", n2)->capture_default_str();
    sub->add_option("--alpha", alphas, "incidence angles (default: samples over [0, pi/2))");
    sub->add_option("--samples", samples)->capture_default_str();
    sub->callback([&] {
        run = [&] {
            using atomkit::fields::Polarization;
            std::vector<double> as = alphas;
            if (as.empty())
                for (int i = 0; i < samples; ++i) as.push_back(pi / 2 * i / samples);
            Table t({{"alpha"}, {"alpha_refracted"}, {"r_perp_re"}, {"r_perp_im"}, {"t_perp"}, {"r_par_re"}, {"r_par_im"},
                     {"t_par"}, {"R_perp"}, {"T_perp"}, {"R_par"}, {"T_par"}, {"tir"}});
            for (double a : as) {
                auto p = atomkit::fields::fresnel(a, n1, n2, Polarization::perp);
                auto q = atomkit::fields::fresnel(a, n1, n2, Polarization::par);
                t.add({a, p.alpha_refracted, p.r.real(), p.r.imag(), std::abs(p.t), q.r.real(), q.r.imag(), std::abs(q.t),
                       p.R, p.T, q.R, q.T, p.total_internal_reflection});
            }
            return t;
        };
    });
}

// ---- response

void add_response(CLI::App& app, Context& ctx, Runner& run)
{
    namespace rs = atomkit::response;
    auto* r = app.add_subcommand("response", "Dielectric and magnetic response");
    r->require_subcommand(1);
    {
        auto* s = r->add_subcommand("kk", "Hydrogen Kramers-Kronig susceptibility. Columns: omega, chi_e, epsilon, tail_estimate");
        static double wmin = 0, wmax = 0.35, n = 1e-3;
        static int samples = 8, n_max = 10;
        static std::string conv = "absolute";
        s->add_option("--omega-min", wmin)->capture_default_str();
        s->add_option("--omega-max", wmax)->capture_default_str();
        s->add_option("--samples", samples)->capture_default_str()->check(CLI::PositiveNumber);
        s->add_option("--density", n, "atoms per bohr^3")->capture_default_str();
        s->add_option("--n-max", n_max, "highest np level kept")->capture_default_str();
        s->add_option("--convention", conv, "sign of omega_1l")->check(CLI::IsMember({"absolute", "as-printed"}))->capture_default_str();
        s->callback([&] {
            run = [&] {
                auto set = rs::hydrogen_transitions(n_max);
                auto c = conv == "absolute" ? rs::KKConvention::absolute : rs::KKConvention::as_printed;
                Table t({{"omega", Dimension::frequency}, {"chi_e"}, {"epsilon"}, {"tail_estimate"}});
                for (double w : linspace(wmin, wmax, samples))
                    t.add({w, rs::kk_susceptibility(w, set.lines, n, c), rs::kk_epsilon(w, set.lines, n, c),
                           rs::kk_tail_estimate(w, set, n, c)});
                return t;
            };
        });
    }
    {
        auto* s = r->add_subcommand("poles", "Transition frequencies and strengths. Columns: n, omega_1l, abs_x2");
        static int n_max = 10;
        s->add_option("--n-max", n_max)->capture_default_str();
        s->callback([&] {
            run = [&] {
                auto set = rs::hydrogen_transitions(n_max);
                Table t({{"n"}, {"omega_1l", Dimension::frequency}, {"abs_x2", Dimension::area}});
                for (std::size_t i = 0; i < set.lines.size(); ++i)
                    t.add({(long long)(i + 2), set.lines[i].omega_1l, set.lines[i].x2});
                return t;
            };
        });
    }
    {
        auto* s = r->add_subcommand("drude", "Drude permittivity. Columns: omega, eps_re, eps_im");
        static std::vector<std::string> osc{"0.5,1,0.01"};
        static double n = 1e-3, wmin = 0, wmax = 1;
        static int samples = 11;
        s->add_option("--osc", osc, "oscillator omega,f,gamma (repeatable)")->capture_default_str();
        s->add_option("--density", n)->capture_default_str();
        s->add_option("--omega-min", wmin)->capture_default_str();
        s->add_option("--omega-max", wmax)->capture_default_str();
        s->add_option("--samples", samples)->capture_default_str()->check(CLI::PositiveNumber);
        s->callback([&] {
            run = [&] {
                rs::OscillatorSet set;
                set.n = n;
                for (auto& o : osc) {
                    std::stringstream ss(o);
                    std::string a, b, c;
                    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ','))
                        throw atomkit::DomainError("--osc expects omega,f,gamma: " + o);
                    set.oscillators.push_back({std::stod(a), std::stod(b), std::stod(c)});
                }
                Table t({{"omega", Dimension::frequency}, {"eps_re"}, {"eps_im"}});
                for (double w : linspace(wmin, wmax, samples)) {
                    auto e = rs::drude_epsilon(w, set);
                    t.add({w, e.real(), e.imag()});
                }
                return t;
            };
        });
    }
    {
        auto* s = r->add_subcommand("langevin", "Langevin diamagnetic susceptibility. Columns: n, l, mean_r2, chi_m");
        static int n = 1, l = 0;
        static double density = 1;
        s->add_option("--n", n)->capture_default_str();
        s->add_option("--l", l)->capture_default_str();
        s->add_option("--density", density)->capture_default_str();
        s->callback([&] {
            run = [&] {
                const double r2 = atomkit::oracle::radial_moment(n, l, 2);
                Table t({{"n"}, {"l"}, {"mean_r2", Dimension::area}, {"chi_m"}});
                t.add({(long long)n, (long long)l, r2, rs::langevin_chi(r2, density, ctx.k)});
                return t;
            };
        });
    }
    {
        auto* s = r->add_subcommand("paramagnetic", "Paramagnetic moment for each m. Columns: m, moment");
        static int l = 1;
        s->add_option("--l", l)->capture_default_str();
        s->callback([&] {
            run = [&] {
                Table t({{"m"}, {"moment"}});
                for (int m = -l; m <= l; ++m) t.add({(long long)m, rs::paramagnetic_moment(m, ctx.k)});
                return t;
            };
        });
    }
}

void add_verify(CLI::App& app, Context&, Runner& run, bool& failed)
{
    auto* sub = app.add_subcommand("verify", "Run the oracle cross-checks. Columns: id, name, pass, residual, tolerance, detail (timings on stderr)");
    static std::vector<int> only;
    sub->add_option("--only", only, "criterion ids to run");
    sub->callback([&] {
        run = [&] {
            Table t({{"id"}, {"name"}, {"pass"}, {"residual"}, {"tolerance"}, {"detail"}});
            std::vector<int> ids = only;
            if (ids.empty())
                for (int i = 1; i <= atomkit::verify::check_count(); ++i) ids.push_back(i);
            for (int id : ids) {
                auto r = atomkit::verify::run_check(id);
                if (!r.pass) failed = true;
                t.add({(long long)r.id, r.name, r.pass, r.residual, r.tolerance, r.detail});
                std::cerr << "check " << r.id << ": " << atomkit::fmt17(r.seconds) << " s\n";
            }
            return t;
        };
    });
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"atomkit: hydrogen spectra, angular momentum, scattering, fields and response in atomic units"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_all_flag("--help-all", "Expand all help");
    std::string format = "csv", units = "atomic";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--units", units, "unit system for dimensioned columns")
        ->check(CLI::IsMember({"atomic", "si", "gaussian"}))
        ->capture_default_str();
    app.footer("ATOMKIT_ALPHA overrides the fine-structure constant (default 1/137.035999).\n"
               "Exit codes: 0 success, 1 computation error (typed name on stderr), 2 usage error.");

    Context ctx;
    Runner run;
    bool failed = false;
    add_spectrum(app, ctx, run);
    add_series(app, ctx, run);
    add_zeeman(app, ctx, run);
    add_dirac(app, ctx, run);
    add_select(app, ctx, run);
    add_scatter(app, ctx, run);
    add_kepler(app, ctx, run);
    add_fields(app, ctx, run);
    add_fresnel(app, ctx, run);
    add_response(app, ctx, run);
    add_verify(app, ctx, run, failed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ctx.k = atomkit::Constants::from_env();
        Table t = atomkit::convert_units(run(), atomkit::parse_units(units));
        if (format == "json") atomkit::write_json(std::cout, t);
        else atomkit::write_csv(std::cout, t);
    } catch (const atomkit::Error& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "Error: " << e.what() << "\n";
        return 1;
    }
    return failed ? 1 : 0;
}
