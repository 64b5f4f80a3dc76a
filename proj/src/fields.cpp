#include "atomkit/fields.hpp"
#include "atomkit/error.hpp"
#include "atomkit/format.hpp"
#include "atomkit/ode.hpp"
#include "atomkit/quadrature.hpp"

#include <fftw3.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

namespace atomkit::fields {

namespace {

const cplx I(0, 1);

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// k x v for real k and complex v
CVec3 kcross(const Vec3& k, const CVec3& v)
{
    return {k[1] * v[2] - k[2] * v[1], k[2] * v[0] - k[0] * v[2], k[0] * v[1] - k[1] * v[0]};
}
cplx kdot(const Vec3& k, const CVec3& v) { return k[0] * v[0] + k[1] * v[1] + k[2] * v[2]; }

// FFTW planning is not thread-safe; plans are cached per shape and direction.
fftw_plan get_plan(int dims, int N, int sign)
{
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(dims, N, sign);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::size_t n = 1;
    for (int d = 0; d < dims; ++d) n *= N;
    auto* buf = fftw_alloc_complex(n);
    int shape[3] = {N, N, N};
    fftw_plan p = fftw_plan_dft(dims, shape, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    cache[key] = p;
    return p;
}

void fft(const SpectralGrid& g, std::vector<cplx>& a, int sign)
{
    if (a.size() != g.points()) throw DomainError("array size does not match grid");
    auto* p = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(get_plan(g.dims, g.N, sign), p, p);
}

}  // namespace

SpectralGrid::SpectralGrid(int d, int n, double l, std::vector<std::string> nm)
    : dims(d), N(n), L(l), names(std::move(nm))
{
    if (d != 1 && d != 3) throw DomainError("spectral grid must be 1D or 3D");
    if (n < 2 || !(l > 0)) throw DomainError("spectral grid needs N >= 2 and L > 0");
    comps.assign(names.size(), std::vector<cplx>(points()));
}

std::size_t SpectralGrid::points() const
{
    std::size_t n = 1;
    for (int d = 0; d < dims; ++d) n *= N;
    return n;
}

double SpectralGrid::cell_volume() const { return std::pow(h(), dims); }

Vec3 SpectralGrid::x(std::size_t idx) const
{
    Vec3 r{};
    for (int d = dims - 1; d >= 0; --d) {
        r[d] = (idx % N) * h();
        idx /= N;
    }
    return r;
}

Vec3 SpectralGrid::k(std::size_t idx) const
{
    Vec3 r{};
    for (int d = dims - 1; d >= 0; --d) {
        int n = int(idx % N);
        if (n > N / 2) n -= N;
        r[d] = 2 * pi * n / L;
        idx /= N;
    }
    return r;
}

void fft_forward(const SpectralGrid& g, std::vector<cplx>& a) { fft(g, a, FFTW_FORWARD); }

void fft_backward(const SpectralGrid& g, std::vector<cplx>& a)
{
    fft(g, a, FFTW_BACKWARD);
    const double s = 1.0 / double(g.points());
    for (auto& v : a) v *= s;
}

// ---- Maxwell

MaxwellField::MaxwellField(SpectralGrid geometry, double c_) : c(c_)
{
    grid = SpectralGrid(geometry.dims, geometry.N, geometry.L, {"E1", "E2", "E3", "B1", "B2", "B3"});
    if (!(c > 0)) throw DomainError("speed of light must be positive");
}

MaxwellField::MaxwellField(int dims, int N, double L, double c_)
    : MaxwellField(SpectralGrid(dims, N, L, {}), c_)
{
}

namespace {

std::vector<cplx> sample(const SpectralGrid& g, const ScalarSource& f, double t)
{
    std::vector<cplx> out(g.points());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(t, g.x(i));
    return out;
}

std::array<std::vector<cplx>, 3> sample(const SpectralGrid& g, const VectorSource& f, double t)
{
    std::array<std::vector<cplx>, 3> out;
    for (auto& o : out) o.resize(g.points());
    for (std::size_t i = 0; i < g.points(); ++i) {
        auto v = f(t, g.x(i));
        for (int a = 0; a < 3; ++a) out[a][i] = v[a];
    }
    return out;
}

// (1/points) sum |a|, the size of the mean-free part of a transformed array is compared to this
double spectral_scale(const std::vector<cplx>& a)
{
    double s = 0;
    for (auto& v : a) s = std::max(s, std::abs(v));
    return s;
}

// phi(a, tau) = int_0^tau e^{i a s} ds
cplx phi(double a, double tau)
{
    const double x = a * tau;
    if (std::abs(x) < 1e-4) {
        // series of (e^{ix} - 1)/(ix)
        const cplx ix = I * x;
        return tau * (1.0 + ix / 2.0 + ix * ix / 6.0 + ix * ix * ix / 24.0 + ix * ix * ix * ix / 120.0);
    }
    return (std::exp(I * x) - 1.0) / (I * a);
}

// int_{t0}^{t0+tau} e^{i a s} ds
cplx window(double a, double t0, double tau) { return std::exp(I * a * t0) * phi(a, tau); }

}  // namespace

std::vector<cplx> harmonic_charge(const SpectralGrid& g, const HarmonicSource& s)
{
    if (!(s.nu != 0)) throw DomainError("harmonic source needs nonzero frequency");
    std::array<std::vector<cplx>, 3> J = s.j_amp;
    for (auto& a : J) fft_forward(g, a);
    std::vector<cplx> P(g.points());
    for (std::size_t i = 0; i < P.size(); ++i) {
        auto k = g.k(i);
        P[i] = (k[0] * J[0][i] + k[1] * J[1][i] + k[2] * J[2][i]) / s.nu;
    }
    fft_backward(g, P);
    return P;
}

MaxwellDiagnostics maxwell_diagnostics(const MaxwellField& f, const ScalarSource& rho, double t)
{
    const auto& g = f.grid;
    MaxwellDiagnostics d;
    const double dv = g.cell_volume();
    for (std::size_t i = 0; i < g.points(); ++i) {
        Vec3 E{f.E(0)[i].real(), f.E(1)[i].real(), f.E(2)[i].real()};
        Vec3 B{f.B(0)[i].real(), f.B(1)[i].real(), f.B(2)[i].real()};
        d.energy += (dot(E, E) + dot(B, B)) * dv / (8 * pi);
        auto s = cross(E, B);
        for (int a = 0; a < 3; ++a) d.momentum[a] += s[a] * dv / (4 * pi * f.c);
    }
    std::array<std::vector<cplx>, 6> F;
    for (int a = 0; a < 6; ++a) {
        F[a] = g.comps[a];
        fft_forward(g, F[a]);
    }
    std::vector<cplx> R;
    if (rho) {
        R = sample(g, rho, t);
        fft_forward(g, R);
    }
    double scaleE = 0, scaleB = 0, resE = 0, resB = 0;
    for (std::size_t i = 0; i < g.points(); ++i) {
        auto k = g.k(i);
        const double kn = norm(k);
        CVec3 E{F[0][i], F[1][i], F[2][i]}, B{F[3][i], F[4][i], F[5][i]};
        cplx dE = I * kdot(k, E) - (rho ? 4 * pi * R[i] : 0.0);
        cplx dB = I * kdot(k, B);
        resE = std::max(resE, std::abs(dE));
        resB = std::max(resB, std::abs(dB));
        scaleE = std::max(scaleE, kn * std::sqrt(std::norm(E[0]) + std::norm(E[1]) + std::norm(E[2])));
        scaleB = std::max(scaleB, kn * std::sqrt(std::norm(B[0]) + std::norm(B[1]) + std::norm(B[2])));
        if (rho) scaleE = std::max(scaleE, 4 * pi * std::abs(R[i]));
    }
    d.div_E_residual = scaleE > 0 ? resE / scaleE : resE;
    d.div_B_residual = scaleB > 0 ? resB / scaleB : resB;
    return d;
}

MaxwellField maxwell_propagate(const MaxwellField& f, const MaxwellSources& src, double t0, double dt)
{
    const auto& g = f.grid;
    const double c = f.c;
    const std::size_t n = g.points();
    const bool has_general = bool(src.j);
    const bool has_harm = src.harmonic.has_value();
    if (has_general && has_harm) throw DomainError("give either a general or a harmonic source, not both");

    std::array<std::vector<cplx>, 6> F;
    for (int a = 0; a < 6; ++a) {
        F[a] = g.comps[a];
        fft_forward(g, F[a]);
    }

    // initial constraints
    ScalarSource rho0 = src.rho;
    std::vector<cplx> Rh0, Ph;  // rho-hat at t0; harmonic charge amplitude
    std::array<std::vector<cplx>, 3> Jh, Jh2;  // harmonic current amplitude and its conjugate partner
    if (has_harm) {
        const auto& h = *src.harmonic;
        if (h.nu == 0) throw DomainError("harmonic source needs nonzero frequency");
        for (int a = 0; a < 3; ++a) {
            Jh[a] = h.j_amp[a];
            fft_forward(g, Jh[a]);
        }
        // transform of conj(J): conj(Jhat(-k))
        for (int a = 0; a < 3; ++a) {
            Jh2[a].resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                // index of -k
                std::size_t j = 0, stride = 1, rem = i;
                for (int d = 0; d < g.dims; ++d) {
                    std::size_t q = rem % g.N;
                    rem /= g.N;
                    j += ((g.N - q) % g.N) * stride;
                    stride *= g.N;
                }
                Jh2[a][i] = std::conj(Jh[a][j]);
            }
        }
        Ph.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto k = g.k(i);
            Ph[i] = (k[0] * Jh[0][i] + k[1] * Jh[1][i] + k[2] * Jh[2][i]) / h.nu;
        }
    }
    auto rho_hat = [&](double t) {
        std::vector<cplx> r(n);
        if (has_harm) {
            const double nu = src.harmonic->nu;
            // rho = Re(P e^{-i nu t}); transform of conj(P) e^{i nu t} pairs with -k
            std::vector<cplx> P = Ph;
            fft_backward(g, P);
            for (std::size_t i = 0; i < n; ++i) r[i] = (P[i] * std::exp(-I * nu * t)).real();
            fft_forward(g, r);
        } else if (rho0) {
            r = sample(g, rho0, t);
            fft_forward(g, r);
        }
        return r;
    };
    const bool has_rho = has_harm || bool(rho0);
    if (has_rho) Rh0 = rho_hat(t0);

    {
        double res = 0, scale = 0;
        for (std::size_t i = 0; i < n; ++i) {
            auto k = g.k(i);
            CVec3 E{F[0][i], F[1][i], F[2][i]}, B{F[3][i], F[4][i], F[5][i]};
            cplx dE = I * kdot(k, E) - (has_rho ? 4 * pi * Rh0[i] : 0.0);
            res = std::max({res, std::abs(dE), std::abs(I * kdot(k, B))});
            scale = std::max({scale, norm(k) * std::sqrt(std::norm(E[0]) + std::norm(E[1]) + std::norm(E[2])),
                              norm(k) * std::sqrt(std::norm(B[0]) + std::norm(B[1]) + std::norm(B[2]))});
            if (has_rho) scale = std::max(scale, 4 * pi * std::abs(Rh0[i]));
        }
        if (has_harm) scale = std::max(scale, 4 * pi * spectral_scale(Ph));
        if (res > 1e-8 * std::max(scale, 1e-300) && res > 1e-300)
            throw ConstraintViolation("initial constraints violated: max |div E - 4 pi rho|, |div B| = " +
                                      fmt17(res) + " (scale " + fmt17(scale) + ")");
        if (has_rho && std::abs(Rh0[0]) > 1e-10 * std::max(spectral_scale(Rh0), 1e-300))
            throw DomainError("charge density with nonzero spatial mean is incompatible with a periodic box");
    }

    // free evolution over dt
    for (std::size_t i = 0; i < n; ++i) {
        auto k = g.k(i);
        const double kn = norm(k);
        if (kn == 0) continue;
        const Vec3 kh{k[0] / kn, k[1] / kn, k[2] / kn};
        CVec3 E{F[0][i], F[1][i], F[2][i]}, B{F[3][i], F[4][i], F[5][i]};
        const cplx eL = kdot(kh, E), bL = kdot(kh, B);
        const double cs = std::cos(kn * c * dt), sn = std::sin(kn * c * dt);
        auto KE = kcross(kh, E), KB = kcross(kh, B);  // (k x)/|k|
        for (int a = 0; a < 3; ++a) {
            const cplx ELa = eL * kh[a], BLa = bL * kh[a];
            F[a][i] = ELa + cs * (E[a] - ELa) + sn * I * KB[a];
            F[3 + a][i] = BLa + cs * (B[a] - BLa) - sn * I * KE[a];
        }
    }

    const double t1 = t0 + dt;
    auto apply_source = [&](std::size_t i, const Vec3& k, const CVec3& jc, const CVec3& js, const CVec3& jl) {
        // E += -4 pi (P_T jc + P_L jl); B += 4 pi i (k x)/|k| js
        const double kn = norm(k);
        if (kn == 0) {
            for (int a = 0; a < 3; ++a) F[a][i] += -4 * pi * jl[a];
            return;
        }
        const Vec3 kh{k[0] / kn, k[1] / kn, k[2] / kn};
        const cplx cL = kdot(kh, jc), lL = kdot(kh, jl);
        auto Ks = kcross(kh, js);
        for (int a = 0; a < 3; ++a) {
            F[a][i] += -4 * pi * ((jc[a] - cL * kh[a]) + lL * kh[a]);
            F[3 + a][i] += 4 * pi * I * Ks[a];
        }
    };

    if (has_general) {
        const int m = std::max(1, src.substeps);
        const double h = dt / m;
        std::array<std::vector<cplx>, 3> acc_c, acc_s, acc_l;
        for (auto* acc : {&acc_c, &acc_s, &acc_l})
            for (auto& v : *acc) v.assign(n, 0.0);
        for (int s = 0; s < m; ++s) {
            const double ts = t0 + (s + 0.5) * h;
            auto J = sample(g, src.j, ts);
            for (auto& a : J) fft_forward(g, a);
            for (std::size_t i = 0; i < n; ++i) {
                const double w = norm(g.k(i)) * c * (t1 - ts);
                const double cs = std::cos(w), sn = std::sin(w);
                for (int a = 0; a < 3; ++a) {
                    acc_c[a][i] += h * cs * J[a][i];
                    acc_s[a][i] += h * sn * J[a][i];
                    acc_l[a][i] += h * J[a][i];
                }
            }
        }
        for (int a = 0; a < 3; ++a)
            if (std::abs(acc_l[a][0]) > 1e-10 * std::max(spectral_scale(acc_l[a]), 1e-300))
                throw DomainError("current density with nonzero spatial mean is incompatible with a periodic box");
        for (std::size_t i = 0; i < n; ++i)
            apply_source(i, g.k(i), {acc_c[0][i], acc_c[1][i], acc_c[2][i]},
                         {acc_s[0][i], acc_s[1][i], acc_s[2][i]}, {acc_l[0][i], acc_l[1][i], acc_l[2][i]});
    } else if (has_harm) {
        const double nu = src.harmonic->nu;
        for (std::size_t i = 0; i < n; ++i) {
            const auto k = g.k(i);
            const double w = norm(k) * c;
            // time kernels for e^{-i mu s}
            auto kernels = [&](double mu) {
                const cplx Ip = window(-(w + mu), t0, dt), Im = window(w - mu, t0, dt);
                const cplx ep = std::exp(I * w * t1), em = std::exp(-I * w * t1);
                const cplx Cc = 0.5 * (ep * Ip + em * Im);
                const cplx Cs = (ep * Ip - em * Im) / (2.0 * I);
                const cplx C1 = window(-mu, t0, dt);
                return std::make_tuple(Cc, Cs, C1);
            };
            auto [c1, s1, l1] = kernels(nu);
            auto [c2, s2, l2] = kernels(-nu);
            CVec3 jc, js, jl;
            for (int a = 0; a < 3; ++a) {
                jc[a] = 0.5 * (Jh[a][i] * c1 + Jh2[a][i] * c2);
                js[a] = 0.5 * (Jh[a][i] * s1 + Jh2[a][i] * s2);
                jl[a] = 0.5 * (Jh[a][i] * l1 + Jh2[a][i] * l2);
            }
            apply_source(i, k, jc, js, jl);
        }
    }

    // longitudinal E pinned to Gauss's law at t1
    if (has_rho) {
        auto R1 = rho_hat(t1);
        for (std::size_t i = 0; i < n; ++i) {
            auto k = g.k(i);
            const double k2 = dot(k, k);
            if (k2 == 0) continue;
            const cplx eL = (k[0] * F[0][i] + k[1] * F[1][i] + k[2] * F[2][i]) / k2;
            const cplx target = -4 * pi * I * R1[i] / k2;
            for (int a = 0; a < 3; ++a) F[a][i] += (target - eL) * k[a];
        }
    }

    MaxwellField out = f;
    for (int a = 0; a < 6; ++a) {
        fft_backward(g, F[a]);
        // fields are real; drop round-off imaginary parts
        for (std::size_t i = 0; i < n; ++i) out.grid.comps[a][i] = F[a][i].real();
    }
    return out;
}

MaxwellField plane_wave(int N, double L, int mode, double E0, double c, double t)
{
    MaxwellField f(3, N, L, c);
    const double k = 2 * pi * mode / L;
    for (std::size_t i = 0; i < f.grid.points(); ++i) {
        const double v = E0 * std::cos(k * (f.grid.x(i)[2] - c * t));
        f.E(0)[i] = v;
        f.B(1)[i] = v;
    }
    return f;
}

// ---- dispersion

double dispersion_omega(Dispersion kind, double k, const DispersionParams& p)
{
    if (kind == Dispersion::schrodinger) return k * k / (2 * p.mass);
    return std::sqrt(p.mass * p.mass * std::pow(p.c, 4) + p.c * p.c * k * k);
}

double group_velocity(Dispersion kind, double k, const DispersionParams& p)
{
    if (kind == Dispersion::schrodinger) return k / p.mass;
    return k * p.c * p.c / dispersion_omega(kind, k, p);
}

SpectralGrid gaussian_packet(int dims, int N, double L, const Vec3& x0, double sigma, const Vec3& kstar)
{
    SpectralGrid g(dims, N, L, {"psi"});
    double q = 0;
    for (std::size_t i = 0; i < g.points(); ++i) {
        auto x = g.x(i);
        double r2 = 0, ph = 0;
        for (int d = 0; d < dims; ++d) {
            // nearest periodic image
            double dx = std::remainder(x[d] - x0[d], L);
            r2 += dx * dx;
            ph += kstar[d] * x[d];
        }
        g[0][i] = std::exp(-r2 / (4 * sigma * sigma)) * std::polar(1.0, ph);
        q += std::norm(g[0][i]);
    }
    const double s = 1 / std::sqrt(q * g.cell_volume());
    for (auto& v : g[0]) v *= s;
    return g;
}

namespace {

void record(const SpectralGrid& g, const std::vector<cplx>& hat, Dispersion kind, const DispersionParams& p,
            double t, ConservedSet& cs)
{
    const std::size_t n = g.points();
    const double dv = g.cell_volume();
    std::vector<cplx> psi = hat;
    fft_backward(g, psi);
    double charge = 0;
    for (auto& v : psi) charge += std::norm(v) * dv;

    std::array<std::vector<cplx>, 3> grad;
    for (int a = 0; a < g.dims; ++a) {
        grad[a].resize(n);
        for (std::size_t i = 0; i < n; ++i) grad[a][i] = I * g.k(i)[a] * hat[i];
        fft_backward(g, grad[a]);
    }
    double grad2 = 0;
    for (int a = 0; a < g.dims; ++a)
        for (auto& v : grad[a]) grad2 += std::norm(v) * dv;

    double energy = 0;
    Vec3 mom{};
    if (kind == Dispersion::schrodinger) {
        energy = grad2 / (2 * p.mass);
        for (int a = 0; a < g.dims; ++a)
            for (std::size_t i = 0; i < n; ++i) mom[a] += (std::conj(psi[i]) * (-I) * grad[a][i]).real() * dv;
    } else {
        std::vector<cplx> dt(n);
        for (std::size_t i = 0; i < n; ++i) dt[i] = -I * dispersion_omega(kind, norm(g.k(i)), p) * hat[i];
        fft_backward(g, dt);
        const double c2 = p.c * p.c;
        double kin = 0;
        for (auto& v : dt) kin += std::norm(v) * dv;
        energy = kin / c2 + grad2 + p.mass * p.mass * c2 * charge;
        for (int a = 0; a < g.dims; ++a)
            for (std::size_t i = 0; i < n; ++i) mom[a] += -2 / c2 * (std::conj(dt[i]) * grad[a][i]).real() * dv;
    }

    Vec3 cen{};
    for (int a = 0; a < g.dims; ++a) {
        cplx z = 0;
        for (std::size_t i = 0; i < n; ++i) z += std::norm(psi[i]) * std::polar(1.0, 2 * pi * g.x(i)[a] / g.L);
        double X = std::arg(z) * g.L / (2 * pi);
        if (!cs.centroid.empty()) {
            const double prev = cs.centroid.back()[a];
            X = prev + std::remainder(X - prev, g.L);
        }
        cen[a] = X;
    }
    cs.t.push_back(t);
    cs.charge.push_back(charge);
    cs.energy.push_back(energy);
    cs.momentum.push_back(mom);
    cs.centroid.push_back(cen);
}

}  // namespace

DispersionResult free_dispersion_evolve(const SpectralGrid& psi0, Dispersion kind, const std::vector<double>& times,
                                        const DispersionParams& p)
{
    if (psi0.comps.size() != 1) throw DomainError("dispersion evolution needs a single-component field");
    if (!(p.mass > 0) || !(p.c > 0)) throw DomainError("mass and c must be positive");
    const auto& g = psi0;
    std::vector<cplx> hat0 = g[0];
    fft_forward(g, hat0);
    DispersionResult res;
    res.psi = psi0;
    std::vector<double> w(g.points());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = dispersion_omega(kind, norm(g.k(i)), p);
    std::vector<cplx> hat(g.points());
    for (double t : times) {
        for (std::size_t i = 0; i < hat.size(); ++i) hat[i] = hat0[i] * std::polar(1.0, -w[i] * t);
        record(g, hat, kind, p, t, res.conserved);
    }
    if (!times.empty()) {
        res.psi[0] = hat;
        fft_backward(g, res.psi[0]);
    }
    return res;
}

DispersionResult free_dispersion_evolve(const SpectralGrid& psi0, Dispersion kind, double t, const DispersionParams& p)
{
    if (t == 0) {
        DispersionResult r = free_dispersion_evolve(psi0, kind, std::vector<double>{0.0}, p);
        r.psi = psi0;
        return r;
    }
    return free_dispersion_evolve(psi0, kind, std::vector<double>{0.0, t}, p);
}

double centroid_velocity(const ConservedSet& s, int axis)
{
    const std::size_t n = s.t.size();
    if (n < 2) throw DomainError("centroid regression needs at least two samples");
    double mt = 0, mx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mt += s.t[i] / n;
        mx += s.centroid[i][axis] / n;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (s.t[i] - mt) * (s.centroid[i][axis] - mx);
        sxx += (s.t[i] - mt) * (s.t[i] - mt);
    }
    return sxy / sxx;
}

// ---- radiation

HertzField hertz_dipole(const DipoleSource& d, const Vec3& x, double t, double c)
{
    const double r = norm(x);
    if (r == 0) throw SingularPoint("Hertz field is singular at the dipole position");
    const Vec3 a = d.pddot(t - r / c);
    HertzField h;
    const Vec3 ax = cross(a, x);
    for (int i = 0; i < 3; ++i) h.B[i] = ax[i] / (c * c * r * r);
    const Vec3 axx = cross(ax, x);
    for (int i = 0; i < 3; ++i) h.E[i] = axx[i] / (c * c * r * r * r);
    const Vec3 s = cross(h.E, h.B);
    for (int i = 0; i < 3; ++i) h.S[i] = c / (4 * pi) * s[i];
    return h;
}

double hertz_power(const Vec3& pddot, double c) { return 2 * dot(pddot, pddot) / (3 * c * c * c); }

RetardedPotentials retarded_potentials(const ComplexScalarSource& rho, const ComplexVectorSource& j, double R,
                                       const Vec3& x, double t, double c, double tol)
{
    if (!(R > 0) || !std::isfinite(R)) throw DomainError("retarded potentials need a compact support radius R");
    const double xr = norm(x);
    const bool outside = xr > R;
    // Exterior points: spherical coordinates about the origin (smooth integrand).
    // Interior points: spherical coordinates about x, which absorbs the 1/|x-y| singularity.
    auto evaluate = [&](int n) {
        auto q = oracle::gauss_legendre(n);
        RetardedPotentials out;
        for (int a = 0; a < n; ++a) {
            const double ct = q.nodes[a], st = std::sqrt(1 - ct * ct);
            for (int b = 0; b < 2 * n; ++b) {
                const double ph = 2 * pi * (b + 0.5) / (2 * n);
                const Vec3 dir{st * std::cos(ph), st * std::sin(ph), ct};
                const double wang = q.weights[a] * (2 * pi / (2 * n));
                double s0 = 0, s1 = R;
                Vec3 base{0, 0, 0};
                if (!outside) {
                    base = x;
                    // exit distance of the ray x + s dir from the ball
                    const double bx = dot(x, dir);
                    s1 = -bx + std::sqrt(bx * bx - (xr * xr - R * R));
                }
                for (int m = 0; m < n; ++m) {
                    const double s = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * q.nodes[m];
                    const double w = wang * q.weights[m] * 0.5 * (s1 - s0) * s * s;
                    const Vec3 y{base[0] + s * dir[0], base[1] + s * dir[1], base[2] + s * dir[2]};
                    const Vec3 d{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
                    const double dist = outside ? norm(d) : s;
                    const double tr = t - dist / c;
                    if (rho) out.phi += w * rho(tr, y) / dist;
                    if (j) {
                        auto jv = j(tr, y);
                        for (int k = 0; k < 3; ++k) out.A[k] += w * jv[k] / (c * dist);
                    }
                }
            }
        }
        out.order = n;
        return out;
    };
    auto size = [](const RetardedPotentials& p) {
        return std::abs(p.phi) + std::abs(p.A[0]) + std::abs(p.A[1]) + std::abs(p.A[2]);
    };
    auto diff = [](const RetardedPotentials& a, const RetardedPotentials& b) {
        double d = std::abs(a.phi - b.phi);
        for (int k = 0; k < 3; ++k) d += std::abs(a.A[k] - b.A[k]);
        return d;
    };
    auto prev = evaluate(12);
    for (int n = 24; n <= 192; n *= 2) {
        auto cur = evaluate(n);
        if (diff(cur, prev) <= tol * std::max(size(cur), 1e-300)) return cur;
        prev = cur;
    }
    throw QuadratureError("retarded-potential quadrature did not reach tolerance " + fmt17(tol));
}

// ---- Fresnel

FresnelResult fresnel(double alpha, double n1, double n2, Polarization pol)
{
    if (!(alpha >= 0 && alpha < pi / 2)) throw DomainError("incidence angle must lie in [0, pi/2)");
    if (!(n1 > 0) || !(n2 > 0)) throw DomainError("refractive indices must be positive");
    FresnelResult out;
    const double ca = std::cos(alpha);
    const double st = n1 / n2 * std::sin(alpha);
    cplx ct;
    if (st > 1) {
        out.total_internal_reflection = true;
        out.alpha_refracted = std::numeric_limits<double>::quiet_NaN();
        ct = cplx(0, std::sqrt(st * st - 1));
    } else {
        out.alpha_refracted = std::asin(st);
        ct = std::sqrt(1 - st * st);
    }
    if (pol == Polarization::perp) {
        out.r = (n1 * ca - n2 * ct) / (n1 * ca + n2 * ct);
        out.t = 2 * n1 * ca / (n1 * ca + n2 * ct);
    } else {
        out.r = (n2 * ca - n1 * ct) / (n2 * ca + n1 * ct);
        out.t = 2 * n1 * ca / (n2 * ca + n1 * ct);
    }
    out.R = std::norm(out.r);
    out.T = out.total_internal_reflection ? 0.0 : n2 * ct.real() / (n1 * ca) * std::norm(out.t);
    return out;
}

// ---- classical Zeeman

ZeemanModes classical_zeeman_modes(double omega0, double B, const Constants& k)
{
    if (!(omega0 > 0)) throw DomainError("omega0 must be positive");
    const double wl = k.larmor(B);
    const double root = std::sqrt(omega0 * omega0 + wl * wl);
    return {omega0, root - wl, root + wl};
}

std::vector<Vec3> zeeman_oscillator(double omega0, double B, const Vec3& x0, const Vec3& v0, double T, double dt,
                                    const Constants& k)
{
    if (!(dt > 0) || !(T > 0)) throw DomainError("need T > 0 and dt > 0");
    const double g = Constants::e * B / k.c();  // e B / (mu c)
    auto rhs = [&](const ode::State& y, ode::State& d, double) {
        for (int a = 0; a < 3; ++a) d[a] = y[3 + a];
        d[3] = -omega0 * omega0 * y[0] + g * y[4];
        d[4] = -omega0 * omega0 * y[1] - g * y[3];
        d[5] = -omega0 * omega0 * y[2];
    };
    std::vector<double> times;
    const long n = long(std::floor(T / dt + 1e-9));
    for (long i = 0; i < n; ++i) times.push_back(i * dt);
    ode::Options opt;
    opt.abs_tol = 1e-10;
    opt.rel_tol = 1e-10;
    opt.dt0 = dt / 10;
    auto states = ode::sample_dp45(rhs, {x0[0], x0[1], x0[2], v0[0], v0[1], v0[2]}, times, opt);
    std::vector<Vec3> out;
    out.reserve(states.size());
    for (auto& s : states) out.push_back({s[0], s[1], s[2]});
    return out;
}

double larmor_precession_rate(double B, PrecessionKind kind, const Constants& k)
{
    const double wl = k.larmor(B);
    return kind == PrecessionKind::orbital ? wl : 2 * wl;
}

// ---- export

std::vector<NamedArray> snapshot_arrays(const SpectralGrid& g)
{
    std::vector<NamedArray> out;
    for (std::size_t c = 0; c < g.comps.size(); ++c) {
        NamedArray re{g.names[c], {}}, im{g.names[c] + ".im", {}};
        bool cplx_valued = false;
        for (auto& v : g.comps[c]) {
            re.values.push_back(v.real());
            im.values.push_back(v.imag());
            if (v.imag() != 0) cplx_valued = true;
        }
        out.push_back(std::move(re));
        if (cplx_valued) out.push_back(std::move(im));
    }
    return out;
}

void write_csv(std::ostream& os, const SpectralGrid& g)
{
    auto arrays = snapshot_arrays(g);
    for (int d = 0; d < g.dims; ++d) os << (d ? "," : "") << "x" << d + 1;
    for (auto& a : arrays) os << "," << a.name;
    os << "\n";
    for (std::size_t i = 0; i < g.points(); ++i) {
        auto x = g.x(i);
        for (int d = 0; d < g.dims; ++d) os << (d ? "," : "") << fmt17(x[d]);
        for (auto& a : arrays) os << "," << fmt17(a.values[i]);
        os << "\n";
    }
}

void write_raw(const std::string& base, const SpectralGrid& g)
{
    auto arrays = snapshot_arrays(g);
    std::ofstream bin(base + ".bin", std::ios::binary);
    if (!bin) throw DomainError("cannot open " + base + ".bin for writing");
    for (auto& a : arrays)
        for (double v : a.values) {
            unsigned char b[8];
            std::uint64_t u;
            std::memcpy(&u, &v, 8);
            for (int i = 0; i < 8; ++i) b[i] = (u >> (8 * i)) & 0xff;
            bin.write(reinterpret_cast<const char*>(b), 8);
        }
    nlohmann::json h;
    h["dims"] = g.dims;
    h["N"] = g.N;
    h["L"] = g.L;
    h["dtype"] = "float64";
    h["byte_order"] = "little";
    h["layout"] = "component-major, row-major points (x1 slowest)";
    std::vector<std::string> names;
    for (auto& a : arrays) names.push_back(a.name);
    h["components"] = names;
    std::ofstream js(base + ".json");
    if (!js) throw DomainError("cannot open " + base + ".json for writing");
    js << h.dump(2) << "\n";
}

}  // namespace atomkit::fields
