#include "atomkit/spectra.hpp"
#include "atomkit/angular.hpp"
#include "atomkit/error.hpp"
#include "atomkit/quadrature.hpp"

#include <cmath>
#include <string>

namespace atomkit::spectra {

double schrodinger_level(int n)
{
    if (n < 1) throw DomainError("principal quantum number must be >= 1, got " + std::to_string(n));
    return -0.5 / (double(n) * n);
}

int degeneracy(int n)
{
    if (n < 1) throw DomainError("principal quantum number must be >= 1");
    return n * n;
}

std::vector<SpectralLine> series_lines(int m_lower, int n_first, int n_last)
{
    if (m_lower < 1) throw DomainError("lower level must be >= 1");
    std::vector<SpectralLine> out;
    for (int n = std::max(n_first, m_lower + 1); n <= n_last; ++n) {
        SpectralLine s;
        s.upper.n = n;
        s.upper.energy = schrodinger_level(n);
        s.upper.degeneracy = degeneracy(n);
        s.lower.n = m_lower;
        s.lower.energy = schrodinger_level(m_lower);
        s.lower.degeneracy = degeneracy(m_lower);
        s.omega = s.upper.energy - s.lower.energy;
        out.push_back(s);
    }
    return out;
}

double series_limit(int m_lower) { return -schrodinger_level(m_lower); }

// ---- radial functions

double RadialFunction::operator()(double r) const
{
    const double rho = 2 * r / scale;
    double p = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p = p * rho + *it;
    return norm * std::exp(-r / scale) * std::pow(rho, l) * p;
}

RadialFunction radial_wavefunction(int n, int l)
{
    if (n < 1 || l < 0 || l >= n)
        throw DomainError("radial function needs 0 <= l <= n-1, got n=" + std::to_string(n) +
                          " l=" + std::to_string(l));
    RadialFunction R;
    R.n = n;
    R.l = l;
    R.scale = n;
    R.coeffs.push_back(1.0);
    for (int k = 0; k < n - l - 1; ++k)
        R.coeffs.push_back(R.coeffs.back() * (k - (n - 1 - l)) / ((k + 1.0) * (k + 2 * l + 2)));
    // The coefficient series is L^{2l+1}_{n-l-1}(rho) / L^{2l+1}_{n-l-1}(0); the normalization follows
    // from the Laguerre norm. Summing a_i a_j (2l+2+i+j)! directly cancels badly for n > 6.
    R.norm = std::exp(0.5 * (3 * std::log(2.0 / n) - std::log(2.0 * n) + std::lgamma(n + l + 1) - std::lgamma(n - l)) -
                      std::lgamma(2 * l + 2));
    return R;
}

// ---- Zeeman

double zeeman_levels(int n, int l, int m, double B, ZeemanMode mode, const Constants& k)
{
    if (n < 1 || l < 0 || l >= n || std::abs(m) > l)
        throw DomainError("invalid quantum numbers n=" + std::to_string(n) + " l=" + std::to_string(l) +
                          " m=" + std::to_string(m));
    const double wl = k.larmor(B);
    double E = schrodinger_level(n) + m * wl;
    if (mode == ZeemanMode::pauli_plus) E += wl;
    if (mode == ZeemanMode::pauli_minus) E -= wl;
    return E;
}

SpectralLine anomalous_zeeman_lines(const Term& up, const Term& lo, double omega0, double B,
                                    const Constants& k, bool allow_delta_j0)
{
    require_pair(up.J, up.M);
    require_pair(lo.J, lo.M);
    const int dM = lo.M.twice - up.M.twice;
    const int dJ = std::abs(lo.J.twice - up.J.twice);
    if (std::abs(dM) > 2 || !(dJ == 2 || (allow_delta_j0 && dJ == 0)))
        throw ForbiddenTransition("forbidden transition (J=" + up.J.str() + ", M=" + up.M.str() +
                                  ") -> (J'=" + lo.J.str() + ", M'=" + lo.M.str() + ")");
    const double g = angular::lande_g(up.L, up.J);
    const double g2 = angular::lande_g(lo.L, lo.J);
    SpectralLine s;
    s.kind = LineKind::anomalous;
    s.omega = omega0 - k.larmor(B) * (g * up.M.value() - g2 * lo.M.value());
    s.upper = Level{0, up.L, 0, SpinLabel{up.J, up.M}, 0, 1};
    s.lower = Level{0, lo.L, 0, SpinLabel{lo.J, lo.M}, 0, 1};
    return s;
}

std::vector<SpectralLine> normal_zeeman_triplet(double omega0, double B, const Constants& k)
{
    const double wl = k.larmor(B);
    std::vector<SpectralLine> out;
    for (int d : {-1, 0, 1}) {  // d = m - m'
        SpectralLine s;
        s.omega = omega0 - wl * d;
        s.kind = d == 0 ? LineKind::zeeman_pi : (d > 0 ? LineKind::zeeman_sigma_plus : LineKind::zeeman_sigma_minus);
        s.upper.m = d;
        out.push_back(s);
    }
    return out;
}

// ---- Dirac

static double dirac_delta1(int l, double alpha)
{
    if (!(alpha > 0)) throw DomainError("alpha must be positive");
    const double disc = (l + 1.0) * (l + 1.0) - alpha * alpha;
    if (disc <= 0)
        throw SupercriticalCoupling("supercritical coupling: (l+1)^2 <= alpha^2, complex indicial root");
    return std::sqrt(disc);
}

double dirac_level(int n_r, int l, double alpha)
{
    if (n_r < 0 || l < 0) throw DomainError("dirac_level needs n_r >= 0 and l >= 0");
    const double N = n_r + dirac_delta1(l, alpha);
    return 1 / std::sqrt(1 + alpha * alpha / (N * N));
}

double dirac_level_approx(int n_r, int l, double alpha)
{
    if (n_r < 0 || l < 0) throw DomainError("dirac_level needs n_r >= 0 and l >= 0");
    const double N = n_r + dirac_delta1(l, alpha);
    return 1 - alpha * alpha / (2 * N * N);
}

double dirac_level_nj(int N, HalfInt j, double alpha)
{
    if (j.is_integer() || j.twice < 1) throw DomainError("j must be a positive half-odd number");
    const int l = (j.twice - 1) / 2;
    const int n_r = N - l - 1;
    if (n_r < 0) throw DomainError("need N >= j + 1/2");
    return dirac_level(n_r, l, alpha);
}

DiracSeries dirac_radial_series(int n_r, int l, double alpha)
{
    using M2 = Eigen::Matrix2cd;
    using V2 = Eigen::Vector2cd;
    const std::complex<double> I(0, 1);
    DiracSeries out;
    out.n_r = n_r;
    out.l = l;
    out.alpha = alpha;
    const double d1 = dirac_delta1(l, alpha);
    out.delta = d1 - 1;
    out.energy = dirac_level(n_r, l, alpha);

    const double c = 1 / alpha;
    const double E = out.energy * c * c;
    out.kappa = c * std::sqrt(1 - out.energy * out.energy);
    out.dispersion_residual =
        std::abs(c * c * out.kappa * out.kappa - (c * c * c * c - E * E)) / (c * c * c * c);

    M2 s1, s2, s3, Id = M2::Identity();
    s1 << 0, 1, 1, 0;
    s2 << 0, -I, I, 0;
    s3 << 1, 0, 0, -1;
    const M2 M = (I / c) * (E * Id - c * c * s3 - I * c * out.kappa * s1);
    auto A = [&](int k) -> M2 { return (k + d1) * s1 + I * (l + 1.0) * s2 - I * alpha * Id; };

    // kernel of the indicial matrix: right singular vector of the smallest singular value
    Eigen::JacobiSVD<M2> svd(A(0), Eigen::ComputeFullV);
    V2 R0 = svd.matrixV().col(1);
    out.kernel_residual = (A(0) * R0).norm() / A(0).norm();
    out.R.push_back(R0);
    for (int k = 1; k <= n_r; ++k) {
        V2 rhs = M * out.R.back();
        V2 Rk = A(k).partialPivLu().solve(rhs);
        out.recurrence_residual =
            std::max(out.recurrence_residual, (A(k) * Rk - rhs).norm() / std::max(rhs.norm(), 1e-300));
        out.R.push_back(Rk);
    }
    out.termination_residual = (M * out.R.back()).norm() / (M.norm() * out.R.back().norm());
    if (out.termination_residual > 1e-10)
        throw ConsistencyError("Dirac radial series does not terminate at n_r=" + std::to_string(n_r) +
                               ": residual " + std::to_string(out.termination_residual));
    return out;
}

bool selection_allowed(int l, int m, int l2, int m2)
{
    return std::abs(l2 - l) == 1 && std::abs(m2 - m) <= 1;
}

// ---- Bohr-Sommerfeld

double radial_action(double b, int l)
{
    if (!(b > 0)) throw SearchFailure("binding energy must be positive");
    const double disc = 1 - 2.0 * l * l * b;
    if (disc < 0) throw SearchFailure("no turning points at this energy");
    const double half = std::sqrt(disc) / (2 * b);
    const double r_minus = l * l / (1 + std::sqrt(disc));
    // r = r- + half (1 - cos t) turns 2 int sqrt(2b (r-r-)(r+-r))/r dr into a smooth integrand
    auto f = [&](double t) {
        const double s = std::sin(t), h = std::sin(t / 2);
        return std::sqrt(2 * b) * half * half * s * s / (r_minus + 2 * half * h * h);
    };
    double prev = oracle::integrate_gl(f, 0, pi, 16);
    for (int n = 32; n <= 4096; n *= 2) {
        double cur = oracle::integrate_gl(f, 0, pi, n);
        if (std::abs(cur - prev) <= 1e-14 * std::abs(cur)) return 2 * cur;
        prev = cur;
    }
    return 2 * prev;
}

BohrSommerfeldResult bohr_sommerfeld(int k, int l)
{
    if (k < 0 || l < 0 || k + l < 1)
        throw SearchFailure("Bohr-Sommerfeld needs k, l >= 0 with k + l >= 1");
    const double target = 2 * pi * k;
    // action decreases in the binding energy; b_max keeps the turning points real
    double lo = 1e-12;
    double hi = l > 0 ? 1.0 / (2.0 * l * l) : 1.0;
    auto g = [&](double b) { return radial_action(b, l) - target; };
    if (l == 0)
        while (g(hi) > 0) hi *= 2;
    if (g(lo) < 0 || g(hi) > 0) throw SearchFailure("action root not bracketed");
    BohrSommerfeldResult out;
    double mid = 0.5 * (lo + hi), gm = g(mid);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        gm = g(mid);
        out.iterations = it + 1;
        if (gm > 0) lo = mid; else hi = mid;
        if (hi - lo <= 1e-16 * hi) break;
    }
    out.action_residual = std::abs(gm);
    if (out.action_residual > 1e-8)
        throw SearchFailure("action residual " + std::to_string(out.action_residual) + " above tolerance");
    out.energy = -mid;
    return out;
}

double bohr_sommerfeld_level(int k, int l) { return bohr_sommerfeld(k, l).energy; }

}  // namespace atomkit::spectra
