#include "atomkit/oracle.hpp"
#include "atomkit/angular.hpp"
#include "atomkit/error.hpp"
#include "atomkit/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace atomkit::oracle {

RadialGrid::RadialGrid(double r, int n) : r_max(r), N(n)
{
    if (!(r > 0) || n < 2) throw DomainError("radial grid needs r_max > 0 and N >= 2");
}

namespace {

struct Tridiag {
    std::vector<double> d;  // diagonal, interior points 1..N-1
    double e2 = 0;          // square of the constant off-diagonal
    double lo = 0, hi = 0;  // Gershgorin bounds
};

Tridiag build(int l, const RadialGrid& g)
{
    const double h = g.h();
    const double kin = 1 / (h * h);
    Tridiag t;
    t.d.resize(g.N - 1);
    const double off = -0.5 / (h * h);
    t.e2 = off * off;
    t.lo = 1e300;
    t.hi = -1e300;
    for (int i = 1; i < g.N; ++i) {
        const double r = i * h;
        const double v = -1 / r + l * (l + 1) / (2 * r * r);
        t.d[i - 1] = kin + v;
        t.lo = std::min(t.lo, t.d[i - 1] - 2 * std::abs(off));
        t.hi = std::max(t.hi, t.d[i - 1] + 2 * std::abs(off));
    }
    return t;
}

int sturm_count(const Tridiag& t, double x)
{
    int neg = 0;
    double q = 1;
    for (std::size_t i = 0; i < t.d.size(); ++i) {
        q = t.d[i] - x - (i ? t.e2 / q : 0.0);
        if (q == 0) q = -1e-300;
        if (q < 0) ++neg;
    }
    return neg;
}

double kth_eigenvalue(const Tridiag& t, int k)
{
    double lo = t.lo, hi = t.hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(t, mid) > k) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> radial_eigensolve(int l, int k_states, const RadialGrid& grid)
{
    if (l < 0 || k_states < 1) throw DomainError("radial_eigensolve needs l >= 0 and k_states >= 1");
    if (k_states > grid.N - 1) throw SolverError("more states requested than grid points");
    const auto t = build(l, grid);
    std::vector<double> out;
    for (int k = 0; k < k_states; ++k) out.push_back(kth_eigenvalue(t, k));
    return out;
}

int count_eigenvalues_below(int l, double E, const RadialGrid& grid)
{
    return sturm_count(build(l, grid), E);
}

ConvergedEigenvalue converged_eigenvalue(int l, int index, const RadialGrid& grid)
{
    ConvergedEigenvalue c;
    RadialGrid g = grid;
    for (int i = 0; i < 3; ++i, g = g.refined())
        c.sequence.push_back(radial_eigensolve(l, index + 1, g).back());
    const double d1 = c.sequence[0] - c.sequence[1], d2 = c.sequence[1] - c.sequence[2];
    c.order = std::log2(std::abs(d1 / d2));
    c.energy = c.sequence[2] - d2 / 3;
    c.refinement_change = std::abs(d2) / std::abs(c.sequence[2]);
    if (!std::isfinite(c.energy))
        throw SolverError("eigenvalue refinement produced a non-finite value");
    return c;
}

ConvergedEigenvalue hydrogen_level_fd(int n, int l, double h)
{
    if (n < 1 || l < 0 || l >= n) throw DomainError("hydrogen_level_fd needs 0 <= l < n");
    const double r_max = 40.0 * n * n;
    return converged_eigenvalue(l, n - l - 1, RadialGrid(r_max, int(std::ceil(r_max / h))));
}

// ---- matrix elements

static double radial_product_integral(int n, int l, int n2, int l2, int power)
{
    const auto Ra = spectra::radial_wavefunction(n, l);
    const auto Rb = spectra::radial_wavefunction(n2, l2);
    const double s = 1.0 / n + 1.0 / n2;
    // the polynomial part has degree n + n2 - 2 + power; Gauss-Laguerre is exact beyond that
    auto eval = [&](int pts) {
        auto q = gauss_laguerre(pts);
        double sum = 0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            const double r = q.nodes[i] / s;
            // R_a R_b = poly * exp(-s r); strip the exponential analytically
            sum += q.weights[i] * Ra(r) * Rb(r) * std::exp(s * r) * std::pow(r, power);
        }
        return sum / s;
    };
    const int pts = (n + n2 + power) / 2 + 2;
    const double a = eval(pts), b = eval(2 * pts);
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(b)))
        throw QuadratureError("radial quadrature not converged: " + std::to_string(pts) + " pts -> " +
                              std::to_string(a) + ", " + std::to_string(2 * pts) + " pts -> " +
                              std::to_string(b));
    return b;
}

double radial_dipole_integral(int n, int l, int n2, int l2)
{
    return radial_product_integral(n, l, n2, l2, 3);
}

std::complex<double> angular_dipole_integral(int l, int m, int l2, int m2, Axis p)
{
    const angular::SphericalHarmonic Ya(l, m), Yb(l2, m2);
    auto f = [&](double th, double ph) {
        double w = p == Axis::x ? std::sin(th) * std::cos(ph)
                 : p == Axis::y ? std::sin(th) * std::sin(ph)
                                : std::cos(th);
        return w * Ya(th, ph) * std::conj(Yb(th, ph));
    };
    return sphere_quadrature(f, l + l2 + 3);
}

std::complex<double> dipole_matrix_element(const StateLabel& a, const StateLabel& b, Axis p)
{
    return radial_dipole_integral(a.n, a.l, b.n, b.l) * angular_dipole_integral(a.l, a.m, b.l, b.m, p);
}

double radial_moment(int n, int l, int k)
{
    // <r^k> = int R^2 r^{2+k} dr
    return radial_product_integral(n, l, n, l, 2 + k);
}

}  // namespace atomkit::oracle
