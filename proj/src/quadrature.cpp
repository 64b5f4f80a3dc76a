#include "atomkit/quadrature.hpp"
#include "atomkit/error.hpp"
#include "atomkit/units.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace atomkit::oracle {

static std::string fmt_g(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Legendre P_n(x) and its derivative by the three-term recurrence.
static std::pair<double, double> legendre_pd(int n, double x)
{
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if (n == 0) return {1.0, 0.0};
    return {p1, n * (x * p1 - p0) / (x * x - 1)};
}

QuadratureRule gauss_legendre(int n)
{
    if (n < 1) throw DomainError("Gauss-Legendre needs n >= 1");
    QuadratureRule q;
    q.nodes.resize(n);
    q.weights.resize(n);
    q.degree = 2 * n - 1;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = legendre_pd(n, x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        auto [p, dp] = legendre_pd(n, x);
        (void)p;
        double w = 2 / ((1 - x * x) * dp * dp);
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        q.weights[i] = q.weights[n - 1 - i] = w;
    }
    return q;
}

QuadratureRule gauss_laguerre(int n)
{
    if (n < 1) throw DomainError("Gauss-Laguerre needs n >= 1");
    // Golub-Welsch on the Laguerre Jacobi matrix.
    Eigen::VectorXd diag(n), off(std::max(n - 1, 1));
    for (int i = 0; i < n; ++i) diag[i] = 2 * i + 1;
    for (int i = 0; i + 1 < n; ++i) off[i] = i + 1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off.head(n - 1), Eigen::ComputeEigenvectors);
    QuadratureRule q;
    q.domain = Domain::half_line;
    q.degree = 2 * n - 1;
    for (int i = 0; i < n; ++i) {
        q.nodes.push_back(es.eigenvalues()[i]);
        double v = es.eigenvectors()(0, i);
        q.weights.push_back(v * v);
    }
    return q;
}

QuadratureRule sphere_rule(int l_max)
{
    if (l_max < 0) throw DomainError("sphere rule needs l_max >= 0");
    const int nt = l_max / 2 + 1;
    const int np = l_max + 1;
    auto gl = gauss_legendre(nt);
    QuadratureRule q;
    q.domain = Domain::sphere;
    q.degree = l_max;
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < np; ++j) {
            q.nodes.push_back(gl.nodes[i]);
            q.nodes2.push_back(2 * pi * j / np);
            q.weights.push_back(gl.weights[i] * 2 * pi / np);
        }
    return q;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n)
{
    auto q = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * f(mid + half * q.nodes[i]);
    return s * half;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, double* error_estimate)
{
    using boost::math::quadrature::gauss_kronrod;
    double err = 0, l1 = 0;
    double v = gauss_kronrod<double, 31>::integrate(f, a, b, 30, tol, &err, &l1);
    if (error_estimate) *error_estimate = err;
    if (!(err <= std::max(tol * l1, 1e3 * std::numeric_limits<double>::epsilon() * l1)))
        throw QuadratureError("adaptive quadrature did not converge: error estimate " + fmt_g(err) +
                              " vs tolerance " + fmt_g(tol * l1));
    return v;
}

double integrate_adaptive_inf(const std::function<double(double)>& f, double a, double tol)
{
    return integrate_adaptive(f, a, std::numeric_limits<double>::infinity(), tol);
}

}  // namespace atomkit::oracle
