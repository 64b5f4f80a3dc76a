#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace atomkit::oracle {

enum class Domain { interval, half_line, sphere };

// Nodes and positive weights. For the sphere rule the nodes are stored as
// (cos theta, phi) pairs flattened into nodes/nodes2.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> nodes2;
    std::vector<double> weights;
    Domain domain = Domain::interval;
    int degree = 0;  // exact for polynomials up to this degree

    std::size_t size() const { return weights.size(); }
};

// n-point Gauss-Legendre on [-1, 1].
QuadratureRule gauss_legendre(int n);
// n-point Gauss-Laguerre for the weight e^{-x} on [0, inf).
QuadratureRule gauss_laguerre(int n);
// Product rule on the unit sphere, exact for spherical polynomials of degree <= l_max.
QuadratureRule sphere_rule(int l_max);

// Integral over the unit sphere of f(theta, phi), real or complex valued.
template <class F>
auto sphere_quadrature(const F& f, int l_max)
{
    const auto q = sphere_rule(l_max);
    decltype(f(0.0, 0.0)) s{};
    for (std::size_t i = 0; i < q.size(); ++i)
        s += q.weights[i] * f(std::acos(q.nodes[i]), q.nodes2[i]);
    return s;
}

// Gauss-Legendre on [a,b], n points.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

// Adaptive Gauss-Kronrod on [a,b]; throws QuadratureError if tol is not met.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, double* error_estimate = nullptr);
// Same on [a, inf).
double integrate_adaptive_inf(const std::function<double(double)>& f, double a, double tol);

}  // namespace atomkit::oracle
