#pragma once

#include "atomkit/halfint.hpp"
#include "atomkit/rational.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <utility>
#include <vector>

namespace atomkit::angular {

using cplx = std::complex<double>;

// (s_plus, s_minus) with H_{+/-} e_m = s_{+/-} e_{m +/- 1}.
std::pair<double, double> ladder_coefficients(HalfInt J, HalfInt m);

// Spin-J representation in the ascending basis e_{-J}, ..., e_J.
struct AngularRep {
    HalfInt J;
    Eigen::MatrixXcd H1, H2, H3;

    int dim() const { return J.twice + 1; }
    static int index(HalfInt J, HalfInt m) { return (m.twice + J.twice) / 2; }
    Eigen::MatrixXcd plus() const { return H1 + cplx(0, 1) * H2; }
    Eigen::MatrixXcd minus() const { return H1 - cplx(0, 1) * H2; }
    Eigen::MatrixXcd casimir() const { return H1 * H1 + H2 * H2 + H3 * H3; }
};

AngularRep spin_representation(HalfInt J);

// exp(i theta sigma.n / 2) for a unit vector n.
Eigen::Matrix2cd spin_half_rotation(double theta, const Eigen::Vector3d& n);

// Y_l^m(theta, phi) = F_l^m(theta) e^{i m phi}, F real, Condon-Shortley phase
// (equivalently F_l^{-l} a positive multiple of sin^l theta).
class SphericalHarmonic {
public:
    SphericalHarmonic(int l, int m);
    int l() const { return l_; }
    int m() const { return m_; }
    double F(double theta) const;
    cplx operator()(double theta, double phi) const;

private:
    int l_, m_;
};

SphericalHarmonic spherical_harmonic(int l, int m);

// Normalized associated Legendre values F_l^m(theta) for 0 <= m <= l <= l_max at one
// angle; out[l][m].
std::vector<std::vector<double>> legendre_table(int l_max, double theta);

enum class Branch { plus, minus };  // j = l + 1/2 or j = l - 1/2

struct SpinorComponent {
    int m;       // orbital magnetic number
    int spin;    // +1 up, -1 down
    double coeff;
};

struct SpinorHarmonic {
    int l = 0;
    HalfInt j, k;
    Branch branch = Branch::plus;
    std::vector<SpinorComponent> components;

    // Two-component value (up, down) at (theta, phi).
    std::array<cplx, 2> operator()(double theta, double phi) const;
    // Coefficients in the product basis, index 2*(m+l) + (spin up ? 1 : 0).
    Eigen::VectorXd vector() const;
};

SpinorHarmonic couple_l_half(int l, HalfInt j, HalfInt k);
SpinorHarmonic couple_l_half(int l, Branch b, HalfInt k);

// Total angular momentum J_a = L_a (x) 1 + 1 (x) S_a on Y_l (x) spin-1/2, product basis as above.
struct ProductOperators {
    Eigen::MatrixXcd J1, J2, J3, sigma_dot_L;
    Eigen::MatrixXcd J2total() const { return J1 * J1 + J2 * J2 + J3 * J3; }
};
ProductOperators product_operators(int l);

double spin_orbit_expectation(const SpinorHarmonic& s);

Rational lande_g_exact(int L, HalfInt J);
double lande_g(int L, HalfInt J);
// Classical vector-model route: projections of L and 2S onto J.
Rational vector_model_g_exact(int L, HalfInt J);
double vector_model_g(int L, HalfInt J);

}  // namespace atomkit::angular
