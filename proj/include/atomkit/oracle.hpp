#pragma once

#include "atomkit/quadrature.hpp"

#include <complex>
#include <vector>

namespace atomkit::oracle {

// Uniform grid r_i = i h, i = 0..N, with u(0) = u(r_max) = 0.
struct RadialGrid {
    double r_max = 0;
    int N = 0;

    RadialGrid(double r_max, int N);
    double h() const { return r_max / N; }
    RadialGrid refined() const { return RadialGrid(r_max, 2 * N); }
};

// Lowest k_states eigenvalues (ascending) of -u''/2 + V_eff u on the grid,
// V_eff = -1/r + l(l+1)/(2 r^2).
std::vector<double> radial_eigensolve(int l, int k_states, const RadialGrid& grid);
// Sturm count: number of grid eigenvalues strictly below E.
int count_eigenvalues_below(int l, double E, const RadialGrid& grid);

struct ConvergedEigenvalue {
    double energy = 0;                // Richardson estimate from the two finest grids
    std::vector<double> sequence;     // raw values on h, h/2, h/4
    double order = 0;                 // observed convergence order
    double refinement_change = 0;     // |E(h/4) - E(h/2)| / |E|
};

// index-th eigenvalue (0-based) on grid, grid/2 and grid/4.
ConvergedEigenvalue converged_eigenvalue(int l, int index, const RadialGrid& grid);

// Hydrogen level (n, l) from the finite-difference oracle with r_max = 40 n^2.
ConvergedEigenvalue hydrogen_level_fd(int n, int l, double h = 0.05);

struct StateLabel {
    int n, l, m;
};

enum class Axis { x, y, z };

// int R_{nl} R_{n'l'} r^3 dr by Gauss-Laguerre matched to the joint decay rate.
double radial_dipole_integral(int n, int l, int n2, int l2);
// int_S (x^p / r) Y_l^m conj(Y_{l'}^{m'}) dS.
std::complex<double> angular_dipole_integral(int l, int m, int l2, int m2, Axis p);
// int x^p psi_a conj(psi_b) d^3x.
std::complex<double> dipole_matrix_element(const StateLabel& a, const StateLabel& b, Axis p);

// <r^k> for the state (n, l) by radial quadrature.
double radial_moment(int n, int l, int k);

}  // namespace atomkit::oracle
