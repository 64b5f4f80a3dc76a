#pragma once

#include "atomkit/halfint.hpp"
#include "atomkit/units.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace atomkit::spectra {

struct SpinLabel {
    HalfInt J, M;  // for a bare spin projection use J = 1/2
};

// n = 0 marks a term label (L, J, M) without a principal number.
struct Level {
    int n = 1, l = 0, m = 0;
    std::optional<SpinLabel> spin;
    double energy = 0;  // Hartree
    int degeneracy = 1;
};

enum class LineKind { normal, zeeman_sigma_plus, zeeman_sigma_minus, zeeman_pi, anomalous };

struct SpectralLine {
    double omega = 0;
    Level upper, lower;
    LineKind kind = LineKind::normal;
};

double schrodinger_level(int n);
int degeneracy(int n);

// Lines n -> m_lower for n in [n_first, n_last]; empty when the range is empty.
std::vector<SpectralLine> series_lines(int m_lower, int n_first, int n_last);
double series_limit(int m_lower);

// R(r) = norm * e^{-r/n} rho^l sum_k coeffs[k] rho^k, rho = 2r/n.
struct RadialFunction {
    int n = 1, l = 0;
    double scale = 1;  // a_n in Bohr radii
    std::vector<double> coeffs;
    double norm = 1;

    double operator()(double r) const;
    // Degree of rho^l L(rho).
    int degree() const { return l + int(coeffs.size()) - 1; }
};

RadialFunction radial_wavefunction(int n, int l);

enum class ZeemanMode { orbital, pauli_plus, pauli_minus };

double zeeman_levels(int n, int l, int m, double B, ZeemanMode mode,
                     const Constants& k = Constants());

struct Term {
    int L;
    HalfInt J, M;
};

// omega = omega0 - omega_L (g M - g' M'). Selection rules M' in {M, M+-1} and
// J' = J +- 1; allow_delta_j0 additionally admits J' = J.
SpectralLine anomalous_zeeman_lines(const Term& upper, const Term& lower, double omega0, double B,
                                    const Constants& k = Constants(), bool allow_delta_j0 = false);

// Normal triplet {omega0 - omega_L, omega0, omega0 + omega_L} for Delta m = -1, 0, +1.
std::vector<SpectralLine> normal_zeeman_triplet(double omega0, double B,
                                                const Constants& k = Constants());

// Dirac levels in units of mu c^2.
double dirac_level(int n_r, int l, double alpha);
// Binomial approximation 1 - alpha^2 / (2 (n_r + delta + 1)^2).
double dirac_level_approx(int n_r, int l, double alpha);
// Spectroscopic labels: N = n_r + l + 1, j = l + 1/2.
double dirac_level_nj(int N, HalfInt j, double alpha);

struct DiracSeries {
    int n_r = 0, l = 0;
    double alpha = 0;
    double energy = 0;  // E / (mu c^2)
    double delta = 0;   // indicial exponent
    double kappa = 0;   // decay rate, c^2 kappa^2 = mu^2 c^4 - E^2
    std::vector<Eigen::Vector2cd> R;
    double kernel_residual = 0;       // |A_0 R_0| / |A_0| |R_0|
    double recurrence_residual = 0;   // max_k |A_k R_k - M R_{k-1}| relative
    double termination_residual = 0;  // |M R_{n_r}| / |M| |R_{n_r}|
    double dispersion_residual = 0;   // |c^2 kappa^2 - c^4 + E^2| / c^4
};

DiracSeries dirac_radial_series(int n_r, int l, double alpha);

bool selection_allowed(int l, int m, int l2, int m2);

struct BohrSommerfeldResult {
    double energy = 0;          // Hartree (negative)
    double action_residual = 0; // |J(E) - 2 pi k|
    int iterations = 0;
};

// Radial action 2 int_{r-}^{r+} p_r dr at binding energy b > 0 and angular momentum l.
double radial_action(double binding, int l);
BohrSommerfeldResult bohr_sommerfeld(int k, int l);
double bohr_sommerfeld_level(int k, int l);

}  // namespace atomkit::spectra
