#pragma once

#include "atomkit/units.hpp"

#include <complex>
#include <vector>

namespace atomkit::response {

struct Oscillator {
    double omega = 0;  // eigenfrequency
    double f = 0;      // fraction of electrons per atom
    double gamma = 0;  // damping
};

struct OscillatorSet {
    std::vector<Oscillator> oscillators;
    double n = 0;  // atoms per unit volume
};

// eps = 1 + 4 pi n sum f_k / (omega_k^2 - omega^2 - i omega gamma_k) in atomic units.
std::complex<double> drude_epsilon(double omega, const OscillatorSet& set);

// omega_1l = E_1 - E_l (negative for excitations from the ground state) and |x_1l|^2.
struct Transition {
    double omega_1l = 0;
    double x2 = 0;
};

enum class KKConvention {
    absolute,    // |omega_1l|, static chi > 0
    as_printed,  // signed omega_1l, static chi < 0
};

// chi_e = n * 4 * sum w |x|^2 / (w^2 - omega^2).
double kk_susceptibility(double omega, const std::vector<Transition>& transitions, double n,
                         KKConvention conv = KKConvention::absolute);
// eps = 1 + 4 pi chi_e
double kk_epsilon(double omega, const std::vector<Transition>& transitions, double n,
                  KKConvention conv = KKConvention::absolute);

struct TransitionSet {
    std::vector<Transition> lines;  // 1s -> np for n = 2..n_max
    int n_max = 10;
};

// Ground-state hydrogen transitions with |x|^2 summed over the np sublevels, from dipole quadrature.
TransitionSet hydrogen_transitions(int n_max = 10);

// Estimated contribution of the omitted discrete levels n > n_max, from the n^-3 decay of
// the oscillator strengths. The continuum is not included.
double kk_tail_estimate(double omega, const TransitionSet& set, double n,
                        KKConvention conv = KKConvention::absolute);

// chi_m = -e^2 <r^2> / (6 mu c^2) * n
double langevin_chi(double mean_r2, double n = 1, const Constants& k = Constants());

// (e / 2 mu c) m hbar along the field axis
double paramagnetic_moment(int m, const Constants& k = Constants());

}  // namespace atomkit::response
