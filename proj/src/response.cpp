#include "atomkit/response.hpp"
#include "atomkit/error.hpp"
#include "atomkit/format.hpp"
#include "atomkit/oracle.hpp"
#include "atomkit/spectra.hpp"

#include <cmath>

namespace atomkit::response {

std::complex<double> drude_epsilon(double omega, const OscillatorSet& set)
{
    std::complex<double> s = 0;
    for (const auto& o : set.oscillators) {
        if (o.f < 0 || o.gamma < 0) throw DomainError("oscillator weights and damping must be non-negative");
        const std::complex<double> den(o.omega * o.omega - omega * omega, -omega * o.gamma);
        if (std::abs(den) <= 1e-14 * o.omega * o.omega || den == 0.0)
            throw PoleError("undamped resonance at omega = " + fmt17(o.omega));
        s += o.f / den;
    }
    return 1.0 + 4 * pi * set.n * s;
}

double kk_susceptibility(double omega, const std::vector<Transition>& transitions, double n, KKConvention conv)
{
    double s = 0;
    for (const auto& t : transitions) {
        const double w = conv == KKConvention::absolute ? std::abs(t.omega_1l) : t.omega_1l;
        const double den = w * w - omega * omega;
        if (std::abs(den) <= 1e-14 * w * w) throw PoleError("omega hits the transition frequency " + fmt17(std::abs(w)));
        s += w * t.x2 / den;
    }
    return 4 * n * s;
}

double kk_epsilon(double omega, const std::vector<Transition>& transitions, double n, KKConvention conv)
{
    return 1 + 4 * pi * kk_susceptibility(omega, transitions, n, conv);
}

TransitionSet hydrogen_transitions(int n_max)
{
    if (n_max < 2) throw DomainError("need n_max >= 2");
    TransitionSet set;
    set.n_max = n_max;
    const double e1 = spectra::schrodinger_level(1);
    for (int nn = 2; nn <= n_max; ++nn) {
        double x2 = 0;
        for (int m = -1; m <= 1; ++m)
            x2 += std::norm(oracle::dipole_matrix_element({1, 0, 0}, {nn, 1, m}, oracle::Axis::x));
        set.lines.push_back({e1 - spectra::schrodinger_level(nn), x2});
    }
    return set;
}

double kk_tail_estimate(double omega, const TransitionSet& set, double n, KKConvention conv)
{
    if (set.lines.empty()) return 0;
    const auto& last = set.lines.back();
    const int N = set.n_max;
    const double e1 = spectra::schrodinger_level(1);
    double s = 0;
    // |x_1n|^2 n^3 tends to a constant; sum until the terms are negligible
    for (int nn = N + 1; nn <= 100000; ++nn) {
        Transition t{e1 - spectra::schrodinger_level(nn), last.x2 * std::pow(double(N) / nn, 3)};
        double term = kk_susceptibility(omega, {t}, n, conv);
        s += term;
        if (std::abs(term) < 1e-16 * std::abs(s)) break;
    }
    return s;
}

double langevin_chi(double mean_r2, double n, const Constants& k)
{
    if (mean_r2 < 0) throw DomainError("mean square radius must be non-negative");
    return -Constants::e * Constants::e * mean_r2 / (6 * k.c() * k.c()) * n;
}

double paramagnetic_moment(int m, const Constants& k) { return Constants::e / (2 * k.c()) * m + 0.0; }

}  // namespace atomkit::response
