#pragma once

#include <functional>
#include <vector>

namespace atomkit::ode {

using State = std::vector<double>;
using Rhs = std::function<void(const State& y, State& dydt, double t)>;
// Called after each accepted step; return false to stop early.
using Observer = std::function<bool(const State& y, double t)>;

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double dt0 = 1e-3;
    double dt_max = 0;  // 0 = unlimited
};

struct Stats {
    long accepted = 0;
};

// Adaptive Dormand-Prince 5(4) with local error control; y is advanced in place to t1
// (or to the time the observer stops it). Returns the final time.
double integrate_dp45(const Rhs& f, State& y, double t0, double t1, const Options& opt,
                      const Observer& obs = {}, Stats* stats = nullptr);

// Dense output at fixed sample times.
std::vector<State> sample_dp45(const Rhs& f, const State& y0, const std::vector<double>& times,
                               const Options& opt);

}  // namespace atomkit::ode
