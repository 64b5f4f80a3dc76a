#include "atomkit/ode.hpp"
#include "atomkit/error.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>

namespace atomkit::ode {

namespace odeint = boost::numeric::odeint;
using Stepper = odeint::runge_kutta_dopri5<State>;

double integrate_dp45(const Rhs& f, State& y, double t0, double t1, const Options& opt,
                      const Observer& obs, Stats* stats)
{
    auto dense = odeint::make_dense_output(opt.abs_tol, opt.rel_tol, opt.dt_max, Stepper());
    auto sys = [&](const State& x, State& dx, double t) { f(x, dx, t); };
    const double dir = t1 >= t0 ? 1.0 : -1.0;
    dense.initialize(y, t0, dir * std::abs(opt.dt0));
    long n = 0;
    while (dir * (dense.current_time() - t1) < 0) {
        dense.do_step(sys);
        ++n;
        if (dir * (dense.current_time() - t1) >= 0) break;
        if (obs && !obs(dense.current_state(), dense.current_time())) {
            y = dense.current_state();
            if (stats) stats->accepted = n;
            return dense.current_time();
        }
    }
    State out(y.size());
    dense.calc_state(t1, out);
    y = out;
    if (stats) stats->accepted = n;
    return t1;
}

std::vector<State> sample_dp45(const Rhs& f, const State& y0, const std::vector<double>& times,
                               const Options& opt)
{
    std::vector<State> out;
    out.reserve(times.size());
    if (times.empty()) return out;
    auto sys = [&](const State& x, State& dx, double t) { f(x, dx, t); };
    auto dense = odeint::make_dense_output(opt.abs_tol, opt.rel_tol, opt.dt_max, Stepper());
    State y = y0;
    odeint::integrate_times(dense, sys, y, times.begin(), times.end(), opt.dt0,
                            [&](const State& x, double) { out.push_back(x); });
    return out;
}

}  // namespace atomkit::ode
