#pragma once

// Shared numerical kernels: an adaptive Dormand-Prince 5(4) propagator for
// Eigen states, scalar quadrature, golden-section search, and a fixed-order
// index-parallel map.  Everything here is deterministic for fixed inputs.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "contsense/errors.hpp"

namespace contsense::num {

struct IntegrateOptions {
    // Target accuracy for the whole span (max-norm, relative to the state
    // norm).  Local error per step is held near tol * dt / span, so the
    // accumulated error tracks tol.
    double tol = 1e-10;
    double initial_dt = 0.0;  // 0 picks a step from the first derivative
    long max_steps = 50'000'000;
};

namespace detail {

template <typename State>
double max_abs(const State& x) {
    return x.cwiseAbs().maxCoeff();
}

}  // namespace detail

// Integrates dx/dt = f(t, x) in place from t0 to t1 >= t0 with an embedded
// Dormand-Prince 5(4) pair.  Works for any dense Eigen matrix or vector of
// complex<double>.  Throws NumericError when the step size underflows or the
// step budget is exhausted.
template <typename State, typename Rhs>
void integrate_adaptive(Rhs&& f, State& x, double t0, double t1,
                        const IntegrateOptions& opt = {}) {
    if (!(t1 >= t0)) {
        throw std::invalid_argument("integrate_adaptive: need t1 >= t0");
    }
    const double span = t1 - t0;
    if (span == 0.0) return;

    // Dormand-Prince coefficients (FSAL: k7 of an accepted step is k1 of the next).
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // 5th-minus-4th order weights for the error estimate.
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    State k1 = x, k2 = x, k3 = x, k4 = x, k5 = x, k6 = x, k7 = x;
    State xtmp = x, xnew = x, err = x;

    double t = t0;
    f(t, x, k1);

    double dt = opt.initial_dt;
    if (dt <= 0.0) {
        const double xn = detail::max_abs(x);
        const double fn = detail::max_abs(k1);
        dt = (fn > 0.0) ? 0.01 * std::max(xn, 1e-30) / fn : 1e-3 * span;
        dt = std::min(dt, span);
    }

    const double floor_norm = 1e-30 + 1e-14 * detail::max_abs(x);
    long steps = 0;
    bool fsal_fresh = true;

    while (t < t1) {
        if (++steps > opt.max_steps) {
            throw NumericError("integrate_adaptive: step budget exhausted");
        }
        dt = std::min(dt, t1 - t);
        if (dt < 1e-14 * span) {
            std::ostringstream os;
            os << "integrate_adaptive: step underflow at t=" << t << " (dt=" << dt << ")";
            throw NumericError(os.str());
        }
        if (!fsal_fresh) f(t, x, k1);

        xtmp = x + dt * (a21 * k1);
        f(t + c2 * dt, xtmp, k2);
        xtmp = x + dt * (a31 * k1 + a32 * k2);
        f(t + c3 * dt, xtmp, k3);
        xtmp = x + dt * (a41 * k1 + a42 * k2 + a43 * k3);
        f(t + c4 * dt, xtmp, k4);
        xtmp = x + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(t + c5 * dt, xtmp, k5);
        xtmp = x + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(t + dt, xtmp, k6);
        xnew = x + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        f(t + dt, xnew, k7);

        err = dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double scale =
            std::max({detail::max_abs(x), detail::max_abs(xnew), floor_norm});
        // Error per unit step keeps the global error near opt.tol.
        const double tol_here = opt.tol * (dt / span) * scale;
        const double e = detail::max_abs(err);

        if (e <= tol_here) {
            t += dt;
            x.swap(xnew);
            k1.swap(k7);
            fsal_fresh = true;
        } else {
            fsal_fresh = false;
        }
        const double ratio = (e > 0.0) ? tol_here / e : 10.0;
        dt *= std::clamp(0.9 * std::pow(ratio, 0.25), 0.2, 5.0);
    }
}

// Integrates across `times` (ascending, times[0] >= t0), invoking
// observe(i, x) at each grid point.  The state lands exactly on every grid
// time; the propagation is one continuous run, not a restart per segment.
template <typename State, typename Rhs, typename Observer>
void integrate_observe(Rhs&& f, State& x, double t0, const std::vector<double>& times,
                       Observer&& observe, const IntegrateOptions& opt = {}) {
    double t = t0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t - 1e-12 * std::max(1.0, std::abs(t))) {
            throw std::invalid_argument("integrate_observe: times must be ascending");
        }
        if (times[i] > t) {
            integrate_adaptive(f, x, t, times[i], opt);
            t = times[i];
        }
        observe(i, x);
    }
}

struct Extremum {
    double x = 0.0;
    double value = 0.0;
};

// Golden-section maximization on [lo, hi].  The function is assumed unimodal
// there; the bracket is shrunk until its width falls below xtol.
Extremum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                            double xtol, int max_iter = 200);

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // quadrature's own error estimate
};

// Adaptive Gauss-Kronrod integration of f over [a, b].
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12);

// Runs fn(0..n-1) on up to `threads` workers.  Callers index into pre-sized
// storage, so results are position-stable regardless of scheduling.  The
// first exception, if any, is rethrown after all workers join.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace contsense::num
