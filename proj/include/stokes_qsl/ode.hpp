// ode.hpp — embedded Dormand-Prince 5(4) integrator with adaptive step
// control. Generic over the state dimension so both the mode-amplitude flow
// and the Stokes-vector flow run through the same stepper.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <limits>
#include <span>

namespace sqsl::ode {

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
};

using Rhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

// Invoked after every accepted step with the mutable state (e.g. to project
// back onto a constraint manifold). May be empty.
using PostStep = std::function<void(Eigen::VectorXd&)>;

// Invoked once per requested sample time, in order.
using Sink = std::function<void(std::size_t index, double t, const Eigen::VectorXd& y)>;

// Integrates y' = rhs(t, y) from sample_times.front() with y(t0) = y0 and
// reports the state at every entry of sample_times. Steps are truncated so
// each sample time is hit exactly rather than interpolated. sample_times must
// be strictly increasing. Throws IntegrationFailure when the error control
// drives the step size below the resolvable minimum.
void integrate_dopri5(const Rhs& rhs, const Eigen::VectorXd& y0,
                      std::span<const double> sample_times, const Options& opts,
                      const PostStep& post_step, const Sink& on_sample);

}  // namespace sqsl::ode
