#include "stokes_qsl/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stokes_qsl/errors.hpp"

namespace sqsl::ode {

namespace {

// Dormand-Prince 5(4) tableau.
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
// Weights of the embedded 4th-order solution.
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

double error_norm(const Eigen::VectorXd& diff, const Eigen::VectorXd& y_old,
                  const Eigen::VectorXd& y_new, const Options& opts) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < diff.size(); ++i) {
        const double scale =
            opts.abs_tol + opts.rel_tol * std::max(std::abs(y_old[i]), std::abs(y_new[i]));
        const double q = diff[i] / scale;
        acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(diff.size()));
}

double initial_step(const Rhs& rhs, double t0, const Eigen::VectorXd& y0, double span,
                    const Options& opts) {
    const Eigen::VectorXd f0 = rhs(t0, y0);
    double d0 = 0.0, d1 = 0.0;
    for (Eigen::Index i = 0; i < y0.size(); ++i) {
        const double scale = opts.abs_tol + opts.rel_tol * std::abs(y0[i]);
        d0 += (y0[i] / scale) * (y0[i] / scale);
        d1 += (f0[i] / scale) * (f0[i] / scale);
    }
    d0 = std::sqrt(d0 / static_cast<double>(y0.size()));
    d1 = std::sqrt(d1 / static_cast<double>(y0.size()));
    double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * (d0 / d1);
    return std::clamp(h, 1e-12 * span, std::min(span, opts.max_step));
}

}  // namespace

void integrate_dopri5(const Rhs& rhs, const Eigen::VectorXd& y0,
                      std::span<const double> sample_times, const Options& opts,
                      const PostStep& post_step, const Sink& on_sample) {
    if (sample_times.empty()) return;
    if (!(opts.abs_tol > 0.0) || !(opts.rel_tol > 0.0)) {
        throw std::invalid_argument("integrate_dopri5: tolerances must be positive");
    }
    for (std::size_t i = 1; i < sample_times.size(); ++i) {
        if (!(sample_times[i] > sample_times[i - 1])) {
            throw std::invalid_argument("integrate_dopri5: sample times must be strictly increasing");
        }
    }

    double t = sample_times.front();
    Eigen::VectorXd y = y0;
    on_sample(0, t, y);
    if (sample_times.size() == 1) return;

    const double span = sample_times.back() - t;
    double h = initial_step(rhs, t, y, span, opts);

    Eigen::VectorXd k1, k2, k3, k4, k5, k6, k7, y5, y4;
    std::size_t next = 1;
    while (next < sample_times.size()) {
        const double target = sample_times[next];
        bool hits_sample = false;
        double h_step = std::min(h, opts.max_step);
        if (t + h_step >= target) {
            h_step = target - t;
            hits_sample = true;
        }
        if (!(h_step > std::abs(t) * 1e-15) && !(h_step > span * 1e-15)) {
            throw IntegrationFailure("integrate_dopri5: step size underflow at t = " +
                                     std::to_string(t));
        }

        k1 = rhs(t, y);
        k2 = rhs(t + c2 * h_step, y + h_step * (a21 * k1));
        k3 = rhs(t + c3 * h_step, y + h_step * (a31 * k1 + a32 * k2));
        k4 = rhs(t + c4 * h_step, y + h_step * (a41 * k1 + a42 * k2 + a43 * k3));
        k5 = rhs(t + c5 * h_step, y + h_step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        k6 = rhs(t + h_step, y + h_step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        y5 = y + h_step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = rhs(t + h_step, y5);
        y4 = y + h_step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double err = error_norm(y5 - y4, y, y5, opts);
        if (err <= 1.0) {
            t = hits_sample ? target : t + h_step;
            y.swap(y5);
            if (post_step) post_step(y);
            if (hits_sample) {
                on_sample(next, t, y);
                ++next;
            }
            const double grow = (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h = h_step * grow;
        } else {
            h = h_step * std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
}

}  // namespace sqsl::ode
