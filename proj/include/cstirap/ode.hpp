#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

#include "cstirap/errors.hpp"

// Embedded Dormand-Prince 5(4) pair with the standard 4th-order dense
// interpolant.  Fixed-size real state, FSAL, error-per-step control.

namespace cstirap {

struct StepControls {
  double rel = 1e-9;
  double abs = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
};

namespace dopri5 {

inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th-order weights minus the embedded 4th-order weights
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
inline constexpr double d1 = -12715105075.0 / 11282082432.0,
                        d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0,
                        d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0,
                        d7 = 69997945.0 / 29380423.0;

}  // namespace dopri5

// Integrates y' = f(t, y) from t0 to t1.  `sample_times` must be ascending
// and inside [t0, t1]; each is delivered once through
// sink(index, time, state) using the dense interpolant of the covering step.
// Throws numeric_error when the accepted step size underflows below
// 1e-12 * (t1 - t0).
template <std::size_t N, typename Deriv, typename SampleSink>
void integrate_dopri5(Deriv&& f, std::array<double, N>& y, double t0, double t1,
                      const StepControls& ctl, std::span<const double> sample_times,
                      SampleSink&& sink) {
  using namespace dopri5;
  using State = std::array<double, N>;

  const double span_len = t1 - t0;
  if (!(span_len > 0.0)) throw config_error("integration window must have t_end > t_start");
  const double h_min = 1e-12 * span_len;

  std::size_t next_sample = 0;
  while (next_sample < sample_times.size() && sample_times[next_sample] <= t0) {
    sink(next_sample, sample_times[next_sample], y);
    ++next_sample;
  }

  State k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
  f(t0, y, k1);

  double t = t0;
  double h = std::min({ctl.max_step, span_len, 1e-4 * span_len});

  while (t < t1) {
    if (t1 - t < h_min) break;  // sub-resolution sliver left by fp rounding
    h = std::min(h, t1 - t);
    if (h < h_min)
      throw numeric_error("step size underflow below 1e-12 of the window at t=" +
                          std::to_string(t));

    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    f(t + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                            a65 * k5[i]);
    f(t + h, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
    f(t + h, ynew, k7);

    double err_sq = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
      const double scale =
          ctl.abs + ctl.rel * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
      err_sq += (e / scale) * (e / scale);
    }
    const double err = std::sqrt(err_sq / N);

    if (err <= 1.0) {
      const double t_new = t + h;

      if (next_sample < sample_times.size() && sample_times[next_sample] <= t_new) {
        // dense coefficients for this step
        State r1, r2, r3, r4, r5;
        for (std::size_t i = 0; i < N; ++i) {
          const double ydiff = ynew[i] - y[i];
          const double bspl = h * k1[i] - ydiff;
          r1[i] = y[i];
          r2[i] = ydiff;
          r3[i] = bspl;
          r4[i] = ydiff - h * k7[i] - bspl;
          r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                       d6 * k6[i] + d7 * k7[i]);
        }
        while (next_sample < sample_times.size() && sample_times[next_sample] <= t_new) {
          const double ts = sample_times[next_sample];
          const double theta = (ts - t) / h;
          const double theta1 = 1.0 - theta;
          State ys;
          for (std::size_t i = 0; i < N; ++i)
            ys[i] = r1[i] +
                    theta * (r2[i] + theta1 * (r3[i] + theta * (r4[i] + theta1 * r5[i])));
          sink(next_sample, ts, ys);
          ++next_sample;
        }
      }

      t = t_new;
      y = ynew;
      k1 = k7;  // FSAL
      const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      h = std::min(h * std::clamp(grow, 0.2, 5.0), ctl.max_step);
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }

  // floating-point slack: any stragglers get the final state
  while (next_sample < sample_times.size()) {
    sink(next_sample, sample_times[next_sample], y);
    ++next_sample;
  }
}

}  // namespace cstirap
