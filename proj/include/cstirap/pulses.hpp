#pragma once

#include "cstirap/errors.hpp"

namespace cstirap {

// Gaussian envelope a*exp(-(t-c)^2/w^2).  The width w is the pulse duration
// parameter, not a standard deviation.
class GaussianPulse {
 public:
  GaussianPulse(double amplitude, double center, double width);

  double value(double t) const;

  // full time integral, a*w*sqrt(pi)
  double area() const;

  double amplitude() const { return amplitude_; }
  double center() const { return center_; }
  double width() const { return width_; }

  bool operator==(const GaussianPulse&) const = default;

 private:
  double amplitude_;
  double center_;
  double width_;
};

// The three drives: pump Rabi frequency Omega(t) on the 1-2 transition,
// ionizing rate Gamma_i(t) from state 2 into the continuum, control rate
// Gamma_c(t) embedding state c.  control.amplitude() == 0 is the exact
// two-level limit.
struct PulseSet {
  GaussianPulse pump;
  GaussianPulse ionizing;
  GaussianPulse control;

  bool operator==(const PulseSet&) const = default;
};

struct TimeWindow {
  double t_start;
  double t_end;
};

// Smallest window leaving `padding` widths of margin around every envelope.
// With the default padding the tails at the boundaries are below
// amplitude*e^-25.
TimeWindow time_window(const PulseSet& pulses, double padding = 5.0);

}  // namespace cstirap
