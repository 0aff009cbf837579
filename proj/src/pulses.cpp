#include "cstirap/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cstirap {

GaussianPulse::GaussianPulse(double amplitude, double center, double width)
    : amplitude_(amplitude), center_(center), width_(width) {
  if (!(amplitude >= 0.0))
    throw config_error("pulse amplitude must be >= 0, got " + std::to_string(amplitude));
  if (!(width > 0.0))
    throw config_error("pulse width must be > 0, got " + std::to_string(width));
}

double GaussianPulse::value(double t) const {
  const double u = (t - center_) / width_;
  return amplitude_ * std::exp(-u * u);
}

double GaussianPulse::area() const {
  return amplitude_ * width_ * std::sqrt(std::numbers::pi);
}

TimeWindow time_window(const PulseSet& pulses, double padding) {
  if (!(padding > 0.0))
    throw config_error("window padding must be > 0, got " + std::to_string(padding));
  const GaussianPulse* all[3] = {&pulses.pump, &pulses.ionizing, &pulses.control};
  double lo = all[0]->center() - padding * all[0]->width();
  double hi = all[0]->center() + padding * all[0]->width();
  for (int k = 1; k < 3; ++k) {
    lo = std::min(lo, all[k]->center() - padding * all[k]->width());
    hi = std::max(hi, all[k]->center() + padding * all[k]->width());
  }
  return {lo, hi};
}

}  // namespace cstirap
