#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cstirap/adiabatic.hpp"
#include "cstirap/dynamics.hpp"

namespace cstirap {

enum class SweepParameter {
  omega0,
  gamma_i0,
  gamma_c0,
  tau_p,
  tau_i,
  tau_c,
  width_p,
  width_i,
  width_c,
  gamma,
  delta_pump,
  delta_control,
  fano_q,
};

const char* to_string(SweepParameter p);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);

// rebuild pulses/params with one named scalar replaced; invalid values
// (e.g. a nonpositive width) throw config_error
void apply_override(PulseSet& pulses, ModelParams& params, SweepParameter p, double value);

enum class AxisScale { linear, log };
enum class SweepMode { numeric, analytic };

struct AxisSpec {
  SweepParameter parameter;
  double min;
  double max;
  int count;
  AxisScale scale = AxisScale::linear;

  void validate() const;        // min < max, count >= 2, log needs min > 0
  double value_at(int i) const;
};

struct SweepOptions {
  Tolerances tolerances{};
  double padding = 5.0;
  // recompute the window per grid point unless fixed; an explicit window
  // always wins
  bool fixed_window = false;
  std::optional<TimeWindow> window_override;
  int workers = 0;  // 0: SWEEP_WORKERS env var, else hardware concurrency
};

struct SweepResult {
  std::vector<AxisSpec> axes;               // 1 or 2
  std::vector<std::optional<Signals>> grid;  // x-major; nullopt = failed point
  SweepMode mode = SweepMode::numeric;
  int failures = 0;
};

// Evaluates signals on the grid; points are independent and are written into
// an index-addressed buffer, so the result is identical for any worker count.
// Per-point failures become missing values, never a sweep abort.
SweepResult sweep(const PulseSet& base_pulses, const ModelParams& base_params,
                  std::span<const AxisSpec> axes, SweepMode mode,
                  const SweepOptions& options = {});

struct ArgmaxResult {
  std::array<int, 2> index;     // second entry 0 for 1D sweeps
  std::array<double, 2> values;  // axis values at the maximum
  double ionization;
};

// Lexicographically-first grid point attaining the maximal ionization.
// Throws numeric_error when every point is missing.
ArgmaxResult argmax(const SweepResult& result);

}  // namespace cstirap
