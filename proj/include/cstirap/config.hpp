#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cstirap/dynamics.hpp"
#include "cstirap/model.hpp"

namespace cstirap {

// Flat run configuration mirroring the key=value config format.  Time is in
// units of the pump width, rates and frequencies in its inverse.
struct RunConfig {
  ModelKind model = ModelKind::three_level;

  double omega0 = 0.0, tau_p = 0.0, width_p = 1.0;
  double gamma_i0 = 0.0, tau_i = 0.0, width_i = 1.0;
  double gamma_c0 = 0.0, tau_c = 0.0, width_c = 1.0;

  double gamma = 0.0;
  double delta_pump = 0.0, delta_control = 0.0;
  double fano_q = 0.0;
  double stark_1 = 0.0, stark_2 = 0.0, stark_c = 0.0;

  double tol_rel = 1e-9, tol_abs = 1e-12;
  double padding = 5.0;
  int sample_count = 2000;
  std::optional<double> t_start, t_end;

  PulseSet pulses() const;
  ModelParams params() const;
  TimeWindow window() const;  // explicit override, else padded pulse window
  Tolerances tolerances() const { return {tol_rel, tol_abs}; }

  bool operator==(const RunConfig&) const = default;
};

// Strict parser for the flat key=value text ('#' starts a comment).  Unknown
// keys, duplicate keys, malformed numbers and invariant violations raise
// config_error naming the key.  The `model` key is required.
RunConfig parse_config(std::string_view text);

// Applies one key=value setting (used for --set overrides); validation is
// re-run by the caller through validate_config.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

void validate_config(const RunConfig& config);

// Canonical echo; parse_config(dump_config(c)) reproduces c exactly.
std::string dump_config(const RunConfig& config);

}  // namespace cstirap
