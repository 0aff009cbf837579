#include "cstirap/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

namespace cstirap {

namespace {

struct ParamName {
  SweepParameter p;
  const char* name;
};

constexpr ParamName kNames[] = {
    {SweepParameter::omega0, "omega0"},
    {SweepParameter::gamma_i0, "gamma_i0"},
    {SweepParameter::gamma_c0, "gamma_c0"},
    {SweepParameter::tau_p, "tau_p"},
    {SweepParameter::tau_i, "tau_i"},
    {SweepParameter::tau_c, "tau_c"},
    {SweepParameter::width_p, "width_p"},
    {SweepParameter::width_i, "width_i"},
    {SweepParameter::width_c, "width_c"},
    {SweepParameter::gamma, "gamma"},
    {SweepParameter::delta_pump, "delta_pump"},
    {SweepParameter::delta_control, "delta_control"},
    {SweepParameter::fano_q, "fano_q"},
};

GaussianPulse with_amplitude(const GaussianPulse& p, double v) {
  return {v, p.center(), p.width()};
}
GaussianPulse with_center(const GaussianPulse& p, double v) {
  return {p.amplitude(), v, p.width()};
}
GaussianPulse with_width(const GaussianPulse& p, double v) {
  return {p.amplitude(), p.center(), v};
}

int worker_count(const SweepOptions& options, std::size_t points) {
  int w = options.workers;
  if (w <= 0) {
    if (const char* env = std::getenv("SWEEP_WORKERS")) w = std::atoi(env);
  }
  if (w <= 0) w = static_cast<int>(std::thread::hardware_concurrency());
  if (w <= 0) w = 1;
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(w), points));
}

}  // namespace

const char* to_string(SweepParameter p) {
  for (const auto& n : kNames)
    if (n.p == p) return n.name;
  return "?";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  for (const auto& n : kNames)
    if (name == n.name) return n.p;
  return std::nullopt;
}

void apply_override(PulseSet& pulses, ModelParams& params, SweepParameter p,
                    double value) {
  switch (p) {
    case SweepParameter::omega0: pulses.pump = with_amplitude(pulses.pump, value); break;
    case SweepParameter::gamma_i0:
      pulses.ionizing = with_amplitude(pulses.ionizing, value);
      break;
    case SweepParameter::gamma_c0:
      pulses.control = with_amplitude(pulses.control, value);
      break;
    case SweepParameter::tau_p: pulses.pump = with_center(pulses.pump, value); break;
    case SweepParameter::tau_i: pulses.ionizing = with_center(pulses.ionizing, value); break;
    case SweepParameter::tau_c: pulses.control = with_center(pulses.control, value); break;
    case SweepParameter::width_p: pulses.pump = with_width(pulses.pump, value); break;
    case SweepParameter::width_i: pulses.ionizing = with_width(pulses.ionizing, value); break;
    case SweepParameter::width_c: pulses.control = with_width(pulses.control, value); break;
    case SweepParameter::gamma:
      if (!(value >= 0.0)) throw config_error("gamma override must be >= 0");
      params.gamma_loss = value;
      break;
    case SweepParameter::delta_pump: params.delta_pump = value; break;
    case SweepParameter::delta_control: params.delta_control = value; break;
    case SweepParameter::fano_q: params.fano_q = value; break;
  }
}

void AxisSpec::validate() const {
  if (count < 2) throw config_error(std::string("axis ") + cstirap::to_string(parameter) +
                                    ": count must be >= 2");
  if (!(min < max))
    throw config_error(std::string("axis ") + cstirap::to_string(parameter) +
                       ": min must be < max");
  if (scale == AxisScale::log && !(min > 0.0))
    throw config_error(std::string("axis ") + cstirap::to_string(parameter) +
                       ": log scale requires min > 0");
}

double AxisSpec::value_at(int i) const {
  const double frac = static_cast<double>(i) / (count - 1);
  if (scale == AxisScale::log)
    return std::exp(std::log(min) + (std::log(max) - std::log(min)) * frac);
  return min + (max - min) * frac;
}

SweepResult sweep(const PulseSet& base_pulses, const ModelParams& base_params,
                  std::span<const AxisSpec> axes, SweepMode mode,
                  const SweepOptions& options) {
  if (axes.empty() || axes.size() > 2)
    throw config_error("sweep takes one or two axes");
  for (const AxisSpec& ax : axes) ax.validate();
  if (axes.size() == 2 && axes[0].parameter == axes[1].parameter)
    throw config_error("sweep axes must reference distinct parameters");

  SweepResult result;
  result.axes.assign(axes.begin(), axes.end());
  result.mode = mode;
  const int nx = axes[0].count;
  const int ny = axes.size() == 2 ? axes[1].count : 1;
  const std::size_t total = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  result.grid.assign(total, std::nullopt);

  std::optional<TimeWindow> fixed;
  if (options.window_override)
    fixed = options.window_override;
  else if (options.fixed_window)
    fixed = time_window(base_pulses, options.padding);

  auto evaluate_point = [&](std::size_t idx) -> std::optional<Signals> {
    const int ix = static_cast<int>(idx) / ny;
    const int iy = static_cast<int>(idx) % ny;
    try {
      PulseSet pulses = base_pulses;
      ModelParams params = base_params;
      apply_override(pulses, params, axes[0].parameter, axes[0].value_at(ix));
      if (axes.size() == 2)
        apply_override(pulses, params, axes[1].parameter, axes[1].value_at(iy));
      if (mode == SweepMode::analytic) return analytic_signals(pulses, params);
      const TimeWindow win = fixed ? *fixed : time_window(pulses, options.padding);
      return signals_from(propagate(pulses, params, win, options.tolerances, 0));
    } catch (...) {
      return std::nullopt;
    }
  };

  const int workers = worker_count(options, total);
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) result.grid[i] = evaluate_point(i);
  } else {
    // contiguous index ranges, exclusive writers into the preallocated grid
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      const std::size_t lo = total * static_cast<std::size_t>(w) / workers;
      const std::size_t hi = total * (static_cast<std::size_t>(w) + 1) / workers;
      pool.emplace_back([&, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i) result.grid[i] = evaluate_point(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (const auto& cell : result.grid)
    if (!cell) ++result.failures;
  return result;
}

ArgmaxResult argmax(const SweepResult& result) {
  const int ny = result.axes.size() == 2 ? result.axes[1].count : 1;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < result.grid.size(); ++i) {
    if (!result.grid[i]) continue;
    if (!best || result.grid[i]->ionization > result.grid[*best]->ionization) best = i;
  }
  if (!best) throw numeric_error("argmax over an all-missing sweep grid");

  ArgmaxResult out{};
  out.index = {static_cast<int>(*best) / ny, static_cast<int>(*best) % ny};
  out.values[0] = result.axes[0].value_at(out.index[0]);
  out.values[1] =
      result.axes.size() == 2 ? result.axes[1].value_at(out.index[1]) : 0.0;
  out.ionization = result.grid[*best]->ionization;
  return out;
}

}  // namespace cstirap
