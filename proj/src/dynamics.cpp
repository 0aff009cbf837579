#include "cstirap/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "cstirap/ode.hpp"

namespace cstirap {

double norm(const StateVector& state) {
  double s = 0.0;
  for (int n = 0; n < state.dim; ++n) s += std::norm(state.amplitudes[n]);
  return s;
}

namespace {

// packed real state: (Re c1, Im c1, ..., F)
template <int Dim>
struct PackedState {
  static constexpr std::size_t size = 2 * Dim + 1;
  using Array = std::array<double, size>;
};

template <int Dim>
void schroedinger_rhs(double t, const PulseSet& pulses, const ModelParams& params,
                      const std::array<double, 2 * Dim + 1>& y,
                      std::array<double, 2 * Dim + 1>& dy) {
  const ComplexMatrix h = hamiltonian(t, pulses, params);
  std::array<complexd, Dim> c;
  for (int n = 0; n < Dim; ++n) c[n] = {y[2 * n], y[2 * n + 1]};
  for (int r = 0; r < Dim; ++r) {
    complexd acc{};
    for (int k = 0; k < Dim; ++k) acc += h(r, k) * c[k];
    const complexd dc = complexd{0.0, -1.0} * acc;  // i dc/dt = H c
    dy[2 * r] = dc.real();
    dy[2 * r + 1] = dc.imag();
  }
  dy[2 * Dim] = params.gamma_loss * std::norm(c[1]);
}

template <int Dim>
Trajectory run(const PulseSet& pulses, const ModelParams& params, TimeWindow window,
               Tolerances tol, int sample_count) {
  using Array = typename PackedState<Dim>::Array;

  std::vector<double> sample_times;
  if (sample_count > 0) {
    sample_times.resize(static_cast<std::size_t>(sample_count));
    for (int i = 0; i < sample_count; ++i)
      sample_times[static_cast<std::size_t>(i)] =
          sample_count == 1
              ? window.t_end
              : window.t_start + (window.t_end - window.t_start) * i / (sample_count - 1);
    sample_times.back() = window.t_end;
  }

  Trajectory traj;
  traj.dim = Dim;
  traj.t_start = window.t_start;
  traj.t_end = window.t_end;
  traj.samples.reserve(sample_times.size());

  Array y{};
  y[0] = 1.0;  // population starts in state 1

  StepControls ctl;
  ctl.rel = tol.rel;
  ctl.abs = tol.abs;
  const double min_width = std::min(
      {pulses.pump.width(), pulses.ionizing.width(), pulses.control.width()});
  ctl.max_step = min_width / 10.0;

  auto rhs = [&](double t, const Array& s, Array& ds) {
    schroedinger_rhs<Dim>(t, pulses, params, s, ds);
  };
  auto sink = [&](std::size_t, double ts, const Array& s) {
    TrajectorySample smp;
    smp.t = ts;
    smp.p1 = s[0] * s[0] + s[1] * s[1];
    smp.p2 = s[2] * s[2] + s[3] * s[3];
    smp.pc = Dim == 3 ? s[4] * s[4] + s[5] * s[5] : 0.0;
    smp.fluorescence = s[2 * Dim];
    smp.ionized = 1.0 - smp.p1 - smp.p2 - smp.pc - smp.fluorescence;
    traj.samples.push_back(smp);
  };

  integrate_dopri5<PackedState<Dim>::size>(rhs, y, window.t_start, window.t_end, ctl,
                                           sample_times, sink);

  traj.final_state.dim = Dim;
  for (int n = 0; n < Dim; ++n)
    traj.final_state.amplitudes[n] = {y[2 * n], y[2 * n + 1]};
  traj.final_state.fluorescence_acc = y[2 * Dim];
  return traj;
}

}  // namespace

Trajectory propagate(const PulseSet& pulses, const ModelParams& params,
                     TimeWindow window, Tolerances tol, int sample_count) {
  params.validate();
  if (params.kind == ModelKind::two_level && pulses.control.amplitude() > 0.0)
    throw config_error("two_level model with a nonzero control pulse");
  if (!(tol.rel > 0.0) || !(tol.abs > 0.0))
    throw config_error("integrator tolerances must be > 0");
  return params.kind == ModelKind::two_level
             ? run<2>(pulses, params, window, tol, sample_count)
             : run<3>(pulses, params, window, tol, sample_count);
}

Signals signals_from(const Trajectory& trajectory) {
  Signals sig;
  const StateVector& fin = trajectory.final_state;
  sig.residual_p1 = std::norm(fin.amplitudes[0]);
  sig.residual_p2 = std::norm(fin.amplitudes[1]);
  sig.residual_pc = fin.dim == 3 ? std::norm(fin.amplitudes[2]) : 0.0;
  sig.fluorescence = fin.fluorescence_acc;
  sig.ionization =
      1.0 - sig.residual_p1 - sig.residual_p2 - sig.residual_pc - sig.fluorescence;
  sig.window_warning = sig.residual_p2 > 1e-4 || sig.residual_pc > 1e-4;
  return sig;
}

}  // namespace cstirap
