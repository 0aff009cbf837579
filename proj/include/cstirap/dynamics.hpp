#pragma once

#include <array>
#include <vector>

#include "cstirap/model.hpp"

namespace cstirap {

struct Tolerances {
  double rel = 1e-9;
  double abs = 1e-12;
};

// amplitudes (c1, c2[, c_c]) plus the accumulated fluorescence integral
struct StateVector {
  int dim = 0;
  std::array<complexd, 3> amplitudes{};
  double fluorescence_acc = 0.0;
};

double norm(const StateVector& state);  // sum of |c_n|^2

struct TrajectorySample {
  double t;
  double p1, p2, pc;
  double fluorescence;  // F(t)
  double ionized;       // 1 - sum P - F
};

struct Trajectory {
  std::vector<TrajectorySample> samples;  // uniform grid over the window
  StateVector final_state;                // exact integrator endpoint
  double t_start = 0.0, t_end = 0.0;
  int dim = 0;
};

struct Signals {
  double ionization = 0.0;
  double fluorescence = 0.0;
  double residual_p1 = 0.0;
  double residual_p2 = 0.0;
  double residual_pc = 0.0;
  // end-of-window population left in a decaying state exceeded 1e-4,
  // i.e. the window was too short to stand in for t = infinity
  bool window_warning = false;
};

// Propagates i dc/dt = H(t) c from c1 = 1 with dF/dt = gamma_loss |c2|^2
// carried as an extra quadrature component of the same embedded
// Runge-Kutta scheme.  The step size is capped at a tenth of the narrowest
// pulse width.  sample_count may be 0 (no samples, signals only).
Trajectory propagate(const PulseSet& pulses, const ModelParams& params,
                     TimeWindow window, Tolerances tol = {}, int sample_count = 2000);

// Signals from the exact final state of a trajectory.
Signals signals_from(const Trajectory& trajectory);

}  // namespace cstirap
