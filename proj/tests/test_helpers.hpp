#pragma once

#include <random>

#include "cstirap/model.hpp"
#include "cstirap/pulses.hpp"

// canonical configurations used across the suites

namespace testcfg {

using namespace cstirap;

// pump at t=0, ionizing at tau_i, control at tau_c, unit widths
inline PulseSet pulses(double omega0, double gamma_i0, double tau_i,
                       double gamma_c0 = 0.0, double tau_c = -0.5,
                       double width = 1.0) {
  return {GaussianPulse(omega0, 0.0, width), GaussianPulse(gamma_i0, tau_i, width),
          GaussianPulse(gamma_c0, tau_c, width)};
}

inline ModelParams two_level(double gamma, double delta = 0.0) {
  ModelParams p;
  p.kind = ModelKind::two_level;
  p.gamma_loss = gamma;
  p.delta_pump = delta;
  return p;
}

inline ModelParams three_level(double gamma, double q, double delta = 0.0,
                               double delta_c = 10.0) {
  ModelParams p;
  p.kind = ModelKind::three_level;
  p.gamma_loss = gamma;
  p.fano_q = q;
  p.delta_pump = delta;
  p.delta_control = delta_c;
  return p;
}

// strong-loss scan configuration (pump/ionizing 50, tau_i=-1, Gamma=100)
inline PulseSet strong_loss_pulses() { return pulses(50.0, 50.0, -1.0); }
inline ModelParams strong_loss_params() { return two_level(100.0); }

// LICS working point: Gamma=100, q=3, all peaks 50, tau_i=-1, tau_c=-0.5,
// Delta=delta=10
inline PulseSet lics_pulses() { return pulses(50.0, 50.0, -1.0, 50.0, -0.5); }
inline ModelParams lics_params() { return three_level(100.0, 3.0, 10.0, 10.0); }

inline std::mt19937& rng() {
  static std::mt19937 gen(20260808u);
  return gen;
}

}  // namespace testcfg
