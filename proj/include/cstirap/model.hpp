#pragma once

#include <array>
#include <complex>

#include "cstirap/pulses.hpp"

namespace cstirap {

using complexd = std::complex<double>;

enum class ModelKind { two_level, three_level };

struct ModelParams {
  double delta_pump = 0.0;     // pump detuning
  double delta_control = 0.0;  // control detuning
  double gamma_loss = 0.0;     // irreversible decay rate of state 2
  double fano_q = 0.0;
  double stark_1 = 0.0;
  double stark_2 = 0.0;
  double stark_c = 0.0;
  ModelKind kind = ModelKind::three_level;

  int dimension() const { return kind == ModelKind::two_level ? 2 : 3; }
  void validate() const;  // throws config_error

  bool operator==(const ModelParams&) const = default;
};

// Dense 2x2 or 3x3 complex matrix with fixed row-major 3x3 storage.
struct ComplexMatrix {
  int dim = 0;
  std::array<complexd, 9> e{};

  complexd& operator()(int r, int c) { return e[static_cast<std::size_t>(r) * 3 + c]; }
  const complexd& operator()(int r, int c) const { return e[static_cast<std::size_t>(r) * 3 + c]; }

  double frobenius_norm() const;
};

// Two-level Hamiltonian after continuum elimination:
//   (1/2) [[2 S1, Omega], [Omega, 2 Delta + 2 S2 - i Gamma_i - i Gamma]]
ComplexMatrix hamiltonian_2(double t, const PulseSet& pulses, const ModelParams& params);

// Three-level LICS Hamiltonian; cross coupling -(q+i) sqrt(Gamma_i Gamma_c)/2,
// sign convention kept verbatim.
ComplexMatrix hamiltonian_3(double t, const PulseSet& pulses, const ModelParams& params);

// dispatch on params.kind
ComplexMatrix hamiltonian(double t, const PulseSet& pulses, const ModelParams& params);

// H = hermitian - (i/2) loss with loss real symmetric, and
// loss = loss_ion + diag(0, gamma_loss, 0) where loss_ion is the PSD
// ionization quadratic form.
struct LossSplit {
  ComplexMatrix hermitian;
  ComplexMatrix loss;
  ComplexMatrix loss_ion;
};

LossSplit loss_split(double t, const PulseSet& pulses, const ModelParams& params);

// Adiabaticity diagnostics.  T_ref is the pump width; flags use threshold 10
// as the working reading of ">> 1".
struct AdiabaticityReport {
  double depletion_ratio;  // Omega(t)^2 T_ref / (Gamma_i(t) + Gamma)
  double hierarchy_ratio;  // (Gamma_i(t) + Gamma) / Omega(t); +inf at Omega = 0
  double pump_area;        // integral of Omega, closed form
  double ionizing_area;    // integral of Gamma_i, closed form
  bool pump_area_large;
  bool ionizing_area_large;
  bool hierarchy_large;
};

AdiabaticityReport check_conditions(double t, const PulseSet& pulses, const ModelParams& params);

}  // namespace cstirap
