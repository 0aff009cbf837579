#include "cstirap/model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cstirap {

namespace {
constexpr complexd kImag{0.0, 1.0};
}

void ModelParams::validate() const {
  if (!(gamma_loss >= 0.0))
    throw config_error("gamma_loss must be >= 0, got " + std::to_string(gamma_loss));
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) s += std::norm((*this)(r, c));
  return std::sqrt(s);
}

ComplexMatrix hamiltonian_2(double t, const PulseSet& pulses, const ModelParams& params) {
  const double omega = pulses.pump.value(t);
  const double gamma_i = pulses.ionizing.value(t);
  ComplexMatrix h;
  h.dim = 2;
  h(0, 0) = params.stark_1;
  h(0, 1) = h(1, 0) = 0.5 * omega;
  h(1, 1) = params.delta_pump + params.stark_2 -
            0.5 * kImag * (gamma_i + params.gamma_loss);
  return h;
}

ComplexMatrix hamiltonian_3(double t, const PulseSet& pulses, const ModelParams& params) {
  const double omega = pulses.pump.value(t);
  const double gamma_i = pulses.ionizing.value(t);
  const double gamma_c = pulses.control.value(t);
  const complexd cross =
      -0.5 * (params.fano_q + kImag) * std::sqrt(gamma_i * gamma_c);
  ComplexMatrix h;
  h.dim = 3;
  h(0, 0) = params.stark_1;
  h(0, 1) = h(1, 0) = 0.5 * omega;
  h(0, 2) = h(2, 0) = 0.0;
  h(1, 1) = params.delta_pump + params.stark_2 -
            0.5 * kImag * (gamma_i + params.gamma_loss);
  h(1, 2) = h(2, 1) = cross;
  h(2, 2) = params.delta_control + params.stark_c - 0.5 * kImag * gamma_c;
  return h;
}

ComplexMatrix hamiltonian(double t, const PulseSet& pulses, const ModelParams& params) {
  return params.kind == ModelKind::two_level ? hamiltonian_2(t, pulses, params)
                                             : hamiltonian_3(t, pulses, params);
}

LossSplit loss_split(double t, const PulseSet& pulses, const ModelParams& params) {
  const int dim = params.dimension();
  const double gamma_i = pulses.ionizing.value(t);
  const double gamma = params.gamma_loss;

  LossSplit out;
  out.loss.dim = out.loss_ion.dim = dim;
  out.loss(1, 1) = gamma_i + gamma;
  out.loss_ion(1, 1) = gamma_i;
  if (dim == 3) {
    const double gamma_c = pulses.control.value(t);
    const double cross = std::sqrt(gamma_i * gamma_c);
    out.loss(1, 2) = out.loss(2, 1) = cross;
    out.loss(2, 2) = gamma_c;
    out.loss_ion(1, 2) = out.loss_ion(2, 1) = cross;
    out.loss_ion(2, 2) = gamma_c;
  }

  const ComplexMatrix h = hamiltonian(t, pulses, params);
  out.hermitian.dim = dim;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      out.hermitian(r, c) = h(r, c) + 0.5 * kImag * out.loss(r, c);
  return out;
}

AdiabaticityReport check_conditions(double t, const PulseSet& pulses, const ModelParams& params) {
  const double omega = pulses.pump.value(t);
  const double damping = pulses.ionizing.value(t) + params.gamma_loss;
  const double t_ref = pulses.pump.width();
  constexpr double inf = std::numeric_limits<double>::infinity();

  AdiabaticityReport rep{};
  rep.depletion_ratio = damping > 0.0 ? omega * omega * t_ref / damping
                                      : (omega > 0.0 ? inf : 0.0);
  rep.hierarchy_ratio = omega > 0.0 ? damping / omega : inf;
  rep.pump_area = pulses.pump.area();
  rep.ionizing_area = pulses.ionizing.area();
  rep.pump_area_large = rep.pump_area > 10.0;
  rep.ionizing_area_large = rep.ionizing_area > 10.0;
  rep.hierarchy_large = rep.hierarchy_ratio > 10.0;
  return rep;
}

}  // namespace cstirap
