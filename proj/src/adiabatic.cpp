#include "cstirap/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "cstirap/quadrature.hpp"

namespace cstirap {

namespace {

constexpr complexd kImag{0.0, 1.0};
constexpr double kQuadTol = 1e-8;

double magnitude_scale(const TildeQuantities& tq, double omega) {
  return std::max({std::abs(tq.delta_tilde), std::abs(tq.small_delta_tilde),
                   std::abs(tq.gamma_tilde), omega});
}

// Gamma_tilde^2 - 4 Delta_tilde delta_tilde, guarded
complexd shared_denominator(const TildeQuantities& tq, double omega) {
  const complexd d =
      tq.gamma_tilde * tq.gamma_tilde - 4.0 * tq.delta_tilde * tq.small_delta_tilde;
  const double scale = magnitude_scale(tq, omega);
  if (std::abs(d) < 1e-12 * scale * scale || scale == 0.0)
    throw numeric_error("degenerate denominator gt^2 - 4 dt sdt in the adiabatic "
                        "formulas");
  return d;
}

void require_three_level(const ModelParams& params, const char* what) {
  if (params.kind != ModelKind::three_level)
    throw config_error(std::string(what) + " requires the three_level model");
}

// shared state for the quasi-dark closed forms: the accumulated adiabatic
// phase int eps_0 dt' with eps_0 = Omega^2 sdt / (gt^2 - 4 dt sdt).  The
// factored form exp(-i sdt(t) int Omega^2/D dt') is equivalent only while
// the control envelope is flat where the integrand has support, and visibly
// misses the reference propagation at the edges of delay scans; sdt stays
// inside the integral here.
class QuasiDark {
 public:
  QuasiDark(const PulseSet& pulses, const ModelParams& params)
      : pulses_(pulses),
        params_(params),
        window_(time_window(pulses)),
        phase_(
            [pulses, params](double tp) -> complexd {
              const double omega = pulses.pump.value(tp);
              if (omega == 0.0) return {};
              const TildeQuantities tq = tilde(tp, pulses, params);
              return omega * omega * tq.small_delta_tilde /
                     shared_denominator(tq, omega);
            },
            window_.t_start, window_.t_end, kQuadTol) {}

  const TimeWindow& window() const { return window_; }

  double p0(double t) const {
    const complexd z = phase_.at(t);
    return std::exp(2.0 * z.imag());  // |exp(-i z)|^2
  }

  AnalyticPopulations populations(double t) const {
    AnalyticPopulations pop{};
    pop.p0 = p0(t);
    const double omega = pulses_.pump.value(t);
    if (omega == 0.0) {
      pop.p1 = pop.p0;
      return pop;
    }
    const TildeQuantities tq = tilde(t, pulses_, params_);
    const complexd d = shared_denominator(tq, omega);
    const complexd sdt = tq.small_delta_tilde;
    const complexd gt = tq.gamma_tilde;
    const complexd f1 =
        1.0 - omega * omega * (gt * gt + 4.0 * sdt * sdt) / (2.0 * d * d);
    pop.p1 = std::norm(f1) * pop.p0;
    pop.p2 = std::norm(2.0 * omega * sdt / d) * pop.p0;
    pop.pc = std::norm(omega * gt / d) * pop.p0;
    return pop;
  }

 private:
  PulseSet pulses_;
  ModelParams params_;
  TimeWindow window_;
  CumulativeIntegral<complexd> phase_;
};

// two-level elimination exponent
class Elimination {
 public:
  Elimination(const PulseSet& pulses, const ModelParams& params)
      : pulses_(pulses),
        params_(params),
        window_(time_window(pulses)),
        exponent_(
            [pulses, params](double tp) {
              const double omega = pulses.pump.value(tp);
              if (omega == 0.0) return 0.0;
              return omega * omega * damping(pulses, params, tp) /
                     denominator(pulses, params, tp);
            },
            window_.t_start, window_.t_end, kQuadTol) {}

  TwoLevelPopulations at(double t) const {
    TwoLevelPopulations pop{};
    pop.p1 = std::exp(-exponent_.at(t));
    const double omega = pulses_.pump.value(t);
    pop.p2 = omega == 0.0
                 ? 0.0
                 : omega * omega / denominator(pulses_, params_, t) * pop.p1;
    return pop;
  }

  const TimeWindow& window() const { return window_; }

 private:
  static double damping(const PulseSet& pulses, const ModelParams& params, double t) {
    return pulses.ionizing.value(t) + params.gamma_loss;
  }

  static double denominator(const PulseSet& pulses, const ModelParams& params,
                            double t) {
    const double g = damping(pulses, params, t);
    const double detuning = params.delta_pump + params.stark_2 - params.stark_1;
    const double den = g * g + 4.0 * detuning * detuning;
    if (den == 0.0)
      throw numeric_error("adiabatic elimination undefined: Gamma_i + Gamma and "
                          "Delta + S both vanish");
    return den;
  }

  PulseSet pulses_;
  ModelParams params_;
  TimeWindow window_;
  CumulativeIntegral<double> exponent_;
};

Signals signals_from_analytic(double p1_end, double p2_end, double pc_end, double f) {
  Signals sig;
  sig.residual_p1 = p1_end;
  sig.residual_p2 = p2_end;
  sig.residual_pc = pc_end;
  sig.fluorescence = f;
  sig.ionization = 1.0 - p1_end - p2_end - pc_end - f;
  sig.window_warning = p2_end > 1e-4 || pc_end > 1e-4;
  return sig;
}

}  // namespace

TildeQuantities tilde(double t, const PulseSet& pulses, const ModelParams& params) {
  const double gamma_i = pulses.ionizing.value(t);
  const double gamma_c = pulses.control.value(t);
  TildeQuantities tq;
  tq.delta_tilde =
      params.delta_pump - 0.5 * kImag * (gamma_i + params.gamma_loss);
  tq.small_delta_tilde = params.delta_control - 0.5 * kImag * gamma_c;
  tq.gamma_tilde = -(params.fano_q + kImag) * std::sqrt(gamma_i * gamma_c);
  const complexd diff = tq.delta_tilde - tq.small_delta_tilde;
  tq.eta = std::sqrt(diff * diff + tq.gamma_tilde * tq.gamma_tilde);
  return tq;
}

PerturbativeEigensystem perturbative_eigensystem(double t, const PulseSet& pulses,
                                                 const ModelParams& params) {
  require_three_level(params, "perturbative_eigensystem");

  const TildeQuantities tq = tilde(t, pulses, params);
  const double omega = pulses.pump.value(t);
  const complexd dt = tq.delta_tilde;
  const complexd sdt = tq.small_delta_tilde;
  const complexd gt = tq.gamma_tilde;
  const complexd eta = tq.eta;
  const double scale = magnitude_scale(tq, omega);
  const complexd d = shared_denominator(tq, omega);

  PerturbativeEigensystem sys;
  const double root_gigc =
      std::sqrt(pulses.ionizing.value(t) * pulses.control.value(t));
  sys.regime_ratio = root_gigc > 0.0
                         ? omega / root_gigc
                         : (omega > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);

  // mixing angle: tan 2xi = gt / (dt - sdt).  The principal atan fixes xi
  // only up to pi/2; the branch pairing f+ with the +eta eigenvalue is the
  // one with sin 2xi = gt/eta and cos 2xi = (dt - sdt)/eta.
  const complexd diff = dt - sdt;
  if (std::abs(diff) > 0.0) {
    sys.xi = 0.5 * std::atan(gt / diff);
  } else {
    sys.xi = std::abs(gt) > 0.0 ? complexd{0.25 * std::numbers::pi, 0.0} : complexd{};
  }
  if (std::abs(eta) > 0.0) {
    const complexd c2 = std::cos(2.0 * sys.xi);
    const complexd s2 = std::sin(2.0 * sys.xi);
    if (std::abs(c2 - diff / eta) + std::abs(s2 - gt / eta) >
        std::abs(c2 + diff / eta) + std::abs(s2 + gt / eta))
      sys.xi += 0.5 * std::numbers::pi;
  }
  const complexd sin_xi = std::sin(sys.xi);
  const complexd cos_xi = std::cos(sys.xi);

  sys.eigenvalues[1] = omega * omega * sdt / d;  // epsilon_0
  sys.eigenvectors[1] = {1.0 - omega * omega * (gt * gt + 4.0 * sdt * sdt) / (2.0 * d * d),
                         2.0 * sdt * omega / d, -omega * gt / d};

  complexd plus_ratio{}, minus_ratio{};
  if (omega != 0.0) {
    const complexd den_plus = eta + dt + sdt;
    const complexd den_minus = eta - dt - sdt;
    if (std::abs(eta) < 1e-12 * scale || std::abs(den_plus) < 1e-12 * scale ||
        std::abs(den_minus) < 1e-12 * scale)
      throw numeric_error("degenerate eta +- (dt +- sdt) combination in the "
                          "perturbative eigensystem");
    plus_ratio = (eta + dt - sdt) / den_plus;
    minus_ratio = (eta - dt + sdt) / den_minus;
  }
  sys.eigenvalues[0] =
      0.5 * (dt + sdt + eta) +
      (omega == 0.0 ? complexd{} : omega * omega / (4.0 * eta) * plus_ratio);
  sys.eigenvalues[2] =
      0.5 * (dt + sdt - eta) -
      (omega == 0.0 ? complexd{} : omega * omega / (4.0 * eta) * minus_ratio);

  const complexd front =
      omega == 0.0 ? complexd{} : omega / gt;  // gt != 0 whenever the regime holds
  sys.eigenvectors[0] = {front * plus_ratio * sin_xi, cos_xi, sin_xi};
  sys.eigenvectors[2] = {front * minus_ratio * cos_xi, -sin_xi, cos_xi};
  return sys;
}

TwoLevelPopulations elimination_p1_p2(double t, const PulseSet& pulses,
                                      const ModelParams& params) {
  if (params.kind == ModelKind::three_level && pulses.control.amplitude() > 0.0)
    throw config_error("elimination_p1_p2 requires a two-level configuration");
  return Elimination(pulses, params).at(t);
}

double quasi_dark_p0(double t, const PulseSet& pulses, const ModelParams& params) {
  require_three_level(params, "quasi_dark_p0");
  return QuasiDark(pulses, params).p0(t);
}

AnalyticPopulations analytic_populations(double t, const PulseSet& pulses,
                                         const ModelParams& params) {
  require_three_level(params, "analytic_populations");
  return QuasiDark(pulses, params).populations(t);
}

Signals analytic_signals(const PulseSet& pulses, const ModelParams& params) {
  params.validate();
  if (params.kind == ModelKind::two_level) {
    const Elimination ana(pulses, params);
    const TimeWindow win = ana.window();
    const double fluor = integrate_adaptive<double>(
        [&](double t) { return params.gamma_loss * ana.at(t).p2; }, win.t_start,
        win.t_end, kQuadTol);
    const TwoLevelPopulations end = ana.at(win.t_end);
    return signals_from_analytic(end.p1, end.p2, 0.0, fluor);
  }

  const QuasiDark ana(pulses, params);
  const TimeWindow win = ana.window();
  const double fluor = integrate_adaptive<double>(
      [&](double t) { return params.gamma_loss * ana.populations(t).p2; },
      win.t_start, win.t_end, kQuadTol);
  const AnalyticPopulations end = ana.populations(win.t_end);
  return signals_from_analytic(end.p1, end.p2, end.pc, fluor);
}

Trajectory analytic_trajectory(const PulseSet& pulses, const ModelParams& params,
                               TimeWindow window, int sample_count) {
  params.validate();
  if (sample_count < 2) throw config_error("analytic trajectory needs sample_count >= 2");

  Trajectory traj;
  traj.dim = params.dimension();
  traj.t_start = window.t_start;
  traj.t_end = window.t_end;
  traj.samples.reserve(static_cast<std::size_t>(sample_count));

  const bool two_level = params.kind == ModelKind::two_level;
  // population evaluators over the pulse-derived window; the fluorescence
  // accumulator is integrated over the requested window
  std::optional<Elimination> elim;
  std::optional<QuasiDark> dark;
  if (two_level)
    elim.emplace(pulses, params);
  else
    dark.emplace(pulses, params);

  auto p2_of = [&](double t) {
    return two_level ? elim->at(t).p2 : dark->populations(t).p2;
  };
  const CumulativeIntegral<double> fluor(
      [&](double t) { return params.gamma_loss * p2_of(t); }, window.t_start,
      window.t_end, kQuadTol);

  for (int i = 0; i < sample_count; ++i) {
    const double t =
        window.t_start + (window.t_end - window.t_start) * i / (sample_count - 1);
    TrajectorySample smp{};
    smp.t = t;
    if (two_level) {
      const TwoLevelPopulations pop = elim->at(t);
      smp.p1 = pop.p1;
      smp.p2 = pop.p2;
    } else {
      const AnalyticPopulations pop = dark->populations(t);
      smp.p1 = pop.p1;
      smp.p2 = pop.p2;
      smp.pc = pop.pc;
    }
    smp.fluorescence = fluor.at(t);
    smp.ionized = 1.0 - smp.p1 - smp.p2 - smp.pc - smp.fluorescence;
    traj.samples.push_back(smp);
  }

  const TrajectorySample& last = traj.samples.back();
  traj.final_state.dim = traj.dim;
  traj.final_state.amplitudes = {std::sqrt(std::max(0.0, last.p1)),
                                 std::sqrt(std::max(0.0, last.p2)),
                                 std::sqrt(std::max(0.0, last.pc))};
  traj.final_state.fluorescence_acc = last.fluorescence;
  return traj;
}

}  // namespace cstirap
