#pragma once

#include <array>

#include "cstirap/dynamics.hpp"
#include "cstirap/model.hpp"

// Closed-form approximations: two-level adiabatic-elimination populations,
// the three-level perturbative eigensystem in the small Omega/sqrt(Gi*Gc)
// regime, the quasi-dark-state evolution, and analytic signals built from
// them.

namespace cstirap {

struct TildeQuantities {
  complexd delta_tilde;        // Delta - i(Gamma_i + Gamma)/2
  complexd small_delta_tilde;  // delta - i Gamma_c/2
  complexd gamma_tilde;        // -(q + i) sqrt(Gamma_i Gamma_c)
  complexd eta;                // principal sqrt of (dt - sdt)^2 + gt^2
};

TildeQuantities tilde(double t, const PulseSet& pulses, const ModelParams& params);

struct PerturbativeEigensystem {
  std::array<complexd, 3> eigenvalues;                 // (+, 0, -)
  std::array<std::array<complexd, 3>, 3> eigenvectors;  // f+, f0, f-
  complexd xi;          // complex mixing angle, tan 2xi = gt/(dt - sdt)
  double regime_ratio;  // Omega / sqrt(Gamma_i Gamma_c); formulas assume small
};

// Perturbative eigenvalues and right eigenvectors including the Omega^2
// corrections.  Throws numeric_error when the shared denominator
// gt^2 - 4 dt sdt or an eta +- (dt +- sdt) combination degenerates.
PerturbativeEigensystem perturbative_eigensystem(double t, const PulseSet& pulses,
                                                 const ModelParams& params);

struct TwoLevelPopulations {
  double p1;
  double p2;
};

// Adiabatic-elimination populations of the two-level model.  The exponent
// integral runs from the window start to t with relative tolerance 1e-8.
TwoLevelPopulations elimination_p1_p2(double t, const PulseSet& pulses,
                                      const ModelParams& params);

// |b0(t)|^2 of the quasi-dark state from the accumulated adiabatic phase
// integral of eps_0.
double quasi_dark_p0(double t, const PulseSet& pulses, const ModelParams& params);

struct AnalyticPopulations {
  double p0;
  double p1;
  double p2;
  double pc;
};

AnalyticPopulations analytic_populations(double t, const PulseSet& pulses,
                                         const ModelParams& params);

// Signals from the closed forms: F integrates gamma_loss * P2(t), the
// ionization is the unit deficit at the window end.  Dispatches on the model
// kind (elimination populations for two_level, quasi-dark populations for
// three_level).
Signals analytic_signals(const PulseSet& pulses, const ModelParams& params);

// Sampled closed-form populations in the numeric trajectory layout, enabling
// file-level diffs against propagate() output.
Trajectory analytic_trajectory(const PulseSet& pulses, const ModelParams& params,
                               TimeWindow window, int sample_count = 2000);

}  // namespace cstirap
