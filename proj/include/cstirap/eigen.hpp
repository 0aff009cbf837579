#pragma once

#include <array>
#include <vector>

#include "cstirap/model.hpp"

namespace cstirap {

// Right eigensystem H f = eps f of a 2x2 or 3x3 complex matrix.
// Eigenvectors have unit Euclidean norm with the first nonzero component
// made real-positive.
struct ExactEigensystem {
  int dim = 0;
  std::array<complexd, 3> eigenvalues{};
  std::array<std::array<complexd, 3>, 3> eigenvectors{};  // [k] pairs with eigenvalues[k]
};

// Closed form: quadratic formula for 2x2; characteristic cubic plus one
// Newton polish per root for 3x3, eigenvectors from the largest-pivot
// null-space subsystem.  Throws numeric_error on a defective matrix
// (coincident roots with a one-dimensional null space).
ExactEigensystem exact_eigensystem(const ComplexMatrix& h);

// Assignment of next's eigenvalues onto prev's labels minimizing the total
// eigenvalue displacement; perm[k] is the index in `next` continuing
// prev's k-th branch.
std::array<int, 3> track_continuity(const ExactEigensystem& prev,
                                    const ExactEigensystem& next);

// Continuity-tracked eigenvalue curves of H(t) on a uniform time grid.
// For the three-level model the branch labels are anchored at t_start to
// the perturbative (+, 0, -) triple; the two-level labels follow the
// diagonal entries.
struct EigenCurves {
  int dim = 0;
  std::vector<double> times;
  std::vector<std::array<complexd, 3>> values;
};

EigenCurves eigenvalue_curves(const PulseSet& pulses, const ModelParams& params,
                              TimeWindow window, int sample_count);

}  // namespace cstirap
