#include "cstirap/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cstirap/adiabatic.hpp"

namespace cstirap {

namespace {

using Vec3 = std::array<complexd, 3>;

double norm2(const Vec3& v) {
  return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
}

// bilinear cross product (no conjugation); orthogonal to both rows under
// the bilinear dot, hence a null vector of a rank-2 matrix
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

// unit norm, first nonzero component real-positive
Vec3 normalized_with_phase(Vec3 v) {
  const double n = std::sqrt(norm2(v));
  if (n == 0.0) return v;
  for (auto& x : v) x /= n;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v[i]) > 1e-12) {
      const complexd phase = std::conj(v[i]) / std::abs(v[i]);
      for (auto& x : v) x *= phase;
      break;
    }
  }
  return v;
}

// roots of x^3 + a2 x^2 + a1 x + a0 (Cardano, then one Newton step each)
std::array<complexd, 3> cubic_roots(complexd a2, complexd a1, complexd a0) {
  const complexd p = a1 - a2 * a2 / 3.0;
  const complexd q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;

  std::array<complexd, 3> roots;
  const complexd s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  // pick the branch with the larger magnitude to dodge cancellation
  const complexd w =
      std::abs(-q / 2.0 + s) >= std::abs(-q / 2.0 - s) ? -q / 2.0 + s : -q / 2.0 - s;
  if (std::abs(w) == 0.0) {
    roots = {-a2 / 3.0, -a2 / 3.0, -a2 / 3.0};  // p = q = 0, triple root
  } else {
    const complexd u = std::pow(w, 1.0 / 3.0);
    const complexd omega{-0.5, 0.5 * std::sqrt(3.0)};
    complexd uk = u;
    for (int k = 0; k < 3; ++k) {
      roots[k] = uk - p / (3.0 * uk) - a2 / 3.0;
      uk *= omega;
    }
  }

  for (auto& x : roots) {
    const complexd fx = ((x + a2) * x + a1) * x + a0;
    const complexd dfx = (3.0 * x + 2.0 * a2) * x + a1;
    if (std::abs(dfx) > 0.0) {
      const complexd step = fx / dfx;
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) x -= step;
    }
  }

  // The coefficient route resolves multiple roots only to ~sqrt(eps); pairs
  // closer than that are double roots as far as it can tell, and the
  // derivative root recovers them to full precision.
  const double root_scale =
      std::max({std::abs(roots[0]), std::abs(roots[1]), std::abs(roots[2])});
  const double pair_tol = 1.5e-7 * root_scale + 1e-300;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(roots[i] - roots[j]) >= pair_tol) continue;
      const complexd disc = std::sqrt(a2 * a2 - 3.0 * a1);
      const complexd d1 = (-a2 + disc) / 3.0;
      const complexd d2 = (-a2 - disc) / 3.0;
      const complexd mid = 0.5 * (roots[i] + roots[j]);
      const complexd refined = std::abs(d1 - mid) <= std::abs(d2 - mid) ? d1 : d2;
      roots[i] = roots[j] = refined;
    }
  }
  return roots;
}

// rows of h - eps*I
std::array<Vec3, 3> shifted_rows(const ComplexMatrix& h, complexd eps) {
  std::array<Vec3, 3> rows;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) rows[r][c] = h(r, c) - (r == c ? eps : complexd{});
  return rows;
}

// two independent null vectors of a rank-1 matrix whose largest row is r
std::array<Vec3, 2> rank1_null_basis(const Vec3& r) {
  int piv = 0;
  for (int j = 1; j < 3; ++j)
    if (std::abs(r[j]) > std::abs(r[piv])) piv = j;
  std::array<Vec3, 2> basis{};
  if (std::abs(r[piv]) == 0.0) {  // zero matrix: any axes do
    basis[0] = {1.0, 0.0, 0.0};
    basis[1] = {0.0, 1.0, 0.0};
    return basis;
  }
  for (int m = 0; m < 2; ++m) {
    const int free_idx = (piv + 1 + m) % 3;
    Vec3 v{};
    v[free_idx] = 1.0;
    v[piv] = -r[free_idx] / r[piv];
    basis[m] = v;
  }
  return basis;
}

ExactEigensystem solve_2x2(const ComplexMatrix& h) {
  ExactEigensystem sys;
  sys.dim = 2;
  const complexd a = h(0, 0), b = h(0, 1), c = h(1, 0), d = h(1, 1);
  const complexd mean = 0.5 * (a + d);
  const complexd s = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  sys.eigenvalues[0] = mean + s;
  sys.eigenvalues[1] = mean - s;

  const double scale = h.frobenius_norm();
  const bool coincident = std::abs(sys.eigenvalues[0] - sys.eigenvalues[1]) <= 1e-10 * scale;

  for (int k = 0; k < 2; ++k) {
    const complexd eps = sys.eigenvalues[k];
    const std::array<complexd, 2> r0{a - eps, b};
    const std::array<complexd, 2> r1{c, d - eps};
    const double n0 = std::norm(r0[0]) + std::norm(r0[1]);
    const double n1 = std::norm(r1[0]) + std::norm(r1[1]);
    const auto& r = n0 >= n1 ? r0 : r1;
    const double rn = std::max(n0, n1);
    Vec3 v{};
    if (rn <= 1e-24 * scale * scale * std::max(scale, 1.0)) {
      // h is eps*I: coordinate axes
      v[k] = 1.0;
    } else if (coincident) {
      throw numeric_error("defective 2x2 matrix: coincident eigenvalues with a "
                          "one-dimensional eigenspace");
    } else {
      v = {-r[1], r[0], 0.0};
    }
    sys.eigenvectors[k] = normalized_with_phase(v);
  }
  return sys;
}

ExactEigensystem solve_3x3(const ComplexMatrix& h) {
  ExactEigensystem sys;
  sys.dim = 3;

  const complexd tr = h(0, 0) + h(1, 1) + h(2, 2);
  const complexd minors = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0) +
                          h(0, 0) * h(2, 2) - h(0, 2) * h(2, 0) +
                          h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1);
  const complexd det = h(0, 0) * (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1)) -
                       h(0, 1) * (h(1, 0) * h(2, 2) - h(1, 2) * h(2, 0)) +
                       h(0, 2) * (h(1, 0) * h(2, 1) - h(1, 1) * h(2, 0));
  sys.eigenvalues = cubic_roots(-tr, minors, -det);

  const double scale = h.frobenius_norm();
  const double coincide_tol = 1e-10 * scale;
  const double rank2_floor = 1e-12 * scale * scale;  // below: rank <= 1

  for (int k = 0; k < 3; ++k) {
    const complexd eps = sys.eigenvalues[k];
    const auto rows = shifted_rows(h, eps);
    // each cross-product component is a 2x2 pivot determinant; the largest
    // cross product is the best-conditioned null vector
    const Vec3 cands[3] = {cross(rows[0], rows[1]), cross(rows[0], rows[2]),
                           cross(rows[1], rows[2])};
    int best = 0;
    for (int j = 1; j < 3; ++j)
      if (norm2(cands[j]) > norm2(cands[best])) best = j;

    bool any_coincident = false;
    int coincident_before = 0;
    for (int j = 0; j < 3; ++j) {
      if (j == k) continue;
      if (std::abs(sys.eigenvalues[j] - eps) <= coincide_tol) {
        any_coincident = true;
        if (j < k) ++coincident_before;
      }
    }

    if (std::sqrt(norm2(cands[best])) > rank2_floor) {
      if (any_coincident)
        throw numeric_error("defective 3x3 matrix: coincident eigenvalues with a "
                            "one-dimensional eigenspace");
      sys.eigenvectors[k] = normalized_with_phase(cands[best]);
    } else {
      // rank <= 1: pick the largest row and span its null plane
      int big = 0;
      for (int r = 1; r < 3; ++r)
        if (norm2(rows[r]) > norm2(rows[big])) big = r;
      if (norm2(rows[big]) <= 1e-24 * scale * scale) {
        // shifted matrix is zero: coordinate axes
        Vec3 axis{};
        axis[k] = 1.0;
        sys.eigenvectors[k] = axis;
      } else {
        if (coincident_before >= 2)
          throw numeric_error("defective 3x3 matrix: triple eigenvalue with a "
                              "two-dimensional eigenspace");
        const auto basis = rank1_null_basis(rows[big]);
        sys.eigenvectors[k] =
            normalized_with_phase(basis[static_cast<std::size_t>(coincident_before)]);
      }
    }
  }
  return sys;
}

struct Assignment {
  std::array<int, 3> perm;
  double cost;
};

Assignment best_assignment(const std::array<complexd, 3>& from,
                           const std::array<complexd, 3>& to, int dim) {
  static constexpr std::array<std::array<int, 3>, 6> kPerms3 = {{
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  static constexpr std::array<std::array<int, 3>, 2> kPerms2 = {{{0, 1, 2}, {1, 0, 2}}};

  Assignment best{{0, 1, 2}, std::numeric_limits<double>::infinity()};
  auto consider = [&](const std::array<int, 3>& perm) {
    double cost = 0.0;
    for (int k = 0; k < dim; ++k) cost += std::abs(to[perm[k]] - from[k]);
    if (cost < best.cost) {
      best.cost = cost;
      best.perm = perm;
    }
  };
  if (dim == 3)
    for (const auto& p : kPerms3) consider(p);
  else
    for (const auto& p : kPerms2) consider(p);
  return best;
}

}  // namespace

ExactEigensystem exact_eigensystem(const ComplexMatrix& h) {
  if (h.dim == 2) return solve_2x2(h);
  if (h.dim == 3) return solve_3x3(h);
  throw config_error("eigensystem requires dimension 2 or 3");
}

std::array<int, 3> track_continuity(const ExactEigensystem& prev,
                                    const ExactEigensystem& next) {
  return best_assignment(prev.eigenvalues, next.eigenvalues, prev.dim).perm;
}

EigenCurves eigenvalue_curves(const PulseSet& pulses, const ModelParams& params,
                              TimeWindow window, int sample_count) {
  if (sample_count < 2) throw config_error("eigenvalue curves need sample_count >= 2");

  EigenCurves curves;
  curves.dim = params.dimension();
  curves.times.resize(static_cast<std::size_t>(sample_count));
  for (int i = 0; i < sample_count; ++i)
    curves.times[static_cast<std::size_t>(i)] =
        window.t_start + (window.t_end - window.t_start) * i / (sample_count - 1);

  ExactEigensystem prev = exact_eigensystem(hamiltonian(curves.times[0], pulses, params));

  // anchor the labels at t_start: (+, 0, -) from the perturbative triple for
  // three levels, diagonal order for two
  std::array<complexd, 3> anchor;
  if (params.kind == ModelKind::three_level) {
    try {
      anchor = perturbative_eigensystem(curves.times[0], pulses, params).eigenvalues;
    } catch (const numeric_error&) {
      anchor = prev.eigenvalues;
    }
  } else {
    const ComplexMatrix h0 = hamiltonian(curves.times[0], pulses, params);
    anchor = {h0(0, 0), h0(1, 1), complexd{}};
  }
  std::array<int, 3> label_to_index =
      best_assignment(anchor, prev.eigenvalues, curves.dim).perm;

  for (std::size_t i = 0; i < curves.times.size(); ++i) {
    if (i > 0) {
      const ExactEigensystem next =
          exact_eigensystem(hamiltonian(curves.times[i], pulses, params));
      const auto step = track_continuity(prev, next);
      std::array<int, 3> composed{};
      for (int k = 0; k < curves.dim; ++k) composed[k] = step[label_to_index[k]];
      if (curves.dim == 2) composed[2] = 2;
      label_to_index = composed;
      prev = next;
    }
    std::array<complexd, 3> row{};
    for (int k = 0; k < curves.dim; ++k) row[k] = prev.eigenvalues[label_to_index[k]];
    curves.values.push_back(row);
  }
  return curves;
}

}  // namespace cstirap
