#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "cstirap/errors.hpp"

// Adaptive Gauss-Kronrod (G7,K15) quadrature for smooth real- or
// complex-valued integrands, plus a cumulative-integral evaluator for
// exponents of the form int_{t_start}^{t} f.

namespace cstirap {

namespace qk15 {

// Kronrod abscissae on [0,1]-half of [-1,1]; Gauss points are the
// odd-indexed entries plus the center.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace qk15

template <typename V>
struct PanelResult {
  V value{};
  double error = 0.0;
};

namespace detail {
inline double quad_abs(double v) { return std::fabs(v); }
inline double quad_abs(const std::complex<double>& v) { return std::abs(v); }
}  // namespace detail

// One (G7,K15) panel on [a,b]; error estimated from the Gauss-Kronrod
// difference with the usual QUADPACK sharpening exponent.
template <typename V, typename F>
PanelResult<V> kronrod15(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const V f_center = f(mid);
  V gauss = qk15::kWg[3] * f_center;
  V kron = qk15::kWgk[7] * f_center;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * qk15::kXgk[j];
    const V sum = f(mid - dx) + f(mid + dx);
    kron = kron + qk15::kWgk[j] * sum;
    if (j % 2 == 1) gauss = gauss + qk15::kWg[j / 2] * sum;
  }
  kron = half * kron;
  gauss = half * gauss;

  double err = detail::quad_abs(kron - gauss);
  const double mag = detail::quad_abs(kron);
  if (mag > 0.0 && err > 0.0) err = mag * std::min(1.0, std::pow(200.0 * err / mag, 1.5));
  return {kron, err};
}

// Globally adaptive bisection; stops when the accumulated error estimate is
// below rel_tol relative to the integral magnitude.
template <typename V, typename F>
V integrate_adaptive(F&& f, double a, double b, double rel_tol, int max_panels = 4000,
                     int initial_panels = 8) {
  struct Panel {
    double lo, hi;
    PanelResult<V> r;
  };
  std::vector<Panel> panels;
  panels.reserve(64);
  for (int i = 0; i < initial_panels; ++i) {
    const double lo = a + (b - a) * i / initial_panels;
    const double hi = a + (b - a) * (i + 1) / initial_panels;
    panels.push_back({lo, hi, kronrod15<V>(f, lo, hi)});
  }

  for (;;) {
    V total{};
    double err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total = total + panels[i].r.value;
      err += panels[i].r.error;
      if (panels[i].r.error > panels[worst].r.error) worst = i;
    }
    const double target = rel_tol * std::max(detail::quad_abs(total), 1e-300);
    if (err <= target || static_cast<int>(panels.size()) >= max_panels ||
        panels[worst].r.error == 0.0)
      return total;

    const Panel p = panels[worst];
    const double mid = 0.5 * (p.lo + p.hi);
    panels[worst] = {p.lo, mid, kronrod15<V>(f, p.lo, mid)};
    panels.push_back({mid, p.hi, kronrod15<V>(f, mid, p.hi)});
  }
}

// Cumulative integral int_a^t f over a fixed window, refined once and then
// queryable at arbitrary interior points.  Query cost is a binary search
// plus one adaptive pass over the partial panel.
template <typename V>
class CumulativeIntegral {
 public:
  template <typename F>
  CumulativeIntegral(F&& f, double a, double b, double rel_tol, int max_panels = 4000)
      : f_(std::forward<F>(f)), a_(a), b_(b), rel_tol_(rel_tol) {
    if (!(b > a)) throw config_error("cumulative integral needs b > a");
    build(max_panels);
  }

  double lower() const { return a_; }
  double upper() const { return b_; }
  V total() const { return prefix_.back(); }

  // integral over [a, clamp(t)]
  V at(double t) const {
    if (t <= a_) return V{};
    if (t >= b_) return total();
    // segment index with lo_[i] <= t < lo_[i+1]
    const auto it = std::upper_bound(lo_.begin(), lo_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - lo_.begin()) - 1;
    const double lo = lo_[i];
    if (t == lo) return prefix_[i];
    return prefix_[i] + integrate_adaptive<V>(f_, lo, t, rel_tol_, 64, 1);
  }

 private:
  void build(int max_panels) {
    struct Seg {
      double lo, hi;
      PanelResult<V> r;
    };
    std::vector<Seg> segs;
    constexpr int kInitial = 16;
    for (int i = 0; i < kInitial; ++i) {
      const double lo = a_ + (b_ - a_) * i / kInitial;
      const double hi = a_ + (b_ - a_) * (i + 1) / kInitial;
      segs.push_back({lo, hi, kronrod15<V>(f_, lo, hi)});
    }
    for (;;) {
      V total{};
      double err = 0.0;
      std::size_t worst = 0;
      for (std::size_t i = 0; i < segs.size(); ++i) {
        total = total + segs[i].r.value;
        err += segs[i].r.error;
        if (segs[i].r.error > segs[worst].r.error) worst = i;
      }
      const double target = rel_tol_ * std::max(detail::quad_abs(total), 1e-300);
      if (err <= target || static_cast<int>(segs.size()) >= max_panels ||
          segs[worst].r.error == 0.0)
        break;
      const Seg s = segs[worst];
      const double mid = 0.5 * (s.lo + s.hi);
      segs[worst] = {s.lo, mid, kronrod15<V>(f_, s.lo, mid)};
      segs.push_back({mid, s.hi, kronrod15<V>(f_, mid, s.hi)});
    }

    std::sort(segs.begin(), segs.end(),
              [](const Seg& x, const Seg& y) { return x.lo < y.lo; });
    lo_.reserve(segs.size());
    prefix_.reserve(segs.size() + 1);
    V acc{};
    for (const Seg& s : segs) {
      lo_.push_back(s.lo);
      prefix_.push_back(acc);
      acc = acc + s.r.value;
    }
    prefix_.push_back(acc);  // total over [a, b]
  }

  std::function<V(double)> f_;
  double a_, b_, rel_tol_;
  std::vector<double> lo_;  // segment left edges, ascending
  std::vector<V> prefix_;   // prefix_[i] = integral over [a, lo_[i]]; back() = total
};

}  // namespace cstirap
