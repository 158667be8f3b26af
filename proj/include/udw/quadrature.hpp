#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "udw/types.hpp"

namespace udw {

// Tolerances and k-space limits for every integral in the pipeline. One
// config object is threaded through a whole computation so that identical
// inputs always take identical code paths (bit-for-bit determinism).
struct QuadratureConfig {
  Real abs_tol = 1e-9;
  Real rel_tol = 1e-9;
  Real k_min = 0.0;        // lower |k| cutoff; must be > 0 when n = 1
  bool k_max_auto = true;  // extend upper |k| limit until the tail is below abs_tol
  Real k_max_cap = 200.0;
  int max_subdivisions = 2000;
  Real time_window_sigmas = 10.0;  // truncation of Gaussian switchings

  void validate(int n) const {
    if (!(abs_tol > 0) || !(rel_tol > 0))
      throw ValidationError("QuadratureConfig: tolerances must be positive");
    if (k_min < 0) throw ValidationError("QuadratureConfig: k_min must be >= 0");
    if (!(k_max_cap > k_min))
      throw ValidationError("QuadratureConfig: require k_min < k_max_cap");
    if (max_subdivisions < 1)
      throw ValidationError("QuadratureConfig: max_subdivisions must be >= 1");
    if (!(time_window_sigmas > 0))
      throw ValidationError("QuadratureConfig: time_window_sigmas must be > 0");
    if (n == 1 && k_min <= 0)
      throw IRDivergenceError(
          "n = 1 requires k_min > 0: the measure d k/|k| is log-divergent at k = 0");
  }
};

enum class QuadStatus { ok, max_subdivisions, tail_not_converged };

struct IntegralResult {
  Complex value{0.0, 0.0};
  Real error_estimate = 0.0;
  std::int64_t evaluations = 0;
  QuadStatus status = QuadStatus::ok;

  bool ok() const { return status == QuadStatus::ok; }
};

namespace detail {

// Gauss(7)/Kronrod(15) nodes and weights on [-1,1] (positive half).
inline constexpr Real gk_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr Real gk_weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr Real g7_weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  Real a = 0, b = 0;
  Complex value{0.0, 0.0};
  Real error = 0;
};

// One G7/K15 evaluation on [a,b] with the QUADPACK-style scaled error bound.
template <class F>
Panel gk15(F&& f, Real a, Real b) {
  const Real mid = 0.5 * (a + b);
  const Real hw = 0.5 * (b - a);

  Complex fv[15];
  fv[7] = f(mid);
  for (int i = 0; i < 7; ++i) {
    const Real dx = hw * gk_nodes[i];
    fv[i] = f(mid + dx);
    fv[14 - i] = f(mid - dx);
  }

  Complex k15{0.0, 0.0};
  Complex g7{0.0, 0.0};
  Real resabs = 0;
  for (int i = 0; i < 8; ++i) {
    const Complex pair = (i == 7) ? fv[7] : fv[i] + fv[14 - i];
    k15 += gk_weights[i] * pair;
    resabs += gk_weights[i] * ((i == 7) ? std::abs(fv[7])
                                        : std::abs(fv[i]) + std::abs(fv[14 - i]));
  }
  for (int j = 0; j < 4; ++j) {
    const int i = 2 * j + 1;
    const Complex pair = (j == 3) ? fv[7] : fv[i] + fv[14 - i];
    g7 += g7_weights[j] * pair;
  }

  const Complex mean = k15 * 0.5;
  Real resasc = 0;
  for (int i = 0; i < 15; ++i) {
    const int w = (i <= 7) ? i : 14 - i;
    resasc += gk_weights[w] * std::abs(fv[i] - mean);
  }
  resasc *= hw;
  resabs *= hw;

  Panel p;
  p.a = a;
  p.b = b;
  p.value = k15 * hw;
  Real err = std::abs(k15 - g7) * hw;
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > 0)
    err = std::max(err, 50.0 * std::numeric_limits<Real>::epsilon() * resabs);
  p.error = err;
  return p;
}

inline bool tolerance_met(Real err, Real abs_val, const QuadratureConfig& cfg) {
  return err <= std::max(cfg.abs_tol, cfg.rel_tol * abs_val);
}

}  // namespace detail

// Globally adaptive G7/K15 over a list of disjoint intervals. The panel with
// the largest error estimate is bisected (ties broken by left endpoint), so
// the refinement sequence is a deterministic function of the inputs.
template <class F>
IntegralResult integrate_segments(F&& f, const std::vector<std::pair<Real, Real>>& intervals,
                                  const QuadratureConfig& cfg) {
  IntegralResult res;
  std::vector<detail::Panel> panels;
  panels.reserve(64);
  for (const auto& [a, b] : intervals) {
    if (!(a < b)) throw ValidationError("integrate: require a < b on every interval");
    panels.push_back(detail::gk15(f, a, b));
    res.evaluations += 15;
  }

  int splits = 0;
  for (;;) {
    Complex total{0.0, 0.0};
    Real err = 0;
    for (const auto& p : panels) {
      total += p.value;
      err += p.error;
    }
    res.value = total;
    res.error_estimate = err;
    if (detail::tolerance_met(err, std::abs(total), cfg)) return res;
    if (splits >= cfg.max_subdivisions) {
      res.status = QuadStatus::max_subdivisions;
      return res;
    }

    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i) {
      if (panels[i].error > panels[worst].error ||
          (panels[i].error == panels[worst].error && panels[i].a < panels[worst].a))
        worst = i;
    }
    const Real a = panels[worst].a, b = panels[worst].b;
    const Real mid = 0.5 * (a + b);
    if (!(a < mid && mid < b)) {
      // interval no longer splittable in floating point; accept as is
      res.status = QuadStatus::max_subdivisions;
      return res;
    }
    panels[worst] = detail::gk15(f, a, mid);
    panels.push_back(detail::gk15(f, mid, b));
    res.evaluations += 30;
    ++splits;
  }
}

template <class F>
IntegralResult integrate_1d(F&& f, Real a, Real b, const QuadratureConfig& cfg) {
  return integrate_segments(std::forward<F>(f), {{a, b}}, cfg);
}

// Integral of f(t, t') over the triangle a <= t' <= t <= b, computed through
// the substitution u = t - t' >= 0 (outer t, inner u).
template <class F>
IntegralResult integrate_triangle(F&& f, Real a, Real b, const QuadratureConfig& cfg) {
  if (!(a < b)) throw ValidationError("integrate_triangle: require a < b");

  QuadratureConfig inner_cfg = cfg;
  inner_cfg.abs_tol = 0.5 * cfg.abs_tol / (b - a);
  inner_cfg.rel_tol = 0.5 * cfg.rel_tol;

  QuadratureConfig outer_cfg = cfg;
  outer_cfg.abs_tol = 0.5 * cfg.abs_tol;
  outer_cfg.rel_tol = 0.5 * cfg.rel_tol;

  std::int64_t inner_evals = 0;
  bool inner_trouble = false;
  auto outer = [&](Real t) -> Complex {
    if (!(t > a)) return Complex{0.0, 0.0};
    auto inner = integrate_1d([&](Real u) { return f(t, t - u); }, 0.0, t - a, inner_cfg);
    inner_evals += inner.evaluations;
    if (!inner.ok()) inner_trouble = true;
    return inner.value;
  };

  IntegralResult res = integrate_1d(outer, a, b, outer_cfg);
  res.evaluations += inner_evals;
  res.error_estimate += 0.5 * cfg.abs_tol;  // inner budget
  if (inner_trouble && res.ok()) res.status = QuadStatus::max_subdivisions;
  return res;
}

// Angular average of exp(i k . d) over the unit (n-1)-sphere, as a function
// of |k| and the separation d = |d|:  n=1 -> cos, n=2 -> J_0, n=3 -> sinc.
inline Real angular_kernel(Real k_abs, Real d, int n) {
  const Real x = k_abs * d;
  switch (n) {
    case 1: return std::cos(x);
    case 2: return std::cyl_bessel_j(0.0, std::abs(x));
    case 3: {
      if (std::abs(x) < 1e-4) {
        const Real x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
      }
      return std::sin(x) / x;
    }
    default: throw std::invalid_argument("angular_kernel: n must be 1, 2 or 3");
  }
}

// Radial reduction of an isotropic n-dimensional k integral:
//   Omega_{n-1} * Int_{k_min}^{k_max} dk k^{n-1} g(k),
// with the upper limit grown geometrically until the tail contribution is
// negligible (when k_max_auto). g must already contain all angular factors.
// k_max_hint, when positive, is an analytic bound supplied by the caller for
// the point beyond which the integrand is below tolerance.
template <class G>
IntegralResult integrate_radial_k(G&& g, int n, const QuadratureConfig& cfg,
                                  Real k_max_hint = 0.0) {
  if (n < 1 || n > 3) throw std::invalid_argument("integrate_radial_k: n must be 1, 2 or 3");
  if (n == 1 && cfg.k_min <= 0)
    throw IRDivergenceError("integrate_radial_k: n = 1 requires k_min > 0");

  const Real measure = sphere_measure(n);
  auto weighted = [&](Real k) -> Complex {
    return measure * std::pow(k, n - 1) * g(k);
  };

  IntegralResult total;
  auto accumulate = [&](Real a, Real b) -> IntegralResult {
    auto part = integrate_1d(weighted, a, b, cfg);
    total.value += part.value;
    total.error_estimate += part.error_estimate;
    total.evaluations += part.evaluations;
    if (!part.ok()) total.status = part.status;
    return part;
  };

  if (!cfg.k_max_auto) {
    accumulate(cfg.k_min, cfg.k_max_cap);
    return total;
  }

  Real k_hi = std::min(cfg.k_max_cap,
                       (k_max_hint > cfg.k_min) ? k_max_hint
                                                : std::max(1.0, 2.0 * cfg.k_min + 1.0));
  accumulate(cfg.k_min, k_hi);

  int quiet_tails = 0;
  Real prev_tail = std::numeric_limits<Real>::infinity();
  while (k_hi < cfg.k_max_cap) {
    const Real k_next = std::min(cfg.k_max_cap, 2.0 * k_hi);
    auto seg = accumulate(k_hi, k_next);
    const Real tail = std::abs(seg.value);
    const Real budget =
        std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total.value)) / 8.0;
    if (tail <= budget && tail <= prev_tail) {
      if (++quiet_tails >= 2) return total;
    } else {
      quiet_tails = 0;
    }
    prev_tail = tail;
    k_hi = k_next;
  }
  if (quiet_tails == 0 && total.ok()) total.status = QuadStatus::tail_not_converged;
  return total;
}

}  // namespace udw
