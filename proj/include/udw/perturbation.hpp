#pragma once

#include <cmath>
#include <future>
#include <string>
#include <vector>

#include "udw/detectors.hpp"
#include "udw/faddeeva.hpp"
#include "udw/field_state.hpp"
#include "udw/quadrature.hpp"
#include "udw/types.hpp"

namespace udw {

// All scalars entering the one- and two-detector density matrices, with
// quadrature error estimates. The overbar products are stored, not
// independently integrated: Lbar_{mu nu} = Lbar_mu conj(Lbar_nu) and
// Mbar = Lbar_A Lbar_B.
struct PerturbativeTerms {
  int dimension = 3;
  Real L_AA = 0, L_BB = 0;
  Complex L_AB{0, 0};
  Complex M{0, 0};
  Complex Lbar_A{0, 0}, Lbar_B{0, 0};
  Real Lbar_AA = 0, Lbar_BB = 0;
  Complex Lbar_AB{0, 0};
  Complex Mbar{0, 0};

  Real err_L_AA = 0, err_L_BB = 0, err_L_AB = 0, err_M = 0;
  Real err_Lbar_A = 0, err_Lbar_B = 0;

  // combined quadrature error scale, used by scan floor estimates
  Real total_error() const {
    return err_L_AA + err_L_BB + err_L_AB + err_M + err_Lbar_A + err_Lbar_B;
  }
};

// L_nu(k) = lambda_nu e^{i k.x_nu} F~_nu(k) / sqrt(2|k|) * chi~_nu(|k| + Omega_nu)
inline Complex mode_amplitude_L(const DetectorSpec& det, const Vec& k, int n) {
  if (k.size() != n) throw DimensionError("mode_amplitude_L: k has wrong dimension");
  const Real k_abs = k.norm();
  if (!(k_abs > 0)) throw ValidationError("mode_amplitude_L: |k| = 0 rejected");
  const Real phase = k.dot(det.position);
  return det.coupling * Complex{std::cos(phase), std::sin(phase)} *
         smearing_fourier_radial(det.smearing, k_abs, n) / std::sqrt(2.0 * k_abs) *
         switching_fourier(det.switching, k_abs + det.gap);
}

namespace detail {

// Upper |k| beyond which exp(-a (k - k0)^2) stays below eps, used as the
// analytic tail bound for radially reduced integrands with Gaussian damping.
inline Real gaussian_tail_kmax(Real a, Real k0, Real eps) {
  if (!(a > 0)) return 0.0;
  return std::max(0.0, k0) + std::sqrt(std::max(0.0, -std::log(eps)) / a) + 1.0;
}

inline Real pair_tail_hint(const DetectorSpec& mu, const DetectorSpec& nu,
                           const QuadratureConfig& cfg, bool include_switching) {
  Real a = 0.0;
  if (mu.smearing.kind == SmearingProfile::Kind::gaussian)
    a += 0.25 * mu.smearing.sigma * mu.smearing.sigma;
  if (nu.smearing.kind == SmearingProfile::Kind::gaussian)
    a += 0.25 * nu.smearing.sigma * nu.smearing.sigma;
  if (include_switching) {
    if (mu.switching.kind == SwitchingProfile::Kind::gaussian)
      a += 0.25 * mu.switching.duration * mu.switching.duration;
    if (nu.switching.kind == SwitchingProfile::Kind::gaussian)
      a += 0.25 * nu.switching.duration * nu.switching.duration;
  }
  if (!(a > 0)) return 0.0;
  const Real k0 = std::max({0.0, -mu.gap, -nu.gap});
  return gaussian_tail_kmax(a, k0, 0.01 * cfg.abs_tol);
}

// Nested switching integral entering M(k):
//   G_{nu eta}(kappa) = Int dt Int_{-inf}^{t} dt'
//       e^{-i kappa (t - t')} chi_nu(t) chi_eta(t') e^{i Omega_nu t} e^{i Omega_eta t'}.
//
// Closed form for two Gaussian switchings: the t integral is a Gaussian
// Fourier transform and the remaining u = t - t' >= 0 half-line integral is a
// complex error function, evaluated through faddeeva_w.
inline Complex nested_switching_gaussian(const SwitchingProfile& outer, Real gap_outer,
                                         const SwitchingProfile& inner, Real gap_inner,
                                         Real kappa) {
  const Real a = outer.center, b = inner.center;
  const Real Tn2 = outer.duration * outer.duration;
  const Real Te2 = inner.duration * inner.duration;
  const Real sum_gap = gap_outer + gap_inner;
  const Real gamma = 1.0 / Tn2 + 1.0 / Te2;
  const Real S2 = Tn2 + Te2;
  const Real S = std::sqrt(S2);
  const Real r = Tn2 / S2;
  const Real m0 = (a / Tn2 + b / Te2) / gamma;
  const Real u0 = a - b;
  const Real phi = sum_gap * r - gap_inner - kappa;

  const Real amp = std::sqrt(pi / gamma) * std::exp(-0.25 * sum_gap * sum_gap / gamma);
  const Real arg = sum_gap * m0 + phi * u0;
  return amp * Complex{std::cos(arg), std::sin(arg)} * S *
         gauss_halfline_fourier(-u0 / S, phi * S);
}

// Same object by generic triangular quadrature; used for compact-bump
// switchings and as the cross-check of the closed form.
inline Complex nested_switching_triangle(const SwitchingProfile& outer, Real gap_outer,
                                         const SwitchingProfile& inner, Real gap_inner,
                                         Real kappa, const QuadratureConfig& cfg,
                                         std::int64_t* evals = nullptr) {
  const auto [lo_o, hi_o] = outer.window(cfg.time_window_sigmas);
  const auto [lo_i, hi_i] = inner.window(cfg.time_window_sigmas);
  const Real lo = std::min(lo_o, lo_i), hi = std::max(hi_o, hi_i);
  auto res = integrate_triangle(
      [&](Real t, Real tp) {
        const Real ph = -kappa * (t - tp) + gap_outer * t + gap_inner * tp;
        return outer.evaluate(t) * inner.evaluate(tp) *
               Complex{std::cos(ph), std::sin(ph)};
      },
      lo, hi, cfg);
  if (evals) *evals += res.evaluations;
  return res.value;
}

}  // namespace detail

// L_{mu nu} = Int d^n k L_mu(k) conj(L_nu(k)), reduced to a radial integral
// through the closed angular kernel (isotropic smearings). Diagonal entries
// are real and non-negative.
inline IntegralResult compute_L_mu_nu(const DetectorSpec& mu, const DetectorSpec& nu, int n,
                                      const QuadratureConfig& cfg) {
  mu.validate(n);
  nu.validate(n);
  cfg.validate(n);
  const Real d = (mu.position - nu.position).norm();
  const Real hint = detail::pair_tail_hint(mu, nu, cfg, true);

  auto res = integrate_radial_k(
      [&](Real k) {
        return smearing_fourier_radial(mu.smearing, k, n) *
               smearing_fourier_radial(nu.smearing, k, n) / (2.0 * k) *
               switching_fourier(mu.switching, k + mu.gap) *
               std::conj(switching_fourier(nu.switching, k + nu.gap)) *
               angular_kernel(k, d, n);
      },
      n, cfg, hint);

  res.value *= mu.coupling * nu.coupling;
  res.error_estimate *= std::abs(mu.coupling * nu.coupling);

  if (mu.label == nu.label) {
    if (std::abs(res.value.imag()) > 1e-12 * std::max(1.0, std::abs(res.value)))
      throw Error("compute_L_mu_nu: diagonal term has a non-negligible imaginary part");
    res.value = Complex{res.value.real(), 0.0};
  }
  return res;
}

enum class MMethod { automatic, gaussian_fast, triangle_generic };

// M = Int d^n k M(k): radial integral whose integrand carries the nested
// two-time switching integrals in both detector orderings. Gaussian
// switchings take the closed error-function path unless the generic
// triangular quadrature is requested explicitly.
inline IntegralResult compute_M(const DetectorSpec& det_a, const DetectorSpec& det_b, int n,
                                const QuadratureConfig& cfg,
                                MMethod method = MMethod::automatic) {
  det_a.validate(n);
  det_b.validate(n);
  cfg.validate(n);
  const bool both_gaussian =
      det_a.switching.kind == SwitchingProfile::Kind::gaussian &&
      det_b.switching.kind == SwitchingProfile::Kind::gaussian;
  const bool fast = (method == MMethod::gaussian_fast) ||
                    (method == MMethod::automatic && both_gaussian);
  if (fast && !both_gaussian)
    throw ValidationError("compute_M: the fast path needs Gaussian switchings");

  const Real d = (det_a.position - det_b.position).norm();
  const Real hint = detail::pair_tail_hint(det_a, det_b, cfg, false);

  QuadratureConfig tri_cfg = cfg;  // inner-time tolerance for the generic path
  tri_cfg.abs_tol = std::max(1e-14, 0.01 * cfg.abs_tol);
  tri_cfg.rel_tol = std::min(cfg.rel_tol, 1e-10);

  std::int64_t inner_evals = 0;
  auto res = integrate_radial_k(
      [&](Real k) {
        Complex g_ab, g_ba;
        if (fast) {
          g_ab = detail::nested_switching_gaussian(det_a.switching, det_a.gap,
                                                   det_b.switching, det_b.gap, k);
          g_ba = detail::nested_switching_gaussian(det_b.switching, det_b.gap,
                                                   det_a.switching, det_a.gap, k);
        } else {
          g_ab = detail::nested_switching_triangle(det_a.switching, det_a.gap,
                                                   det_b.switching, det_b.gap, k, tri_cfg,
                                                   &inner_evals);
          g_ba = detail::nested_switching_triangle(det_b.switching, det_b.gap,
                                                   det_a.switching, det_a.gap, k, tri_cfg,
                                                   &inner_evals);
        }
        return -smearing_fourier_radial(det_a.smearing, k, n) *
               smearing_fourier_radial(det_b.smearing, k, n) / (2.0 * k) *
               angular_kernel(k, d, n) * (g_ab + g_ba);
      },
      n, cfg, hint);

  res.value *= det_a.coupling * det_b.coupling;
  res.error_estimate *= std::abs(det_a.coupling * det_b.coupling);
  res.evaluations += inner_evals;
  return res;
}

// Smeared one-point function V(x_nu, t) = Int d^n x F_nu(x - x_nu) v(x, t),
// computed in k-space:  V = 2 Re Int d^n k alpha(k) F~_nu(k) e^{i k.x_nu}
// e^{-i|k|t} / sqrt(2|k|).
inline IntegralResult smeared_one_point_V(const DetectorSpec& det,
                                          const CoherentAmplitude& amp, Real t,
                                          const QuadratureConfig& cfg) {
  amp.validate();
  cfg.validate(amp.dimension);
  const int n = amp.dimension;
  // (2pi)^{n/2} F~ from the convolution theorem cancels the (2pi)^{-n/2} of
  // the mode measure, leaving F~(k)/sqrt(2k).
  auto res = detail::amplitude_mode_integral(
      amp,
      [&](Real k) {
        return smearing_fourier_radial(det.smearing, k, n) / std::sqrt(2.0 * k) *
               Complex{std::cos(k * t), -std::sin(k * t)};
      },
      det.position, cfg);
  res.value = Complex{2.0 * res.value.real(), 0.0};
  res.error_estimate *= 2.0;
  return res;
}

namespace detail {

inline std::pair<std::vector<Real>, std::vector<Real>> gauss_hermite(int m) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i + 1 < m; ++i) {
    const Real off = std::sqrt(0.5 * (i + 1));
    jac(i, i + 1) = off;
    jac(i + 1, i) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  std::vector<Real> nodes(m), weights(m);
  for (int j = 0; j < m; ++j) {
    nodes[j] = es.eigenvalues()(j);
    const Real v0 = es.eigenvectors()(0, j);
    weights[j] = std::sqrt(pi) * v0 * v0;
  }
  return {nodes, weights};
}

}  // namespace detail

// x-space evaluation of V by direct convolution of the smearing profile with
// the one-point function. Test oracle only: it pins the Fourier-convolution
// bookkeeping of the k-space path.
inline IntegralResult smeared_one_point_V_xspace(const DetectorSpec& det,
                                                 const CoherentAmplitude& amp, Real t,
                                                 const QuadratureConfig& cfg,
                                                 int nodes_per_axis = 20) {
  const int n = amp.dimension;
  if (det.smearing.is_point_like()) return one_point_v(amp, det.position, t, cfg);

  const auto [q, w] = detail::gauss_hermite(nodes_per_axis);
  const Real sigma = det.smearing.sigma;
  const Real norm = std::pow(pi, -0.5 * n);

  IntegralResult total;
  std::vector<int> idx(n, 0);
  Vec y(n);
  for (;;) {
    Real weight = norm;
    for (int a = 0; a < n; ++a) {
      y(a) = det.position(a) + sigma * q[idx[a]];
      weight *= w[idx[a]];
    }
    auto v = one_point_v(amp, y, t, cfg);
    total.value += weight * v.value.real();
    total.error_estimate += std::abs(weight) * v.error_estimate;
    total.evaluations += v.evaluations;
    if (!v.ok()) total.status = v.status;

    int a = 0;
    while (a < n && ++idx[a] == nodes_per_axis) idx[a++] = 0;
    if (a == n) break;
  }
  return total;
}

// Lbar_nu = -i lambda_nu Int dt chi_nu(t) e^{i Omega_nu t} V(x_nu, t),
// evaluated in k-space with the closed switching transform:
//   Lbar_nu = -i lambda_nu Int d^n k F~_nu(k)/sqrt(2|k|)
//     [ alpha(k) e^{i k.x_nu} chi~_nu(|k| - Omega_nu)
//       + conj(alpha(k)) e^{-i k.x_nu} conj(chi~_nu(|k| + Omega_nu)) ].
inline IntegralResult compute_Lbar(const DetectorSpec& det, const CoherentAmplitude& amp,
                                   const QuadratureConfig& cfg) {
  amp.validate();
  cfg.validate(amp.dimension);
  const int n = amp.dimension;

  auto part = [&](Real gap_sign) {
    return detail::amplitude_mode_integral(
        amp,
        [&](Real k) {
          return smearing_fourier_radial(det.smearing, k, n) / std::sqrt(2.0 * k) *
                 switching_fourier(det.switching, k + gap_sign * det.gap);
        },
        det.position, cfg);
  };

  const IntegralResult a1 = part(-1.0);  // alpha(k) branch
  const IntegralResult a2 = part(+1.0);  // conj(alpha(k)) branch

  IntegralResult res;
  res.value = -I * det.coupling * (a1.value + std::conj(a2.value));
  res.error_estimate = std::abs(det.coupling) * (a1.error_estimate + a2.error_estimate);
  res.evaluations = a1.evaluations + a2.evaluations;
  if (!a1.ok()) res.status = a1.status;
  if (!a2.ok()) res.status = a2.status;
  return res;
}

// Time-domain cross-check of compute_Lbar: one fused quadrature, outer t
// against the switching window, inner the k-space V evaluation.
inline IntegralResult compute_Lbar_time_oracle(const DetectorSpec& det,
                                               const CoherentAmplitude& amp,
                                               const QuadratureConfig& cfg) {
  const auto [lo, hi] = det.switching.window(cfg.time_window_sigmas);
  QuadratureConfig v_cfg = cfg;
  v_cfg.abs_tol = 0.02 * cfg.abs_tol / (hi - lo);

  std::int64_t v_evals = 0;
  auto res = integrate_1d(
      [&](Real t) {
        auto v = smeared_one_point_V(det, amp, t, v_cfg);
        v_evals += v.evaluations;
        const Real ph = det.gap * t;
        return det.switching.evaluate(t) * Complex{std::cos(ph), std::sin(ph)} *
               v.value.real();
      },
      lo, hi, cfg);
  res.value *= -I * det.coupling;
  res.error_estimate *= std::abs(det.coupling);
  res.evaluations += v_evals;
  return res;
}

// Assemble every scalar for a detector pair and amplitude. The six integrals
// are independent and evaluated concurrently; results are identical to
// sequential evaluation.
inline PerturbativeTerms assemble_terms(const DetectorSpec& det_a, const DetectorSpec& det_b,
                                        const CoherentAmplitude& amp,
                                        const QuadratureConfig& cfg) {
  const int n = amp.dimension;
  det_a.validate(n);
  det_b.validate(n);
  amp.validate();
  cfg.validate(n);

  auto fut_aa = std::async(std::launch::async,
                           [&] { return compute_L_mu_nu(det_a, det_a, n, cfg); });
  auto fut_bb = std::async(std::launch::async,
                           [&] { return compute_L_mu_nu(det_b, det_b, n, cfg); });
  auto fut_ab = std::async(std::launch::async,
                           [&] { return compute_L_mu_nu(det_a, det_b, n, cfg); });
  auto fut_m = std::async(std::launch::async,
                          [&] { return compute_M(det_a, det_b, n, cfg); });
  auto fut_la = std::async(std::launch::async,
                           [&] { return compute_Lbar(det_a, amp, cfg); });
  auto fut_lb = std::async(std::launch::async,
                           [&] { return compute_Lbar(det_b, amp, cfg); });

  const IntegralResult r_aa = fut_aa.get();
  const IntegralResult r_bb = fut_bb.get();
  const IntegralResult r_ab = fut_ab.get();
  const IntegralResult r_m = fut_m.get();
  const IntegralResult r_la = fut_la.get();
  const IntegralResult r_lb = fut_lb.get();

  auto require_ok = [](const IntegralResult& r, const char* name) {
    if (!r.ok())
      throw Error(std::string("assemble_terms: term ") + name +
                  " did not converge (error estimate " +
                  std::to_string(r.error_estimate) + ")");
  };
  require_ok(r_aa, "L_AA");
  require_ok(r_bb, "L_BB");
  require_ok(r_ab, "L_AB");
  require_ok(r_m, "M");
  require_ok(r_la, "Lbar_A");
  require_ok(r_lb, "Lbar_B");

  PerturbativeTerms t;
  t.dimension = n;
  t.L_AA = std::max(0.0, r_aa.value.real());
  t.L_BB = std::max(0.0, r_bb.value.real());
  t.L_AB = r_ab.value;
  t.M = r_m.value;
  t.Lbar_A = r_la.value;
  t.Lbar_B = r_lb.value;
  t.Lbar_AA = std::norm(t.Lbar_A);
  t.Lbar_BB = std::norm(t.Lbar_B);
  t.Lbar_AB = t.Lbar_A * std::conj(t.Lbar_B);
  t.Mbar = t.Lbar_A * t.Lbar_B;
  t.err_L_AA = r_aa.error_estimate;
  t.err_L_BB = r_bb.error_estimate;
  t.err_L_AB = r_ab.error_estimate;
  t.err_M = r_m.error_estimate;
  t.err_Lbar_A = r_la.error_estimate;
  t.err_Lbar_B = r_lb.error_estimate;
  return t;
}

namespace detail {

// Chebyshev-Lobatto barycentric cache of t -> V(x_det, t) over the switching
// window. Keeps the double-time oracles affordable; the constructor verifies
// the interpolant against direct evaluations at off-node points.
class TimeProfileCache {
 public:
  TimeProfileCache(const DetectorSpec& det, const CoherentAmplitude& amp,
                   const QuadratureConfig& cfg, int n_nodes = 257)
      : n_(n_nodes) {
    auto [lo, hi] = det.switching.window(cfg.time_window_sigmas);
    lo_ = lo;
    hi_ = hi;
    nodes_.resize(n_ + 1);
    values_.resize(n_ + 1);
    for (int j = 0; j <= n_; ++j) {
      const Real x = std::cos(pi * j / n_);
      nodes_[j] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x;
      values_[j] = smeared_one_point_V(det, amp, nodes_[j], cfg).value.real();
    }
    self_check_ = 0.0;
    for (int j = 1; j <= 5; ++j) {
      const Real t = lo + (hi - lo) * j / 6.18;
      const Real direct = smeared_one_point_V(det, amp, t, cfg).value.real();
      self_check_ = std::max(self_check_, std::abs((*this)(t)-direct));
    }
  }

  Real operator()(Real t) const {
    Real num = 0, den = 0;
    for (int j = 0; j <= n_; ++j) {
      const Real diff = t - nodes_[j];
      if (diff == 0.0) return values_[j];
      Real w = (j == 0 || j == n_) ? 0.5 : 1.0;
      if (j % 2 == 1) w = -w;
      num += w / diff * values_[j];
      den += w / diff;
    }
    return num / den;
  }

  Real self_check_error() const { return self_check_; }

 private:
  int n_;
  Real lo_ = 0, hi_ = 0;
  std::vector<Real> nodes_;
  std::vector<Real> values_;
  Real self_check_ = 0;
};

}  // namespace detail

// Direct double-time quadrature of the full-plane V.V expression whose
// closed form is Lbar_mu conj(Lbar_nu). Oracle for the stored products.
inline IntegralResult direct_Lbar_mu_nu(const DetectorSpec& mu, const DetectorSpec& nu,
                                        const CoherentAmplitude& amp,
                                        const QuadratureConfig& cfg) {
  if (amp.is_vacuum()) return {};
  detail::TimeProfileCache v_mu(mu, amp, cfg);
  detail::TimeProfileCache v_nu(nu, amp, cfg);
  if (std::max(v_mu.self_check_error(), v_nu.self_check_error()) > 1e-8)
    throw Error("direct_Lbar_mu_nu: time-profile cache failed its self check");

  const auto [lo_n, hi_n] = nu.switching.window(cfg.time_window_sigmas);
  const auto [lo_m, hi_m] = mu.switching.window(cfg.time_window_sigmas);

  QuadratureConfig inner_cfg = cfg;
  inner_cfg.abs_tol = 0.5 * cfg.abs_tol / (hi_n - lo_n);

  std::int64_t inner_evals = 0;
  auto res = integrate_1d(
      [&](Real t) {
        const Real ph_n = -nu.gap * t;
        const Complex outer_factor =
            nu.switching.evaluate(t) * Complex{std::cos(ph_n), std::sin(ph_n)} * v_nu(t);
        auto inner = integrate_1d(
            [&](Real tp) {
              const Real ph_m = mu.gap * tp;
              return mu.switching.evaluate(tp) * Complex{std::cos(ph_m), std::sin(ph_m)} *
                     v_mu(tp);
            },
            lo_m, hi_m, inner_cfg);
        inner_evals += inner.evaluations;
        return outer_factor * inner.value;
      },
      lo_n, hi_n, cfg);
  res.value *= mu.coupling * nu.coupling;
  res.error_estimate *= std::abs(mu.coupling * nu.coupling);
  res.evaluations += inner_evals;
  return res;
}

// Direct triangular double-time quadrature of the V.V expression for Mbar in
// both detector orderings; must reproduce the full-plane product
// Lbar_A Lbar_B (the relabeling identity).
inline IntegralResult direct_Mbar(const DetectorSpec& det_a, const DetectorSpec& det_b,
                                  const CoherentAmplitude& amp,
                                  const QuadratureConfig& cfg) {
  if (amp.is_vacuum()) return {};
  detail::TimeProfileCache v_a(det_a, amp, cfg);
  detail::TimeProfileCache v_b(det_b, amp, cfg);
  if (std::max(v_a.self_check_error(), v_b.self_check_error()) > 1e-8)
    throw Error("direct_Mbar: time-profile cache failed its self check");

  const auto [lo_a, hi_a] = det_a.switching.window(cfg.time_window_sigmas);
  const auto [lo_b, hi_b] = det_b.switching.window(cfg.time_window_sigmas);
  const Real lo = std::min(lo_a, lo_b), hi = std::max(hi_a, hi_b);

  auto ordered = [&](const SwitchingProfile& chi_t, Real gap_t, const detail::TimeProfileCache& v_t,
                     const SwitchingProfile& chi_p, Real gap_p,
                     const detail::TimeProfileCache& v_p) {
    return integrate_triangle(
        [&](Real t, Real tp) {
          const Real ph = gap_t * t + gap_p * tp;
          return chi_t.evaluate(t) * chi_p.evaluate(tp) *
                 Complex{std::cos(ph), std::sin(ph)} * v_t(t) * v_p(tp);
        },
        lo, hi, cfg);
  };

  const auto t1 = ordered(det_a.switching, det_a.gap, v_a, det_b.switching, det_b.gap, v_b);
  const auto t2 = ordered(det_b.switching, det_b.gap, v_b, det_a.switching, det_a.gap, v_a);

  IntegralResult res;
  res.value = -det_a.coupling * det_b.coupling * (t1.value + t2.value);
  res.error_estimate = std::abs(det_a.coupling * det_b.coupling) *
                       (t1.error_estimate + t2.error_estimate);
  res.evaluations = t1.evaluations + t2.evaluations;
  if (!t1.ok()) res.status = t1.status;
  if (!t2.ok()) res.status = t2.status;
  return res;
}

}  // namespace udw
