#pragma once

#include <cmath>
#include <vector>

#include "udw/detectors.hpp"
#include "udw/quadrature.hpp"
#include "udw/types.hpp"

namespace udw {

// One isotropic Gaussian wavepacket in k-space:
//   alpha_p(k) = weight * exp(-|k - center|^2 / width^2).
struct GaussianPacket {
  Complex weight{0.0, 0.0};
  Vec center;
  Real width = 1.0;
};

// Coherent amplitude alpha(k) as a finite packet sum; the empty sum is the
// vacuum. Weights carry the k^{-n/2} units of delta-normalized modes.
struct CoherentAmplitude {
  int dimension = 3;
  std::vector<GaussianPacket> packets;

  static CoherentAmplitude vacuum(int n) {
    CoherentAmplitude a;
    a.dimension = n;
    return a;
  }

  bool is_vacuum() const { return packets.empty(); }

  CoherentAmplitude scaled(Real factor) const {
    CoherentAmplitude out = *this;
    for (auto& p : out.packets) p.weight *= factor;
    return out;
  }

  void validate() const {
    if (dimension < 1 || dimension > 3)
      throw ValidationError("CoherentAmplitude: dimension must be 1, 2 or 3");
    for (const auto& p : packets) {
      if (!(p.width > 0))
        throw ValidationError("CoherentAmplitude: packet widths must be > 0");
      if (p.center.size() != dimension)
        throw DimensionError("CoherentAmplitude: packet center has wrong dimension");
    }
  }
};

inline Complex eval_alpha(const CoherentAmplitude& amp, const Vec& k) {
  if (k.size() != amp.dimension)
    throw DimensionError("eval_alpha: k has wrong dimension");
  Complex sum{0.0, 0.0};
  for (const auto& p : amp.packets)
    sum += p.weight * std::exp(-(k - p.center).squaredNorm() / (p.width * p.width));
  return sum;
}

// Exponential UV damping e^{-eps |k|} for the unsmeared Wightman function
// only; every production quantity is smeared and needs no regulator.
struct Regulator {
  Real epsilon = 0.1;
  void validate() const {
    if (!(epsilon > 0)) throw ValidationError("Regulator: epsilon must be > 0");
  }
};

namespace detail {

inline constexpr Real packet_support_sigmas = 13.0;

// Mode-sum integral of a single packet against a radial kernel and a plane
// wave:   P = Int d^n k  alpha_p(k) h(|k|) exp(i k . y).
//
// The packet center direction is taken as the polar axis, which makes the
// azimuthal integral closed-form (n=3) or reduces the angular part to one
// adaptive dimension (n=2). All exponentials are evaluated in the combined
// form exp(-(k^2 + c^2 - 2kcu)/width^2) <= exp(-(k-c)^2/width^2), so nothing
// overflows no matter how far the packet sits from the origin.
template <class H>
IntegralResult packet_mode_integral(const GaussianPacket& p, H&& h, const Vec& y, int n,
                                    const QuadratureConfig& cfg) {
  const Real c = p.center.norm();
  const Real D2 = p.width * p.width;

  // radial support of the packet, clipped to the configured IR cutoff
  const Real lo = std::max(cfg.k_min, c - packet_support_sigmas * p.width);
  const Real hi = std::min(cfg.k_max_cap, c + packet_support_sigmas * p.width);

  IntegralResult res;
  if (n == 1) {
    const Real cs = p.center.size() ? p.center(0) : 0.0;
    const Real ys = y.size() ? y(0) : 0.0;
    std::vector<std::pair<Real, Real>> segs;
    const Real plo = cs - packet_support_sigmas * p.width;
    const Real phi = cs + packet_support_sigmas * p.width;
    if (phi > cfg.k_min) segs.push_back({std::max(plo, cfg.k_min), phi});
    if (plo < -cfg.k_min) segs.push_back({plo, std::min(phi, -cfg.k_min)});
    if (segs.empty()) return res;
    res = integrate_segments(
        [&](Real k) {
          const Real dk = k - cs;
          const Real g = std::exp(-dk * dk / D2);
          return p.weight * g * h(std::abs(k)) *
                 Complex{std::cos(k * ys), std::sin(k * ys)};
        },
        segs, cfg);
    return res;
  }

  if (!(hi > lo)) return res;

  // split y along and transverse to the packet axis
  Vec axis;
  if (c > 0) {
    axis = p.center / c;
  } else if (y.size() && y.norm() > 0) {
    axis = y / y.norm();
  } else {
    axis = Vec::Unit(n, 0);
  }
  const Real y_par = y.size() ? y.dot(axis) : 0.0;
  Real y_perp = 0.0;
  if (y.size()) {
    const Vec rest = y - y_par * axis;
    y_perp = rest.norm();
  }

  QuadratureConfig inner_cfg = cfg;
  const Real range_weight =
      sphere_measure(n) * std::max(1.0, std::pow(hi, Real(n - 1))) * (hi - lo);
  // floored at the level the G7/K15 rounding estimate can actually certify;
  // relative tolerance carries the accuracy for non-cancelling angles
  inner_cfg.abs_tol = std::max(1e-13, 0.01 * cfg.abs_tol / (1.0 + range_weight));
  inner_cfg.rel_tol = cfg.rel_tol;

  std::int64_t inner_evals = 0;
  bool inner_trouble = false;

  auto radial = [&](Real k) -> Complex {
    IntegralResult ang;
    if (n == 3) {
      ang = integrate_1d(
          [&](Real u) {
            const Real expo = -(k * k + c * c - 2.0 * k * c * u) / D2;
            const Real phase = k * u * y_par;
            const Real bessel_arg = k * std::sqrt(std::max(0.0, 1.0 - u * u)) * y_perp;
            return std::exp(expo) * std::cyl_bessel_j(0.0, std::abs(bessel_arg)) *
                   Complex{std::cos(phase), std::sin(phase)};
          },
          -1.0, 1.0, inner_cfg);
      ang.value *= 2.0 * pi;
      ang.value *= k * k;
    } else {  // n == 2
      ang = integrate_1d(
          [&](Real phi) {
            const Real cp = std::cos(phi), sp = std::sin(phi);
            const Real expo = -(k * k + c * c - 2.0 * k * c * cp) / D2;
            const Real phase = k * (y_par * cp + y_perp * sp);
            return std::exp(expo) * Complex{std::cos(phase), std::sin(phase)};
          },
          0.0, 2.0 * pi, inner_cfg);
      ang.value *= k;
    }
    inner_evals += ang.evaluations;
    if (!ang.ok()) inner_trouble = true;
    return ang.value * h(k);
  };

  res = integrate_1d(radial, lo, hi, cfg);
  res.value *= p.weight;
  res.error_estimate =
      (res.error_estimate + inner_cfg.abs_tol * range_weight) * std::abs(p.weight);
  res.evaluations += inner_evals;
  if (inner_trouble && res.ok()) res.status = QuadStatus::max_subdivisions;
  return res;
}

// Sum of packet_mode_integral over all packets of an amplitude.
template <class H>
IntegralResult amplitude_mode_integral(const CoherentAmplitude& amp, H&& h, const Vec& y,
                                       const QuadratureConfig& cfg) {
  IntegralResult total;
  for (const auto& p : amp.packets) {
    auto part = packet_mode_integral(p, h, y, amp.dimension, cfg);
    total.value += part.value;
    total.error_estimate += part.error_estimate;
    total.evaluations += part.evaluations;
    if (!part.ok()) total.status = part.status;
  }
  return total;
}

}  // namespace detail

// J(x,t) = Int d^n k alpha(k) exp(-i(|k|t - k.x)) / sqrt(2 (2pi)^n |k|).
inline IntegralResult j_function(const CoherentAmplitude& amp, const Vec& x, Real t,
                                 const QuadratureConfig& cfg) {
  amp.validate();
  cfg.validate(amp.dimension);
  if (x.size() != amp.dimension)
    throw DimensionError("j_function: x has wrong dimension");
  const Real norm = std::pow(2.0 * pi, -0.5 * amp.dimension);
  return detail::amplitude_mode_integral(
      amp,
      [&](Real k) {
        return norm / std::sqrt(2.0 * k) * Complex{std::cos(k * t), -std::sin(k * t)};
      },
      x, cfg);
}

// One-point function v(x,t) = 2 Re J(x,t); exactly real by construction.
inline IntegralResult one_point_v(const CoherentAmplitude& amp, const Vec& x, Real t,
                                  const QuadratureConfig& cfg) {
  IntegralResult res = j_function(amp, x, t, cfg);
  res.value = Complex{2.0 * res.value.real(), 0.0};
  res.error_estimate *= 2.0;
  return res;
}

// Regulated vacuum Wightman function (diagnostic only):
//   w_vac = Int d^n k e^{-eps|k|} exp(-i(|k|t - k.x)) exp(i(|k|t' - k.x')) / (2 (2pi)^n |k|).
inline IntegralResult vacuum_wightman(const Vec& x, Real t, const Vec& xp, Real tp, int n,
                                      const Regulator& reg, const QuadratureConfig& cfg) {
  reg.validate();
  cfg.validate(n);
  if (x.size() != n || xp.size() != n)
    throw DimensionError("vacuum_wightman: position has wrong dimension");
  const Real d = (x - xp).norm();
  const Real tau = t - tp;
  const Real norm = 1.0 / (2.0 * std::pow(2.0 * pi, n));
  return integrate_radial_k(
      [&](Real k) {
        return norm / k * std::exp(-reg.epsilon * k) * angular_kernel(k, d, n) *
               Complex{std::cos(k * tau), -std::sin(k * tau)};
      },
      n, cfg);
}

// Full two-point function w = v(x,t) v(x',t') + w_vac(x,t,x',t').
inline IntegralResult two_point_w(const CoherentAmplitude& amp, const Vec& x, Real t,
                                  const Vec& xp, Real tp, const Regulator& reg,
                                  const QuadratureConfig& cfg) {
  const IntegralResult v1 = one_point_v(amp, x, t, cfg);
  const IntegralResult v2 = one_point_v(amp, xp, tp, cfg);
  const IntegralResult wv = vacuum_wightman(x, t, xp, tp, amp.dimension, reg, cfg);
  IntegralResult res;
  res.value = v1.value.real() * v2.value.real() + wv.value;
  res.error_estimate = std::abs(v1.value) * v2.error_estimate +
                       std::abs(v2.value) * v1.error_estimate + wv.error_estimate;
  res.evaluations = v1.evaluations + v2.evaluations + wv.evaluations;
  if (!v1.ok()) res.status = v1.status;
  if (!v2.ok()) res.status = v2.status;
  if (!wv.ok()) res.status = wv.status;
  return res;
}

}  // namespace udw
