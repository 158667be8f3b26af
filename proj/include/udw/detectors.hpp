#pragma once

#include <cmath>
#include <utility>

#include "udw/quadrature.hpp"
#include "udw/types.hpp"

namespace udw {

// Spatial profile of a detector. Real, non-negative, unit integral; the
// Gaussian variant is exp(-|x|^2/sigma^2) / (pi^{n/2} sigma^n).
struct SmearingProfile {
  enum class Kind { point_like, gaussian };

  Kind kind = Kind::point_like;
  Real sigma = 0.0;

  static SmearingProfile point_like() { return {}; }
  static SmearingProfile gaussian(Real sigma) {
    SmearingProfile s;
    s.kind = Kind::gaussian;
    s.sigma = sigma;
    return s;
  }

  bool is_point_like() const { return kind == Kind::point_like; }

  void validate(int n) const {
    if (kind == Kind::gaussian && !(sigma > 0))
      throw ValidationError("SmearingProfile: gaussian sigma must be > 0");
    if (kind == Kind::gaussian) {
      // unit-integral check, done radially
      QuadratureConfig cfg;
      cfg.abs_tol = 1e-13;
      cfg.rel_tol = 1e-13;
      const Real norm = 1.0 / (std::pow(pi, 0.5 * n) * std::pow(sigma, n));
      auto res = integrate_1d(
          [&](Real r) {
            return Complex{sphere_measure(n) * std::pow(r, n - 1) * norm *
                               std::exp(-r * r / (sigma * sigma)),
                           0.0};
          },
          0.0, 13.0 * sigma, cfg);
      if (std::abs(res.value.real() - 1.0) > 1e-10)
        throw ValidationError("SmearingProfile: profile does not integrate to 1");
    }
  }

  // F(x) for the extended variant; the point-like profile is a distribution
  // and has no pointwise values.
  Real evaluate(const Vec& x, int n) const {
    if (kind == Kind::point_like)
      throw ValidationError("SmearingProfile: point-like profile has no pointwise values");
    const Real norm = 1.0 / (std::pow(pi, 0.5 * n) * std::pow(sigma, n));
    return norm * std::exp(-x.squaredNorm() / (sigma * sigma));
  }
};

// F~(k) = (2pi)^{-n/2} Int d^n x F(x) exp(i k.x); real and positive for the
// supported symmetric profiles, so only |k| matters.
inline Real smearing_fourier_radial(const SmearingProfile& s, Real k_abs, int n) {
  const Real base = std::pow(2.0 * pi, -0.5 * n);
  if (s.kind == SmearingProfile::Kind::point_like) return base;
  return base * std::exp(-0.25 * s.sigma * s.sigma * k_abs * k_abs);
}

inline Complex smearing_fourier(const SmearingProfile& s, const Vec& k, int n) {
  if (k.size() != n)
    throw DimensionError("smearing_fourier: k has wrong dimension");
  return Complex{smearing_fourier_radial(s, k.norm(), n), 0.0};
}

// Temporal window of the interaction, normalized to peak value 1 so that the
// duration parameter T reads directly as the interaction timescale.
struct SwitchingProfile {
  enum class Kind { gaussian, compact_bump };

  Kind kind = Kind::gaussian;
  Real duration = 1.0;  // T
  Real center = 0.0;    // t0

  static SwitchingProfile gaussian(Real T, Real t0 = 0.0) {
    return {Kind::gaussian, T, t0};
  }
  static SwitchingProfile compact_bump(Real T, Real t0 = 0.0) {
    return {Kind::compact_bump, T, t0};
  }

  void validate() const {
    if (!(duration > 0))
      throw ValidationError("SwitchingProfile: duration must be > 0");
  }

  Real evaluate(Real t) const {
    const Real s = t - center;
    if (kind == Kind::gaussian) return std::exp(-s * s / (duration * duration));
    if (std::abs(s) >= duration) return 0.0;
    const Real c = std::cos(0.5 * pi * s / duration);
    return c * c;
  }

  // Support of the profile after truncation; exact for the compact bump.
  std::pair<Real, Real> window(Real sigmas) const {
    const Real half = (kind == Kind::gaussian) ? sigmas * duration : duration;
    return {center - half, center + half};
  }
};

namespace detail {

// Shape factor of the cos^2 bump transform: chi~(omega) = T s(omega T) e^{-i omega t0},
// s(x) = sin(x) pi^2 / (x (pi^2 - x^2)). Even in x; removable points at x = 0
// and |x| = pi are evaluated through cancellation-free forms.
inline Real bump_shape(Real x) {
  x = std::abs(x);
  if (x < 0.5) {
    if (x < 1e-4) {
      const Real x2 = x * x;
      return (1.0 - x2 / 6.0 + x2 * x2 / 120.0) / (1.0 - x2 / (pi * pi));
    }
    return std::sin(x) * pi * pi / (x * (pi * pi - x * x));
  }
  // sin(x) pi^2 / (x(pi-x)(pi+x)) rewritten around x = pi with d = x - pi
  const Real d = x - pi;
  const Real sinc_d = (std::abs(d) < 1e-8) ? 1.0 - d * d / 6.0 : std::sin(d) / d;
  return sinc_d * pi * pi / ((pi + d) * (2.0 * pi + d));
}

}  // namespace detail

// chi~(omega) = Int dt chi(t) exp(-i omega t), in closed form.
inline Complex switching_fourier(const SwitchingProfile& c, Real omega) {
  c.validate();
  const Complex phase{std::cos(omega * c.center), -std::sin(omega * c.center)};
  if (c.kind == SwitchingProfile::Kind::gaussian) {
    const Real T = c.duration;
    return std::sqrt(pi) * T * std::exp(-0.25 * T * T * omega * omega) * phase;
  }
  return c.duration * detail::bump_shape(omega * c.duration) * phase;
}

struct DetectorSpec {
  char label = 'A';
  Real gap = 1.0;   // Omega, any real
  Vec position;     // center of mass, size n
  Real coupling = 0.0;  // lambda
  SmearingProfile smearing;
  SwitchingProfile switching;

  void validate(int n) const {
    if (n < 1 || n > 3) throw ValidationError("DetectorSpec: n must be 1, 2 or 3");
    if (position.size() != n)
      throw DimensionError("DetectorSpec: position dimension does not match n");
    smearing.validate(n);
    switching.validate();
    // switching non-negativity, sampled across the window
    const auto [lo, hi] = switching.window(10.0);
    for (int i = 0; i < 1000; ++i) {
      const Real t = lo + (hi - lo) * (i + 0.5) / 1000.0;
      if (switching.evaluate(t) < 0)
        throw ValidationError("DetectorSpec: switching profile must be non-negative");
    }
  }
};

}  // namespace udw
