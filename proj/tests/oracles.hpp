#pragma once

// Test-only oracles, independent of the production integration paths.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "udw/types.hpp"

namespace oracles {

using udw::Complex;
using udw::Real;
using udw::Vec;

// splitmix64: tiny, portable, deterministic across standard libraries
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0,1)
  Real uniform() { return static_cast<Real>(next_u64() >> 11) * 0x1.0p-53; }
  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }
  // standard normal via Box-Muller
  Real normal() {
    Real u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const Real u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * udw::pi * u2);
  }
};

// Monte Carlo integral of f over R^n with an isotropic Gaussian proposal
// N(center, s^2 I); antithetic pairs around the center kill odd-phase noise.
inline Complex mc_gaussian_importance(const std::function<Complex(const Vec&)>& f, int n,
                                      const Vec& center, Real s, std::int64_t samples,
                                      std::uint64_t seed) {
  Rng rng(seed);
  const Real log_norm = -0.5 * n * std::log(2.0 * udw::pi * s * s);
  Complex acc{0.0, 0.0};
  Vec kp(n), km(n);
  for (std::int64_t i = 0; i < samples / 2; ++i) {
    Real q2 = 0.0;
    for (int a = 0; a < n; ++a) {
      const Real g = rng.normal();
      q2 += g * g;
      kp(a) = center(a) + s * g;
      km(a) = center(a) - s * g;
    }
    const Real pdf = std::exp(log_norm - 0.5 * q2);
    acc += 0.5 * (f(kp) + f(km)) / pdf;
  }
  return acc / static_cast<Real>(samples / 2);
}

// Randomized average of exp(i k d cos(theta)) over the unit sphere: a
// randomly rotated uniform grid (an unbiased Monte Carlo estimator whose
// variance collapses for smooth integrands).
inline Real angular_average_mc(int n, Real k, Real d, std::uint64_t seed, int grid = 512,
                               int shifts = 32) {
  Rng rng(seed);
  Real acc = 0.0;
  for (int s = 0; s < shifts; ++s) {
    if (n == 2) {
      const Real offset = rng.uniform(0.0, 2.0 * udw::pi);
      Real sum = 0.0;
      for (int j = 0; j < grid; ++j) {
        const Real phi = offset + 2.0 * udw::pi * j / grid;
        sum += std::cos(k * d * std::cos(phi));
      }
      acc += sum / grid;
    } else if (n == 3) {
      // stratified in u = cos(theta)
      Real sum = 0.0;
      for (int j = 0; j < grid; ++j) {
        const Real u = -1.0 + 2.0 * (j + rng.uniform()) / grid;
        sum += std::cos(k * d * u);
      }
      acc += sum / grid;
    } else {
      const Real sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      acc += std::cos(k * d * sign);
    }
  }
  return acc / shifts;
}

// Dawson function F(x) = sum_{m>=0} (-2)^m x^{2m+1} / (2m+1)!!, reliable to
// ~1e-13 for |x| <= 3 (cancellation grows beyond that); reference for the
// Faddeeva tests near the real axis.
inline Real dawson_series(Real x) {
  Real term = x;
  Real sum = x;
  for (int m = 1; m < 200; ++m) {
    term *= -2.0 * x * x / (2.0 * m + 1.0);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Composite Simpson on [a,b]; independent low-tech comparator.
inline Complex simpson(const std::function<Complex(Real)>& f, Real a, Real b, int intervals) {
  if (intervals % 2) ++intervals;
  const Real h = (b - a) / intervals;
  Complex sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i)
    sum += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
  return sum * (h / 3.0);
}

// Midpoint-rule 2D grid integral over [a,b] x [a,b].
inline Real grid2d(const std::function<Real(Real, Real)>& f, Real a, Real b, int n) {
  const Real h = (b - a) / n;
  Real sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      sum += f(a + (i + 0.5) * h, a + (j + 0.5) * h);
  return sum * h * h;
}

}  // namespace oracles
