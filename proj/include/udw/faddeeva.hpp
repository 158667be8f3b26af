#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "udw/types.hpp"

namespace udw {

namespace detail {

// Rational-expansion coefficients for the Faddeeva function (Weideman 1994).
// Computed once from the periodized integrand by a direct DFT in extended
// precision; N = 64 keeps the absolute error at machine level on the closed
// upper half-plane.
template <int N = 64>
const std::array<Real, N>& weideman_coefficients() {
  static const std::array<Real, N> coeffs = [] {
    constexpr int M = 2 * N;
    const long double L = std::sqrt(static_cast<long double>(N) / std::sqrt(2.0L));
    const long double pi_l = 3.14159265358979323846264338327950288L;

    std::array<long double, 2 * M> g{};
    for (int j = -M; j < M; ++j) {
      const long double theta = static_cast<long double>(j) * pi_l / M;
      if (std::abs(std::abs(theta) - pi_l) < 1e-18L) {
        g[j + M] = 0.0L;  // t -> infinity limit
        continue;
      }
      const long double t = L * std::tan(theta / 2.0L);
      g[j + M] = std::exp(-t * t) * (L * L + t * t);
    }

    std::array<Real, N> a{};
    for (int m = 1; m <= N; ++m) {
      long double re = 0.0L;
      for (int j = -M; j < M; ++j) {
        const long double theta = static_cast<long double>(j) * pi_l / M;
        re += g[j + M] * std::cos(m * theta);
      }
      a[m - 1] = static_cast<Real>(re / (2.0L * M));
    }
    return a;
  }();
  return coeffs;
}

}  // namespace detail

// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im z >= 0.
//
// |z| >= 12: Laplace continued fraction (relative accuracy ~1e-15 there).
// Otherwise: Weideman rational expansion in (L+iz)/(L-iz).
inline Complex faddeeva_w(Complex z) {
  constexpr Real inv_sqrt_pi = 0.564189583547756286948079451560772;
  const Real az2 = std::norm(z);

  if (az2 >= 144.0) {
    const int depth = az2 >= 2500.0 ? 16 : 36;
    Complex r{0.0, 0.0};
    for (int m = depth; m >= 1; --m) r = (0.5 * m) / (z - r);
    return Complex{0.0, inv_sqrt_pi} / (z - r);
  }

  constexpr int N = 64;
  const auto& a = detail::weideman_coefficients<N>();
  const Real L = std::sqrt(static_cast<Real>(N) / std::sqrt(2.0));
  const Complex iz{-z.imag(), z.real()};
  const Complex denom = L - iz;
  const Complex Z = (L + iz) / denom;
  Complex p{0.0, 0.0};
  for (int m = N - 1; m >= 0; --m) p = p * Z + a[m];  // sum_{m=1..N} a_m Z^{m-1}
  return 2.0 * p / (denom * denom) + inv_sqrt_pi / denom;
}

// Half-line Gaussian Fourier integral
//   I(w0, theta) = Int_{w0}^{inf} ds exp(-s^2 + i theta s)
//                = (sqrt(pi)/2) exp(-theta^2/4) erfc(w0 - i theta/2),
// evaluated without overflow through the Faddeeva function (all calls stay in
// the upper half-plane and every exponential factor is <= 1).
inline Complex gauss_halfline_fourier(Real w0, Real theta) {
  constexpr Real sqrt_pi = 1.77245385090551602729816748334114518;
  const Real phase = w0 * theta;
  const Complex damp = std::exp(-w0 * w0) * Complex{std::cos(phase), std::sin(phase)};
  if (w0 >= 0.0)
    return 0.5 * sqrt_pi * damp * faddeeva_w(Complex{0.5 * theta, w0});
  return sqrt_pi * std::exp(-0.25 * theta * theta) -
         0.5 * sqrt_pi * damp * faddeeva_w(Complex{-0.5 * theta, -w0});
}

}  // namespace udw
