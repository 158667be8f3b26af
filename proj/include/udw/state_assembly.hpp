#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "udw/perturbation.hpp"
#include "udw/types.hpp"

namespace udw {

inline constexpr Real default_perturbative_guard = 0.1;

namespace detail {

// First diagonal entry such that the left-to-right sum over the diagonal is
// bit-exactly 1. The adjustment is at most a few ulp of 1, far below every
// physical tolerance, and makes "trace = 1 exactly" literal.
inline Real unit_trace_first_entry(std::initializer_list<Real> rest) {
  auto forward_sum = [&](Real a) {
    Real s = a;
    for (Real r : rest) s += r;
    return s;
  };
  Real a = 1.0;
  for (Real r : rest) a -= r;
  for (int it = 0; it < 64; ++it) {
    const Real s = forward_sum(a);
    if (s == 1.0) return a;
    Real next = a + (1.0 - s);
    if (next == a)
      next = std::nextafter(a, s > 1.0 ? -std::numeric_limits<Real>::infinity()
                                       : std::numeric_limits<Real>::infinity());
    a = next;
  }
  throw Error("unit_trace_first_entry: failed to pin the trace to 1");
}

}  // namespace detail

// Left-to-right diagonal sum; the order every trace statement refers to.
template <typename Matrix>
Real trace_real(const Matrix& m) {
  Real s = 0.0;
  for (int i = 0; i < m.rows(); ++i) s += m(i, i).real();
  return s;
}

template <typename Matrix>
Real hermiticity_deviation(const Matrix& m) {
  Real dev = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
  return dev;
}

// Reduced state of one detector in the {g, e} basis.
struct OneDetectorState {
  Matrix2c matrix = Matrix2c::Zero();

  Real excitation_probability() const { return matrix(1, 1).real(); }
};

// Joint state of the pair in the fixed product basis {gg, ge, eg, ee}.
struct TwoDetectorState {
  Matrix4c matrix = Matrix4c::Zero();
  bool is_partial_transpose = false;
};

inline OneDetectorState assemble_rho_A(const PerturbativeTerms& t,
                                       Real guard = default_perturbative_guard) {
  const Real p_exc = t.L_AA + t.Lbar_AA;
  if (p_exc > guard)
    throw GuardError("assemble_rho_A: excitation probability " + std::to_string(p_exc) +
                     " exceeds the perturbative guard " + std::to_string(guard));
  OneDetectorState s;
  s.matrix(1, 1) = Complex{p_exc, 0.0};
  s.matrix(0, 0) = Complex{detail::unit_trace_first_entry({p_exc}), 0.0};
  s.matrix(0, 1) = std::conj(t.Lbar_A);
  s.matrix(1, 0) = t.Lbar_A;
  return s;
}

// Closed-form eigenvalues of rho_A: {1 - L_AA, L_AA}; every overbar field is
// absent by the single-detector invariance theorem.
inline Vector2r rho_A_eigs_closed(const PerturbativeTerms& t) {
  Vector2r e;
  e << 1.0 - t.L_AA, t.L_AA;
  if (e(0) < e(1)) std::swap(e(0), e(1));
  return e;
}

inline TwoDetectorState assemble_rho_AB(const PerturbativeTerms& t,
                                        Real guard = default_perturbative_guard) {
  const Real p_a = t.L_AA + t.Lbar_AA;
  const Real p_b = t.L_BB + t.Lbar_BB;
  if (p_a > guard || p_b > guard)
    throw GuardError("assemble_rho_AB: excitation probability exceeds the perturbative guard " +
                     std::to_string(guard));

  TwoDetectorState s;
  auto& m = s.matrix;
  const Real a22 = p_b;
  const Real a33 = p_a;
  m(0, 0) = Complex{detail::unit_trace_first_entry({a22, a33, 0.0}), 0.0};
  m(1, 1) = Complex{a22, 0.0};
  m(2, 2) = Complex{a33, 0.0};
  m(3, 3) = Complex{0.0, 0.0};

  m(1, 0) = t.Lbar_B;
  m(2, 0) = t.Lbar_A;
  m(3, 0) = t.M + t.Mbar;
  m(2, 1) = t.L_AB + t.Lbar_AB;
  m(3, 1) = Complex{0.0, 0.0};
  m(3, 2) = Complex{0.0, 0.0};

  m(0, 1) = std::conj(m(1, 0));
  m(0, 2) = std::conj(m(2, 0));
  m(0, 3) = std::conj(m(3, 0));
  m(1, 2) = std::conj(m(2, 1));
  m(1, 3) = Complex{0.0, 0.0};
  m(2, 3) = Complex{0.0, 0.0};
  return s;
}

// Transposition of the B indices. Basis index is 2a + b for detector levels
// a, b in {g=0, e=1}: out(a b', a' b) = in(a b, a' b').
inline Matrix4c partial_transpose_matrix(const Matrix4c& in) {
  Matrix4c out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp)
          out(2 * a + bp, 2 * ap + b) = in(2 * a + b, 2 * ap + bp);
  return out;
}

inline TwoDetectorState partial_transpose_B(const TwoDetectorState& state) {
  if (state.is_partial_transpose)
    throw ValidationError("partial_transpose_B: input is already partially transposed");
  TwoDetectorState out;
  out.matrix = partial_transpose_matrix(state.matrix);
  out.is_partial_transpose = true;
  return out;
}

// Numeric spectrum of a Hermitian matrix, sorted descending. Rejects inputs
// whose Hermiticity deviation exceeds 1e-10 and verifies the eigenpair
// residuals afterwards.
template <typename Matrix>
std::vector<Real> eig_hermitian(const Matrix& m) {
  if (hermiticity_deviation(m) > 1e-10)
    throw NonHermitianError("eig_hermitian: matrix is not Hermitian within 1e-10");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw Error("eig_hermitian: eigensolver failed");
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  for (int i = 0; i < vals.size(); ++i) {
    const Real residual = (m * vecs.col(i) - vals(i) * vecs.col(i)).norm();
    if (residual > 1e-10)
      throw Error("eig_hermitian: eigenpair residual exceeds 1e-10");
  }
  std::vector<Real> out(vals.data(), vals.data() + vals.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// Closed-form roots of the characteristic polynomial of the partially
// transposed state; vacuum terms only, by the two-detector invariance
// theorem.
inline Vector4r pt_eigs_closed(const PerturbativeTerms& t) {
  const Real rad = std::sqrt((t.L_AA - t.L_BB) * (t.L_AA - t.L_BB) +
                             4.0 * std::norm(t.M));
  Vector4r e;
  e << 1.0 - t.L_AA - t.L_BB, 0.0, 0.5 * (t.L_AA + t.L_BB + rad),
      0.5 * (t.L_AA + t.L_BB - rad);
  std::sort(e.data(), e.data() + 4, std::greater<>());
  return e;
}

// Closed-form eigenvalues of rho_AB itself; |L_AB| replaces |M| and all four
// are non-negative up to quadrature noise.
inline Vector4r rho_ab_eigs_closed(const PerturbativeTerms& t) {
  const Real rad = std::sqrt((t.L_AA - t.L_BB) * (t.L_AA - t.L_BB) +
                             4.0 * std::norm(t.L_AB));
  Vector4r e;
  e << 1.0 - t.L_AA - t.L_BB, 0.0, 0.5 * (t.L_AA + t.L_BB + rad),
      0.5 * (t.L_AA + t.L_BB - rad);
  std::sort(e.data(), e.data() + 4, std::greater<>());
  if (e(3) < -1e-12)
    throw Error("rho_ab_eigs_closed: negative eigenvalue violates the spectral bound");
  return e;
}

// N = - sum of negative eigenvalues of the partial transpose.
inline Real negativity_closed(const PerturbativeTerms& t) {
  const Real rad = std::sqrt((t.L_AA - t.L_BB) * (t.L_AA - t.L_BB) +
                             4.0 * std::norm(t.M));
  return std::max(0.0, 0.5 * (rad - t.L_AA - t.L_BB));
}

inline Real negativity_numeric(const TwoDetectorState& pt_state) {
  if (!pt_state.is_partial_transpose)
    throw ValidationError("negativity_numeric: state is not a partial transpose");
  Real n = 0.0;
  for (Real e : eig_hermitian(pt_state.matrix)) n += std::max(0.0, -e);
  return n;
}

// S = -sum E ln E with 0 ln 0 = 0. Eigenvalues below -1e-10 signal broken
// positivity and are rejected; small negatives are clipped.
inline Real von_neumann_entropy(const std::vector<Real>& eigs) {
  Real s = 0.0;
  for (Real e : eigs) {
    if (e < -1e-10)
      throw ValidationError("von_neumann_entropy: eigenvalue below -1e-10");
    const Real c = std::clamp(e, 0.0, 1.0);
    if (c > 0.0) s -= c * std::log(c);
  }
  return std::max(0.0, s);
}

// Coefficients of det(x I - A) for 4x4 A, expanded symbolically over the 24
// permutations so each coefficient is a direct sum of entry products (no
// large-trace cancellation noise).
inline std::array<Complex, 5> charpoly_coeffs(const Matrix4c& a) {
  std::array<Complex, 5> acc{};
  int perm[4] = {0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (perm[i] > perm[j]) ++inversions;
    const Real sign = (inversions % 2 == 0) ? 1.0 : -1.0;

    // product of the four linear factors (x delta_{i,perm(i)} - a(i,perm(i)))
    std::array<Complex, 5> poly{};
    poly[0] = Complex{sign, 0.0};
    int degree = 0;
    for (int i = 0; i < 4; ++i) {
      const Complex c0 = -a(i, perm[i]);
      const Real c1 = (perm[i] == i) ? 1.0 : 0.0;
      std::array<Complex, 5> next{};
      for (int d = 0; d <= degree; ++d) {
        next[d] += poly[d] * c0;
        if (c1 != 0.0) next[d + 1] += poly[d];
      }
      poly = next;
      degree += (c1 != 0.0) ? 1 : 0;
    }
    for (int d = 0; d <= 4; ++d) acc[d] += poly[d];
  } while (std::next_permutation(perm, perm + 4));
  return acc;  // acc[d] multiplies x^d
}

// Spectral summary of a run; entropy comes from the closed-form eigenvalues
// (the theorem-backed spectrum), numeric eigenvalues are kept for gap
// diagnostics.
struct SpectrumReport {
  std::vector<Real> eigenvalues_numeric;
  std::vector<Real> eigenvalues_closed;
  std::vector<Real> pt_eigenvalues_numeric;  // empty for a single detector
  std::vector<Real> pt_eigenvalues_closed;
  Real negativity = 0.0;
  Real negativity_closed_form = 0.0;
  Real entropy = 0.0;
  Real excitation_A = 0.0;
  Real excitation_B = 0.0;
  Real max_closed_vs_numeric_gap = 0.0;
};

inline SpectrumReport spectrum_report_single(const PerturbativeTerms& t,
                                             Real guard = default_perturbative_guard) {
  const OneDetectorState rho = assemble_rho_A(t, guard);
  SpectrumReport r;
  r.eigenvalues_numeric = eig_hermitian(rho.matrix);
  const Vector2r closed = rho_A_eigs_closed(t);
  r.eigenvalues_closed = {closed(0), closed(1)};
  r.excitation_A = rho.excitation_probability();
  r.entropy = von_neumann_entropy(r.eigenvalues_closed);
  for (std::size_t i = 0; i < 2; ++i)
    r.max_closed_vs_numeric_gap = std::max(
        r.max_closed_vs_numeric_gap, std::abs(r.eigenvalues_numeric[i] - r.eigenvalues_closed[i]));
  return r;
}

inline SpectrumReport spectrum_report_pair(const PerturbativeTerms& t,
                                           Real guard = default_perturbative_guard) {
  const TwoDetectorState rho = assemble_rho_AB(t, guard);
  const TwoDetectorState pt = partial_transpose_B(rho);
  SpectrumReport r;
  r.eigenvalues_numeric = eig_hermitian(rho.matrix);
  const Vector4r closed = rho_ab_eigs_closed(t);
  r.eigenvalues_closed = {closed(0), closed(1), closed(2), closed(3)};
  r.pt_eigenvalues_numeric = eig_hermitian(pt.matrix);
  const Vector4r pt_closed = pt_eigs_closed(t);
  r.pt_eigenvalues_closed = {pt_closed(0), pt_closed(1), pt_closed(2), pt_closed(3)};
  r.negativity = negativity_numeric(pt);
  r.negativity_closed_form = negativity_closed(t);
  r.excitation_A = t.L_AA + t.Lbar_AA;
  r.excitation_B = t.L_BB + t.Lbar_BB;
  r.entropy = von_neumann_entropy(r.eigenvalues_closed);
  for (std::size_t i = 0; i < 4; ++i) {
    r.max_closed_vs_numeric_gap = std::max(
        r.max_closed_vs_numeric_gap, std::abs(r.eigenvalues_numeric[i] - r.eigenvalues_closed[i]));
    r.max_closed_vs_numeric_gap = std::max(
        r.max_closed_vs_numeric_gap,
        std::abs(r.pt_eigenvalues_numeric[i] - r.pt_eigenvalues_closed[i]));
  }
  return r;
}

}  // namespace udw
