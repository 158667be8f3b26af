#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace udw {

using Real = double;
using Complex = std::complex<Real>;

// Spatial n-vectors, n in {1,2,3}. Runtime-sized: the dimension is a run
// parameter, not a compile-time constant.
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Matrix2c = Eigen::Matrix<Complex, 2, 2>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Vector2r = Eigen::Matrix<Real, 2, 1>;
using Vector4r = Eigen::Matrix<Real, 4, 1>;

inline constexpr Real pi = 3.14159265358979323846264338327950288;
inline constexpr Complex I{0.0, 1.0};

// Surface measure of the unit (n-1)-sphere as used by the radial reduction:
// n=1 counts both half-lines.
inline Real sphere_measure(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return 2.0 * pi;
    case 3: return 4.0 * pi;
    default: throw std::invalid_argument("sphere_measure: n must be 1, 2 or 3");
  }
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// n = 1 with k_min = 0: the measure d k/|k| is log-divergent at the origin.
class IRDivergenceError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class GuardError : public Error {
 public:
  using Error::Error;
};

class NonHermitianError : public Error {
 public:
  using Error::Error;
};

}  // namespace udw
