#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dtlab {

template <typename T>
using Complex = std::complex<T>;

template <typename T>
using CVector = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, 1>;

template <typename T>
using CMatrix = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename T>
using RVector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

/// Failure categories. The CLI maps Config to exit code 2, Ambiguous to 4
/// and every other kind to exit code 3.
enum class ErrorKind {
  Config,
  Precondition,
  WindowOverflow,
  NonInvertibleSymbol,
  BoundaryZero,
  PoleProximity,
  CirclePole,
  NearZeroSample,
  Coprimality,
  NotInKernel,
  HypothesisViolation,
  BasisMismatch,
  Ambiguous,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::WindowOverflow: return "window-overflow";
    case ErrorKind::NonInvertibleSymbol: return "non-invertible-symbol";
    case ErrorKind::BoundaryZero: return "boundary-zero";
    case ErrorKind::PoleProximity: return "pole-proximity";
    case ErrorKind::CirclePole: return "circle-pole";
    case ErrorKind::NearZeroSample: return "near-zero-sample";
    case ErrorKind::Coprimality: return "coprimality";
    case ErrorKind::NotInKernel: return "not-in-kernel";
    case ErrorKind::HypothesisViolation: return "hypothesis-violation";
    case ErrorKind::BasisMismatch: return "basis-mismatch";
    case ErrorKind::Ambiguous: return "ambiguous";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

/// Numerical thresholds shared by the kernel, corona and hypothesis checks.
template <typename T>
struct Tolerances {
  T kernel_relative = T(1e-8);   // singular value cut, relative to sigma_max
  T min_gap_ratio = T(1e3);      // below this the rank decision is ambiguous
  T capture = T(1e-11);          // per-column leakage allowed for interior columns
  T corona_delta = T(1e-4);      // lower bound for |h1| + |h2|
  T residual = T(1e-8);          // kernel membership / hypothesis residuals
  T coprime = T(1e-8);           // root separation for coprimality
  T series_cutoff = T(1e-18);    // relative cutoff for truncated power series
};

template <typename T>
constexpr T pi() {
  return T(3.141592653589793238462643383279502884L);
}

}  // namespace dtlab
