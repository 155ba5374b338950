#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dtlab/common.hpp"

namespace dtlab {

/// Inclusive index range [lo, hi] of the nonzero coefficients of a Fourier vector.
struct Support {
  int lo = 0;
  int hi = 0;
  int extent() const { return std::max(lo < 0 ? -lo : lo, hi < 0 ? -hi : hi); }
  bool operator==(const Support&) const = default;
};

/// Coefficients c_k, |k| <= R, of a function on the unit circle,
/// f(z) = sum_k c_k z^k. Storage is offset so that c_k lives at position k + R.
template <typename T>
class FourierVector {
 public:
  using Scalar = Complex<T>;

  FourierVector() : FourierVector(0) {}
  explicit FourierVector(int radius);
  FourierVector(int radius, CVector<T> coeffs);

  static FourierVector monomial(int k, int radius, Scalar c = Scalar(1));
  static FourierVector constant(Scalar c, int radius = 0);
  /// Builds a vector from (index, coefficient) pairs; the radius is grown to fit.
  static FourierVector from_terms(const std::vector<std::pair<int, Scalar>>& terms, int radius = 0);

  int radius() const { return radius_; }
  const CVector<T>& coeffs() const { return coeffs_; }

  Scalar operator[](int k) const {
    return (k >= -radius_ && k <= radius_) ? coeffs_(k + radius_) : Scalar(0);
  }

  std::optional<Support> support() const;
  T norm() const { return coeffs_.norm(); }
  bool is_zero() const;

  /// Same function on a different window; shrinking drops coefficients.
  FourierVector resized(int radius) const;
  /// The function conj(f) on the circle: c_k -> conj(c_{-k}).
  FourierVector conjugated() const;
  /// z^s f, keeping the radius (coefficients shifted out of the window are dropped).
  FourierVector shifted(int s) const;
  /// Evaluates the Laurent sum at z (any z != 0 when negative modes are present).
  Scalar evaluate(Scalar z) const;

  FourierVector operator+(const FourierVector& other) const;
  FourierVector operator-(const FourierVector& other) const;
  FourierVector operator-() const;
  FourierVector operator*(Scalar s) const;

 private:
  int radius_;
  CVector<T> coeffs_;
};

template <typename T>
FourierVector<T> operator*(Complex<T> s, const FourierVector<T>& f) {
  return f * s;
}

enum class MultiplyMode { Truncate, Strict };

template <typename T>
struct Product {
  FourierVector<T> value;
  bool exact = true;  // false when part of the full product fell outside the window
};

/// Product of two Fourier vectors on a window of the given radius
/// (radius < 0 selects max of the operand radii). Strict mode throws
/// WindowOverflow instead of truncating.
template <typename T>
Product<T> multiply(const FourierVector<T>& f, const FourierVector<T>& g, int radius = -1,
                    MultiplyMode mode = MultiplyMode::Truncate);

template <typename T>
FourierVector<T> project_plus(const FourierVector<T>& f);

template <typename T>
FourierVector<T> project_minus(const FourierVector<T>& f);

/// <f, g> = sum_k conj(f_k) g_k.
template <typename T>
Complex<T> inner(const FourierVector<T>& f, const FourierVector<T>& g);

/// Support of the coefficients exceeding rel_tol * max |c_k|.
template <typename T>
std::optional<Support> significant_support(const FourierVector<T>& f, T rel_tol);

/// Zeros every coefficient below rel_tol * max |c_k|.
template <typename T>
FourierVector<T> trim(const FourierVector<T>& f, T rel_tol);

/// Smallest radius that holds the whole support (0 for the zero vector).
template <typename T>
int natural_radius(const FourierVector<T>& f);

/// Samples f(e^{2 pi i j / M}), j = 0..M-1. M is a power of two.
template <typename T>
class BoundaryGrid {
 public:
  explicit BoundaryGrid(std::vector<Complex<T>> samples);

  template <typename F>
  static BoundaryGrid sample(F&& f, std::size_t size) {
    std::vector<Complex<T>> values(size);
    for (std::size_t j = 0; j < size; ++j) values[j] = f(node(j, size));
    return BoundaryGrid(std::move(values));
  }

  static Complex<T> node(std::size_t j, std::size_t size);

  std::size_t size() const { return samples_.size(); }
  const std::vector<Complex<T>>& samples() const { return samples_; }
  const Complex<T>& operator[](std::size_t j) const { return samples_[j]; }

 private:
  std::vector<Complex<T>> samples_;
};

/// Requires M >= 2R + 2.
template <typename T>
BoundaryGrid<T> to_grid(const FourierVector<T>& f, std::size_t size);

/// Requires M >= 2R + 2.
template <typename T>
FourierVector<T> from_grid(const BoundaryGrid<T>& grid, int radius);

/// Maximum sampled modulus; requires at least 256 samples.
template <typename T>
T sup_norm(const BoundaryGrid<T>& grid);

template <typename T>
T min_modulus(const BoundaryGrid<T>& grid);

/// Winding number of the sampled closed curve around 0. Throws NearZeroSample
/// when some sample has modulus below tol.
template <typename T>
int winding_number(const BoundaryGrid<T>& grid, T tol = T(1e-10));

#define DTLAB_FOURIER_INSTANTIATE(EXTERN, T)                                                    \
  EXTERN template class FourierVector<T>;                                                       \
  EXTERN template class BoundaryGrid<T>;                                                        \
  EXTERN template Product<T> multiply<T>(const FourierVector<T>&, const FourierVector<T>&, int, \
                                         MultiplyMode);                                         \
  EXTERN template FourierVector<T> project_plus<T>(const FourierVector<T>&);                    \
  EXTERN template FourierVector<T> project_minus<T>(const FourierVector<T>&);                   \
  EXTERN template Complex<T> inner<T>(const FourierVector<T>&, const FourierVector<T>&);        \
  EXTERN template std::optional<Support> significant_support<T>(const FourierVector<T>&, T);    \
  EXTERN template FourierVector<T> trim<T>(const FourierVector<T>&, T);                         \
  EXTERN template int natural_radius<T>(const FourierVector<T>&);                               \
  EXTERN template BoundaryGrid<T> to_grid<T>(const FourierVector<T>&, std::size_t);             \
  EXTERN template FourierVector<T> from_grid<T>(const BoundaryGrid<T>&, int);                   \
  EXTERN template T sup_norm<T>(const BoundaryGrid<T>&);                                        \
  EXTERN template T min_modulus<T>(const BoundaryGrid<T>&);                                     \
  EXTERN template int winding_number<T>(const BoundaryGrid<T>&, T);

DTLAB_FOURIER_INSTANTIATE(extern, double)

}  // namespace dtlab
