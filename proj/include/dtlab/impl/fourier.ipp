#pragma once

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/FFT>

#include "dtlab/fourier.hpp"

namespace dtlab {

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

inline std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Linear convolution of two dense coefficient runs through a zero-padded FFT.
template <typename T>
std::vector<Complex<T>> fft_convolve(const std::vector<Complex<T>>& a,
                                     const std::vector<Complex<T>>& b) {
  const std::size_t n = a.size() + b.size() - 1;
  const std::size_t size = next_power_of_two(n);
  std::vector<Complex<T>> pa(size, Complex<T>(0)), pb(size, Complex<T>(0));
  std::copy(a.begin(), a.end(), pa.begin());
  std::copy(b.begin(), b.end(), pb.begin());
  Eigen::FFT<T> fft;
  std::vector<Complex<T>> fa, fb, out;
  fft.fwd(fa, pa);
  fft.fwd(fb, pb);
  for (std::size_t i = 0; i < size; ++i) fa[i] *= fb[i];
  fft.inv(out, fa);
  out.resize(n);
  return out;
}

}  // namespace detail

template <typename T>
FourierVector<T>::FourierVector(int radius) : radius_(radius) {
  require(radius >= 0, ErrorKind::Precondition, "window radius must be nonnegative");
  coeffs_ = CVector<T>::Zero(2 * radius + 1);
}

template <typename T>
FourierVector<T>::FourierVector(int radius, CVector<T> coeffs) : radius_(radius), coeffs_(std::move(coeffs)) {
  require(radius >= 0, ErrorKind::Precondition, "window radius must be nonnegative");
  require(coeffs_.size() == 2 * radius + 1, ErrorKind::Precondition,
          "coefficient count must equal 2R + 1");
}

template <typename T>
FourierVector<T> FourierVector<T>::monomial(int k, int radius, Scalar c) {
  FourierVector f(std::max(radius, std::abs(k)));
  f.coeffs_(k + f.radius_) = c;
  return f;
}

template <typename T>
FourierVector<T> FourierVector<T>::constant(Scalar c, int radius) {
  return monomial(0, radius, c);
}

template <typename T>
FourierVector<T> FourierVector<T>::from_terms(const std::vector<std::pair<int, Scalar>>& terms,
                                              int radius) {
  int r = radius;
  for (const auto& [k, c] : terms) r = std::max(r, std::abs(k));
  FourierVector f(r);
  for (const auto& [k, c] : terms) f.coeffs_(k + r) += c;
  return f;
}

template <typename T>
std::optional<Support> FourierVector<T>::support() const {
  const Eigen::Index n = coeffs_.size();
  Eigen::Index first = 0;
  while (first < n && coeffs_(first) == Scalar(0)) ++first;
  if (first == n) return std::nullopt;
  Eigen::Index last = n - 1;
  while (coeffs_(last) == Scalar(0)) --last;
  return Support{static_cast<int>(first) - radius_, static_cast<int>(last) - radius_};
}

template <typename T>
bool FourierVector<T>::is_zero() const {
  return !support().has_value();
}

template <typename T>
FourierVector<T> FourierVector<T>::resized(int radius) const {
  FourierVector out(radius);
  const int r = std::min(radius, radius_);
  out.coeffs_.segment(radius - r, 2 * r + 1) = coeffs_.segment(radius_ - r, 2 * r + 1);
  return out;
}

template <typename T>
FourierVector<T> FourierVector<T>::conjugated() const {
  FourierVector out(radius_);
  for (int k = -radius_; k <= radius_; ++k) out.coeffs_(k + radius_) = std::conj(coeffs_(radius_ - k));
  return out;
}

template <typename T>
FourierVector<T> FourierVector<T>::shifted(int s) const {
  FourierVector out(radius_);
  for (int k = -radius_; k <= radius_; ++k) {
    const int target = k + s;
    if (target >= -radius_ && target <= radius_) out.coeffs_(target + radius_) = coeffs_(k + radius_);
  }
  return out;
}

template <typename T>
typename FourierVector<T>::Scalar FourierVector<T>::evaluate(Scalar z) const {
  // Horner in z for k >= 0 and in 1/z for k < 0.
  Scalar positive(0);
  for (int k = radius_; k >= 0; --k) positive = positive * z + coeffs_(k + radius_);
  if (coeffs_.head(radius_).isZero(0)) return positive;
  const Scalar w = Scalar(1) / z;
  Scalar negative(0);
  for (int k = -radius_; k <= -1; ++k) negative = negative * w + coeffs_(k + radius_);
  return positive + negative * w;
}

template <typename T>
FourierVector<T> FourierVector<T>::operator+(const FourierVector& other) const {
  const int r = std::max(radius_, other.radius_);
  FourierVector out = resized(r);
  out.coeffs_ += other.resized(r).coeffs_;
  return out;
}

template <typename T>
FourierVector<T> FourierVector<T>::operator-(const FourierVector& other) const {
  const int r = std::max(radius_, other.radius_);
  FourierVector out = resized(r);
  out.coeffs_ -= other.resized(r).coeffs_;
  return out;
}

template <typename T>
FourierVector<T> FourierVector<T>::operator-() const {
  return FourierVector(radius_, -coeffs_);
}

template <typename T>
FourierVector<T> FourierVector<T>::operator*(Scalar s) const {
  return FourierVector(radius_, coeffs_ * s);
}

template <typename T>
Product<T> multiply(const FourierVector<T>& f, const FourierVector<T>& g, int radius, MultiplyMode mode) {
  if (radius < 0) radius = std::max(f.radius(), g.radius());
  FourierVector<T> out(radius);
  const auto sf = f.support();
  const auto sg = g.support();
  if (!sf || !sg) return {out, true};

  const int lo = sf->lo + sg->lo;
  const int hi = sf->hi + sg->hi;
  const bool exact = lo >= -radius && hi <= radius;
  if (!exact && mode == MultiplyMode::Strict) {
    throw Error(ErrorKind::WindowOverflow,
                "product support [" + std::to_string(lo) + ", " + std::to_string(hi) +
                    "] exceeds window radius " + std::to_string(radius));
  }

  const long len_f = sf->hi - sf->lo + 1;
  const long len_g = sg->hi - sg->lo + 1;
  CVector<T> c = CVector<T>::Zero(2 * radius + 1);

  if (std::min(len_f, len_g) <= 48 || len_f * len_g <= 40000) {
    for (int i = sf->lo; i <= sf->hi; ++i) {
      const Complex<T> a = f[i];
      if (a == Complex<T>(0)) continue;
      const int jlo = std::max(sg->lo, -radius - i);
      const int jhi = std::min(sg->hi, radius - i);
      for (int j = jlo; j <= jhi; ++j) c(i + j + radius) += a * g[j];
    }
  } else {
    std::vector<Complex<T>> a(len_f), b(len_g);
    for (int i = 0; i < len_f; ++i) a[i] = f[sf->lo + i];
    for (int j = 0; j < len_g; ++j) b[j] = g[sg->lo + j];
    const auto conv = detail::fft_convolve(a, b);
    for (std::size_t m = 0; m < conv.size(); ++m) {
      const int k = lo + static_cast<int>(m);
      if (k >= -radius && k <= radius) c(k + radius) = conv[m];
    }
  }
  return {FourierVector<T>(radius, std::move(c)), exact};
}

template <typename T>
FourierVector<T> project_plus(const FourierVector<T>& f) {
  CVector<T> c = f.coeffs();
  c.head(f.radius()).setZero();
  return FourierVector<T>(f.radius(), std::move(c));
}

template <typename T>
FourierVector<T> project_minus(const FourierVector<T>& f) {
  CVector<T> c = f.coeffs();
  c.tail(f.radius() + 1).setZero();
  return FourierVector<T>(f.radius(), std::move(c));
}

template <typename T>
Complex<T> inner(const FourierVector<T>& f, const FourierVector<T>& g) {
  const int r = std::max(f.radius(), g.radius());
  return f.resized(r).coeffs().dot(g.resized(r).coeffs());
}

template <typename T>
std::optional<Support> significant_support(const FourierVector<T>& f, T rel_tol) {
  return trim(f, rel_tol).support();
}

template <typename T>
FourierVector<T> trim(const FourierVector<T>& f, T rel_tol) {
  CVector<T> c = f.coeffs();
  const T scale = c.size() ? c.cwiseAbs().maxCoeff() : T(0);
  const T cut = rel_tol * scale;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (std::abs(c(i)) <= cut) c(i) = Complex<T>(0);
  return FourierVector<T>(f.radius(), std::move(c));
}

template <typename T>
int natural_radius(const FourierVector<T>& f) {
  const auto s = f.support();
  return s ? s->extent() : 0;
}

template <typename T>
BoundaryGrid<T>::BoundaryGrid(std::vector<Complex<T>> samples) : samples_(std::move(samples)) {
  require(detail::is_power_of_two(samples_.size()), ErrorKind::Precondition,
          "boundary grid size must be a power of two");
}

template <typename T>
Complex<T> BoundaryGrid<T>::node(std::size_t j, std::size_t size) {
  return std::polar(T(1), T(2) * pi<T>() * T(j) / T(size));
}

template <typename T>
BoundaryGrid<T> to_grid(const FourierVector<T>& f, std::size_t size) {
  const int r = f.radius();
  require(detail::is_power_of_two(size), ErrorKind::Precondition, "grid size must be a power of two");
  require(size >= static_cast<std::size_t>(2 * r + 2), ErrorKind::Precondition,
          "grid size must be at least 2R + 2");
  // samples_j = sum_k c_k w^{jk} with w = e^{2 pi i / M}, i.e. an unscaled inverse DFT.
  std::vector<Complex<T>> spectrum(size, Complex<T>(0));
  const long m = static_cast<long>(size);
  for (int k = -r; k <= r; ++k) spectrum[static_cast<std::size_t>(((k % m) + m) % m)] += f[k];
  Eigen::FFT<T> fft;
  fft.SetFlag(Eigen::FFT<T>::Unscaled);
  std::vector<Complex<T>> samples;
  fft.inv(samples, spectrum);
  return BoundaryGrid<T>(std::move(samples));
}

template <typename T>
FourierVector<T> from_grid(const BoundaryGrid<T>& grid, int radius) {
  const std::size_t size = grid.size();
  require(size >= static_cast<std::size_t>(2 * radius + 2), ErrorKind::Precondition,
          "grid size must be at least 2R + 2");
  Eigen::FFT<T> fft;
  std::vector<Complex<T>> spectrum;
  fft.fwd(spectrum, grid.samples());
  FourierVector<T> out(radius);
  CVector<T> c(2 * radius + 1);
  const long m = static_cast<long>(size);
  for (int k = -radius; k <= radius; ++k)
    c(k + radius) = spectrum[static_cast<std::size_t>(((k % m) + m) % m)] / T(size);
  return FourierVector<T>(radius, std::move(c));
}

template <typename T>
T sup_norm(const BoundaryGrid<T>& grid) {
  require(grid.size() >= 256, ErrorKind::Precondition, "sup norm needs at least 256 samples");
  T m(0);
  for (const auto& s : grid.samples()) m = std::max(m, std::abs(s));
  return m;
}

template <typename T>
T min_modulus(const BoundaryGrid<T>& grid) {
  T m = std::abs(grid[0]);
  for (const auto& s : grid.samples()) m = std::min(m, std::abs(s));
  return m;
}

template <typename T>
int winding_number(const BoundaryGrid<T>& grid, T tol) {
  const std::size_t n = grid.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(grid[j]) < tol) {
      throw Error(ErrorKind::NearZeroSample,
                  "sample " + std::to_string(j) + " is within tolerance of zero");
    }
  }
  T total(0);
  for (std::size_t j = 0; j < n; ++j) total += std::arg(grid[(j + 1) % n] / grid[j]);
  return static_cast<int>(std::lround(total / (T(2) * pi<T>())));
}

}  // namespace dtlab
