#pragma once

#include <functional>
#include <vector>

#include "dtlab/common.hpp"
#include "dtlab/fourier.hpp"

namespace dtlab {

/// Finite Blaschke product c * prod_k (z - a_k) / (1 - conj(a_k) z), |a_k| < 1, |c| = 1.
template <typename T>
class BlaschkeProduct {
 public:
  BlaschkeProduct() = default;
  explicit BlaschkeProduct(std::vector<Complex<T>> zeros, Complex<T> constant = Complex<T>(1));

  static BlaschkeProduct monomial(int degree);
  static BlaschkeProduct factor(Complex<T> a);

  int degree() const { return static_cast<int>(zeros_.size()); }
  const std::vector<Complex<T>>& zeros() const { return zeros_; }
  Complex<T> constant() const { return constant_; }
  bool is_monomial() const;

  Complex<T> operator()(Complex<T> z) const;
  Complex<T> at_zero() const { return (*this)(Complex<T>(0)); }
  BlaschkeProduct operator*(const BlaschkeProduct& other) const;

 private:
  std::vector<Complex<T>> zeros_;
  Complex<T> constant_{1};
};

/// Throws PoleProximity when z is within 1e-14 of a pole 1/conj(a_k).
template <typename T>
Complex<T> blaschke_eval(const BlaschkeProduct<T>& b, Complex<T> z);

/// Taylor coefficients 0..N of b as a Fourier vector of radius N. Requires N >= deg b.
template <typename T>
FourierVector<T> blaschke_series(const BlaschkeProduct<T>& b, int N, T cutoff = T(1e-18));

/// Taylor series truncated where coefficients fall below cutoff * max; radius = support.
template <typename T>
FourierVector<T> blaschke_natural_series(const BlaschkeProduct<T>& b, T cutoff = T(1e-18));

/// Zero set of the product (with multiplicity).
template <typename T>
std::vector<Complex<T>> sigma_set(const BlaschkeProduct<T>& b);

/// Greatest common inner divisor by nearest-zero matching. Zeros closer than tol
/// are identified; a candidate pair in (tol, 2 tol] raises Ambiguous.
template <typename T>
BlaschkeProduct<T> inner_gcd(const BlaschkeProduct<T>& b1, const BlaschkeProduct<T>& b2,
                             T tol = T(1e-8));

/// theta / gamma for an inner divisor gamma of theta (zeros matched within tol).
template <typename T>
BlaschkeProduct<T> inner_quotient(const BlaschkeProduct<T>& theta, const BlaschkeProduct<T>& gamma,
                                  T tol = T(1e-8));

/// Polynomial utilities; coefficients are in ascending powers.
template <typename T>
Complex<T> poly_eval(const CVector<T>& coeffs, Complex<T> z);

template <typename T>
std::vector<Complex<T>> poly_roots(const CVector<T>& coeffs);

template <typename T>
CVector<T> poly_multiply(const CVector<T>& a, const CVector<T>& b);

template <typename T>
CVector<T> poly_from_roots(const std::vector<Complex<T>>& roots, Complex<T> lead = Complex<T>(1));

/// P / Q with polynomial coefficients in ascending powers.
template <typename T>
class RationalFunction {
 public:
  RationalFunction();
  RationalFunction(CVector<T> numerator, CVector<T> denominator);
  explicit RationalFunction(CVector<T> numerator);

  static RationalFunction polynomial(const std::vector<Complex<T>>& coeffs);
  /// z^k for any integer k.
  static RationalFunction monomial(int k, Complex<T> c = Complex<T>(1));

  const CVector<T>& numerator() const { return num_; }
  const CVector<T>& denominator() const { return den_; }
  int numerator_degree() const { return static_cast<int>(num_.size()) - 1; }
  int denominator_degree() const { return static_cast<int>(den_.size()) - 1; }

  Complex<T> operator()(Complex<T> z) const;
  std::vector<Complex<T>> zeros() const { return poly_roots<T>(num_); }
  std::vector<Complex<T>> poles() const { return poly_roots<T>(den_); }

  bool is_zero() const;
  bool is_coprime(T tol = T(1e-8)) const;
  /// Poles strictly outside the closed unit disk.
  bool is_bounded_analytic(T tol = T(1e-10)) const;

  /// r - lambda.
  RationalFunction minus_constant(Complex<T> lambda) const;
  /// 1 / r. Requires a nonzero numerator.
  RationalFunction reciprocal() const;
  RationalFunction operator*(const RationalFunction& other) const;

  /// Laurent coefficients on the unit circle. Throws CirclePole when a pole lies
  /// within 1e-10 of the circle. radius < 0 returns the natural (trimmed) support.
  FourierVector<T> laurent(int radius = -1, T cutoff = T(1e-18)) const;

 private:
  CVector<T> num_;
  CVector<T> den_;
};

template <typename T>
struct InnerOuter {
  BlaschkeProduct<T> inner;
  RationalFunction<T> outer;
};

/// r = inner * outer for r in H^infinity without zeros on the circle.
template <typename T>
InnerOuter<T> factor_inner_outer(const RationalFunction<T>& r);

enum class CoronaHalf { Interior, Exterior };

struct CoronaGridSpec {
  int levels = 12;              // radii 1 - 2^{-j}, j = 1..levels
  int angles = 256;
  bool include_boundary = true;  // also sample r = 1
};

template <typename T>
struct CoronaVerdict {
  bool is_corona_pair = false;
  T infimum_estimate = T(0);
  Complex<T> witness{0};
  T delta = T(0);
  int samples = 0;
};

template <typename T>
using ComplexFunction = std::function<Complex<T>(Complex<T>)>;

/// Sampled test of inf (|h1| + |h2|) >= delta over the disk (Interior) or over the
/// exterior of the disk (Exterior, sampled at the reflected points 1 / conj(w)).
template <typename T>
CoronaVerdict<T> corona_check(const ComplexFunction<T>& h1, const ComplexFunction<T>& h2,
                              CoronaHalf half, T delta = T(1e-4), CoronaGridSpec grid = {});

#define DTLAB_INNER_RATIONAL_INSTANTIATE(EXTERN, T)                                                \
  EXTERN template class BlaschkeProduct<T>;                                                        \
  EXTERN template class RationalFunction<T>;                                                       \
  EXTERN template Complex<T> blaschke_eval<T>(const BlaschkeProduct<T>&, Complex<T>);              \
  EXTERN template FourierVector<T> blaschke_series<T>(const BlaschkeProduct<T>&, int, T);          \
  EXTERN template FourierVector<T> blaschke_natural_series<T>(const BlaschkeProduct<T>&, T);       \
  EXTERN template std::vector<Complex<T>> sigma_set<T>(const BlaschkeProduct<T>&);                 \
  EXTERN template BlaschkeProduct<T> inner_gcd<T>(const BlaschkeProduct<T>&,                       \
                                                  const BlaschkeProduct<T>&, T);                   \
  EXTERN template BlaschkeProduct<T> inner_quotient<T>(const BlaschkeProduct<T>&,                  \
                                                       const BlaschkeProduct<T>&, T);              \
  EXTERN template Complex<T> poly_eval<T>(const CVector<T>&, Complex<T>);                          \
  EXTERN template std::vector<Complex<T>> poly_roots<T>(const CVector<T>&);                        \
  EXTERN template CVector<T> poly_multiply<T>(const CVector<T>&, const CVector<T>&);               \
  EXTERN template CVector<T> poly_from_roots<T>(const std::vector<Complex<T>>&, Complex<T>);       \
  EXTERN template InnerOuter<T> factor_inner_outer<T>(const RationalFunction<T>&);                 \
  EXTERN template CoronaVerdict<T> corona_check<T>(const ComplexFunction<T>&,                      \
                                                   const ComplexFunction<T>&, CoronaHalf, T,       \
                                                   CoronaGridSpec);

DTLAB_INNER_RATIONAL_INSTANTIATE(extern, double)

}  // namespace dtlab
