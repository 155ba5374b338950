#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "dtlab/impl/fourier.ipp"
#include "dtlab/inner_rational.hpp"

namespace dtlab {

namespace detail {

// Number of terms before rho^k drops below cutoff.
template <typename T>
int geometric_length(T rho, T cutoff) {
  if (rho <= T(0)) return 1;
  const T terms = std::ceil(std::log(cutoff) / std::log(rho)) + T(1);
  require(terms < T(1 << 16), ErrorKind::PoleProximity,
          "series decays too slowly; a zero or pole is too close to the unit circle");
  return std::max(1, static_cast<int>(terms));
}

template <typename T>
FourierVector<T> shrink_to_support(const FourierVector<T>& f) {
  return f.resized(natural_radius(f));
}

template <typename T>
FourierVector<T> series_product(const FourierVector<T>& a, const FourierVector<T>& b, T cutoff) {
  const int r = natural_radius(a) + natural_radius(b);
  auto p = multiply(a, b, r, MultiplyMode::Strict).value;
  return shrink_to_support(trim(p, cutoff));
}

template <typename T>
CVector<T> trimmed_poly(CVector<T> c) {
  if (c.size() == 0) return CVector<T>::Zero(1);
  Eigen::Index n = c.size();
  while (n > 1 && c(n - 1) == Complex<T>(0)) --n;
  return c.head(n).eval();
}

template <typename T>
bool lexicographic_less(const Complex<T>& a, const Complex<T>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace detail

template <typename T>
BlaschkeProduct<T>::BlaschkeProduct(std::vector<Complex<T>> zeros, Complex<T> constant)
    : zeros_(std::move(zeros)), constant_(constant) {
  for (const auto& a : zeros_) {
    require(std::abs(a) < T(1), ErrorKind::Precondition, "Blaschke zeros must lie in the open unit disk");
  }
  require(std::abs(std::abs(constant_) - T(1)) <= T(1e-12), ErrorKind::Precondition,
          "Blaschke constant must be unimodular");
}

template <typename T>
BlaschkeProduct<T> BlaschkeProduct<T>::monomial(int degree) {
  require(degree >= 0, ErrorKind::Precondition, "degree must be nonnegative");
  return BlaschkeProduct(std::vector<Complex<T>>(static_cast<std::size_t>(degree), Complex<T>(0)));
}

template <typename T>
BlaschkeProduct<T> BlaschkeProduct<T>::factor(Complex<T> a) {
  return BlaschkeProduct(std::vector<Complex<T>>{a});
}

template <typename T>
bool BlaschkeProduct<T>::is_monomial() const {
  return std::all_of(zeros_.begin(), zeros_.end(), [](const Complex<T>& a) { return a == Complex<T>(0); });
}

template <typename T>
Complex<T> BlaschkeProduct<T>::operator()(Complex<T> z) const {
  return blaschke_eval(*this, z);
}

template <typename T>
BlaschkeProduct<T> BlaschkeProduct<T>::operator*(const BlaschkeProduct& other) const {
  std::vector<Complex<T>> zeros = zeros_;
  zeros.insert(zeros.end(), other.zeros_.begin(), other.zeros_.end());
  const Complex<T> c = constant_ * other.constant_;
  return BlaschkeProduct(std::move(zeros), c / std::abs(c));
}

template <typename T>
Complex<T> blaschke_eval(const BlaschkeProduct<T>& b, Complex<T> z) {
  Complex<T> value = b.constant();
  for (const auto& a : b.zeros()) {
    const Complex<T> den = T(1) - std::conj(a) * z;
    require(std::abs(den) >= T(1e-14), ErrorKind::PoleProximity, "evaluation point is at a pole");
    value *= (z - a) / den;
  }
  return value;
}

template <typename T>
FourierVector<T> blaschke_natural_series(const BlaschkeProduct<T>& b, T cutoff) {
  auto acc = FourierVector<T>::constant(b.constant());
  for (const auto& a : b.zeros()) {
    FourierVector<T> f;
    if (a == Complex<T>(0)) {
      f = FourierVector<T>::monomial(1, 1);
    } else {
      // (z - a) / (1 - conj(a) z) = -a + sum_{k>=1} (1 - |a|^2) conj(a)^{k-1} z^k
      const int len = detail::geometric_length(std::abs(a), cutoff) + 1;
      CVector<T> c = CVector<T>::Zero(2 * len + 1);
      c(len) = -a;
      const T scale = T(1) - std::norm(a);
      Complex<T> power(1);
      for (int k = 1; k <= len; ++k) {
        c(len + k) = scale * power;
        power *= std::conj(a);
      }
      f = FourierVector<T>(len, std::move(c));
    }
    acc = detail::series_product(acc, f, cutoff);
  }
  return acc;
}

template <typename T>
FourierVector<T> blaschke_series(const BlaschkeProduct<T>& b, int N, T cutoff) {
  require(N >= b.degree(), ErrorKind::WindowOverflow, "series window must be at least the degree");
  return blaschke_natural_series(b, cutoff).resized(N);
}

template <typename T>
std::vector<Complex<T>> sigma_set(const BlaschkeProduct<T>& b) {
  return b.zeros();
}

template <typename T>
BlaschkeProduct<T> inner_gcd(const BlaschkeProduct<T>& b1, const BlaschkeProduct<T>& b2, T tol) {
  std::vector<Complex<T>> pool = b2.zeros();
  std::vector<bool> used(pool.size(), false);
  std::vector<Complex<T>> common;
  for (const auto& u : b1.zeros()) {
    std::size_t best = pool.size();
    T best_dist = std::numeric_limits<T>::infinity();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      const T d = std::abs(u - pool[i]);
      if (d < best_dist) {
        best_dist = d;
        best = i;
      }
    }
    if (best == pool.size()) continue;
    if (best_dist <= tol) {
      used[best] = true;
      common.push_back(u);
    } else if (best_dist <= T(2) * tol) {
      throw Error(ErrorKind::Ambiguous, "zero clustering is ambiguous at the gcd tolerance");
    }
  }
  return BlaschkeProduct<T>(std::move(common));
}

template <typename T>
BlaschkeProduct<T> inner_quotient(const BlaschkeProduct<T>& theta, const BlaschkeProduct<T>& gamma, T tol) {
  std::vector<Complex<T>> rest = theta.zeros();
  for (const auto& g : gamma.zeros()) {
    auto it = std::min_element(rest.begin(), rest.end(), [&](const Complex<T>& x, const Complex<T>& y) {
      return std::abs(x - g) < std::abs(y - g);
    });
    require(it != rest.end() && std::abs(*it - g) <= tol, ErrorKind::Precondition,
            "quotient requires an inner divisor");
    rest.erase(it);
  }
  return BlaschkeProduct<T>(std::move(rest), theta.constant() / gamma.constant());
}

template <typename T>
Complex<T> poly_eval(const CVector<T>& coeffs, Complex<T> z) {
  Complex<T> v(0);
  for (Eigen::Index k = coeffs.size() - 1; k >= 0; --k) v = v * z + coeffs(k);
  return v;
}

template <typename T>
std::vector<Complex<T>> poly_roots(const CVector<T>& coeffs) {
  const CVector<T> c = detail::trimmed_poly<T>(coeffs);
  const Eigen::Index degree = c.size() - 1;
  if (degree == 0) {
    require(c(0) != Complex<T>(0), ErrorKind::Precondition, "the zero polynomial has no root set");
    return {};
  }
  Eigen::Index low = 0;
  while (c(low) == Complex<T>(0)) ++low;
  std::vector<Complex<T>> roots(static_cast<std::size_t>(low), Complex<T>(0));
  const CVector<T> q = c.segment(low, degree - low + 1);
  const Eigen::Index n = q.size() - 1;
  if (n == 1) {
    roots.push_back(-q(0) / q(1));
  } else if (n > 1) {
    CMatrix<T> companion = CMatrix<T>::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = Complex<T>(1);
    for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -q(i) / q(n);
    Eigen::ComplexEigenSolver<CMatrix<T>> solver(companion, false);
    CVector<T> dq(n);
    for (Eigen::Index k = 1; k <= n; ++k) dq(k - 1) = q(k) * T(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      Complex<T> r = solver.eigenvalues()(i);
      for (int it = 0; it < 3; ++it) {
        const Complex<T> p = poly_eval<T>(q, r);
        const Complex<T> dp = poly_eval<T>(dq, r);
        if (std::abs(dp) == T(0)) break;
        const Complex<T> next = r - p / dp;
        if (std::abs(poly_eval<T>(q, next)) >= std::abs(p)) break;
        r = next;
      }
      roots.push_back(r);
    }
  }
  std::sort(roots.begin(), roots.end(), detail::lexicographic_less<T>);
  return roots;
}

template <typename T>
CVector<T> poly_multiply(const CVector<T>& a, const CVector<T>& b) {
  CVector<T> out = CVector<T>::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out(i + j) += a(i) * b(j);
  return out;
}

template <typename T>
CVector<T> poly_from_roots(const std::vector<Complex<T>>& roots, Complex<T> lead) {
  CVector<T> p(1);
  p(0) = lead;
  for (const auto& r : roots) {
    CVector<T> f(2);
    f << -r, Complex<T>(1);
    p = poly_multiply<T>(p, f);
  }
  return p;
}

template <typename T>
RationalFunction<T>::RationalFunction() : num_(CVector<T>::Zero(1)), den_(CVector<T>::Ones(1)) {}

template <typename T>
RationalFunction<T>::RationalFunction(CVector<T> numerator, CVector<T> denominator)
    : num_(detail::trimmed_poly<T>(std::move(numerator))), den_(detail::trimmed_poly<T>(std::move(denominator))) {
  require(!(den_.size() == 1 && den_(0) == Complex<T>(0)), ErrorKind::Precondition,
          "denominator must be a nonzero polynomial");
}

template <typename T>
RationalFunction<T>::RationalFunction(CVector<T> numerator)
    : RationalFunction(std::move(numerator), CVector<T>::Ones(1)) {}

template <typename T>
RationalFunction<T> RationalFunction<T>::polynomial(const std::vector<Complex<T>>& coeffs) {
  CVector<T> c(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) c(static_cast<Eigen::Index>(i)) = coeffs[i];
  return RationalFunction(c);
}

template <typename T>
RationalFunction<T> RationalFunction<T>::monomial(int k, Complex<T> c) {
  CVector<T> p = CVector<T>::Zero(std::abs(k) + 1);
  p(std::abs(k)) = Complex<T>(1);
  CVector<T> one(1);
  one(0) = c;
  if (k >= 0) return RationalFunction(p * c, CVector<T>::Ones(1));
  return RationalFunction(one, p);
}

template <typename T>
Complex<T> RationalFunction<T>::operator()(Complex<T> z) const {
  const Complex<T> q = poly_eval<T>(den_, z);
  require(q != Complex<T>(0), ErrorKind::PoleProximity, "evaluation at a pole");
  return poly_eval<T>(num_, z) / q;
}

template <typename T>
bool RationalFunction<T>::is_zero() const {
  return num_.size() == 1 && num_(0) == Complex<T>(0);
}

template <typename T>
bool RationalFunction<T>::is_coprime(T tol) const {
  if (is_zero()) return true;
  for (const auto& u : zeros())
    for (const auto& v : poles())
      if (std::abs(u - v) <= tol * std::max(T(1), std::abs(u))) return false;
  return true;
}

template <typename T>
bool RationalFunction<T>::is_bounded_analytic(T tol) const {
  for (const auto& p : poles())
    if (std::abs(p) <= T(1) + tol) return false;
  return true;
}

template <typename T>
RationalFunction<T> RationalFunction<T>::minus_constant(Complex<T> lambda) const {
  const Eigen::Index n = std::max(num_.size(), den_.size());
  CVector<T> p = CVector<T>::Zero(n);
  p.head(num_.size()) = num_;
  p.head(den_.size()) -= lambda * den_;
  return RationalFunction(p, den_);
}

template <typename T>
RationalFunction<T> RationalFunction<T>::reciprocal() const {
  require(!is_zero(), ErrorKind::NonInvertibleSymbol, "cannot invert the zero function");
  return RationalFunction(den_, num_);
}

template <typename T>
RationalFunction<T> RationalFunction<T>::operator*(const RationalFunction& other) const {
  return RationalFunction(poly_multiply<T>(num_, other.num_), poly_multiply<T>(den_, other.den_));
}

template <typename T>
FourierVector<T> RationalFunction<T>::laurent(int radius, T cutoff) const {
  if (is_zero()) return FourierVector<T>(std::max(radius, 0));
  FourierVector<T> acc(num_.size() - 1);
  for (Eigen::Index k = 0; k < num_.size(); ++k) acc = acc + FourierVector<T>::monomial(static_cast<int>(k), 0, num_(k));
  acc = detail::shrink_to_support(acc);

  for (const auto& p : poles()) {
    const T m = std::abs(p);
    require(std::abs(m - T(1)) >= T(1e-10), ErrorKind::CirclePole, "pole on the unit circle");
    FourierVector<T> f;
    if (p == Complex<T>(0)) {
      f = FourierVector<T>::monomial(-1, 1);
    } else if (m > T(1)) {
      // 1 / (z - p) = -sum_{k>=0} p^{-k-1} z^k
      const int len = detail::geometric_length(T(1) / m, cutoff);
      CVector<T> c = CVector<T>::Zero(2 * len + 1);
      const Complex<T> q = T(1) / p;
      Complex<T> power = q;
      for (int k = 0; k <= len; ++k) {
        c(len + k) = -power;
        power *= q;
      }
      f = FourierVector<T>(len, std::move(c));
    } else {
      // 1 / (z - p) = sum_{k>=1} p^{k-1} z^{-k}
      const int len = detail::geometric_length(m, cutoff);
      CVector<T> c = CVector<T>::Zero(2 * len + 1);
      Complex<T> power(1);
      for (int k = 1; k <= len; ++k) {
        c(len - k) = power;
        power *= p;
      }
      f = FourierVector<T>(len, std::move(c));
    }
    acc = detail::series_product(acc, f, cutoff);
  }
  acc = acc * (Complex<T>(1) / den_(den_.size() - 1));
  return radius < 0 ? acc : acc.resized(radius);
}

template <typename T>
InnerOuter<T> factor_inner_outer(const RationalFunction<T>& r) {
  require(!r.is_zero(), ErrorKind::Precondition, "cannot factor the zero function");
  require(r.is_bounded_analytic(), ErrorKind::Precondition, "function must be bounded analytic in the disk");
  std::vector<Complex<T>> interior, exterior;
  for (const auto& a : r.zeros()) {
    const T m = std::abs(a);
    require(std::abs(m - T(1)) > T(1e-8), ErrorKind::BoundaryZero, "zero on the unit circle");
    (m < T(1) ? interior : exterior).push_back(a);
  }
  const Complex<T> lead = r.numerator()(r.numerator().size() - 1);
  CVector<T> outer_num = poly_from_roots<T>(exterior, lead);
  for (const auto& a : interior) {
    CVector<T> f(2);
    f << Complex<T>(1), -std::conj(a);
    outer_num = poly_multiply<T>(outer_num, f);
  }
  return {BlaschkeProduct<T>(interior), RationalFunction<T>(outer_num, r.denominator())};
}

template <typename T>
CoronaVerdict<T> corona_check(const ComplexFunction<T>& h1, const ComplexFunction<T>& h2, CoronaHalf half,
                              T delta, CoronaGridSpec grid) {
  CoronaVerdict<T> v;
  v.delta = delta;
  v.infimum_estimate = std::numeric_limits<T>::infinity();
  auto visit = [&](Complex<T> w) {
    const Complex<T> z = half == CoronaHalf::Interior ? w : Complex<T>(1) / std::conj(w);
    const T s = std::abs(h1(z)) + std::abs(h2(z));
    ++v.samples;
    if (s < v.infimum_estimate) {
      v.infimum_estimate = s;
      v.witness = z;
    }
  };
  // The centre of the reflected exterior grid is the point at infinity; a large
  // finite radius stands in for it.
  visit(half == CoronaHalf::Interior ? Complex<T>(0) : Complex<T>(T(1e-12), T(0)));
  std::vector<T> radii;
  for (int j = 1; j <= grid.levels; ++j) radii.push_back(T(1) - std::ldexp(T(1), -j));
  if (grid.include_boundary) radii.push_back(T(1));
  for (const T r : radii)
    for (int m = 0; m < grid.angles; ++m)
      visit(std::polar(r, T(2) * pi<T>() * T(m) / T(grid.angles)));
  v.is_corona_pair = v.infimum_estimate >= delta;
  return v;
}

}  // namespace dtlab
