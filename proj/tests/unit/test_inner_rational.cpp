#include <gtest/gtest.h>

#include <algorithm>

#include "generators.hpp"
#include "oracles.hpp"

namespace {

using namespace dtlab;
using C = std::complex<double>;
using BP = BlaschkeProduct<double>;
using RF = RationalFunction<double>;
using FV = FourierVector<double>;

BP b(double a) { return BP::factor(C(a)); }

std::vector<C> sorted(std::vector<C> v) {
  std::sort(v.begin(), v.end(), [](C x, C y) { return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag()); });
  return v;
}

TEST(BlaschkeExamples, Evaluation) {
  EXPECT_NEAR(std::abs(blaschke_eval(b(0.5), C(0.5))), 0, 1e-16);
  EXPECT_NEAR(std::abs(blaschke_eval(BP::monomial(1), C(0, 1)) - C(0, 1)), 0, 1e-16);
  EXPECT_NEAR(std::abs(blaschke_eval(b(0.5), C(0)) - C(-0.5)), 0, 1e-16);
  EXPECT_THROW(blaschke_eval(b(0.5), C(2.0)), Error);
}

TEST(BlaschkeExamples, Series) {
  const FV z2 = blaschke_series(BP::monomial(2), 4);
  EXPECT_EQ(z2[2], C(1));
  EXPECT_NEAR(z2.norm(), 1, 0);
  // Frozen from the direct 512-sample DFT of b_{1/2}.
  const FV s = blaschke_series(b(0.5), 8);
  const double frozen[] = {-0.5, 0.75, 0.375, 0.1875, 0.09375};
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(std::abs(s[k] - C(frozen[k])), 0, 1e-15);
  const C c = std::polar(1.0, 0.7);
  const FV k = blaschke_series(BP({}, c), 2);
  EXPECT_NEAR(std::abs(k[0] - c), 0, 0);
  EXPECT_NEAR(std::abs(k[1]) + std::abs(k[2]), 0, 0);
}

TEST(BlaschkeExamples, Gcd) {
  const BP theta = BP::monomial(2) * b(0.5);
  const BP beta = BP::monomial(1) * b(0.5) * b(1.0 / 3);
  const BP g = inner_gcd(theta, beta);
  EXPECT_EQ(g.degree(), 2);
  const auto zs = sorted(g.zeros());
  EXPECT_NEAR(std::abs(zs[0]), 0, 1e-15);
  EXPECT_NEAR(std::abs(zs[1] - C(0.5)), 0, 1e-15);
  EXPECT_EQ(inner_gcd(BP::monomial(3), b(0.5)).degree(), 0);
  EXPECT_EQ(inner_gcd(b(0.5) * b(0.5), b(0.5) * b(0.5)).degree(), 2);
}

TEST(BlaschkeExamples, SigmaSet) {
  EXPECT_EQ(sigma_set(BP::monomial(3)), std::vector<C>(3, C(0)));
  const auto s = sorted(sigma_set(b(0.5) * BP::monomial(1)));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], C(0));
  EXPECT_EQ(s[1], C(0.5));
}

TEST(BlaschkeExamples, InnerQuotient) {
  const BP theta = BP::monomial(2) * b(0.5);
  const BP q = inner_quotient(theta, BP::monomial(1));
  EXPECT_EQ(q.degree(), 2);
  for (double t : {0.1, 1.3, 2.9}) {
    const C z = std::polar(0.7, t);
    EXPECT_NEAR(std::abs(q(z) * z - theta(z)), 0, 1e-14);
  }
}

TEST(InnerOuterExamples, Factorizations) {
  // Frozen from a 512-sample DFT of (z - 1/2) / b_{1/2}: a+ = 1 - z/2.
  const auto f = factor_inner_outer(RF::polynomial({C(-0.5), C(1)}));
  EXPECT_EQ(f.inner.degree(), 1);
  EXPECT_NEAR(std::abs(f.inner.zeros()[0] - C(0.5)), 0, 1e-14);
  for (double t : {0.0, 1.0, 2.5}) {
    const C z = std::polar(1.0, t);
    EXPECT_NEAR(std::abs(f.outer(z) - (1.0 - z / 2.0)), 0, 1e-13);
  }
  const auto o = factor_inner_outer(RF::polynomial({C(1), C(-0.5)}));
  EXPECT_EQ(o.inner.degree(), 0);
  const auto m = factor_inner_outer(RF::monomial(2));
  EXPECT_EQ(m.inner.degree(), 2);
  EXPECT_NEAR(std::abs(m.outer(C(0.3, 0.1)) - C(1)), 0, 1e-14);
}

TEST(RationalExamples, LaurentAndErrors) {
  const RF r(CVector<double>::Ones(1), RF::polynomial({C(-2), C(1)}).numerator());  // 1 / (z - 2)
  const FV l = r.laurent(20);
  // 1/(z-2) = -1/2 sum (z/2)^k
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(std::abs(l[k] + 0.5 * std::pow(0.5, k)), 0, 1e-15);
  const RF s(CVector<double>::Ones(1), RF::polynomial({C(-0.5), C(1)}).numerator());  // 1 / (z - 1/2)
  const FV m = s.laurent(20);
  for (int k = 1; k < 5; ++k) EXPECT_NEAR(std::abs(m[-k] - std::pow(0.5, k - 1)), 0, 1e-15);
  EXPECT_NEAR(std::abs(m[0]), 0, 1e-15);
  const RF pole(CVector<double>::Ones(1), RF::polynomial({C(-1), C(1)}).numerator());
  try {
    pole.laurent(20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CirclePole);
  }
  EXPECT_FALSE(RF(RF::polynomial({C(-0.5), C(1)}).numerator(), RF::polynomial({C(-0.5), C(1)}).numerator())
                   .is_coprime());
}

TEST(CoronaExamples, Verdicts) {
  const ComplexFunction<double> z2 = [](C z) { return z * z; };
  const auto a = corona_check<double>(z2, [](C) { return C(0.5); }, CoronaHalf::Interior);
  EXPECT_TRUE(a.is_corona_pair);
  EXPECT_NEAR(a.infimum_estimate, 0.5, 1e-15);
  const auto b2 = corona_check<double>(z2, [](C z) { return z; }, CoronaHalf::Interior);
  EXPECT_FALSE(b2.is_corona_pair);
  // Frozen from a dense 200 x 200 polar grid: the minimum 1/8 is attained at z = 1/2.
  const auto c = corona_check<double>([](C z) { return z * z * z; },
                                      [](C z) { return (z - 0.5) / (1.0 - 0.5 * z); }, CoronaHalf::Interior);
  EXPECT_TRUE(c.is_corona_pair);
  EXPECT_NEAR(c.infimum_estimate, 0.125, 1e-12);
}

TEST(CoronaExamples, ExteriorHalf) {
  // z and 0: on the exterior, |z| >= 1, so the pair is a corona pair there but not inside.
  const ComplexFunction<double> id = [](C z) { return z; };
  const ComplexFunction<double> zero = [](C) { return C(0); };
  EXPECT_TRUE(corona_check<double>(id, zero, CoronaHalf::Exterior).is_corona_pair);
  EXPECT_FALSE(corona_check<double>(id, zero, CoronaHalf::Interior).is_corona_pair);
}

class InnerProperties : public ::testing::TestWithParam<int> {};

TEST_P(InnerProperties, UnimodularOnTheCircle) {
  gen::Source src(1000 + GetParam());
  const BP th = src.blaschke(src.integer(1, 6), 0.9);
  for (int j = 0; j < 256; ++j)
    EXPECT_NEAR(std::abs(blaschke_eval(th, oracle::node(j, 256))), 1, 1e-12);
}

TEST_P(InnerProperties, SeriesResamplesToValues) {
  gen::Source src(1100 + GetParam());
  const BP th = src.blaschke(src.integer(1, 4), 0.6);
  const int N = th.degree() + 64;
  const FV s = blaschke_series(th, N);
  const auto ref = oracle::blaschke_taylor(th.zeros(), th.constant(), N);
  for (int k = 0; k <= N; ++k) EXPECT_NEAR(std::abs(s[k] - ref.at(k)), 0, 1e-12);
  for (int j = 0; j < 64; ++j) {
    const C w = oracle::node(j, 64);
    EXPECT_NEAR(std::abs(s.evaluate(w) - th(w)), 0, 1e-10);
  }
}

TEST_P(InnerProperties, GcdLaws) {
  gen::Source src(1200 + GetParam());
  std::vector<C> pool;
  for (int k = 0; k < 4; ++k) pool.push_back(src.in_disk(0.8));
  auto pick = [&]() {
    std::vector<C> z;
    for (C a : pool)
      if (src.integer(0, 1)) z.push_back(a);
    return BP(z, src.unimodular());
  };
  const BP x = pick(), y = pick(), w = pick();
  EXPECT_EQ(sorted(inner_gcd(x, y).zeros()), sorted(inner_gcd(y, x).zeros()));
  EXPECT_EQ(sorted(inner_gcd(inner_gcd(x, y), w).zeros()), sorted(inner_gcd(x, inner_gcd(y, w)).zeros()));
  EXPECT_EQ(sorted(inner_gcd(x, x).zeros()), sorted(x.zeros()));
}

TEST_P(InnerProperties, InnerOuterReconstruction) {
  gen::Source src(1300 + GetParam());
  std::vector<C> roots;
  for (int k = 0; k < 3; ++k) roots.push_back(src.integer(0, 1) ? src.in_disk(0.9) : C(2) * src.unimodular());
  const RF r(poly_from_roots<double>(roots, src.gaussian()));
  const auto f = factor_inner_outer(r);
  for (C root : f.outer.zeros()) EXPECT_GT(std::abs(root), 1 + 1e-8);
  for (int j = 0; j < 256; ++j) {
    const C w = oracle::node(j, 256);
    EXPECT_NEAR(std::abs(f.inner(w) * f.outer(w) - r(w)), 0, 1e-10 * (1 + std::abs(r(w))));
  }
}

TEST_P(InnerProperties, CoronaSymmetryAndScaling) {
  gen::Source src(1400 + GetParam());
  const BP p = src.blaschke(2, 0.8), q = src.blaschke(1, 0.8);
  const ComplexFunction<double> h1 = [&](C z) { return p(z); };
  const ComplexFunction<double> h2 = [&](C z) { return q(z); };
  const auto a = corona_check<double>(h1, h2, CoronaHalf::Interior);
  const auto b2 = corona_check<double>(h2, h1, CoronaHalf::Interior);
  EXPECT_EQ(a.is_corona_pair, b2.is_corona_pair);
  EXPECT_NEAR(a.infimum_estimate, b2.infimum_estimate, 1e-14);
  const C s = src.gaussian();
  const auto c = corona_check<double>([&](C z) { return s * p(z); }, [&](C z) { return s * q(z); },
                                      CoronaHalf::Interior, 1e-4 * std::abs(s));
  EXPECT_NEAR(c.infimum_estimate, std::abs(s) * a.infimum_estimate, 1e-12 * (1 + c.infimum_estimate));
  EXPECT_EQ(c.is_corona_pair, a.is_corona_pair);
}

INSTANTIATE_TEST_SUITE_P(Random, InnerProperties, ::testing::Range(0, 10));

}  // namespace
