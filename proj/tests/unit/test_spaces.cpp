#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

namespace {

using namespace dtlab;
using C = std::complex<double>;
using BP = BlaschkeProduct<double>;
using FV = FourierVector<double>;
using Mat = CMatrix<double>;
using Vec = CVector<double>;

BP b(double a) { return BP::factor(C(a)); }

Vec unit(const BasisSpec<double>& s, int k) {
  Vec v = Vec::Zero(s.size());
  v(k + s.window_radius()) = 1;
  return v;
}

std::vector<std::string> label_strings(const BasisSpec<double>& s) {
  std::vector<std::string> out;
  for (const auto& l : s.labels()) out.push_back(l.to_string());
  return out;
}

TEST(ModelProjection, MonomialInner) {
  const auto P = model_projection_matrix(BP::monomial(2), 18);
  const auto& s = P.domain;
  EXPECT_LE((P.entries * unit(s, 3)).norm(), 1e-15);
  EXPECT_LE((P.entries * unit(s, 0) - unit(s, 0)).norm(), 1e-15);
  EXPECT_LE((P.entries * unit(s, -1)).norm(), 1e-15);
  Eigen::JacobiSVD<Mat> svd(P.entries);
  EXPECT_NEAR(svd.singularValues()(1), 1, 1e-14);
  EXPECT_LE(svd.singularValues()(2), 1e-14);
}

TEST(ModelProjection, RefusesSmallWindow) {
  try {
    model_projection_matrix(BP::monomial(2), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WindowOverflow);
  }
}

TEST(ModelProjection, ReproducingKernelsOfMixedInner) {
  // Oracle: Gram-Schmidt on the kernels 1/(1 - conj(a) z) for a in {0, 1/2}, which span K_{z b(1/2)}.
  const int N = 40;
  const auto P = model_projection_matrix(BP::monomial(1) * b(0.5), N);
  oracle::Columns raw;
  for (double a : {0.0, 0.5}) {
    std::vector<C> v(2 * N + 1, C(0));
    for (int k = 0; k <= N; ++k) v[k + N] = std::pow(a, k);
    raw.push_back(v);
  }
  const auto q = oracle::gram_schmidt(raw);
  ASSERT_EQ(q.size(), 2u);
  for (const auto& e : q) {
    const Vec v = Eigen::Map<const Vec>(e.data(), 2 * N + 1);
    EXPECT_LE((P.entries * v - v).norm(), 1e-10);
  }
  Eigen::JacobiSVD<Mat> svd(P.entries);
  EXPECT_GE(svd.singularValues()(1) / svd.singularValues()(2), 1e6);
}

TEST(DualModelBasis, LabelsAndOrthogonality) {
  const auto s = dual_model_basis(BP::monomial(1), 2, 1);
  EXPECT_EQ(label_strings(s), (std::vector<std::string>{"z^-2", "z^-1", "theta*z^0", "theta*z^1"}));
  const auto t = dual_model_basis(b(0.5), 6, 5);
  const auto ex = expand(t, 80);
  const Mat G = ex.vectors.adjoint() * ex.vectors;
  EXPECT_LE((G - Mat::Identity(G.rows(), G.cols())).norm(), 1e-12);
  // Explicit inner products of the expanded series <z^-j, theta z^k> vanish.
  const auto th = oracle::blaschke_taylor({C(0.5)}, C(1), 80);
  for (int j = 1; j <= 6; ++j)
    for (int k = 0; k <= 5; ++k) EXPECT_EQ(oracle::coeff(oracle::convolve(th, {{k, 1}}), -j), C(0));
}

TEST(DualModelBasis, QthetaFixesBasisVectors) {
  const BP th = BP::monomial(1) * b(0.5);
  const int N = 90;
  const auto P = model_projection_matrix(th, N);
  const auto s = dual_model_basis(th, 10, 8);
  const auto ex = expand(s, N);
  const Mat Q = Mat::Identity(P.entries.rows(), P.entries.cols()) - P.entries;
  EXPECT_LE((Q * ex.vectors - ex.vectors).norm(), 1e-10);
}

TEST(TakenakaMalmquist, Examples) {
  const auto v = takenaka_malmquist_vectors(BP::monomial(2));
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0][0], C(1));
  EXPECT_EQ(v[1][1], C(1));
  const auto w = takenaka_malmquist_vectors(b(0.5));
  ASSERT_EQ(w.size(), 1u);
  // Normalized Cauchy kernel at 1/2.
  for (int k = 0; k < 10; ++k) EXPECT_NEAR(std::abs(w[0][k] - std::sqrt(0.75) * std::pow(0.5, k)), 0, 1e-15);
}

TEST(TakenakaMalmquist, SpanModelSpace) {
  const BP th = b(0.5) * b(-1.0 / 3) * BP::monomial(1);
  const int N = 70;
  const auto P = model_projection_matrix(th, N);
  const auto s = takenaka_malmquist_basis(th, N);
  const auto ex = expand(s, N);
  EXPECT_LE((P.entries * ex.vectors - ex.vectors).norm(), 1e-10);
  const Mat G = ex.vectors.adjoint() * ex.vectors;
  EXPECT_LE((G - Mat::Identity(3, 3)).norm(), 1e-10);
}

TEST(Conjugation, Examples) {
  const int N = 20;
  const auto Cz = conjugation_matrix(BP::monomial(1), N);
  EXPECT_LE((Cz.apply(unit(Cz.basis, -1)) - unit(Cz.basis, 1)).norm(), 0);
  const auto Cz2 = conjugation_matrix(BP::monomial(2), N);
  EXPECT_LE((Cz2.apply(unit(Cz2.basis, 0)) - unit(Cz2.basis, 1)).norm(), 0);
}

TEST(Coordinates, RoundTripAndOverflow) {
  const BP th = b(0.5);
  const auto s = dual_model_basis(th, 5, 4);
  gen::Source src(7);
  const DualModelVector<double> v{src.fourier(-5, -1), src.fourier(0, 4)};
  const Vec c = to_coordinates(s, v);
  const auto back = from_coordinates(s, c);
  EXPECT_LE((back.minus.resized(5) - v.minus.resized(5)).norm() + (back.plus.resized(4) - v.plus.resized(4)).norm(),
            1e-15);
  try {
    coordinates<double>(takenaka_malmquist_basis(th, 20), {FV::constant(C(1))}, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WindowOverflow);
  }
}

TEST(OperatorMatrixAlgebra, AdjointAndComposition) {
  const auto P = model_projection_matrix(BP::monomial(2), 18);
  EXPECT_LE((P.adjoint().entries - P.entries).norm(), 1e-15);
  EXPECT_EQ((P * P).domain, P.domain);
  const auto Q = model_projection_matrix(BP::monomial(2), 19);
  EXPECT_THROW(P * Q, Error);
}

class SpaceProperties : public ::testing::TestWithParam<int> {};

TEST_P(SpaceProperties, ProjectionLaws) {
  gen::Source src(2000 + GetParam());
  const BP th = src.blaschke(src.integer(1, 6), 0.5);
  const int N = th.degree() + 40;
  const auto P = model_projection_matrix(th, N);
  const Mat& E = P.entries;
  EXPECT_LE((E * E - E).norm(), 1e-10);
  EXPECT_LE((E - E.adjoint()).norm(), 1e-10);
  Eigen::JacobiSVD<Mat> svd(E);
  const auto& sv = svd.singularValues();
  const int d = th.degree();
  EXPECT_NEAR(sv(d - 1), 1, 1e-8);
  EXPECT_GE(sv(d - 1) / std::max(sv(d), 1e-300), 1e6);
}

TEST_P(SpaceProperties, ConjugationCommutesWithProjection) {
  gen::Source src(2100 + GetParam());
  const BP th = src.blaschke(src.integer(1, 3), 0.4);
  const int N = th.degree() + 48;
  const auto P = model_projection_matrix(th, N);
  const auto Cm = conjugation_matrix(th, N);
  const int extent = natural_radius(trim(blaschke_natural_series(th), 1e-16));
  const int s = N - extent - 1;
  const FV f = src.fourier(-s, s);
  const Vec v = f.resized(N).coeffs();
  // C is antilinear: C(P v) versus P(C v).
  EXPECT_LE((Cm.apply(P.entries * v) - P.entries * Cm.apply(v)).norm(), 1e-10 * v.norm());
  // Involution and isometry on interior vectors of a smaller support.
  const int s2 = (N - extent) / 2 - 1;
  const Vec u = src.fourier(-s2, s2).resized(N).coeffs();
  EXPECT_LE((Cm.apply(Cm.apply(u)) - u).norm(), 1e-10 * u.norm());
  EXPECT_NEAR(Cm.apply(u).norm(), u.norm(), 1e-10 * u.norm());
}

TEST_P(SpaceProperties, TakenakaMalmquistGram) {
  gen::Source src(2200 + GetParam());
  const BP th = src.blaschke(src.integer(1, 6), 0.7);
  const auto v = takenaka_malmquist_vectors(th);
  int R = 0;
  for (const auto& e : v) R = std::max(R, e.radius());
  Mat G(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) G(i, j) = inner(v[i].resized(R), v[j].resized(R));
  EXPECT_LE((G - Mat::Identity(G.rows(), G.cols())).norm(), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Random, SpaceProperties, ::testing::Range(0, 8));

}  // namespace
