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
using OM = OperatorMatrix<double>;

BP b(double a) { return BP::factor(C(a)); }
FV mono(int k, C c = C(1)) { return FV::monomial(k, std::abs(k), c); }
FV terms(std::vector<std::pair<int, C>> t) { return FV::from_terms(t); }
FV one() { return FV::constant(C(1)); }

Vec pair_vec(const FV& a, const FV& b2, int N) {
  Vec v(2 * (2 * N + 1));
  v << a.resized(N).coeffs(), b2.resized(N).coeffs();
  return v;
}

Vec dual_vec(const OM& op, const FV& minus, const FV& plus) {
  return to_coordinates(op.domain, DualModelVector<double>{minus, plus});
}

double interior_gap(const Mat& a, const Mat& b2, const std::vector<Eigen::Index>& cols) {
  double worst = 0;
  for (auto j : cols) worst = std::max(worst, (a.col(j) - b2.col(j)).norm());
  return worst;
}

TEST(ToeplitzExamples, Shifts) {
  const int N = 6;
  const Mat S = toeplitz_matrix(mono(1), N).entries;
  Mat lower = Mat::Zero(N + 1, N + 1);
  for (int i = 1; i <= N; ++i) lower(i, i - 1) = 1;
  EXPECT_EQ(S, lower);
  EXPECT_EQ(toeplitz_matrix(one(), N).entries, Mat::Identity(N + 1, N + 1));
  EXPECT_EQ(toeplitz_matrix(mono(-1), N).entries, Mat(lower.adjoint()));
}

TEST(BlockToeplitzExamples, IdentityAndShifts) {
  const int N = 8;
  SymbolMatrix<double> I{{{one(), FV(0)}, {FV(0), one()}}};
  const auto T = block_toeplitz_matrix(I, N);
  EXPECT_EQ(T.entries, Mat::Identity(2 * N + 2, 2 * N + 2));
  SymbolMatrix<double> Z{{{mono(1), FV(0)}, {FV(0), mono(1)}}};
  const auto S = block_toeplitz_matrix(Z, N);
  EXPECT_EQ(kernel(S).dimension, 0);
  EXPECT_EQ(S.entries(1, 0), C(1));
  EXPECT_EQ(S.entries(N + 2, N + 1), C(1));
}

TEST(TruncatedToeplitzExamples, ShiftOnKz2) {
  const BP z2 = BP::monomial(2);
  const auto A = truncated_toeplitz_matrix(mono(1), z2, z2, 24);
  // TM basis of K_{z^2} is {1, z}.
  EXPECT_NEAR(std::abs(A.entries(1, 0) - C(1)), 0, 1e-15);
  EXPECT_LE(A.entries.col(1).norm(), 1e-15);
  const auto k = kernel(A);
  EXPECT_EQ(k.dimension, 1);
  EXPECT_NEAR(std::abs(k.basis(1, 0)), 1, 1e-15);
  EXPECT_LE((truncated_toeplitz_matrix(one(), z2, z2, 24).entries - Mat::Identity(2, 2)).norm(), 1e-15);
  const auto Abar = truncated_toeplitz_matrix(mono(-1), z2, z2, 24);
  EXPECT_LE((Abar.entries - A.entries.adjoint()).norm(), 1e-15);
}

TEST(DualTruncatedExamples, ShiftWithThetaZ) {
  const BP z = BP::monomial(1);
  const int N = 8;
  const auto D = dual_truncated_matrix(mono(1), z, z, N, N);
  EXPECT_LE((D.entries * dual_vec(D, mono(-1), FV(0))).norm(), 0);
  EXPECT_LE((D.entries * dual_vec(D, mono(-2), FV(0)) - dual_vec(D, mono(-1), FV(0))).norm(), 0);
  // D(theta * 1) = Q_z(z^2) = theta * z.
  EXPECT_LE((D.entries * dual_vec(D, FV(0), one()) - dual_vec(D, FV(0), mono(1))).norm(), 0);
  EXPECT_EQ(dual_truncated_matrix(one(), z, z, N, N).entries, Mat::Identity(2 * N + 1, 2 * N + 1));
}

TEST(DualTruncatedExamples, ConjugateSymbolGivesAdjointOnInteriorColumns) {
  const BP z = BP::monomial(1);
  const int N = 12;
  const auto D = dual_truncated_matrix(mono(1), z, z, N, N);
  const auto Dbar = dual_truncated_matrix(mono(-1), z, z, N, N);
  const auto cols = interior_indices(D.domain, 2);
  Mat adj = D.entries.adjoint();
  EXPECT_LE(interior_gap(Dbar.entries, adj, cols), 1e-15);
}

TEST(DualTruncatedExamples, MatchesSparseLaurentOracle) {
  const BP th = BP::monomial(1) * b(0.5);
  const BP al = b(-1.0 / 3);
  const FV phi = terms({{-1, C(0.5, 1)}, {0, 2}, {2, C(0, -1)}});
  const int N = 10, M = 10;
  const auto D = dual_truncated_matrix(phi, th, al, N, M);
  oracle::Laurent lp{{-1, C(0.5, 1)}, {0, 2}, {2, C(0, -1)}};
  const auto cols = oracle::dual_matrix(lp, oracle::blaschke_taylor(th.zeros(), th.constant(), 120),
                                        oracle::blaschke_taylor(al.zeros(), al.constant(), 120), N, M);
  for (auto j : interior_indices(D.domain, 3)) {
    const Vec ref = Eigen::Map<const Vec>(cols[j].data(), N + M + 1);
    EXPECT_LE((D.entries.col(j) - ref).norm(), 1e-13) << "column " << j;
  }
}

TEST(PairedExamples, SymbolsForShift) {
  const BP z = BP::monomial(1);
  const auto S = paired_symbols(mono(1), z, z);
  auto same = [](const FV& a, const FV& b2) {
    const int R = std::max(a.radius(), b2.radius());
    return (a.resized(R) - b2.resized(R)).norm() < 1e-15;
  };
  EXPECT_TRUE(same(S.A[0][0], mono(2)));
  EXPECT_TRUE(same(S.A[0][1], FV::constant(C(-1))));
  EXPECT_TRUE(same(S.A[1][0], mono(1)));
  EXPECT_TRUE(same(S.A[1][1], FV(0)));
  EXPECT_TRUE(same(S.B[0][0], mono(1)));
  EXPECT_TRUE(same(S.B[1][0], one()));
  EXPECT_TRUE(same(S.B[1][1], FV::constant(C(-1))));
  const auto S0 = paired_symbols_same_inner(mono(1), z);
  EXPECT_TRUE(same(S0.A[1][0], mono(1)));
  EXPECT_TRUE(same(S0.B[1][0], one()));
}

TEST(PairedExamples, Determinants) {
  const BP th = b(0.5), al = BP::monomial(1);
  const FV phi = terms({{0, 2}, {1, 1}});
  const auto S = paired_symbols(phi, th, al);
  for (int j = 0; j < 64; ++j) {
    const C w = oracle::node(j, 64);
    auto ev = [&](const FV& f) { return f.evaluate(w); };
    const C detA = ev(S.A[0][0]) * ev(S.A[1][1]) - ev(S.A[0][1]) * ev(S.A[1][0]);
    const C detB = ev(S.B[0][0]) * ev(S.B[1][1]) - ev(S.B[0][1]) * ev(S.B[1][0]);
    EXPECT_NEAR(std::abs(detA - phi.evaluate(w) * th(w) * std::conj(al(w))), 0, 1e-12);
    EXPECT_NEAR(std::abs(detB + phi.evaluate(w)), 0, 1e-12);
  }
}

TEST(PairedExamples, IdentitySymbols) {
  PairedSymbols<double> S;
  S.A = {{{one(), FV(0)}, {FV(0), one()}}};
  S.B = S.A;
  const auto P = paired_operator_matrix(S, 6);
  EXPECT_EQ(P.entries, Mat::Identity(P.entries.rows(), P.entries.cols()));
}

TEST(PairedExamples, AnnihilatesLiftedKernelVector) {
  const BP z = BP::monomial(1);
  const int N = 10;
  const auto P = paired_operator_matrix(paired_symbols(mono(1), z, z), N);
  EXPECT_LE((P.entries * pair_vec(mono(-1), one() + mono(-1), N)).norm(), 1e-15);
}

TEST(PairedExamples, TrivialSymbolIsBoundedBelow) {
  const BP z = BP::monomial(1);
  // Frozen from the SVD at N = 64.
  const double sigma = min_singular_value(paired_operator_matrix(paired_symbols(one(), z, z), 64));
  EXPECT_NEAR(sigma, 0.6150964140363453, 1e-10);
  EXPECT_GE(sigma, 0.5);
}

TEST(PairedExamples, VanishingSymbolLosesLowerBound) {
  // phi = 1 + z vanishes at -1: the lower bound halves each time the window doubles.
  const BP z = BP::monomial(1);
  const FV phi = terms({{0, 1}, {1, 1}});
  const double s32 = min_singular_value(paired_operator_matrix(paired_symbols(phi, z, z), 32));
  const double s64 = min_singular_value(paired_operator_matrix(paired_symbols(phi, z, z), 64));
  EXPECT_NEAR(s32, 0.046842753197605579, 1e-10);
  EXPECT_NEAR(s64, 0.023974782479377336, 1e-10);
  EXPECT_LT(s64, 0.6 * s32);
}

TEST(ExtensionExamples, ETrivialInner) {
  const int N = 6;
  const auto E = extension_E_matrix(BP(), N);
  const Mat E2 = (E * E).entries;
  EXPECT_EQ(E2, Mat::Identity(E2.rows(), E2.cols()));
  // E = [[P-, P+], [P+, P-]]
  const int n = 2 * N + 1;
  Mat Pp = Mat::Zero(n, n), Pm = Mat::Zero(n, n);
  for (int k = -N; k <= N; ++k) (k >= 0 ? Pp : Pm)(k + N, k + N) = 1;
  Mat expect(2 * n, 2 * n);
  expect << Pm, Pp, Pp, Pm;
  EXPECT_EQ(E.entries, expect);
}

TEST(ExtensionExamples, EInvolutionOnInterior) {
  for (const BP& al : {BP::monomial(1), b(0.5)}) {
    const int N = 64;
    const auto E = extension_E_matrix(al, N);
    const Mat E2 = (E * E).entries;
    const int margin = natural_radius(trim(blaschke_natural_series(al), 1e-16)) + 1;
    const Mat I = Mat::Identity(E2.rows(), E2.cols());
    EXPECT_LE(interior_gap(E2, I, interior_indices(E.domain, margin)), 1e-10);
  }
}

TEST(ExtensionExamples, FInverseForShift) {
  const BP z = BP::monomial(1);
  const int N = 20;
  const auto F = extension_F_matrix(mono(1), z, z, N);
  const Mat R = (F.F * F.F_inverse).entries;
  const Mat L = (F.F_inverse * F.F).entries;
  EXPECT_LE(interior_gap(R, Mat::Identity(R.rows(), R.cols()), interior_indices(F.F_inverse.domain, 3)), 1e-10);
  EXPECT_LE(interior_gap(L, Mat::Identity(L.rows(), L.cols()), interior_indices(F.F.domain, 3)), 1e-10);
}

TEST(ExtensionExamples, FFirstRowUnwindsTheta) {
  const BP z = BP::monomial(1);
  const int N = 10;
  const auto F = extension_F_matrix(one(), z, z, N);
  gen::Source src(9);
  const FV fm = src.fourier(-5, -1), fp = src.fourier(0, 5);
  Vec x = Vec::Zero(F.F.domain.size());
  x.head(F.F.domain.component(0).size()) = to_coordinates(F.F.domain.component(0), DualModelVector<double>{fm, fp});
  const Vec y = F.F.entries * x;
  const Vec expect = (fm.resized(N) + fp.resized(N)).coeffs();
  EXPECT_LE((y.head(2 * N + 1) - expect).norm(), 1e-14);
}

TEST(GMatrixExamples, Symbols) {
  const BP z = BP::monomial(1);
  const auto G = g_matrix(one(), z, z, 16);
  auto at = [](const FV& f, int k) { return f[k]; };
  EXPECT_NEAR(std::abs(at(G.symbol[0][0], -1) - C(1)), 0, 1e-15);
  EXPECT_NEAR(std::abs(at(G.symbol[1][0], 0) - C(1)), 0, 1e-14);
  EXPECT_NEAR(std::abs(at(G.symbol[1][1], 1) - C(1)), 0, 1e-15);
  EXPECT_LE(G.symbol[0][1].norm(), 0);
  const auto G2 = g_matrix(FV::constant(C(2)), b(0.5), z, 16);
  EXPECT_NEAR(std::abs(at(G2.symbol[1][0], 0) - C(0.5)), 0, 1e-14);
  for (int j = 0; j < 32; ++j) {
    const C w = oracle::node(j, 32);
    const C det = G2.symbol[0][0].evaluate(w) * G2.symbol[1][1].evaluate(w);
    EXPECT_NEAR(std::abs(det - std::conj(w) * b(0.5)(w)), 0, 1e-12);
  }
  try {
    g_matrix(terms({{0, 1}, {1, 1}}), z, z, 16);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonInvertibleSymbol);
  }
}

TEST(BlockToeplitzConsistency, MatchesTruncatedKernels) {
  struct Case {
    FV phi;
    BP theta, alpha;
    int dim;
  };
  const BP zb = BP::monomial(1) * b(0.5);
  const std::vector<Case> cases{{mono(1), BP::monomial(2), BP::monomial(2), 1},
                                {one(), BP::monomial(2), BP::monomial(2), 0},
                                {mono(-1), BP::monomial(2), BP::monomial(2), 1},
                                {terms({{0, -0.5}, {1, 1}}), zb, zb, 1},
                                {mono(1), BP::monomial(3), BP::monomial(1), 3}};
  for (const auto& c : cases) {
    SymbolMatrix<double> Phi{{{blaschke_natural_series(c.theta).conjugated(), FV(0)},
                              {c.phi, blaschke_natural_series(c.alpha)}}};
    const auto kb = kernel(block_toeplitz_matrix(Phi, 64));
    const auto ka = kernel(truncated_toeplitz_matrix(c.phi, c.theta, c.alpha, 64));
    ASSERT_FALSE(kb.ambiguous || ka.ambiguous);
    EXPECT_EQ(ka.dimension, c.dim);
    EXPECT_EQ(kb.dimension, ka.dimension);
  }
}

class OperatorProperties : public ::testing::TestWithParam<int> {};

TEST_P(OperatorProperties, AdjointLaw) {
  gen::Source src(3000 + GetParam());
  const BP th = src.blaschke(src.integer(1, 3), 0.5);
  const BP al = src.blaschke(src.integer(1, 3), 0.5);
  const FV phi = src.fourier(-2, 2);
  const int N = 40;
  const auto D = dual_truncated_matrix(phi, th, al, N, N);
  const auto Ds = dual_truncated_matrix(phi.conjugated(), al, th, N, N);
  const auto cols = interior_indices(Ds.domain, 24);
  const auto rows = interior_indices(D.domain, 24);
  double worst = 0;
  for (auto j : cols)
    for (auto i : rows) worst = std::max(worst, std::abs(Ds.entries(i, j) - std::conj(D.entries(j, i))));
  EXPECT_LE(worst, 1e-10);
}

TEST_P(OperatorProperties, NormBoundedBySymbol) {
  gen::Source src(3100 + GetParam());
  const BP th = src.blaschke(src.integer(1, 2), 0.5);
  const FV phi = src.fourier(-2, 2);
  const double sup = sup_norm(to_grid(phi, 4096));
  const double norm = spectral_norm(dual_truncated_matrix(phi, th, th, 48, 48));
  EXPECT_LE(norm, sup + 1e-8);
  EXPECT_GE(norm, 0.9 * sup);
}

TEST_P(OperatorProperties, FIsInvertibleOnInterior) {
  gen::Source src(3200 + GetParam());
  const BP th = src.blaschke(1, 0.4), al = src.blaschke(1, 0.4);
  const FV phi = src.fourier(-1, 1);
  const int N = 40;
  const auto F = extension_F_matrix(phi, th, al, N);
  const Mat R = (F.F * F.F_inverse).entries;
  EXPECT_LE(interior_gap(R, Mat::Identity(R.rows(), R.cols()), interior_indices(F.F_inverse.domain, 30)), 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Random, OperatorProperties, ::testing::Range(0, 6));

}  // namespace
