#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

namespace {

using namespace dtlab;
using C = std::complex<double>;
using BP = BlaschkeProduct<double>;
using FV = FourierVector<double>;
using RF = RationalFunction<double>;
using Mat = CMatrix<double>;
using Vec = CVector<double>;
using DMV = DualModelVector<double>;

BP b(double a) { return BP::factor(C(a)); }
FV mono(int k, C c = C(1)) { return FV::monomial(k, std::abs(k), c); }
FV one() { return FV::constant(C(1)); }
RF poly(std::vector<C> c) { return RF::polynomial(c); }

double dist(const FV& a, const FV& b2) {
  const int R = std::max(a.radius(), b2.radius());
  return (a.resized(R) - b2.resized(R)).norm();
}

double dist(const DMV& a, const DMV& b2) { return std::hypot(dist(a.minus, b2.minus), dist(a.plus, b2.plus)); }

template <typename E>
ErrorKind kind_of(E&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Config;
}

TEST(KernelExamples, IdentityAndShift) {
  const auto I = dual_truncated_matrix(one(), BP::monomial(1), BP::monomial(1), 8, 8);
  const auto k = kernel(I);
  EXPECT_EQ(k.dimension, 0);
  EXPECT_FALSE(k.ambiguous);
  const auto A = truncated_toeplitz_matrix(mono(1), BP::monomial(2), BP::monomial(2), 24);
  const auto ka = kernel(A);
  EXPECT_EQ(ka.dimension, 1);
  EXPECT_NEAR(std::abs(ka.basis(1, 0)), 1, 1e-15);
}

TEST(KernelExamples, GapValidation) {
  OperatorMatrix<double> op{BasisSpec<double>::full_l2(1), BasisSpec<double>::full_l2(1), Mat::Zero(3, 3), {}};
  op.entries.diagonal() << C(1), C(1e-2), C(1e-9);
  const auto k = kernel(op);
  EXPECT_EQ(k.dimension, 1);
  EXPECT_FALSE(k.ambiguous);
  op.entries(1, 1) = C(1e-7);
  const auto amb = kernel(op);
  EXPECT_TRUE(amb.ambiguous);
  EXPECT_LT(amb.gap_ratio, 1e3);
}

TEST(SolvabilityExamples, LiftAndProject) {
  const BP z = BP::monomial(1);
  const auto zero = lift_solution(DMV{FV(0), FV(0)}, DMV{FV(0), FV(0)}, mono(1), z, z);
  EXPECT_LE(zero.Phi.first.norm() + zero.Phi.second.norm() + zero.Psi.first.norm() + zero.Psi.second.norm(), 0);
  const auto [f, g] = project_solution(FieldPair<double>{mono(-1), one() + mono(-1)}, FieldPair<double>{FV(0), FV(0)});
  EXPECT_LE(dist(f, DMV{mono(-1), FV(0)}), 1e-15);
  EXPECT_LE(dist(g, DMV{FV(0), FV(0)}), 0);
  EXPECT_LE(dist(dual_apply(mono(1), z, z, f), DMV{FV(0), FV(0)}), 0);
  const auto [f0, g0] = project_solution(FieldPair<double>{FV(0), FV(0)}, FieldPair<double>{FV(0), FV(0)});
  EXPECT_LE(dist(f0, DMV{FV(0), FV(0)}) + dist(g0, DMV{FV(0), FV(0)}), 0);
}

TEST(KernelMapExamples, N) {
  const BP z = BP::monomial(1);
  const auto img = kernel_iso_N(DMV{mono(-1), FV(0)}, mono(1), z, z);
  EXPECT_LE(dist(img.first, mono(-1)), 0);
  EXPECT_LE(dist(img.second, one() + mono(-1)), 0);
  const auto zero = kernel_iso_N(DMV{FV(0), FV(0)}, mono(1), z, z);
  EXPECT_LE(zero.first.norm() + zero.second.norm(), 0);
  EXPECT_EQ(kind_of([&] { kernel_iso_N(DMV{mono(-2), FV(0)}, mono(1), z, z); }), ErrorKind::NotInKernel);
}

TEST(KernelMapExamples, NstarAndNDAndNDA) {
  const BP z = BP::monomial(1);
  const auto s = kernel_iso_Nstar(DMV{FV(0), FV(0)}, mono(1), z, z);
  EXPECT_LE(s.first.norm() + s.second.norm(), 0);
  const auto nd = kernel_iso_ND(DMV{mono(-1), FV(0)}, mono(1), z);
  // C_z(zbar) = z = theta * 1, and D_{zbar}^z(z) = 0.
  EXPECT_LE(dist(nd, DMV{FV(0), one()}), 0);
  EXPECT_LE(dist(dual_apply(mono(-1), z, z, nd), DMV{FV(0), FV(0)}), 1e-15);
  const auto nda = kernel_iso_NDA(DMV{FV(0), FV(0)}, mono(-1), z, z);
  EXPECT_LE(nda.norm(), 0);
}

TEST(RationalKernelExamples, Examples) {
  const auto r = rational_kernel_solve(poly({C(0), C(1)}), BP::monomial(2), 32, 32);
  ASSERT_EQ(r.kernel.dimension, 1);
  Eigen::Index at = 0;
  r.kernel.basis.col(0).cwiseAbs().maxCoeff(&at);
  EXPECT_EQ(r.kernel.domain.labels()[at].to_string(), "z^-1");
  EXPECT_NEAR(std::abs(r.kernel.basis(at, 0)), 1, 1e-14);
  EXPECT_EQ(rational_kernel_solve(poly({C(-2), C(1)}), BP::monomial(2), 32, 32).kernel.dimension, 0);
  EXPECT_EQ(rational_kernel_solve(poly({C(0, 1.5), C(1)}), BP::monomial(2), 32, 32).kernel.dimension, 0);
  EXPECT_EQ(rational_kernel_solve(poly({C(1)}), BP::monomial(2), 32, 32).kernel.dimension, 0);
  const RF common(poly({C(-0.5), C(1)}).numerator(), poly({C(-0.5), C(1)}).numerator());
  EXPECT_EQ(kind_of([&] { rational_kernel_solve(common, BP::monomial(2), 32, 32); }), ErrorKind::Coprimality);
  const RF pole(Vec::Ones(1), poly({C(-1), C(1)}).numerator());
  EXPECT_EQ(kind_of([&] { rational_kernel_solve(pole, BP::monomial(2), 32, 32); }), ErrorKind::CirclePole);
}

TEST(DualShiftExamples, Kernels) {
  const auto k0 = dual_shift_kernel(BP::monomial(2), C(0), 64, 64);
  EXPECT_EQ(k0.dimension, 1);
  // Basis is zbar: index N - 1.
  EXPECT_NEAR(std::abs(k0.basis(63)), 1, 1e-15);
  const auto kb = dual_shift_kernel(b(0.5), C(0), 64, 64);
  EXPECT_EQ(kb.dimension, 0);
  EXPECT_EQ(kb.svd_dimension, 0);
  const C lambda(0.3, 0.2);
  const auto k = dual_shift_kernel(BP::monomial(2), lambda, 128, 128);
  EXPECT_EQ(k.dimension, 1);
  EXPECT_LE(k.residual, 1e-6);
  // Geometric-series oracle: v = sum lambda^{k-1} z^-k, normalized.
  Vec v = Vec::Zero(k.basis.size());
  for (int j = 1; j <= 128; ++j) v(128 - j) = std::pow(lambda, j - 1);
  v /= v.norm();
  EXPECT_NEAR(std::abs(v.dot(k.basis)), 1, 1e-12);
  EXPECT_EQ(kind_of([&] { dual_shift_kernel(BP::monomial(2), C(1), 64, 64); }), ErrorKind::Precondition);
  EXPECT_TRUE(dual_shift_kernel(BP::monomial(2), C(0.95), 64, 64).near_circle);
}

TEST(SpectrumExamples, ThreadCountDoesNotChangeTheReport) {
  const SpectrumGrid<double> grid{-1.5, 1.5, -1.5, 1.5, 0.1};
  for (const SpectrumSymbol<double>& phi : {SpectrumSymbol<double>(poly({C(2), C(1)})),
                                            SpectrumSymbol<double>(FV::monomial(1, 1))}) {
    const auto a = spectrum_scan<double>(phi, BP::monomial(2), grid, 32, 32, {}, 1);
    const auto b = spectrum_scan<double>(phi, BP::monomial(2), grid, 32, 32, {}, 5);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      EXPECT_EQ(a.points[i].lambda, b.points[i].lambda);
      EXPECT_EQ(a.points[i].verdict, b.points[i].verdict);
      EXPECT_EQ(a.points[i].kernel_dimension, b.points[i].kernel_dimension);
      EXPECT_EQ(a.points[i].distance, b.points[i].distance);
    }
    EXPECT_EQ(a.point_spectrum_hits.size(), b.point_spectrum_hits.size());
    EXPECT_EQ(a.ambiguous_points, b.ambiguous_points);
  }
}

TEST(SpectrumExamples, ShiftSymbol) {
  const SpectrumGrid<double> grid{-1.5, 1.5, -1.5, 1.5, 0.1};
  const auto rep = spectrum_scan<double>(poly({C(0), C(1)}), BP::monomial(3), grid, 64, 64);
  EXPECT_EQ(rep.ambiguous_points, 0);
  EXPECT_EQ(rep.point_spectrum_hits.size(), 195u);
  for (const auto& p : rep.points) {
    if (p.verdict == SpectrumVerdict::EssentialAdjacent) continue;
    EXPECT_EQ(p.kernel_dimension > 0, std::abs(p.lambda) < 1) << p.lambda;
    if (std::abs(p.lambda) > 1) EXPECT_EQ(p.verdict, SpectrumVerdict::Invertible);
    if (p.kernel_dimension > 0) EXPECT_EQ(p.kernel_dimension, 1);
  }
  const auto none = spectrum_scan<double>(poly({C(0), C(1)}), b(0.5), grid, 64, 64);
  EXPECT_TRUE(none.point_spectrum_hits.empty());
  EXPECT_EQ(kind_of([&] {
              spectrum_scan<double>(poly({C(0), C(1)}), b(0.5), SpectrumGrid<double>{0, 1, 0, 1, 0.001}, 64, 64);
            }),
            ErrorKind::Precondition);
}

TEST(SpectrumExamples, OuterSymbolIsInvertibleAtOrigin) {
  const SpectrumGrid<double> grid{-0.5, 4.5, -1.5, 1.5, 0.1};
  const auto rep = spectrum_scan<double>(poly({C(2), C(1)}), BP::monomial(2), grid, 64, 64);
  EXPECT_EQ(rep.essential_samples.size(), 512u);
  for (const auto& p : rep.points) {
    if (std::abs(p.lambda) < 1e-12) EXPECT_EQ(p.verdict, SpectrumVerdict::Invertible);
    if (p.verdict == SpectrumVerdict::EssentialAdjacent) continue;
    EXPECT_EQ(p.kernel_dimension > 0, std::abs(p.lambda - C(2)) < 1) << p.lambda;
  }
}

TEST(SpectrumExamples, GridPointsRowMajor) {
  const auto pts = grid_points(SpectrumGrid<double>{0, 0.2, 0, 0.1, 0.1});
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_EQ(pts[1], C(0.1, 0));
  EXPECT_EQ(pts[3], C(0, 0.1));
}

TEST(PredicateExamples, AnalyticSpectrum) {
  const RF z = poly({C(0), C(1)});
  EXPECT_EQ(analytic_spectrum_predicate(z, BP::monomial(3), C(0.5)).conclusion, Conclusion::NotInvertible);
  EXPECT_EQ(analytic_spectrum_predicate(z, BP::monomial(3), C(2)).conclusion, Conclusion::Invertible);
  const auto edge = analytic_spectrum_predicate(z, BP::monomial(3), C(1));
  EXPECT_EQ(edge.conclusion, Conclusion::NotInvertible);
  EXPECT_LE(edge.measurements.at("infimum"), 1e-4);
  EXPECT_EQ(kind_of([&] { analytic_spectrum_predicate(poly({C(0), C(0), C(0), C(0), C(1)}), BP::monomial(3), C(2)); }),
            ErrorKind::HypothesisViolation);
}

TEST(PredicateExamples, InverseAnalytic) {
  const auto a = inverse_analytic_predicates(poly({C(0), C(0), C(1)}), BP::monomial(2), 32, 32);
  EXPECT_EQ(a.measurements.at("gcd_degree"), 2);
  EXPECT_EQ(a.measurements.at("svd_kernel_dimension"), 2);
  EXPECT_LE(a.measurements.at("subspace_angle"), 1e-6);
  EXPECT_TRUE(a.consistent);
  const auto o = inverse_analytic_predicates(poly({C(1), C(-0.5)}), BP::monomial(2), 32, 32);
  EXPECT_EQ(o.conclusion, Conclusion::Invertible);
  EXPECT_EQ(o.measurements.at("svd_kernel_dimension"), 0);
  const auto m = inverse_analytic_predicates(poly({C(0), C(1)}), BP::monomial(1) * b(0.5), 64, 64);
  EXPECT_EQ(m.measurements.at("gcd_degree"), 1);
  EXPECT_EQ(m.conclusion, Conclusion::NotInvertible);
  EXPECT_TRUE(m.consistent);
}

TEST(PredicateExamples, PairedTrichotomy) {
  struct Case {
    int dt, da;
    Conclusion c;
    int ker, coker;
  };
  for (const auto& [dt, da, c, ker, coker] :
       std::vector<Case>{{1, 1, Conclusion::Invertible, 0, 0},
                         {3, 1, Conclusion::InjectiveOnly, 0, 2},
                         {1, 3, Conclusion::SurjectiveOnly, 2, 0}}) {
    const BP th = BP::monomial(dt), al = BP::monomial(da);
    const auto h = monomial_h_data(one(), th, al);
    const auto v = paired_injectivity_predicate(one(), th, al, h, 32);
    EXPECT_EQ(v.conclusion, c);
    EXPECT_EQ(v.measurements.at("kernel_dimension"), ker);
    EXPECT_EQ(v.measurements.at("cokernel_dimension"), coker);
    EXPECT_TRUE(v.consistent);
  }
  HData<double> bad{mono(2), one(), FV(0), "custom"};
  EXPECT_EQ(kind_of([&] { paired_injectivity_predicate(one(), BP::monomial(1), BP::monomial(1), bad, 16); }),
            ErrorKind::HypothesisViolation);
}

struct ChainCase {
  FV phi;
  BP theta;
  BP alpha;
};

class ChainProperties : public ::testing::TestWithParam<int> {};

// Random analytic and co-analytic monomial symbols against random inner functions:
// kernel dimensions agree along D, paired, A(1/phi) and D*.
TEST_P(ChainProperties, KernelDimensionsAgree) {
  gen::Source src(4000 + GetParam());
  const int k = src.integer(-2, 2);
  const int m0 = src.integer(0, 1);
  const BP th = BP::monomial(m0) * src.blaschke(src.integer(1, 2), 0.3);
  const FV phi = mono(k, src.unimodular());
  const int N = 48;
  const auto kD = kernel(dual_truncated_matrix(phi, th, th, N, N));
  const auto kP = kernel(paired_operator_matrix(paired_symbols(phi, th, th), N));
  const auto kA = kernel(truncated_toeplitz_matrix(inverse_symbol(phi, N).value, th, th, N));
  const auto kS = kernel(dual_truncated_matrix(phi.conjugated(), th, th, N, N));
  ASSERT_FALSE(kD.ambiguous || kP.ambiguous || kA.ambiguous || kS.ambiguous);
  EXPECT_EQ(kP.dimension, kD.dimension);
  EXPECT_EQ(kA.dimension, kD.dimension);
  EXPECT_EQ(kS.dimension, kD.dimension);
  // gcd(theta, z^|k|) = z^min(|k|, m0), and conjugation swaps k and -k.
  EXPECT_EQ(kD.dimension, std::min(std::abs(k), m0));
}

TEST_P(ChainProperties, ConjugationMapsKernels) {
  gen::Source src(4100 + GetParam());
  const BP th = src.blaschke(src.integer(1, 3), 0.4);
  const FV phi = blaschke_natural_series(th).conjugated();
  const int N = 56;
  const auto D = dual_truncated_matrix(phi, th, th, N, N);
  const auto kD = kernel(D);
  const auto kS = kernel(dual_truncated_matrix(phi.conjugated(), th, th, N, N));
  ASSERT_EQ(kD.dimension, th.degree());
  Mat images(D.domain.size(), kD.dimension);
  for (int j = 0; j < kD.dimension; ++j) {
    const auto f = from_coordinates(D.domain, Vec(kD.basis.col(j)));
    const auto g = kernel_iso_ND(f, phi, th);
    EXPECT_NEAR(std::hypot(g.minus.norm(), g.plus.norm()), std::hypot(f.minus.norm(), f.plus.norm()), 1e-10);
    images.col(j) = to_coordinates(D.domain, g);
  }
  EXPECT_LE(subspace_angle(images, kS.basis), 1e-6);
}

TEST_P(ChainProperties, SolvabilityRoundTrip) {
  gen::Source src(4200 + GetParam());
  const BP th = src.blaschke(1, 0.3), al = src.blaschke(1, 0.3);
  const FV phi = src.fourier(-1, 1);
  const DMV f{src.fourier(-8, -1), src.fourier(0, 8)};
  const DMV g = dual_apply(phi, th, al, f);
  const auto lifted = lift_solution(f, g, phi, th, al);
  const auto res = paired_apply(paired_symbols(phi, th, al), lifted.Phi);
  EXPECT_LE(std::hypot(dist(res.first, lifted.Psi.first), dist(res.second, lifted.Psi.second)), 1e-8);
  const auto [f2, g2] = project_solution(lifted.Phi, lifted.Psi);
  EXPECT_LE(dist(f2, f) + dist(g2, g), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Random, ChainProperties, ::testing::Range(0, 8));

}  // namespace
