#include "dtlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace dtlab::verify {

namespace {

using C = Complex<double>;
using BP = BlaschkeProduct<double>;
using FV = FourierVector<double>;
using RF = RationalFunction<double>;
using OM = OperatorMatrix<double>;
using DMV = DualModelVector<double>;
using Mat = CMatrix<double>;
using Vec = CVector<double>;

class Recorder {
 public:
  explicit Recorder(std::vector<Check>& out) : out_(out) {}

  void at_most(const std::string& name, double measured, double bound) {
    out_.push_back({name, "<=", measured, bound, measured <= bound});
  }
  void at_least(const std::string& name, double measured, double bound) {
    out_.push_back({name, ">=", measured, bound, measured >= bound});
  }
  void equals(const std::string& name, double measured, double expected) {
    out_.push_back({name, "==", measured, expected, measured == expected});
  }
  void holds(const std::string& name, bool ok) { equals(name, ok ? 1 : 0, 1); }

 private:
  std::vector<Check>& out_;
};

struct Context {
  int N;
};

// ---- fixtures -------------------------------------------------------------

BP zpow(int d) { return BP::monomial(d); }
BP bfac(C a) { return BP::factor(a); }
FV series(const BP& b) { return blaschke_natural_series(b); }
FV mono(int k, C c = C(1)) { return FV::monomial(k, 0, c); }
FV z() { return mono(1); }
FV zbar(int k = 1) { return mono(-k); }
RF poly(std::vector<C> c) { return RF::polynomial(c); }

FV product(const FV& a, const FV& b) {
  return multiply(a, b, natural_radius(a) + natural_radius(b), MultiplyMode::Strict).value;
}

/// Index past which the coefficients stay below 1e-13 of the peak.
int effective_extent(const FV& f) {
  const auto s = significant_support(f, 1e-13);
  return s ? s->extent() : 0;
}

int effective_extent(const BP& b) { return effective_extent(series(b)); }

void need(bool ok, const std::string& what) {
  require(ok, ErrorKind::Precondition, what);
}

/// Support radius for interior test vectors once `margin` modes are reserved at the window edge.
int interior_support(int N, int margin, const std::string& what) {
  const int s = N - margin;
  need(s >= 8, "window " + std::to_string(N) + " leaves no interior test vectors for " + what + " (needs at least " +
                   std::to_string(margin + 8) + ")");
  return s;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  C draw() { return {dist_(rng_), dist_(rng_)}; }

  FV fourier(int lo, int hi) {
    FV f(std::max(std::abs(lo), std::abs(hi)));
    CVector<double> c = f.coeffs();
    for (int k = lo; k <= hi; ++k) c(k + f.radius()) = draw();
    return FV(f.radius(), c);
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

double pair_norm(const DMV& v) { return std::hypot(v.minus.norm(), v.plus.norm()); }

double diff_norm(const DMV& a, const DMV& b) {
  return std::hypot((a.minus - b.minus).norm(), (a.plus - b.plus).norm());
}

double diff_norm(const FieldPair<double>& a, const FieldPair<double>& b) {
  return std::hypot((a.first - b.first).norm(), (a.second - b.second).norm());
}

Vec pair_coordinates(const FieldPair<double>& v, int N) {
  Vec out(2 * (2 * N + 1));
  out << v.first.resized(N).coeffs(), v.second.resized(N).coeffs();
  return out;
}

double relative_residual(const OM& op, const Vec& v) {
  return (op.entries * v).norm() / std::max(1.0, v.norm());
}

/// det(G) / prod(G_ii) for the Gram matrix; 1 for orthogonal columns, 0 for dependent ones.
double hadamard_ratio(const Mat& m) {
  if (m.cols() == 0) return 1.0;
  const Mat g = m.adjoint() * m;
  double diag = 1.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) diag *= g(i, i).real();
  return diag > 0 ? std::abs(g.determinant()) / diag : 0.0;
}

std::vector<DMV> dual_vectors(const KernelReport<double>& k) {
  std::vector<DMV> out;
  for (Eigen::Index j = 0; j < k.basis.cols(); ++j) out.push_back(from_coordinates(k.domain, Vec(k.basis.col(j))));
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string fmt(C c) { return fmt(c.real()) + (c.imag() < 0 ? "" : "+") + fmt(c.imag()) + "i"; }

struct ChainCase {
  std::string name;
  FV phi;
  BP theta;
  BP alpha;
  int expected_dim;
};

std::vector<ChainCase> chain_cases() {
  const BP zb = zpow(1) * bfac(C(0.5));
  return {{"phi=zbar,theta=z^2", zbar(), zpow(2), zpow(2), 1},
          {"phi=zbar,theta=z", zbar(), zpow(1), zpow(1), 1},
          {"phi=zbar^2,theta=z*b(1/2)", zbar(2), zb, zb, 1}};
}

struct ConjugateCase {
  std::string name;
  BP theta;
};

std::vector<ConjugateCase> conjugate_cases() {
  return {{"theta=z^2", zpow(2)},
          {"theta=z^3", zpow(3)},
          {"theta=z*b(1/2)", zpow(1) * bfac(C(0.5))},
          {"theta=b(1/2)*b(1/3)", bfac(C(0.5)) * bfac(C(1.0 / 3.0))}};
}

/// Every nontrivial-kernel case of the chain and conjugate families, α = θ throughout.
std::vector<ChainCase> nontrivial_cases() {
  auto out = chain_cases();
  for (const auto& c : conjugate_cases())
    out.push_back({"phi=conj(theta)," + c.name, series(c.theta).conjugated(), c.theta, c.theta, c.theta.degree()});
  return out;
}

/// The paired and block matrices act on L^2 windows; their kernels need room for all three symbols.
void gate_chain(const Context& ctx, const ChainCase& c) {
  interior_support(ctx.N, effective_extent(c.phi) + std::max(effective_extent(c.theta), effective_extent(c.alpha)) + 2,
                   "the extension chain at " + c.name);
}

OM dual(const FV& phi, const BP& theta, const BP& alpha, int N) {
  return dual_truncated_matrix(phi, theta, alpha, N, N);
}

// ---- tags -----------------------------------------------------------------

void norm_identity(const Context& ctx, Recorder& r) {
  const int Nn = 256;
  const BP theta = zpow(2);
  const std::vector<std::pair<std::string, FV>> symbols{
      {"z", z()}, {"z+2", z() + FV::constant(C(2))}, {"b(1/2)", series(bfac(C(0.5)))}};
  for (const auto& [name, phi] : symbols) {
    const double sup = sup_norm(to_grid(phi, 4096));
    const double norm = spectral_norm(dual(phi, theta, theta, Nn));
    r.at_most("||D|| - ||phi||_inf, phi=" + name + ", N=M=256", norm - sup, 1e-8);
    r.at_least("||D|| / ||phi||_inf, phi=" + name + ", N=M=256", norm / sup, 0.98);
  }

  const BP th = zpow(1) * bfac(C(0.5));
  const BP al = zpow(2);
  const FV phi = z() + FV::constant(C(2));
  const int s = interior_support(ctx.N, effective_extent(th) + effective_extent(al) + 2, "the energy split");
  const OM D = dual(phi, th, al, ctx.N);
  const FV mixed = product(product(series(al).conjugated(), series(th)), phi);
  const OM T = toeplitz_matrix(mixed, ctx.N);
  Sampler rng(11);
  double split = 0, slack = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const FV f = rng.fourier(0, s);
    const Vec c = to_coordinates(D.domain, DMV{FV(0), f});
    const double lhs = (D.entries * c).squaredNorm();
    const FV u = product(product(phi, series(th)), f);
    const double rhs = project_minus(u).norm() * project_minus(u).norm() +
                       std::pow(project_plus(product(series(al).conjugated(), u)).norm(), 2);
    split = std::max(split, std::abs(lhs - rhs) / rhs);
    const Vec fc = f.resized(ctx.N).coeffs().tail(ctx.N + 1);
    slack = std::min(slack, (lhs - (T.entries * fc).squaredNorm()) / rhs);
  }
  r.at_most("energy split |D(theta f)|^2 vs projections, relative", split, 1e-10);
  r.at_least("|D(theta f)|^2 - |T f|^2, relative", slack, -1e-10);
}

void extension_e(const Context& ctx, Recorder& r) {
  const std::vector<std::pair<std::string, BP>> alphas{{"1", BP()}, {"z", zpow(1)}, {"b(1/2)", bfac(C(0.5))}};
  for (const auto& [name, alpha] : alphas) {
    const int s = interior_support(ctx.N, effective_extent(alpha) + 2, "E with alpha=" + name);
    const OM E = extension_E_matrix(alpha, ctx.N);
    const OM E2 = E * E;
    double err = 0;
    for (auto j : interior_indices(E.domain, ctx.N - s)) {
      Vec col = E2.entries.col(j);
      col(j) -= C(1);
      err = std::max(err, col.norm());
    }
    r.at_most("max interior column of E^2 - I, alpha=" + name, err, 1e-10);
  }
}

void extension_f(const Context& ctx, Recorder& r) {
  const std::vector<std::tuple<std::string, FV, BP, BP>> cases{
      {"(z,z,z)", z(), zpow(1), zpow(1)},
      {"(1+z/2,z^2,z)", FV::constant(C(1)) + mono(1, C(0.5)), zpow(2), zpow(1)},
      {"(b(1/2),z^2,z^2)", series(bfac(C(0.5))), zpow(2), zpow(2)}};
  for (const auto& [name, phi, theta, alpha] : cases) {
    const int margin = effective_extent(phi) + effective_extent(theta) + effective_extent(alpha) + 2;
    const int s = interior_support(ctx.N, margin, "F " + name);
    const auto ext = extension_F_matrix(phi, theta, alpha, ctx.N);
    const OM right = ext.F * ext.F_inverse;
    const OM left = ext.F_inverse * ext.F;
    auto worst = [&](const OM& m) {
      double err = 0;
      for (auto j : interior_indices(m.domain, ctx.N - s)) {
        Vec col = m.entries.col(j);
        col(j) -= C(1);
        err = std::max(err, col.norm());
      }
      return err;
    };
    r.at_most("F F^-1 - I on interior columns, " + name, worst(right), 1e-9);
    r.at_most("F^-1 F - I on interior columns, " + name, worst(left), 1e-9);
  }
}

void solvability(const Context& ctx, Recorder& r) {
  const std::vector<std::tuple<std::string, FV, BP, BP>> cases{
      {"(1+z/2,z*b(1/2),z^2)", FV::constant(C(1)) + mono(1, C(0.5)), zpow(1) * bfac(C(0.5)), zpow(2)},
      {"(zbar,z,z)", zbar(), zpow(1), zpow(1)}};
  Sampler rng(31);
  for (const auto& [name, phi, theta, alpha] : cases) {
    const int s = interior_support(
        ctx.N, effective_extent(phi) + effective_extent(theta) + effective_extent(alpha) + 2, "lift " + name);
    const OM D = dual(phi, theta, alpha, ctx.N);
    const auto S = paired_symbols(phi, theta, alpha);
    double matrix_gap = 0, lift_res = 0, round_trip = 0, converse = 0;
    for (int trial = 0; trial < 20; ++trial) {
      DMV f{rng.fourier(-s, -1), rng.fourier(0, s)};
      const double scale = pair_norm(f);
      f = {f.minus * C(1 / scale), f.plus * C(1 / scale)};
      const DMV g = dual_apply(phi, theta, alpha, f);
      const Vec cf = to_coordinates(D.domain, f);
      const Vec cg = to_coordinates(D.codomain, g);
      matrix_gap = std::max(matrix_gap, (D.entries * cf - cg).norm());

      const auto lifted = lift_solution(f, g, phi, theta, alpha);
      lift_res = std::max(lift_res, diff_norm(paired_apply(S, lifted.Phi), lifted.Psi));
      const auto [f2, g2] = project_solution(lifted.Phi, lifted.Psi);
      round_trip = std::max(round_trip, std::max(diff_norm(f2, f), diff_norm(g2, g)));

      FieldPair<double> Phi{rng.fourier(-s, s), rng.fourier(-s, s)};
      const double ps = std::hypot(Phi.first.norm(), Phi.second.norm());
      Phi = {Phi.first * C(1 / ps), Phi.second * C(1 / ps)};
      const auto Psi = paired_apply(S, Phi);
      const auto [f3, g3] = project_solution(Phi, Psi);
      converse = std::max(converse, diff_norm(dual_apply(phi, theta, alpha, f3), g3));
    }
    r.at_most("matrix D f vs function-level D f, 20 samples, " + name, matrix_gap, 1e-10);
    r.at_most("lift residual |(AP+ + BP-)Phi - Psi|, 20 samples, " + name, lift_res, 1e-8);
    r.at_most("project(lift(f, g)) - (f, g), 20 samples, " + name, round_trip, 1e-10);
    r.at_most("|D f - g| for projected paired solutions, 20 samples, " + name, converse, 1e-8);
  }
}

void paired_equivalence(const Context& ctx, Recorder& r) {
  for (const auto& c : chain_cases()) {
    gate_chain(ctx, c);
    const OM D = dual(c.phi, c.theta, c.alpha, ctx.N);
    const OM P = paired_operator_matrix(paired_symbols(c.phi, c.theta, c.alpha), ctx.N);
    const auto kD = kernel(D);
    const auto kP = kernel(P);
    r.holds("gap-validated kernels of D and paired, " + c.name, !kD.ambiguous && !kP.ambiguous);
    r.equals("dim ker D, " + c.name, kD.dimension, c.expected_dim);
    r.equals("dim ker paired - dim ker D, " + c.name, kP.dimension - kD.dimension, 0);
    Mat images(P.domain.size(), kD.dimension);
    const auto fs = dual_vectors(kD);
    for (int k = 0; k < kD.dimension; ++k)
      images.col(k) = pair_coordinates(kernel_iso_N(fs[k], c.phi, c.theta, c.alpha), ctx.N);
    r.at_least("independence of N(ker D) (Gram/Hadamard ratio), " + c.name, hadamard_ratio(images), 1e-6);
    r.at_most("angle(N(ker D), ker paired), " + c.name, subspace_angle(images, kP.basis), 1e-6);
  }
}

void inverse_symbol_chain(const Context& ctx, Recorder& r) {
  for (const auto& c : chain_cases()) {
    gate_chain(ctx, c);
    const auto kD = kernel(dual(c.phi, c.theta, c.alpha, ctx.N));
    const auto inv = inverse_symbol(c.phi, ctx.N);
    const auto kA = kernel(truncated_toeplitz_matrix(inv.value, c.alpha, c.theta, ctx.N));
    const auto G = g_matrix(c.phi, c.theta, c.alpha, ctx.N);
    const auto kG = kernel(G.toeplitz);
    r.holds("gap-validated kernels of D, A, T_G, " + c.name, !kD.ambiguous && !kA.ambiguous && !kG.ambiguous);
    r.equals("dim ker A(1/phi) - dim ker D, " + c.name, kA.dimension - kD.dimension, 0);
    r.equals("dim ker T_G - dim ker D, " + c.name, kG.dimension - kD.dimension, 0);
    r.at_most("tail mass of 1/phi, " + c.name, inv.tail_mass, 1e-12);
  }
}

void kernel_map_n(const Context& ctx, Recorder& r) {
  {
    const auto img = kernel_iso_N(DMV{zbar(), FV(0)}, z(), zpow(1), zpow(1));
    const FieldPair<double> expected{zbar(), FV::constant(C(1)) + zbar()};
    r.at_most("N(zbar) - (zbar, 1+zbar) for (z,z,z)", diff_norm(img, expected), 1e-14);
  }
  for (const auto& c : chain_cases()) {
    const OM D = dual(c.phi, c.theta, c.alpha, ctx.N);
    const OM P = paired_operator_matrix(paired_symbols(c.phi, c.theta, c.alpha), ctx.N);
    const auto kD = kernel(D);
    double recover = 0, member = 0;
    const FV th = series(c.theta);
    for (const auto& f : dual_vectors(kD)) {
      const auto img = kernel_iso_N(f, c.phi, c.theta, c.alpha);
      const DMV back{project_minus(img.first), project_plus(img.first)};
      recover = std::max(recover, diff_norm(back, f));
      member = std::max(member, relative_residual(P, pair_coordinates(img, ctx.N)));
    }
    r.at_most("(P- + theta P+) P1 N(f) - f, " + c.name, recover, 1e-10);
    r.at_most("|paired N(f)| / |N(f)|, " + c.name, member, 1e-7);
  }
}

void kernel_map_nstar(const Context& ctx, Recorder& r) {
  {
    const auto img = kernel_iso_Nstar(DMV{FV(0), FV::constant(C(1))}, z(), zpow(1), zpow(1));
    r.at_most("N*(theta) - (0, 1) for (z,z,z)", diff_norm(img, {FV(0), FV::constant(C(1))}), 1e-14);
    const auto img2 = kernel_iso_Nstar(DMV{zbar(), FV(0)}, zbar(), zpow(1), zpow(1));
    r.at_most("N*(zbar) - (zbar, 0) for (zbar,z,z)", diff_norm(img2, {zbar(), FV(0)}), 1e-14);
  }
  for (const auto& c : chain_cases()) {
    gate_chain(ctx, c);
    const OM Ds = dual(c.phi.conjugated(), c.alpha, c.theta, ctx.N);
    const OM Pa = paired_adjoint_matrix(paired_symbols(c.phi, c.theta, c.alpha), ctx.N);
    const auto kS = kernel(Ds);
    const auto kPa = kernel(Pa);
    r.holds("gap-validated kernels of D* and paired*, " + c.name, !kS.ambiguous && !kPa.ambiguous);
    r.equals("dim ker paired* - dim ker D*, " + c.name, kPa.dimension - kS.dimension, 0);
    Mat images(Pa.domain.size(), kS.dimension);
    const auto gs = dual_vectors(kS);
    double member = 0;
    for (int k = 0; k < kS.dimension; ++k) {
      images.col(k) = pair_coordinates(kernel_iso_Nstar(gs[k], c.phi, c.theta, c.alpha), ctx.N);
      member = std::max(member, relative_residual(Pa, images.col(k)));
    }
    r.at_most("|paired* N*(g)| / |N*(g)|, " + c.name, member, 1e-7);
    r.at_most("angle(N*(ker D*), ker paired*), " + c.name, subspace_angle(images, kPa.basis), 1e-6);
  }
}

void conjugation_kernels(const Context& ctx, Recorder& r) {
  {
    const auto img = kernel_iso_ND(DMV{zbar(), FV(0)}, z(), zpow(1));
    r.at_most("N_D(zbar) - z for (phi, theta) = (z, z)", diff_norm(img, {FV(0), FV::constant(C(1))}), 1e-14);
  }
  for (const auto& c : nontrivial_cases()) {
    const OM D = dual(c.phi, c.theta, c.theta, ctx.N);
    const OM Ds = dual(c.phi.conjugated(), c.theta, c.theta, ctx.N);
    const auto kD = kernel(D);
    const auto kS = kernel(Ds);
    double iso = 0, coord = 0, invol = 0;
    Mat images(D.domain.size(), kD.dimension);
    const auto fs = dual_vectors(kD);
    for (int k = 0; k < kD.dimension; ++k) {
      const auto img = kernel_iso_ND(fs[k], c.phi, c.theta);
      iso = std::max(iso, std::abs(pair_norm(img) - pair_norm(fs[k])));
      images.col(k) = to_coordinates(D.domain, img);
      coord = std::max(coord, (images.col(k) - conjugate_dual_coordinates(D.domain, Vec(kD.basis.col(k)))).norm());
      invol = std::max(invol, diff_norm(kernel_iso_ND(img, c.phi.conjugated(), c.theta), fs[k]));
    }
    r.at_most("| |N_D f| - |f| |, " + c.name, iso, 1e-10);
    r.at_most("N_D vs coordinate conjugation, " + c.name, coord, 1e-12);
    r.at_most("N_D(N_D f) - f, " + c.name, invol, 1e-10);
    r.at_most("angle(C_theta ker D, ker D*), " + c.name, subspace_angle(images, kS.basis), 1e-6);
  }
}

void index_zero(const Context& ctx, Recorder& r) {
  for (const auto& c : nontrivial_cases()) {
    const auto kD = kernel(dual(c.phi, c.theta, c.theta, ctx.N));
    const auto kS = kernel(dual(c.phi.conjugated(), c.theta, c.theta, ctx.N));
    r.holds("gap-validated kernels of D and D*, " + c.name, !kD.ambiguous && !kS.ambiguous);
    r.equals("dim ker D - dim ker D*, " + c.name, kD.dimension - kS.dimension, 0);
    const Eigen::Index above = static_cast<Eigen::Index>(kD.columns.size()) - kD.dimension - 1;
    const double floor = above >= 0 && above < kD.singular_values.size() ? kD.singular_values(above) : 0.0;
    r.at_least("smallest singular value above the kernel cut, " + c.name, floor, 1e-3);
  }
}

void multiplier_kernels(const Context& ctx, Recorder& r) {
  {
    const auto img = kernel_iso_NDA(DMV{FV(0), FV::constant(C(1))}, zbar(), zpow(1), zpow(1));
    r.at_most("N_DA(z) - 1 for (zbar, z, z)", (img - FV::constant(C(1))).norm(), 1e-14);
    const OM A = truncated_toeplitz_matrix(z(), zpow(1), zpow(1), ctx.N);
    r.at_most("|A_z^{z,z}(1)|", A.entries.norm(), 1e-14);
  }
  for (const auto& c : chain_cases()) {
    const auto kD = kernel(dual(c.phi, c.theta, c.alpha, ctx.N));
    const auto inv = inverse_symbol(c.phi, ctx.N).value;
    const OM A = truncated_toeplitz_matrix(inv, c.alpha, c.theta, ctx.N);
    const auto kA = kernel(A);
    r.equals("dim ker A(1/phi) - dim ker D, " + c.name, kA.dimension - kD.dimension, 0);
    double member = 0, in_model = 0, inverse = 0;
    for (const auto& f : dual_vectors(kD)) {
      const FV h = kernel_iso_NDA(f, c.phi, c.theta, c.alpha);
      const int W = std::max(natural_radius(h), 4 * ctx.N);
      const Vec coords = coordinates<double>(A.domain, {h}, W);
      member = std::max(member, relative_residual(A, coords));
      in_model = std::max(in_model, (synthesize(A.domain, coords, W)[0] - h.resized(W)).norm());
      inverse = std::max(inverse, (product(inv, h) - dual_function(f, c.theta)).norm());
    }
    r.at_most("|A(1/phi) N_DA f|, " + c.name, member, 1e-7);
    r.at_most("distance of N_DA f from K_alpha, " + c.name, in_model, 1e-7);
    r.at_most("(1/phi) N_DA f - f, " + c.name, inverse, 1e-7);
  }
}

void trichotomy(const Context& ctx, Recorder& r) {
  const FV one = FV::constant(C(1));
  const std::vector<std::tuple<int, int, int, Conclusion, int, int>> cases{
      {1, 1, 0, Conclusion::Invertible, 0, 0},
      {3, 1, 2, Conclusion::InjectiveOnly, 0, 2},
      {1, 3, -2, Conclusion::SurjectiveOnly, 2, 0}};
  for (const auto& [dt, da, k, conclusion, ker, coker] : cases) {
    const std::string name = "(theta, alpha) = (z^" + std::to_string(dt) + ", z^" + std::to_string(da) + ")";
    const auto h = monomial_h_data(one, zpow(dt), zpow(da));
    const auto v = paired_injectivity_predicate(one, zpow(dt), zpow(da), h, ctx.N);
    r.holds("hypotheses of the h-data, " + name, v.all_hypotheses());
    r.equals("winding number (closed form), " + name, v.measurements.at("winding_closed_form"), k);
    r.equals("winding number (grid), " + name, v.measurements.at("winding_grid"), k);
    r.holds(std::string("conclusion ") + to_string(conclusion) + ", " + name, v.conclusion == conclusion);
    r.equals("dim ker paired, " + name, v.measurements.at("kernel_dimension"), ker);
    r.equals("dim coker paired, " + name, v.measurements.at("cokernel_dimension"), coker);
    r.holds("SVD agrees with the trichotomy, " + name, v.consistent);
  }
}

void divisor_injectivity(const Context& ctx, Recorder& r) {
  const FV one = FV::constant(C(1));
  const BP zb = zpow(1) * bfac(C(0.5));
  const std::vector<std::tuple<std::string, BP, BP, int>> cases{
      {"(z^3, z)", zpow(3), zpow(1), 2},
      {"(z*b(1/2), z)", zb, zpow(1), 1},
      {"(z, z)", zpow(1), zpow(1), 0},
      {"(z, -z)", zpow(1), BP({C(0)}, C(-1)), 0}};
  for (const auto& [name, theta, alpha, coker] : cases) {
    r.holds("alpha divides theta, " + name, inner_gcd(theta, alpha).degree() == alpha.degree());
    const auto h = monomial_h_data(one, theta, alpha);
    const auto v = paired_injectivity_predicate(one, theta, alpha, h, ctx.N);
    r.holds("corona data verified, " + name, v.all_hypotheses());
    const auto kD = kernel(dual(one, theta, alpha, ctx.N));
    const auto kS = kernel(dual(one, alpha, theta, ctx.N));
    r.holds("gap-validated kernels, " + name, !kD.ambiguous && !kS.ambiguous);
    r.equals("dim ker D_1, " + name, kD.dimension, 0);
    r.equals("dim ker D_1* (deg theta - deg alpha), " + name, kS.dimension, coker);
    r.holds("predicate says invertible iff alpha = c theta, " + name,
            (v.conclusion == Conclusion::Invertible) == (theta.degree() == alpha.degree()));
  }
}

void analytic_spectrum(const Context& ctx, Recorder& r) {
  const RF phi = poly({C(0), C(1)});
  const BP theta = zpow(3);
  const std::vector<std::pair<C, Conclusion>> cases{
      {C(0.5), Conclusion::NotInvertible}, {C(1), Conclusion::NotInvertible}, {C(2), Conclusion::Invertible}};
  for (const auto& [lambda, expected] : cases) {
    const auto corona = analytic_spectrum_predicate(phi, theta, lambda);
    const auto route = kernel_route_invertibility(phi, theta, lambda, ctx.N, ctx.N);
    r.holds("corona verdict " + std::string(to_string(expected)) + " at lambda=" + fmt(lambda),
            corona.conclusion == expected);
    r.holds("kernel-route verdict " + std::string(to_string(expected)) + " at lambda=" + fmt(lambda),
            route.conclusion == expected);
  }
  bool rejected = false;
  try {
    analytic_spectrum_predicate(poly({C(0), C(0), C(0), C(0), C(1)}), theta, C(2));
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::HypothesisViolation;
  }
  r.holds("phi = z^4 with theta = z^3 is rejected (conj(theta) phi not co-analytic)", rejected);
}

void truncated_analytic(const Context& ctx, Recorder& r) {
  const std::vector<std::tuple<std::string, RF, BP, int, Conclusion>> cases{
      {"g=z, theta=z^2", poly({C(0), C(1)}), zpow(2), 1, Conclusion::NotInvertible},
      {"g=1-z/2, theta=z^2", poly({C(1), C(-0.5)}), zpow(2), 0, Conclusion::Invertible},
      {"g=z-1/2, theta=z*b(1/2)", poly({C(-0.5), C(1)}), zpow(1) * bfac(C(0.5)), 1, Conclusion::NotInvertible}};
  const int N = std::max(ctx.N, 24);
  for (const auto& [name, g, theta, dim, conclusion] : cases) {
    const auto v = truncated_analytic_predicate(g, theta, N);
    r.equals("deg gcd(theta, inner(g)), " + name, v.measurements.at("gcd_degree"), dim);
    r.equals("dim ker A_g (SVD), " + name, v.measurements.at("svd_kernel_dimension"), dim);
    r.at_most("angle(predicted, SVD kernel), " + name, v.measurements.at("subspace_angle"), 1e-6);
    r.holds(std::string("conclusion ") + to_string(conclusion) + ", " + name, v.conclusion == conclusion);
  }
}

void inverse_analytic(const Context& ctx, Recorder& r) {
  const std::vector<std::tuple<std::string, RF, BP, int, Conclusion>> cases{
      {"1/phi=z^2, theta=z^2", poly({C(0), C(0), C(1)}), zpow(2), 2, Conclusion::NotInvertible},
      {"1/phi=1-z/2, theta=z^2", poly({C(1), C(-0.5)}), zpow(2), 0, Conclusion::Invertible},
      {"1/phi=z, theta=z*b(1/2)", poly({C(0), C(1)}), zpow(1) * bfac(C(0.5)), 1, Conclusion::NotInvertible}};
  for (const auto& [name, inv, theta, dim, conclusion] : cases) {
    const auto v = inverse_analytic_predicates(inv, theta, ctx.N, ctx.N);
    r.equals("deg gcd(theta, beta), " + name, v.measurements.at("gcd_degree"), dim);
    r.equals("dim ker D (SVD), " + name, v.measurements.at("svd_kernel_dimension"), dim);
    r.at_most("angle(predicted, SVD kernel), " + name, v.measurements.at("subspace_angle"), 1e-6);
    r.holds(std::string("conclusion ") + to_string(conclusion) + ", " + name, v.conclusion == conclusion);
  }
}

void conjugate_symbol_kernel(const Context& ctx, Recorder& r) {
  for (const auto& c : conjugate_cases()) {
    const OM D = dual(series(c.theta).conjugated(), c.theta, c.theta, ctx.N);
    const auto k = kernel(D);
    r.holds("gap-validated kernel, " + c.name, !k.ambiguous);
    r.equals("dim ker D_conj(theta) - deg theta, " + c.name, k.dimension - c.theta.degree(), 0);
    const auto tm = takenaka_malmquist_vectors(c.theta);
    Mat predicted(D.domain.size(), static_cast<Eigen::Index>(tm.size()));
    for (std::size_t j = 0; j < tm.size(); ++j)
      predicted.col(static_cast<Eigen::Index>(j)) = to_coordinates(D.domain, DMV{FV(0), tm[j]});
    r.at_most("angle(theta K_theta, ker D), " + c.name, subspace_angle(predicted, k.basis), 1e-6);
  }
  const std::vector<std::tuple<std::string, BP, bool>> membership{
      {"theta=z*b(1/2)", zpow(1) * bfac(C(0.5)), true}, {"theta=b(1/2)", bfac(C(0.5)), false}};
  for (const auto& [name, theta, inside] : membership) {
    const OM D = dual(series(theta).conjugated(), theta, theta, ctx.N);
    const double res = (D.entries * to_coordinates(D.domain, DMV{FV(0), FV::constant(C(1))})).norm();
    if (inside) {
      r.at_most("|D theta| (theta(0) = 0), " + name, res, 1e-10);
    } else {
      r.at_least("|D theta| (theta(0) != 0), " + name, res, 0.1);
    }
  }
}

void essential_sampling(const Context& ctx, Recorder& r) {
  const BP theta = zpow(2);
  const FV phi = z() + FV::constant(C(2));
  const int N1 = ctx.N, N2 = 2 * ctx.N;
  auto sigma = [&](C lambda, int n) {
    return min_singular_value(dual(phi - FV::constant(lambda), theta, theta, n));
  };
  for (C lambda : {C(3), C(1), C(2, 1)}) {
    const double s1 = sigma(lambda, N1), s2 = sigma(lambda, N2);
    r.at_most("sigma_min(2N) / sigma_min(N) on the curve, lambda=" + fmt(lambda), s2 / s1, 0.75);
  }
  for (C lambda : {C(0), C(4), C(2, 1.5)}) {
    const double s1 = sigma(lambda, N1), s2 = sigma(lambda, N2);
    r.at_most("|sigma_min(2N) / sigma_min(N) - 1| off the curve, lambda=" + fmt(lambda), std::abs(s2 / s1 - 1), 0.1);
    r.at_least("sigma_min(2N) off the curve, lambda=" + fmt(lambda), s2, 0.05);
  }
}

void rational_kernels(const Context& ctx, Recorder& r) {
  const BP zb = zpow(1) * bfac(C(0.5));
  const C mu(0.3, 0.2);
  const std::vector<std::tuple<std::string, RF, BP, int>> cases{
      {"R=z, theta=z^2", poly({C(0), C(1)}), zpow(2), 1},
      {"R=z-2, theta=z^2", poly({C(-2), C(1)}), zpow(2), 0},
      {"R=1, theta=z^2", poly({C(1)}), zpow(2), 0},
      {"R=1/z^2, theta=z^2", RF::monomial(-2), zpow(2), 2},
      {"R=z-(0.3+0.2i), theta=z*b(1/2)", poly({-mu, C(1)}), zb, 1}};
  for (const auto& [name, R, theta, dim] : cases) {
    const auto solved = rational_kernel_solve(R, theta, ctx.N, ctx.N);
    const auto svd = kernel(dual(R.laurent(), theta, theta, ctx.N));
    r.holds("gap-validated solver and SVD kernels, " + name, !solved.kernel.ambiguous && !svd.ambiguous);
    r.equals("dim ker (solver), " + name, solved.kernel.dimension, dim);
    r.equals("dim ker (SVD) - dim ker (solver), " + name, svd.dimension - solved.kernel.dimension, 0);
    r.at_most("angle(solver, SVD), " + name, subspace_angle(solved.kernel.basis, svd.basis), 1e-6);
    r.at_most("constraint residual, " + name, solved.constraint_residual, 1e-10);
  }
  {
    const auto solved = rational_kernel_solve(poly({C(0), C(1)}), zpow(2), ctx.N, ctx.N);
    Eigen::Index at = 0;
    solved.kernel.basis.col(0).cwiseAbs().maxCoeff(&at);
    r.holds("basis label z^-1 for R=z, theta=z^2", solved.kernel.domain.labels()[at].to_string() == "z^-1");
  }
  auto throws = [](auto&& f, ErrorKind kind) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind() == kind;
    }
    return false;
  };
  r.holds("common root (z-1/2)/(z-1/2) raises a coprimality error", throws([&] {
            rational_kernel_solve(RF(poly({C(-0.5), C(1)}).numerator(), poly({C(-0.5), C(1)}).numerator()),
                                  zpow(2), ctx.N, ctx.N);
          }, ErrorKind::Coprimality));
  r.holds("pole on the circle 1/(z-1) raises a circle-pole error", throws([&] {
            rational_kernel_solve(RF(Vec::Ones(1), poly({C(-1), C(1)}).numerator()), zpow(2), ctx.N, ctx.N);
          }, ErrorKind::CirclePole));
}

bool classified(const SpectrumPoint<double>& p) {
  return p.verdict == SpectrumVerdict::Invertible || p.verdict == SpectrumVerdict::FredholmNonInvertible;
}

void rational_spectrum(const Context& ctx, Recorder& r) {
  const RF phi = poly({C(2), C(1)});
  const SpectrumGrid<double> grid{-0.5, 4.5, -1.5, 1.5, 0.1};
  const auto rep = spectrum_scan<double>(phi, zpow(2), grid, ctx.N, ctx.N);
  int wrong = 0, hits = 0;
  bool origin_invertible = false;
  for (const auto& p : rep.points) {
    if (!classified(p)) continue;
    const bool inside = std::abs(p.lambda - C(2)) < 1;
    if ((p.kernel_dimension > 0) != inside) ++wrong;
    hits += p.kernel_dimension > 0;
    if (std::abs(p.lambda) < 1e-12) origin_invertible = p.verdict == SpectrumVerdict::Invertible;
  }
  r.equals("essential samples", static_cast<double>(rep.essential_samples.size()), 512);
  r.equals("ambiguous grid points", rep.ambiguous_points, 0);
  r.equals("classified points with hit != (|lambda-2| < 1), R=z+2, theta=z^2", wrong, 0);
  r.at_least("point-spectrum hits inside the essential circle", hits, 1);
  r.holds("lambda=0 invertible for R=z+2", origin_invertible);
}

void dual_shift(const Context&, Recorder& r) {
  const int N = 128;
  for (C lambda : {C(0), C(0.3, 0.2), C(0.6)}) {
    const auto k = dual_shift_kernel(zpow(2), lambda, N, N);
    r.equals("dim ker D_{z-lambda}, theta=z^2, lambda=" + fmt(lambda), k.dimension, 1);
    r.equals("SVD dimension, theta=z^2, lambda=" + fmt(lambda), k.svd_dimension, 1);
    r.at_most("|D v| / |v|, theta=z^2, lambda=" + fmt(lambda), k.residual, 1e-6);
    r.at_most("|D* C_theta v|, theta=z^2, lambda=" + fmt(lambda), k.adjoint_residual, 1e-6);
  }
  for (C lambda : {C(0), C(0.3, 0.2), C(0.6)}) {
    const auto k = dual_shift_kernel(bfac(C(0.5)), lambda, N, N);
    r.equals("dim ker D_{z-lambda}, theta=b(1/2), lambda=" + fmt(lambda), k.dimension + k.svd_dimension, 0);
    r.at_least("sigma_min, theta=b(1/2), lambda=" + fmt(lambda), k.min_singular_value, 0.05);
  }
  bool refused = false;
  try {
    dual_shift_kernel(zpow(2), C(0, 1), N, N);
  } catch (const Error& e) {
    refused = e.kind() == ErrorKind::Precondition;
  }
  r.holds("lambda on the circle is refused", refused);
}

void shift_spectrum(const Context& ctx, Recorder& r) {
  const RF phi = poly({C(0), C(1)});
  const std::vector<std::tuple<std::string, BP, bool>> cases{
      {"theta=z^2", zpow(2), true}, {"theta=z^3", zpow(3), true}, {"theta=b(1/2)", bfac(C(0.5)), false}};
  for (const auto& [name, theta, disk] : cases) {
    std::map<std::pair<long, long>, bool> coarse;
    int wrong = 0, flips = 0, compared = 0;
    for (double step : {0.1, 0.05}) {
      const auto rep = spectrum_scan<double>(phi, theta, SpectrumGrid<double>{-1.5, 1.5, -1.5, 1.5, step}, ctx.N,
                                             ctx.N);
      r.equals("ambiguous grid points, step " + fmt(step) + ", " + name, rep.ambiguous_points, 0);
      for (const auto& p : rep.points) {
        if (!classified(p)) continue;
        const bool hit = p.kernel_dimension > 0;
        if (hit != (disk && std::abs(p.lambda) < 1)) ++wrong;
        const std::pair<long, long> key{std::lround(p.lambda.real() * 20), std::lround(p.lambda.imag() * 20)};
        if (step == 0.1) {
          coarse[key] = hit;
        } else if (auto it = coarse.find(key); it != coarse.end()) {
          ++compared;
          flips += it->second != hit;
        }
      }
    }
    r.equals("misclassified points, " + name, wrong, 0);
    r.at_least("points compared between steps 0.1 and 0.05, " + name, compared, 100);
    r.equals("verdict flips between steps 0.1 and 0.05, " + name, flips, 0);
  }
}

struct TagSpec {
  const char* tag;
  const char* title;
  std::function<void(const Context&, Recorder&)> run;
};

const std::vector<TagSpec>& suite() {
  static const std::vector<TagSpec> specs{
      {"Prop1.1", "norm equals sup norm of the symbol; energy split", norm_identity},
      {"L4.3", "F and its inverse", extension_f},
      {"L4.4", "E is an involution", extension_e},
      {"T3.1", "solvability lift and projection", solvability},
      {"T4.2", "kernel dimension of D equals that of the paired operator", paired_equivalence},
      {"T5.1", "kernels of D, A with inverse symbol, and T_G", inverse_symbol_chain},
      {"T6.1", "kernel isomorphism N", kernel_map_n},
      {"T6.2", "kernel isomorphism N*", kernel_map_nstar},
      {"T6.3", "conjugation maps ker D onto ker D*", conjugation_kernels},
      {"T6.6", "kernel isomorphism N_DA", multiplier_kernels},
      {"C6.4", "dim ker D = dim ker D*", index_zero},
      {"T8.2", "paired trichotomy by winding number", trichotomy},
      {"T8.3", "injectivity when alpha divides theta", divisor_injectivity},
      {"T9.1", "spectrum for analytic symbols via corona", analytic_spectrum},
      {"T9.2", "truncated Toeplitz kernels for analytic symbols", truncated_analytic},
      {"T9.3", "kernels for symbols with analytic inverse", inverse_analytic},
      {"C9.6", "ker D_conj(theta) = theta K_theta", conjugate_symbol_kernel},
      {"T9.8-sample", "essential spectrum is the symbol curve", essential_sampling},
      {"T9.10", "rational kernel solver", rational_kernels},
      {"T9.11", "spectrum of a rational symbol", rational_spectrum},
      {"T9.12", "kernel of the dual shift", dual_shift},
      {"C9.13", "spectrum of the dual shift", shift_spectrum},
  };
  return specs;
}

}  // namespace

int Report::exit_code() const {
  bool precondition = false;
  for (const auto& t : results) {
    if (t.status == Status::Fail || t.status == Status::Error) return 1;
    if (t.status == Status::Precondition) precondition = true;
  }
  return precondition ? 3 : 0;
}

const std::vector<std::string>& tags() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : suite()) out.push_back(s.tag);
    return out;
  }();
  return names;
}

Report run(const Options& options) {
  if (options.only) {
    const auto& all = tags();
    require(std::find(all.begin(), all.end(), *options.only) != all.end(), ErrorKind::Config,
            "unknown verify tag '" + *options.only + "'");
  }
  require(options.window >= 1, ErrorKind::Config, "window must be positive");
  Report report;
  report.options = options;
  const Context ctx{options.window};
  for (const auto& spec : suite()) {
    if (options.only && *options.only != spec.tag) continue;
    TagResult result;
    result.tag = spec.tag;
    result.title = spec.title;
    Recorder rec(result.checks);
    try {
      spec.run(ctx, rec);
      const bool ok = std::all_of(result.checks.begin(), result.checks.end(), [](const Check& c) { return c.pass; });
      result.status = ok ? Status::Pass : Status::Fail;
    } catch (const Error& e) {
      const bool window = e.kind() == ErrorKind::Precondition || e.kind() == ErrorKind::WindowOverflow;
      result.status = window ? Status::Precondition : Status::Error;
      result.message = e.what();
    } catch (const std::exception& e) {
      result.status = Status::Error;
      result.message = e.what();
    }
    report.results.push_back(std::move(result));
  }
  return report;
}

io::Json to_json(const Report& report) {
  io::Json results = io::Json::array();
  int passed = 0;
  for (const auto& t : report.results) {
    io::Json checks = io::Json::array();
    for (const auto& c : t.checks) {
      checks.push_back(io::Json{{"name", c.name},
                                {"relation", c.relation},
                                {"measured", io::real(c.measured)},
                                {"bound", io::real(c.bound)},
                                {"pass", c.pass}});
    }
    io::Json entry{{"tag", t.tag}, {"title", t.title}, {"status", to_string(t.status)}, {"checks", checks}};
    if (!t.message.empty()) entry["message"] = t.message;
    results.push_back(entry);
    passed += t.status == Status::Pass;
  }
  io::Json options{{"window", report.options.window}};
  options["only"] = report.options.only ? io::Json(*report.options.only) : io::Json(nullptr);
  return io::Json{{"tool", io::kToolVersion},
                  {"options", options},
                  {"tags_run", report.results.size()},
                  {"tags_passed", passed},
                  {"exit_code", report.exit_code()},
                  {"results", results}};
}

std::string to_text(const Report& report) {
  std::ostringstream out;
  int counts[4] = {0, 0, 0, 0};
  for (const auto& t : report.results) {
    ++counts[static_cast<int>(t.status)];
    int ok = 0;
    for (const auto& c : t.checks) ok += c.pass;
    char line[160];
    std::snprintf(line, sizeof line, "%-20s %-12s %3d/%-3d checks  %s", to_string(t.status), t.tag.c_str(), ok,
                  static_cast<int>(t.checks.size()), t.title.c_str());
    out << line << '\n';
    for (const auto& c : t.checks) {
      if (c.pass) continue;
      out << "    failed: " << c.name << ": measured " << io::format_real(c.measured) << ", required " << c.relation
          << ' ' << io::format_real(c.bound) << '\n';
    }
    if (!t.message.empty()) out << "    " << t.message << '\n';
  }
  out << "summary: " << counts[0] << " passed, " << counts[1] << " failed, " << counts[2]
      << " window-precondition, " << counts[3] << " errors\n";
  return out.str();
}

}  // namespace dtlab::verify
