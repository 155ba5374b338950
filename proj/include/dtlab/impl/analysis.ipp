#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dtlab/analysis.hpp"
#include "dtlab/impl/operators.ipp"

namespace dtlab {

namespace detail {

template <typename T>
T pair_norm(const DualModelVector<T>& v) {
  return std::sqrt(v.minus.norm() * v.minus.norm() + v.plus.norm() * v.plus.norm());
}

// Rotates a vector so that its largest entry is real and positive.
template <typename T>
void fix_phase(Eigen::Ref<CVector<T>> v) {
  if (v.size() == 0) return;
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(best))) best = i;
  const T m = std::abs(v(best));
  if (m > T(0)) v *= std::conj(v(best)) / m;
}

template <typename T>
void classify_singular_values(const RVector<T>& sv, Eigen::Index ncols, const KernelOptions<T>& options,
                              KernelReport<T>& report) {
  const T smax = sv.size() ? sv(0) : T(0);
  report.threshold = options.relative_threshold * smax;
  Eigen::Index rank = 0;
  while (rank < sv.size() && smax > T(0) && sv(rank) >= report.threshold) ++rank;
  report.dimension = static_cast<int>(ncols - rank);
  report.singular_values = sv;
  const T inf = std::numeric_limits<T>::infinity();
  if (rank == 0) {
    report.gap_ratio = inf;
  } else if (report.dimension == 0) {
    report.gap_ratio = report.threshold > T(0) ? sv(rank - 1) / report.threshold : inf;
  } else {
    const T below = rank < sv.size() ? sv(rank) : T(0);
    report.gap_ratio = below > T(0) ? sv(rank - 1) / below : inf;
  }
  report.ambiguous = report.gap_ratio < options.min_gap_ratio;
}

template <typename T>
FourierVector<T> fv(const FourierVector<T>& a, const FourierVector<T>& b) {
  return detail::exact_product(a, b);
}

template <typename T>
T positive_mass(const FourierVector<T>& f, int from) {
  T s(0);
  for (int k = from; k <= f.radius(); ++k) s += std::norm(f[k]);
  return std::sqrt(s);
}

template <typename T>
T negative_mass(const FourierVector<T>& f) {
  T s(0);
  for (int k = -f.radius(); k < 0; ++k) s += std::norm(f[k]);
  return std::sqrt(s);
}

// conj(R) on the circle as a rational function: z^{dQ} P~ / (z^{dP} Q~), P~ the conjugate-reversed P.
template <typename T>
RationalFunction<T> circle_conjugate(const RationalFunction<T>& r) {
  auto rev = [](const CVector<T>& p) {
    CVector<T> q(p.size());
    for (Eigen::Index k = 0; k < p.size(); ++k) q(k) = std::conj(p(p.size() - 1 - k));
    return q;
  };
  auto shift = [](const CVector<T>& p, int s) {
    CVector<T> q = CVector<T>::Zero(p.size() + s);
    q.tail(p.size()) = p;
    return q;
  };
  const int common = std::min(r.numerator_degree(), r.denominator_degree());
  return RationalFunction<T>(shift(rev(r.numerator()), r.denominator_degree() - common),
                             shift(rev(r.denominator()), r.numerator_degree() - common));
}

template <typename T>
ComplexFunction<T> evaluator(const FourierVector<T>& f) {
  const auto g = f.resized(natural_radius(f));
  return [g](Complex<T> z) { return g.evaluate(z); };
}

template <typename T>
ComplexFunction<T> evaluator(const RationalFunction<T>& r) {
  return [r](Complex<T> z) { return r(z); };
}

template <typename T>
ComplexFunction<T> evaluator(const BlaschkeProduct<T>& b) {
  return [b](Complex<T> z) { return b(z); };
}

}  // namespace detail

template <typename T>
KernelReport<T> kernel(const OperatorMatrix<T>& op, const KernelOptions<T>& options) {
  KernelReport<T> report;
  report.domain = op.domain;
  if (options.captured_only) {
    report.columns = captured_columns(op, options.capture);
  } else {
    for (Eigen::Index j = 0; j < op.entries.cols(); ++j) report.columns.push_back(j);
  }
  const Eigen::Index n = static_cast<Eigen::Index>(report.columns.size());
  report.basis = CMatrix<T>::Zero(op.domain.size(), 0);
  if (n == 0) return report;

  CMatrix<T> sub(op.entries.rows(), n);
  for (Eigen::Index j = 0; j < n; ++j) sub.col(j) = op.entries.col(report.columns[j]);
  Eigen::BDCSVD<CMatrix<T>> svd(sub, Eigen::ComputeFullV);
  detail::classify_singular_values<T>(svd.singularValues(), n, options, report);

  const CMatrix<T> null = svd.matrixV().rightCols(report.dimension);
  report.basis = CMatrix<T>::Zero(op.domain.size(), report.dimension);
  for (Eigen::Index j = 0; j < n; ++j) report.basis.row(report.columns[j]) = null.row(j);
  for (int k = 0; k < report.dimension; ++k) {
    CVector<T> v = report.basis.col(k);
    detail::fix_phase<T>(v);
    report.basis.col(k) = v;
    report.residual = std::max(report.residual, (op.entries * v).norm());
  }
  return report;
}

template <typename T>
T min_singular_value(const OperatorMatrix<T>& op, T capture) {
  const auto cols = captured_columns(op, capture);
  if (cols.empty()) return T(0);
  CMatrix<T> sub(op.entries.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) sub.col(static_cast<Eigen::Index>(j)) = op.entries.col(cols[j]);
  if (sub.cols() > sub.rows()) return T(0);
  Eigen::BDCSVD<CMatrix<T>> svd(sub);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

template <typename T>
T spectral_norm(const OperatorMatrix<T>& op) {
  if (op.entries.size() == 0) return T(0);
  Eigen::BDCSVD<CMatrix<T>> svd(op.entries);
  return svd.singularValues()(0);
}

template <typename T>
CMatrix<T> orthonormalize(const CMatrix<T>& a) {
  if (a.cols() == 0) return a;
  Eigen::HouseholderQR<CMatrix<T>> qr(a);
  return qr.householderQ() * CMatrix<T>::Identity(a.rows(), a.cols());
}

template <typename T>
T subspace_angle(const CMatrix<T>& a, const CMatrix<T>& b) {
  if (a.cols() != b.cols() || a.rows() != b.rows()) return pi<T>() / T(2);
  if (a.cols() == 0) return T(0);
  const CMatrix<T> qa = orthonormalize<T>(a);
  const CMatrix<T> qb = orthonormalize<T>(b);
  const CMatrix<T> r = qb - qa * (qa.adjoint() * qb);
  Eigen::SelfAdjointEigenSolver<CMatrix<T>> eig(r.adjoint() * r, Eigen::EigenvaluesOnly);
  const T s = std::sqrt(std::max(T(0), eig.eigenvalues().maxCoeff()));
  return std::asin(std::min(T(1), s));
}

template <typename T>
FourierVector<T> dual_function(const DualModelVector<T>& f, const BlaschkeProduct<T>& theta) {
  const auto th = blaschke_natural_series(theta);
  const auto plus = detail::fv(th, f.plus.resized(natural_radius(f.plus)));
  return f.minus + plus;
}

template <typename T>
DualModelVector<T> dual_split(const FourierVector<T>& u, const BlaschkeProduct<T>& theta) {
  const auto thb = blaschke_natural_series(theta).conjugated();
  return {project_minus(u), project_plus(detail::fv(thb, u.resized(natural_radius(u))))};
}

template <typename T>
DualModelVector<T> dual_apply(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                              const BlaschkeProduct<T>& alpha, const DualModelVector<T>& f) {
  const auto u = dual_function(f, theta);
  const auto pf = detail::fv(phi, u);
  const auto ab = blaschke_natural_series(alpha).conjugated();
  return {project_minus(pf), project_plus(detail::fv(ab, pf))};
}

template <typename T>
FieldPair<T> paired_apply(const PairedSymbols<T>& s, const FieldPair<T>& v) {
  const FourierVector<T> p[2] = {project_plus(v.first), project_plus(v.second)};
  const FourierVector<T> m[2] = {project_minus(v.first), project_minus(v.second)};
  FourierVector<T> out[2];
  for (int i = 0; i < 2; ++i) {
    out[i] = detail::fv(s.A[i][0], p[0]) + detail::fv(s.A[i][1], p[1]) + detail::fv(s.B[i][0], m[0]) +
             detail::fv(s.B[i][1], m[1]);
  }
  return {out[0], out[1]};
}

template <typename T>
LiftedSolution<T> lift_solution(const DualModelVector<T>& f, const DualModelVector<T>& g, const FourierVector<T>& phi,
                                const BlaschkeProduct<T>& theta, const BlaschkeProduct<T>& alpha) {
  const auto al = blaschke_natural_series(alpha);
  const auto ab = al.conjugated();
  const auto pf = detail::fv(phi, dual_function(f, theta));
  const int W = natural_radius(pf) + 2 * natural_radius(al) + 4;
  const auto u = detail::model_project(pf.resized(W), al.resized(W), ab.resized(W), W);
  LiftedSolution<T> out;
  out.Phi = {f.minus + f.plus, u + detail::fv(ab, u)};
  out.Psi = {dual_function(g, alpha), detail::fv(ab, g.minus) + g.plus};
  return out;
}

template <typename T>
std::pair<DualModelVector<T>, DualModelVector<T>> project_solution(const FieldPair<T>& Phi, const FieldPair<T>& Psi) {
  return {{project_minus(Phi.first), project_plus(Phi.first)}, {project_minus(Psi.first), project_plus(Psi.second)}};
}

template <typename T>
FieldPair<T> kernel_iso_N(const DualModelVector<T>& f, const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                          const BlaschkeProduct<T>& alpha, T tol) {
  const T r = detail::pair_norm(dual_apply(phi, theta, alpha, f));
  require(r <= tol * std::max(T(1), detail::pair_norm(f)), ErrorKind::NotInKernel, "vector is not in ker D");
  const auto ab = blaschke_natural_series(alpha).conjugated();
  const auto pf = detail::fv(phi, dual_function(f, theta));
  return {f.minus + f.plus, pf + detail::fv(ab, pf)};
}

template <typename T>
FieldPair<T> kernel_iso_Nstar(const DualModelVector<T>& g, const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                              const BlaschkeProduct<T>& alpha, T tol) {
  const T r = detail::pair_norm(dual_apply(phi.conjugated(), alpha, theta, g));
  require(r <= tol * std::max(T(1), detail::pair_norm(g)), ErrorKind::NotInKernel, "vector is not in ker D*");
  return {g.minus, g.plus};
}

template <typename T>
DualModelVector<T> kernel_iso_ND(const DualModelVector<T>& f, const FourierVector<T>& phi,
                                 const BlaschkeProduct<T>& theta, T tol) {
  const T r = detail::pair_norm(dual_apply(phi, theta, theta, f));
  require(r <= tol * std::max(T(1), detail::pair_norm(f)), ErrorKind::NotInKernel, "vector is not in ker D");
  const auto zplus = f.plus.resized(f.plus.radius() + 1).shifted(1);
  const auto zminus = f.minus.resized(f.minus.radius() + 1).shifted(1);
  return {zplus.conjugated(), zminus.conjugated()};
}

template <typename T>
FourierVector<T> kernel_iso_NDA(const DualModelVector<T>& f, const FourierVector<T>& phi,
                                const BlaschkeProduct<T>& theta, const BlaschkeProduct<T>& alpha, T tol) {
  const auto p = phi.resized(natural_radius(phi));
  const std::size_t size = detail::next_power_of_two(static_cast<std::size_t>(std::max(1024, 4 * p.radius() + 4)));
  require(min_modulus(to_grid(p, size)) > T(1e-10), ErrorKind::NonInvertibleSymbol, "symbol vanishes on the grid");
  const T r = detail::pair_norm(dual_apply(phi, theta, alpha, f));
  require(r <= tol * std::max(T(1), detail::pair_norm(f)), ErrorKind::NotInKernel, "vector is not in ker D");
  return detail::fv(p, dual_function(f, theta));
}

template <typename T>
CVector<T> conjugate_dual_coordinates(const BasisSpec<T>& dual_model, const CVector<T>& c) {
  require(dual_model.kind() == SpaceKind::DualModel, ErrorKind::BasisMismatch, "expected a dual model basis");
  const int N = dual_model.window_radius();
  const int M = dual_model.positive_count();
  CVector<T> out = CVector<T>::Zero(c.size());
  for (int j = 1; j <= N; ++j)
    if (j - 1 <= M) out(N + j - 1) = std::conj(c(N - j));
  for (int k = 0; k <= M; ++k)
    if (k + 1 <= N) out(N - k - 1) = std::conj(c(N + k));
  return out;
}

template <typename T>
RationalKernelReport<T> rational_kernel_solve(const RationalFunction<T>& R, const BlaschkeProduct<T>& theta, int N,
                                              int M, const KernelOptions<T>& options) {
  require(!R.is_zero(), ErrorKind::Precondition, "symbol must be nonzero");
  require(R.is_coprime(), ErrorKind::Coprimality, "numerator and denominator share a root");
  const auto& P = R.numerator();
  const auto& Q = R.denominator();
  const int dP = R.numerator_degree();
  const int dQ = R.denominator_degree();

  RationalKernelReport<T> out;
  out.p1_unknowns = dP;
  out.p2_unknowns = std::max(dP, dQ);
  out.kernel.domain = BasisSpec<T>::dual_model(theta, N, M);
  const int n = out.p1_unknowns + out.p2_unknowns;
  out.kernel.basis = CMatrix<T>::Zero(out.kernel.domain.size(), 0);
  if (n == 0) return out;

  const CVector<T> one = CVector<T>::Ones(1);
  const auto inv_q = RationalFunction<T>(one, Q).laurent();
  const auto inv_p = RationalFunction<T>(one, P).laurent();
  const auto th = blaschke_natural_series(theta);
  const auto thb = th.conjugated();
  const int W = std::max(natural_radius(inv_p), natural_radius(inv_q)) + std::max(dP, dQ) + 2 * natural_radius(th) + 4;

  const Eigen::Index rows = 2 * (2 * W + 1);
  CMatrix<T> C = CMatrix<T>::Zero(rows, n);
  std::vector<FourierVector<T>> expansions;  // z^j / P per unknown
  for (int col = 0; col < n; ++col) {
    const bool first = col < out.p1_unknowns;
    const int j = first ? col : col - out.p1_unknowns;
    const auto u = inv_p.resized(W).shifted(j);
    auto v = inv_q.resized(W).shifted(j);
    if (!first) v = detail::mul(th.resized(W), v, W);
    const auto tv = detail::mul(thb.resized(W), v, W);
    for (int k = -W; k <= W; ++k) {
      if ((first && k >= 0) || (!first && k < 0)) C(k + W, col) = u[k];
      C(2 * W + 1 + k + W, col) = k < 0 ? v[k] : tv[k];
    }
    expansions.push_back(u);
  }

  RVector<T> scale(n);
  for (int col = 0; col < n; ++col) {
    scale(col) = C.col(col).norm();
    if (scale(col) == T(0)) scale(col) = T(1);
    C.col(col) /= scale(col);
  }
  Eigen::JacobiSVD<CMatrix<T>> svd(C, Eigen::ComputeFullV);
  detail::classify_singular_values<T>(svd.singularValues(), n, options, out.kernel);

  CMatrix<T> coords(out.kernel.domain.size(), out.kernel.dimension);
  for (int k = 0; k < out.kernel.dimension; ++k) {
    const CVector<T> x = svd.matrixV().col(n - out.kernel.dimension + k);
    out.constraint_residual = std::max(out.constraint_residual, (C * x).norm());
    FourierVector<T> p1(W), p2(W);
    for (int col = 0; col < n; ++col) {
      const Complex<T> a = x(col) / scale(col);
      if (col < out.p1_unknowns) {
        p1 = p1 + expansions[col] * a;
      } else {
        p2 = p2 + expansions[col] * a;
      }
    }
    DualModelVector<T> f{project_minus(p1), project_plus(p2)};
    out.functions.push_back(f);
    coords.col(k) = to_coordinates(out.kernel.domain, f);
  }
  out.kernel.basis = orthonormalize<T>(coords);
  for (int k = 0; k < out.kernel.dimension; ++k) {
    CVector<T> v = out.kernel.basis.col(k);
    detail::fix_phase<T>(v);
    out.kernel.basis.col(k) = v;
  }
  return out;
}

template <typename T>
DualShiftReport<T> dual_shift_kernel(const BlaschkeProduct<T>& theta, Complex<T> lambda, int N, int M,
                                     const KernelOptions<T>& options) {
  const T m = std::abs(lambda);
  require(std::abs(m - T(1)) > T(1e-12), ErrorKind::Precondition, "lambda on the unit circle is essential spectrum");
  DualShiftReport<T> r;
  r.near_circle = m > T(0.9) && m < T(1.1);
  const auto phi = FourierVector<T>::from_terms({{0, -lambda}, {1, Complex<T>(1)}});
  const auto D = dual_truncated_matrix(phi, theta, theta, N, M);
  const auto svd = kernel(D, options);
  r.svd_dimension = svd.dimension;
  r.min_singular_value = svd.singular_values.size() ? svd.singular_values(svd.singular_values.size() - 1) : T(0);

  const auto spec = D.domain;
  r.basis = CVector<T>::Zero(spec.size());
  r.adjoint_basis = CVector<T>::Zero(spec.size());
  if (m < T(1) && std::abs(theta.at_zero()) <= T(1e-14)) {
    r.dimension = 1;
    Complex<T> power(1);
    for (int k = 1; k <= N; ++k) {
      r.basis(N - k) = power;
      power *= lambda;
    }
    r.basis.normalize();
    r.residual = (D.entries * r.basis).norm();
    r.adjoint_basis = conjugate_dual_coordinates(spec, r.basis);
    const auto Dstar = dual_truncated_matrix(phi.conjugated(), theta, theta, N, M);
    r.adjoint_residual = (Dstar.entries * r.adjoint_basis).norm() / r.adjoint_basis.norm();
  }
  return r;
}

template <typename T>
std::vector<Complex<T>> grid_points(const SpectrumGrid<T>& g) {
  require(g.step >= T(0.01), ErrorKind::Precondition, "grid step must be at least 0.01");
  const int nr = static_cast<int>(std::floor((g.re_max - g.re_min) / g.step + T(1e-9)));
  const int ni = static_cast<int>(std::floor((g.im_max - g.im_min) / g.step + T(1e-9)));
  std::vector<Complex<T>> pts;
  for (int i = 0; i <= ni; ++i)
    for (int r = 0; r <= nr; ++r) pts.emplace_back(g.re_min + T(r) * g.step, g.im_min + T(i) * g.step);
  return pts;
}

template <typename T>
SpectrumReport<T> spectrum_scan(const SpectrumSymbol<T>& symbol, const BlaschkeProduct<T>& theta,
                                const SpectrumGrid<T>& grid, int N, int M, const KernelOptions<T>& options,
                                unsigned threads) {
  SpectrumReport<T> report;
  constexpr std::size_t kSamples = 512;
  const auto f = std::holds_alternative<RationalFunction<T>>(symbol)
                     ? detail::evaluator(std::get<RationalFunction<T>>(symbol))
                     : detail::evaluator(std::get<FourierVector<T>>(symbol));
  for (std::size_t j = 0; j < kSamples; ++j) report.essential_samples.push_back(f(BoundaryGrid<T>::node(j, kSamples)));

  std::optional<OperatorMatrix<T>> D;
  if (std::holds_alternative<FourierVector<T>>(symbol))
    D = dual_truncated_matrix(std::get<FourierVector<T>>(symbol), theta, theta, N, M);

  const auto lambdas = grid_points(grid);
  report.points.resize(lambdas.size());
  auto classify = [&](std::size_t i) {
    SpectrumPoint<T>& p = report.points[i];
    p.lambda = lambdas[i];
    p.distance = std::numeric_limits<T>::infinity();
    for (const auto& s : report.essential_samples) p.distance = std::min(p.distance, std::abs(s - p.lambda));
    if (p.distance < T(1e-9)) {
      p.verdict = SpectrumVerdict::NonFredholm;
      p.kernel_dimension = -1;
      return;
    }
    if (p.distance < T(2) * grid.step) {
      p.verdict = SpectrumVerdict::EssentialAdjacent;
      p.kernel_dimension = -1;
      return;
    }
    bool ambiguous = false;
    if (D) {
      OperatorMatrix<T> shifted = *D;
      shifted.entries -= p.lambda * CMatrix<T>::Identity(D->entries.rows(), D->entries.cols());
      const auto k = kernel(shifted, options);
      p.kernel_dimension = k.dimension;
      ambiguous = k.ambiguous;
    } else {
      const auto k = rational_kernel_solve(std::get<RationalFunction<T>>(symbol).minus_constant(p.lambda), theta, N,
                                           M, options);
      p.kernel_dimension = k.kernel.dimension;
      ambiguous = k.kernel.ambiguous;
    }
    if (ambiguous)
      p.verdict = SpectrumVerdict::Ambiguous;
    else
      p.verdict = p.kernel_dimension == 0 ? SpectrumVerdict::Invertible : SpectrumVerdict::FredholmNonInvertible;
  };

  // Points are independent; workers claim indices and write only their own slot.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (std::size_t i = next++; i < lambdas.size(); i = next++) {
      try {
        classify(i);
      } catch (...) {
        std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
        next = lambdas.size();
      }
    }
  };
  if (threads == 0) threads = std::thread::hardware_concurrency();
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, lambdas.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (const auto& p : report.points) {
    if (p.verdict == SpectrumVerdict::Ambiguous) ++report.ambiguous_points;
    if (p.kernel_dimension > 0) report.point_spectrum_hits.push_back(p);
  }
  return report;
}

template <typename T>
PredicateVerdict<T> analytic_spectrum_predicate(const RationalFunction<T>& phi, const BlaschkeProduct<T>& theta,
                                                Complex<T> lambda, T delta) {
  PredicateVerdict<T> v;
  v.predicate = "analytic-spectrum";
  const bool analytic = phi.is_bounded_analytic();
  v.hypotheses.push_back({"phi in H-infinity", analytic, T(analytic ? 0 : 1), T(0), "exact"});
  require(analytic, ErrorKind::HypothesisViolation, "symbol must be bounded analytic in the disk");
  const auto series = phi.laurent();
  const auto tbp = detail::fv(blaschke_natural_series(theta).conjugated(), series);
  const T leak = detail::positive_mass(tbp, 1) / std::max(T(1), series.norm());
  v.hypotheses.push_back({"conj(theta) phi co-analytic", leak <= T(1e-10), leak, T(1e-10), "symbolic"});
  require(leak <= T(1e-10), ErrorKind::HypothesisViolation, "conj(theta) phi has analytic part");
  v.hypotheses.push_back({"conj(h_-) = [theta conj(phi - lambda), 1] corona", true, T(1), delta, "exact"});

  const auto corona = corona_check<T>([&](Complex<T> z) { return phi(z) - lambda; },
                                      [](Complex<T>) { return Complex<T>(0); }, CoronaHalf::Interior, delta);
  v.hypotheses.push_back({"h_+ = [phi - lambda, 0] corona", corona.is_corona_pair, corona.infimum_estimate, delta,
                          "sampled"});
  v.conclusion = corona.is_corona_pair ? Conclusion::Invertible : Conclusion::NotInvertible;
  v.measurements["infimum"] = corona.infimum_estimate;
  v.measurements["witness_re"] = corona.witness.real();
  v.measurements["witness_im"] = corona.witness.imag();
  return v;
}

template <typename T>
PredicateVerdict<T> kernel_route_invertibility(const RationalFunction<T>& phi, const BlaschkeProduct<T>& theta,
                                               Complex<T> lambda, int N, int M) {
  PredicateVerdict<T> v;
  v.predicate = "kernel-route";
  constexpr std::size_t kSamples = 4096;
  T distance = std::numeric_limits<T>::infinity();
  for (std::size_t j = 0; j < kSamples; ++j)
    distance = std::min(distance, std::abs(phi(BoundaryGrid<T>::node(j, kSamples)) - lambda));
  v.measurements["essential_distance"] = distance;
  if (distance < T(1e-9)) {
    v.conclusion = Conclusion::NotInvertible;
    v.hypotheses.push_back({"lambda off the essential curve", false, distance, T(1e-9), "sampled"});
    return v;
  }
  v.hypotheses.push_back({"lambda off the essential curve", true, distance, T(1e-9), "sampled"});
  const auto k = rational_kernel_solve(phi.minus_constant(lambda), theta, N, M);
  const auto ks = rational_kernel_solve(detail::circle_conjugate(phi).minus_constant(std::conj(lambda)), theta, N, M);
  v.measurements["kernel_dimension"] = T(k.kernel.dimension);
  v.measurements["cokernel_dimension"] = T(ks.kernel.dimension);
  v.consistent = !k.kernel.ambiguous && !ks.kernel.ambiguous;
  v.conclusion = (k.kernel.dimension == 0 && ks.kernel.dimension == 0) ? Conclusion::Invertible : Conclusion::NotInvertible;
  return v;
}

template <typename T>
PredicateVerdict<T> inverse_analytic_predicates(const RationalFunction<T>& phi_inverse, const BlaschkeProduct<T>& theta,
                                                int N, int M, T delta) {
  PredicateVerdict<T> v;
  v.predicate = "inverse-analytic";
  const bool analytic = phi_inverse.is_bounded_analytic();
  v.hypotheses.push_back({"1/phi in H-infinity", analytic, T(analytic ? 0 : 1), T(0), "exact"});
  require(analytic, ErrorKind::HypothesisViolation, "1/phi must be bounded analytic in the disk");
  const auto fac = factor_inner_outer(phi_inverse);
  v.hypotheses.push_back({"1/phi zero-free on the circle", true, T(0), T(1e-8), "exact"});
  const auto gamma = inner_gcd(theta, fac.inner);
  v.hypotheses.push_back({"gamma is a finite Blaschke product (Fredholm)", true, T(gamma.degree()), T(0), "exact"});
  const auto corona = corona_check<T>(detail::evaluator(theta), detail::evaluator(fac.inner), CoronaHalf::Interior, delta);
  v.hypotheses.push_back({"[theta, beta] corona", corona.is_corona_pair, corona.infimum_estimate, delta, "sampled"});

  const auto spec = BasisSpec<T>::dual_model(theta, N, M);
  CMatrix<T> predicted(spec.size(), gamma.degree());
  if (gamma.degree() > 0) {
    const auto common = detail::fv(detail::fv(blaschke_natural_series(fac.inner), fac.outer.laurent()),
                                   blaschke_natural_series(inner_quotient(theta, gamma)));
    const auto tm = takenaka_malmquist_vectors(gamma);
    for (int k = 0; k < gamma.degree(); ++k) {
      const auto f = detail::fv(common, tm[k]);
      predicted.col(k) = to_coordinates(spec, dual_split(f, theta));
    }
    predicted = orthonormalize<T>(predicted);
  }
  v.predicted_kernel = predicted;

  const auto phi = phi_inverse.reciprocal().laurent();
  const auto svd = kernel(dual_truncated_matrix(phi, theta, theta, N, M));
  const T angle = subspace_angle<T>(predicted, svd.basis);
  v.measurements["gcd_degree"] = T(gamma.degree());
  v.measurements["svd_kernel_dimension"] = T(svd.dimension);
  v.measurements["subspace_angle"] = angle;
  v.measurements["gap_ratio"] = svd.gap_ratio;
  v.measurements["corona_infimum"] = corona.infimum_estimate;
  v.consistent = !svd.ambiguous && svd.dimension == gamma.degree() && angle <= T(1e-6);

  if (corona.is_corona_pair && gamma.degree() == 0) {
    v.conclusion = Conclusion::Invertible;
  } else if (!corona.is_corona_pair && gamma.degree() > 0) {
    v.conclusion = Conclusion::NotInvertible;
  } else {
    v.conclusion = Conclusion::Inconclusive;
  }
  return v;
}

template <typename T>
PredicateVerdict<T> truncated_analytic_predicate(const RationalFunction<T>& g, const BlaschkeProduct<T>& theta, int N,
                                                 T delta) {
  PredicateVerdict<T> v;
  v.predicate = "truncated-analytic";
  const bool analytic = g.is_bounded_analytic();
  v.hypotheses.push_back({"g in H-infinity", analytic, T(analytic ? 0 : 1), T(0), "exact"});
  require(analytic, ErrorKind::HypothesisViolation, "symbol must be bounded analytic in the disk");
  const auto fac = factor_inner_outer(g);
  const auto gamma = inner_gcd(theta, fac.inner);
  const auto corona = corona_check<T>(detail::evaluator(theta), detail::evaluator(g), CoronaHalf::Interior, delta);
  v.hypotheses.push_back({"[theta, g] corona", corona.is_corona_pair, corona.infimum_estimate, delta, "sampled"});

  const auto spec = BasisSpec<T>::model_space(theta, N);
  const auto quotient = blaschke_natural_series(inner_quotient(theta, gamma));
  const auto tm = takenaka_malmquist_vectors(gamma);
  std::vector<FourierVector<T>> fs;
  int W = 0;
  for (int k = 0; k < gamma.degree(); ++k) {
    fs.push_back(detail::fv(quotient, tm[k]));
    W = std::max(W, natural_radius(fs.back()));
  }
  for (const auto& v_tm : takenaka_malmquist_vectors(theta)) W = std::max(W, natural_radius(v_tm));
  CMatrix<T> predicted(spec.size(), gamma.degree());
  for (int k = 0; k < gamma.degree(); ++k) predicted.col(k) = coordinates<T>(spec, {fs[k]}, W);
  predicted = orthonormalize<T>(predicted);
  v.predicted_kernel = predicted;

  KernelOptions<T> opts;
  opts.captured_only = false;
  const auto svd = kernel(truncated_toeplitz_matrix(g.laurent(), theta, theta, N), opts);
  const T angle = subspace_angle<T>(predicted, svd.basis);
  v.measurements["gcd_degree"] = T(gamma.degree());
  v.measurements["svd_kernel_dimension"] = T(svd.dimension);
  v.measurements["subspace_angle"] = angle;
  v.measurements["corona_infimum"] = corona.infimum_estimate;
  v.consistent = !svd.ambiguous && svd.dimension == gamma.degree() && angle <= T(1e-6);
  if (corona.is_corona_pair && gamma.degree() == 0) {
    v.conclusion = Conclusion::Invertible;
  } else if (!corona.is_corona_pair && gamma.degree() > 0) {
    v.conclusion = Conclusion::NotInvertible;
  } else {
    v.conclusion = Conclusion::Inconclusive;
  }
  return v;
}

namespace detail {

template <typename T>
struct HChecks {
  std::vector<HypothesisCheck<T>> list;
  bool ok() const {
    for (const auto& h : list)
      if (!h.satisfied) return false;
    return true;
  }
};

template <typename T>
HChecks<T> h_data_checks(const BlaschkeProduct<T>& alpha, const HData<T>& h, T delta) {
  HChecks<T> c;
  const auto ab = blaschke_natural_series(alpha).conjugated();
  const auto ab_h1 = fv(ab, h.h1_plus);
  const T scale = std::max(T(1), h.h1_plus.norm());
  auto analytic = [&](const std::string& name, const FourierVector<T>& f) {
    const T m = negative_mass(f) / scale;
    c.list.push_back({name + " analytic", m <= T(1e-12), m, T(1e-12), "exact"});
  };
  auto coanalytic = [&](const std::string& name, const FourierVector<T>& f) {
    const T m = positive_mass(f, 1) / scale;
    c.list.push_back({name + " co-analytic", m <= T(1e-12), m, T(1e-12), "exact"});
  };
  analytic("h1+", h.h1_plus);
  analytic("h2+", h.h2_plus);
  coanalytic("h2-", h.h2_minus);
  coanalytic("conj(alpha) h1+", ab_h1);
  const auto plus = corona_check<T>(evaluator(h.h2_plus), evaluator(h.h1_plus), CoronaHalf::Interior, delta);
  c.list.push_back({"h+ in CP+", plus.is_corona_pair, plus.infimum_estimate, delta, "sampled"});
  const auto minus = corona_check<T>(evaluator(h.h2_minus), evaluator(ab_h1), CoronaHalf::Exterior, delta);
  c.list.push_back({"h- in CP-", minus.is_corona_pair, minus.infimum_estimate, delta, "sampled"});
  return c;
}

}  // namespace detail

template <typename T>
HData<T> monomial_h_data(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta, const BlaschkeProduct<T>& alpha) {
  const auto one = FourierVector<T>::constant(Complex<T>(1));
  const HData<T> first{detail::fv(phi, blaschke_natural_series(theta)), one, FourierVector<T>(0), "h2+=1,h2-=0,h1+=phi*theta"};
  if (detail::h_data_checks(alpha, first, T(1e-4)).ok()) return first;
  const HData<T> second{phi, FourierVector<T>(0), one, "h2+=0,h2-=1,h1+=phi"};
  if (detail::h_data_checks(alpha, second, T(1e-4)).ok()) return second;
  return first;
}

template <typename T>
PredicateVerdict<T> paired_injectivity_predicate(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                                                 const BlaschkeProduct<T>& alpha, const HData<T>& h, int N, T delta) {
  PredicateVerdict<T> v;
  v.predicate = "paired-injectivity";
  const auto th = blaschke_natural_series(theta);
  const auto ab = blaschke_natural_series(alpha).conjugated();

  const auto w86 = detail::fv(phi, h.h2_minus + detail::fv(th, h.h2_plus)) - h.h1_plus;
  const T r86 = w86.norm();
  v.hypotheses.push_back({"phi (h2- + theta h2+) = h1+", r86 <= T(1e-8), r86, T(1e-8), "exact"});
  require(r86 <= T(1e-8), ErrorKind::HypothesisViolation, "h-data does not satisfy phi (h2- + theta h2+) = h1+");

  const auto S = paired_symbols(phi, theta, alpha);
  const auto ahp = FieldPair<T>{detail::fv(S.A[0][0], h.h2_plus) + detail::fv(S.A[0][1], h.h1_plus),
                                detail::fv(S.A[1][0], h.h2_plus) + detail::fv(S.A[1][1], h.h1_plus)};
  const auto ab_h1 = detail::fv(ab, h.h1_plus);
  const auto bhm = FieldPair<T>{detail::fv(S.B[0][0], h.h2_minus) + detail::fv(S.B[0][1], ab_h1),
                                detail::fv(S.B[1][0], h.h2_minus) + detail::fv(S.B[1][1], ab_h1)};
  const T r83 = std::sqrt(std::pow((ahp.first + bhm.first).norm(), 2) + std::pow((ahp.second + bhm.second).norm(), 2));
  v.hypotheses.push_back({"A h+ + B h- = 0", r83 <= T(1e-8), r83, T(1e-8), "exact"});

  for (auto& c : detail::h_data_checks(alpha, h, delta).list) v.hypotheses.push_back(c);

  const int radius = std::max({natural_radius(phi), natural_radius(ahp.first), natural_radius(ahp.second)});
  const std::size_t size = detail::next_power_of_two(static_cast<std::size_t>(std::max(2048, 4 * radius + 4)));
  const T phi_min = min_modulus(to_grid(phi.resized(natural_radius(phi)), size));
  v.hypotheses.push_back({"phi invertible in L-infinity", phi_min > T(1e-10), phi_min, T(1e-10), "sampled"});
  const auto g1 = to_grid(ahp.first.resized(radius), size);
  const auto g2 = to_grid(ahp.second.resized(radius), size);
  T ah_min = std::numeric_limits<T>::infinity();
  for (std::size_t j = 0; j < size; ++j) ah_min = std::min(ah_min, std::abs(g1[j]) + std::abs(g2[j]));
  v.hypotheses.push_back({"A h+ nonvanishing on the circle", ah_min > T(1e-10), ah_min, T(1e-10), "sampled"});

  const int k_closed = theta.degree() - alpha.degree();
  const auto det = -detail::fv(th, ab);
  const int k_grid = winding_number(to_grid(det.resized(natural_radius(det)),
                                            detail::next_power_of_two(static_cast<std::size_t>(
                                                std::max(2048, 4 * natural_radius(det) + 4)))));
  v.measurements["winding_closed_form"] = T(k_closed);
  v.measurements["winding_grid"] = T(k_grid);
  v.measurements["alpha_divides_theta"] = T(inner_gcd(theta, alpha).degree() == alpha.degree() ? 1 : 0);

  if (!v.all_hypotheses() || k_closed != k_grid) {
    v.conclusion = Conclusion::Inconclusive;
  } else if (k_closed == 0) {
    v.conclusion = Conclusion::Invertible;
  } else if (k_closed > 0) {
    v.conclusion = Conclusion::InjectiveOnly;
  } else {
    v.conclusion = Conclusion::SurjectiveOnly;
  }

  const auto paired = paired_operator_matrix(S, N);
  const auto adj = paired_adjoint_matrix(S, N);
  const auto kr = kernel(paired);
  const auto kc = kernel(adj);
  v.measurements["kernel_dimension"] = T(kr.dimension);
  v.measurements["cokernel_dimension"] = T(kc.dimension);
  const int expect_ker = k_closed < 0 ? -k_closed : 0;
  const int expect_coker = k_closed > 0 ? k_closed : 0;
  v.consistent = !kr.ambiguous && !kc.ambiguous && kr.dimension == expect_ker && kc.dimension == expect_coker;
  return v;
}

}  // namespace dtlab
