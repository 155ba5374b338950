#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dtlab/operators.hpp"

namespace dtlab {

template <typename T>
struct KernelOptions {
  T relative_threshold = T(1e-8);
  T min_gap_ratio = T(1e3);
  bool captured_only = true;  // drop columns whose image leaks out of the window
  T capture = T(1e-11);
};

template <typename T>
struct KernelReport {
  BasisSpec<T> domain;
  int dimension = 0;
  CMatrix<T> basis;  // orthonormal columns in domain coordinates
  RVector<T> singular_values;
  T threshold = T(0);
  T gap_ratio = std::numeric_limits<T>::infinity();
  bool ambiguous = false;
  std::vector<Eigen::Index> columns;  // domain columns entering the SVD
  T residual = T(0);                  // max || Op v || over the basis
};

/// Numerical kernel from an SVD: sigma < relative_threshold * sigma_max counts as zero.
template <typename T>
KernelReport<T> kernel(const OperatorMatrix<T>& op, const KernelOptions<T>& options = {});

/// Smallest singular value of the captured-column restriction.
template <typename T>
T min_singular_value(const OperatorMatrix<T>& op, T capture = T(1e-11));

/// Largest singular value of the full matrix.
template <typename T>
T spectral_norm(const OperatorMatrix<T>& op);

/// Largest principal angle between the column spans (pi/2 when the dimensions differ).
template <typename T>
T subspace_angle(const CMatrix<T>& a, const CMatrix<T>& b);

template <typename T>
CMatrix<T> orthonormalize(const CMatrix<T>& a);

template <typename T>
struct FieldPair {
  FourierVector<T> first;
  FourierVector<T> second;
};

/// Function-level D_phi^{theta,alpha}: returns g = g_- + alpha g~_+ split with respect to alpha.
template <typename T>
DualModelVector<T> dual_apply(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                              const BlaschkeProduct<T>& alpha, const DualModelVector<T>& f);

/// Function-level paired operator A P_+ + B P_-.
template <typename T>
FieldPair<T> paired_apply(const PairedSymbols<T>& symbols, const FieldPair<T>& v);

/// f_- + theta f~_+ as a single Fourier vector.
template <typename T>
FourierVector<T> dual_function(const DualModelVector<T>& f, const BlaschkeProduct<T>& theta);

/// Splits u in (K_theta)^perp into u_- + theta u~_+.
template <typename T>
DualModelVector<T> dual_split(const FourierVector<T>& u, const BlaschkeProduct<T>& theta);

template <typename T>
struct LiftedSolution {
  FieldPair<T> Phi;
  FieldPair<T> Psi;
};

/// D f = g  ->  paired(Phi) = Psi.
template <typename T>
LiftedSolution<T> lift_solution(const DualModelVector<T>& f, const DualModelVector<T>& g,
                                const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                                const BlaschkeProduct<T>& alpha);

/// paired(Phi) = Psi  ->  D f = g.
template <typename T>
std::pair<DualModelVector<T>, DualModelVector<T>> project_solution(const FieldPair<T>& Phi, const FieldPair<T>& Psi);

/// ker D -> ker paired: f -> [f_- + f~_+, phi (1 + conj(alpha)) f]. Throws NotInKernel.
template <typename T>
FieldPair<T> kernel_iso_N(const DualModelVector<T>& f, const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                          const BlaschkeProduct<T>& alpha, T tol = T(1e-8));

/// ker D* -> ker paired*: g -> [g_-, g~_+]. g is split with respect to alpha.
template <typename T>
FieldPair<T> kernel_iso_Nstar(const DualModelVector<T>& g, const FourierVector<T>& phi,
                              const BlaschkeProduct<T>& theta, const BlaschkeProduct<T>& alpha, T tol = T(1e-8));

/// ker D_phi^theta -> ker D_conj(phi)^theta: f -> conj(z f~_+) + theta conj(z f_-).
template <typename T>
DualModelVector<T> kernel_iso_ND(const DualModelVector<T>& f, const FourierVector<T>& phi,
                                 const BlaschkeProduct<T>& theta, T tol = T(1e-8));

/// ker D_phi^{theta,alpha} -> ker A_{1/phi}^{alpha,theta}: f -> phi f (an element of K_alpha).
template <typename T>
FourierVector<T> kernel_iso_NDA(const DualModelVector<T>& f, const FourierVector<T>& phi,
                                const BlaschkeProduct<T>& theta, const BlaschkeProduct<T>& alpha, T tol = T(1e-8));

/// Coordinate form of C_theta on DualModel(theta, N, N - 1) (or any N, M: modes pushed out are dropped).
template <typename T>
CVector<T> conjugate_dual_coordinates(const BasisSpec<T>& dual_model, const CVector<T>& coords);

template <typename T>
struct RationalKernelReport {
  KernelReport<T> kernel;                       // coordinates in DualModel(theta, N, M)
  std::vector<DualModelVector<T>> functions;     // P1/P + theta P2/P per basis vector
  int p1_unknowns = 0;
  int p2_unknowns = 0;
  T constraint_residual = T(0);
};

/// ker D_R^theta for a rational symbol R = P/Q via the finite linear system in (P1, P2).
template <typename T>
RationalKernelReport<T> rational_kernel_solve(const RationalFunction<T>& R, const BlaschkeProduct<T>& theta, int N,
                                              int M, const KernelOptions<T>& options = {});

template <typename T>
struct DualShiftReport {
  int dimension = 0;
  CVector<T> basis;  // sum lambda^{k-1} z^{-k}, normalized, DualModel coordinates
  T residual = T(0);
  T min_singular_value = T(0);
  int svd_dimension = 0;
  bool near_circle = false;
  CVector<T> adjoint_basis;  // theta / (1 - conj(lambda) z), normalized
  T adjoint_residual = T(0);
};

/// Kernel of D_{z - lambda}^theta and of its adjoint. Throws Precondition for |lambda| = 1.
template <typename T>
DualShiftReport<T> dual_shift_kernel(const BlaschkeProduct<T>& theta, Complex<T> lambda, int N, int M,
                                     const KernelOptions<T>& options = {});

enum class SpectrumVerdict { Invertible, FredholmNonInvertible, NonFredholm, EssentialAdjacent, Ambiguous };

inline const char* to_string(SpectrumVerdict v) {
  switch (v) {
    case SpectrumVerdict::Invertible: return "invertible";
    case SpectrumVerdict::FredholmNonInvertible: return "Fredholm-noninvertible";
    case SpectrumVerdict::NonFredholm: return "non-Fredholm";
    case SpectrumVerdict::EssentialAdjacent: return "essential-adjacent";
    case SpectrumVerdict::Ambiguous: return "ambiguous";
  }
  return "unknown";
}

template <typename T>
struct SpectrumGrid {
  T re_min = T(-1);
  T re_max = T(1);
  T im_min = T(-1);
  T im_max = T(1);
  T step = T(0.1);
};

template <typename T>
struct SpectrumPoint {
  Complex<T> lambda;
  SpectrumVerdict verdict = SpectrumVerdict::Invertible;
  int kernel_dimension = 0;
  T distance = T(0);  // distance to the sampled essential range
};

template <typename T>
struct SpectrumReport {
  std::vector<SpectrumPoint<T>> points;  // row-major: imaginary part outer, real part inner
  std::vector<Complex<T>> essential_samples;
  std::vector<SpectrumPoint<T>> point_spectrum_hits;
  int ambiguous_points = 0;
};

template <typename T>
using SpectrumSymbol = std::variant<RationalFunction<T>, FourierVector<T>>;

/// Requires step >= 0.01. threads = 0 uses the hardware concurrency; the report does not depend on it.
template <typename T>
SpectrumReport<T> spectrum_scan(const SpectrumSymbol<T>& symbol, const BlaschkeProduct<T>& theta,
                                const SpectrumGrid<T>& grid, int N, int M, const KernelOptions<T>& options = {},
                                unsigned threads = 0);

/// Row-major grid points of a spectrum scan.
template <typename T>
std::vector<Complex<T>> grid_points(const SpectrumGrid<T>& grid);

enum class Conclusion { Invertible, Injective, InjectiveOnly, SurjectiveOnly, Fredholm, NotInvertible, Inconclusive };

inline const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Invertible: return "invertible";
    case Conclusion::Injective: return "injective";
    case Conclusion::InjectiveOnly: return "only-injective";
    case Conclusion::SurjectiveOnly: return "only-surjective";
    case Conclusion::Fredholm: return "Fredholm";
    case Conclusion::NotInvertible: return "not-invertible";
    case Conclusion::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

template <typename T>
struct HypothesisCheck {
  std::string name;
  bool satisfied = false;
  T measured = T(0);
  T tolerance = T(0);
  std::string evidence;  // "exact", "symbolic" or "sampled"
};

template <typename T>
struct PredicateVerdict {
  std::string predicate;
  std::vector<HypothesisCheck<T>> hypotheses;
  Conclusion conclusion = Conclusion::Inconclusive;
  std::map<std::string, T> measurements;
  CMatrix<T> predicted_kernel;  // coordinates in the operator's domain basis, when predicted
  bool consistent = true;       // cross-validation against the SVD route
  bool all_hypotheses() const {
    for (const auto& h : hypotheses)
      if (!h.satisfied) return false;
    return true;
  }
};

/// lambda is outside sigma(D_phi^theta) iff [phi - lambda, 0] is a corona pair, for phi in H^infinity
/// with conj(theta) phi co-analytic. Throws HypothesisViolation otherwise.
template <typename T>
PredicateVerdict<T> analytic_spectrum_predicate(const RationalFunction<T>& phi, const BlaschkeProduct<T>& theta,
                                                Complex<T> lambda, T delta = T(1e-4));

/// Independent route: essential distance plus the rational kernel solver.
template <typename T>
PredicateVerdict<T> kernel_route_invertibility(const RationalFunction<T>& phi, const BlaschkeProduct<T>& theta,
                                               Complex<T> lambda, int N, int M);

/// D_phi^theta with 1/phi in H^infinity: kernel beta a_+ (theta/gamma) K_gamma, invertible iff
/// [theta, beta] is a corona pair. Cross-validated against the SVD kernel on DualModel(theta, N, M).
template <typename T>
PredicateVerdict<T> inverse_analytic_predicates(const RationalFunction<T>& phi_inverse,
                                                const BlaschkeProduct<T>& theta, int N, int M,
                                                T delta = T(1e-4));

/// A_g^theta with g in H^infinity: kernel (theta/gamma) K_gamma, gamma = gcd(theta, inner(g)).
template <typename T>
PredicateVerdict<T> truncated_analytic_predicate(const RationalFunction<T>& g, const BlaschkeProduct<T>& theta, int N,
                                                 T delta = T(1e-4));

/// Data h_+ = [h2+, h1+], h_- = [h2-, conj(alpha) h1+] for the paired-operator test.
template <typename T>
struct HData {
  FourierVector<T> h1_plus;
  FourierVector<T> h2_plus;
  FourierVector<T> h2_minus;
  std::string pattern;
};

/// Tries h2+ = 1, h2- = 0, h1+ = phi theta first, then h2+ = 0, h2- = 1, h1+ = phi.
template <typename T>
HData<T> monomial_h_data(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta, const BlaschkeProduct<T>& alpha);

/// Injectivity / invertibility of the paired operator from corona data. Throws HypothesisViolation
/// when phi (h2- + theta h2+) != h1+.
template <typename T>
PredicateVerdict<T> paired_injectivity_predicate(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                                                 const BlaschkeProduct<T>& alpha, const HData<T>& h, int N,
                                                 T delta = T(1e-4));

#define DTLAB_ANALYSIS_INSTANTIATE(EXTERN, T)                                                                  \
  EXTERN template KernelReport<T> kernel<T>(const OperatorMatrix<T>&, const KernelOptions<T>&);               \
  EXTERN template T min_singular_value<T>(const OperatorMatrix<T>&, T);                                       \
  EXTERN template T spectral_norm<T>(const OperatorMatrix<T>&);                                               \
  EXTERN template T subspace_angle<T>(const CMatrix<T>&, const CMatrix<T>&);                                  \
  EXTERN template CMatrix<T> orthonormalize<T>(const CMatrix<T>&);                                            \
  EXTERN template DualModelVector<T> dual_apply<T>(const FourierVector<T>&, const BlaschkeProduct<T>&,        \
                                                   const BlaschkeProduct<T>&, const DualModelVector<T>&);     \
  EXTERN template FieldPair<T> paired_apply<T>(const PairedSymbols<T>&, const FieldPair<T>&);                 \
  EXTERN template FourierVector<T> dual_function<T>(const DualModelVector<T>&, const BlaschkeProduct<T>&);    \
  EXTERN template DualModelVector<T> dual_split<T>(const FourierVector<T>&, const BlaschkeProduct<T>&);       \
  EXTERN template LiftedSolution<T> lift_solution<T>(const DualModelVector<T>&, const DualModelVector<T>&,    \
                                                     const FourierVector<T>&, const BlaschkeProduct<T>&,      \
                                                     const BlaschkeProduct<T>&);                              \
  EXTERN template std::pair<DualModelVector<T>, DualModelVector<T>> project_solution<T>(const FieldPair<T>&,  \
                                                                                        const FieldPair<T>&); \
  EXTERN template FieldPair<T> kernel_iso_N<T>(const DualModelVector<T>&, const FourierVector<T>&,            \
                                               const BlaschkeProduct<T>&, const BlaschkeProduct<T>&, T);      \
  EXTERN template FieldPair<T> kernel_iso_Nstar<T>(const DualModelVector<T>&, const FourierVector<T>&,        \
                                                   const BlaschkeProduct<T>&, const BlaschkeProduct<T>&, T);  \
  EXTERN template DualModelVector<T> kernel_iso_ND<T>(const DualModelVector<T>&, const FourierVector<T>&,     \
                                                      const BlaschkeProduct<T>&, T);                          \
  EXTERN template FourierVector<T> kernel_iso_NDA<T>(const DualModelVector<T>&, const FourierVector<T>&,      \
                                                     const BlaschkeProduct<T>&, const BlaschkeProduct<T>&, T);\
  EXTERN template CVector<T> conjugate_dual_coordinates<T>(const BasisSpec<T>&, const CVector<T>&);           \
  EXTERN template RationalKernelReport<T> rational_kernel_solve<T>(                                           \
      const RationalFunction<T>&, const BlaschkeProduct<T>&, int, int, const KernelOptions<T>&);              \
  EXTERN template DualShiftReport<T> dual_shift_kernel<T>(const BlaschkeProduct<T>&, Complex<T>, int, int,    \
                                                          const KernelOptions<T>&);                           \
  EXTERN template SpectrumReport<T> spectrum_scan<T>(const SpectrumSymbol<T>&, const BlaschkeProduct<T>&,     \
                                                     const SpectrumGrid<T>&, int, int, const KernelOptions<T>&, \
                                                     unsigned);                                                  \
  EXTERN template std::vector<Complex<T>> grid_points<T>(const SpectrumGrid<T>&);                             \
  EXTERN template PredicateVerdict<T> analytic_spectrum_predicate<T>(const RationalFunction<T>&,              \
                                                                     const BlaschkeProduct<T>&, Complex<T>, T); \
  EXTERN template PredicateVerdict<T> kernel_route_invertibility<T>(const RationalFunction<T>&,               \
                                                                    const BlaschkeProduct<T>&, Complex<T>,    \
                                                                    int, int);                                \
  EXTERN template PredicateVerdict<T> inverse_analytic_predicates<T>(const RationalFunction<T>&,              \
                                                                     const BlaschkeProduct<T>&, int, int, T); \
  EXTERN template PredicateVerdict<T> truncated_analytic_predicate<T>(const RationalFunction<T>&,             \
                                                                      const BlaschkeProduct<T>&, int, T);     \
  EXTERN template HData<T> monomial_h_data<T>(const FourierVector<T>&, const BlaschkeProduct<T>&,             \
                                              const BlaschkeProduct<T>&);                                     \
  EXTERN template PredicateVerdict<T> paired_injectivity_predicate<T>(                                        \
      const FourierVector<T>&, const BlaschkeProduct<T>&, const BlaschkeProduct<T>&, const HData<T>&, int, T);

DTLAB_ANALYSIS_INSTANTIATE(extern, double)

}  // namespace dtlab
