#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dtlab/common.hpp"
#include "dtlab/fourier.hpp"
#include "dtlab/inner_rational.hpp"

namespace dtlab {

enum class SpaceKind { FullL2, HardyPlus, HardyMinus, ModelSpace, DualModel, DirectSum };

inline const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::FullL2: return "FullL2";
    case SpaceKind::HardyPlus: return "HardyPlus";
    case SpaceKind::HardyMinus: return "HardyMinus";
    case SpaceKind::ModelSpace: return "ModelSpace";
    case SpaceKind::DualModel: return "DualModel";
    case SpaceKind::DirectSum: return "DirectSum";
  }
  return "unknown";
}

/// Name of one orthonormal basis element: z^k, theta z^k, or the k-th
/// Takenaka-Malmquist element of a model space.
struct BasisLabel {
  enum class Kind { Monomial, InnerShift, ModelElement };
  Kind kind = Kind::Monomial;
  int index = 0;
  int component = -1;  // position inside a direct sum, -1 outside one
  std::string inner = "theta";

  std::string to_string() const {
    std::string body;
    switch (kind) {
      case Kind::Monomial: body = "z^" + std::to_string(index); break;
      case Kind::InnerShift: body = inner + "*z^" + std::to_string(index); break;
      case Kind::ModelElement: body = "e_" + std::to_string(index) + "(" + inner + ")"; break;
    }
    return component < 0 ? body : "c" + std::to_string(component) + ":" + body;
  }
  bool operator==(const BasisLabel&) const = default;
};

/// Finite orthonormal basis of one of the subspaces of L^2 used by the operators.
template <typename T>
class BasisSpec {
 public:
  static BasisSpec full_l2(int N);
  static BasisSpec hardy_plus(int N);
  static BasisSpec hardy_minus(int N);
  /// K_theta with its Takenaka-Malmquist basis; N is the expansion radius hint.
  static BasisSpec model_space(const BlaschkeProduct<T>& theta, int N, std::string name = "theta");
  /// {z^-N, ..., z^-1} followed by {theta z^0, ..., theta z^M}.
  static BasisSpec dual_model(const BlaschkeProduct<T>& theta, int N, int M, std::string name = "theta");
  static BasisSpec direct_sum(const std::vector<BasisSpec>& parts);

  SpaceKind kind() const { return kind_; }
  int window_radius() const { return n_; }
  int positive_count() const { return m_; }
  const std::optional<BlaschkeProduct<T>>& inner_function() const { return inner_; }
  const std::string& inner_name() const { return inner_name_; }

  /// Summands of a direct sum; a plain space is its own single component.
  const std::vector<BasisSpec>& parts() const { return parts_; }
  int component_count() const { return kind_ == SpaceKind::DirectSum ? static_cast<int>(parts_.size()) : 1; }
  const BasisSpec& component(int c) const { return kind_ == SpaceKind::DirectSum ? parts_[c] : *this; }
  /// First basis index of component c.
  Eigen::Index component_offset(int c) const;

  const std::vector<BasisLabel>& labels() const { return labels_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(labels_.size()); }

  bool operator==(const BasisSpec& other) const;
  bool operator!=(const BasisSpec& other) const { return !(*this == other); }

 private:
  SpaceKind kind_ = SpaceKind::FullL2;
  int n_ = 0;
  int m_ = 0;
  std::optional<BlaschkeProduct<T>> inner_;
  std::string inner_name_;
  std::vector<BasisSpec> parts_;
  std::vector<BasisLabel> labels_;
};

/// Basis vectors written as Fourier coefficient columns on a window of radius W.
template <typename T>
struct BasisExpansion {
  int radius = 0;
  std::vector<int> component;  // component of each column
  CMatrix<T> vectors;          // (2W + 1) x size
};

/// Throws WindowOverflow when some basis vector does not fit in the window.
template <typename T>
BasisExpansion<T> expand(const BasisSpec<T>& spec, int W);

/// Takenaka-Malmquist vectors sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) prod_{j<k} b_{a_j}
/// with natural (trimmed) support.
template <typename T>
std::vector<FourierVector<T>> takenaka_malmquist_vectors(const BlaschkeProduct<T>& theta,
                                                         T cutoff = T(1e-18));

/// Indices whose nominal Fourier extent leaves at least `margin` modes to the window edge.
template <typename T>
std::vector<Eigen::Index> interior_indices(const BasisSpec<T>& spec, int margin);

/// Coordinates of a function (one per component) in the basis of spec.
template <typename T>
CVector<T> coordinates(const BasisSpec<T>& spec, const std::vector<FourierVector<T>>& parts, int W);

/// Inverse of coordinates: the function (one per component) with these coordinates.
template <typename T>
std::vector<FourierVector<T>> synthesize(const BasisSpec<T>& spec, const CVector<T>& coords, int W);

/// f = minus + theta * plus with minus in H^2_- and plus in H^2.
template <typename T>
struct DualModelVector {
  FourierVector<T> minus;
  FourierVector<T> plus;
};

template <typename T>
CVector<T> to_coordinates(const BasisSpec<T>& dual_model, const DualModelVector<T>& v);

template <typename T>
DualModelVector<T> from_coordinates(const BasisSpec<T>& dual_model, const CVector<T>& coords);

/// Compression of a linear map between two finite orthonormal bases together
/// with the per-column leakage || Op(e_j) - sum_i entries(i, j) f_i ||.
template <typename T>
struct OperatorMatrix {
  BasisSpec<T> domain;
  BasisSpec<T> codomain;
  CMatrix<T> entries;
  RVector<T> leakage;  // empty when unknown

  OperatorMatrix adjoint() const;
  OperatorMatrix operator*(const OperatorMatrix& rhs) const;
};

/// Columns whose leakage is below tol * (1 + column norm). All columns when leakage is unknown.
template <typename T>
std::vector<Eigen::Index> captured_columns(const OperatorMatrix<T>& op, T tol = T(1e-11));

template <typename T>
using FieldMap = std::function<std::vector<FourierVector<T>>(const std::vector<FourierVector<T>>&)>;

/// entries(i, j) = < codomain_i, formula(domain_j) >, computed on a window of radius W.
template <typename T>
OperatorMatrix<T> assemble(const BasisSpec<T>& domain, const BasisSpec<T>& codomain, int W,
                           const FieldMap<T>& formula);

/// P_theta = P_+ - theta P_+ conj(theta) on FullL2(N). Requires N >= deg theta + 16.
template <typename T>
OperatorMatrix<T> model_projection_matrix(const BlaschkeProduct<T>& theta, int N);

template <typename T>
BasisSpec<T> dual_model_basis(const BlaschkeProduct<T>& theta, int N, int M);

/// Requires N >= deg theta + 16.
template <typename T>
BasisSpec<T> takenaka_malmquist_basis(const BlaschkeProduct<T>& theta, int N);

/// Matrix L of an antilinear map: apply(c) = L * conj(c).
template <typename T>
struct AntilinearMatrix {
  BasisSpec<T> basis;
  CMatrix<T> matrix;
  CVector<T> apply(const CVector<T>& c) const { return matrix * c.conjugate(); }
};

/// C_theta f = theta conj(z) conj(f) compressed to FullL2(N). Requires N >= deg theta + 16.
template <typename T>
AntilinearMatrix<T> conjugation_matrix(const BlaschkeProduct<T>& theta, int N);

#define DTLAB_SPACES_INSTANTIATE(EXTERN, T)                                                           \
  EXTERN template class BasisSpec<T>;                                                                 \
  EXTERN template struct OperatorMatrix<T>;                                                           \
  EXTERN template BasisExpansion<T> expand<T>(const BasisSpec<T>&, int);                              \
  EXTERN template std::vector<FourierVector<T>> takenaka_malmquist_vectors<T>(                        \
      const BlaschkeProduct<T>&, T);                                                                  \
  EXTERN template std::vector<Eigen::Index> interior_indices<T>(const BasisSpec<T>&, int);            \
  EXTERN template CVector<T> coordinates<T>(const BasisSpec<T>&, const std::vector<FourierVector<T>>&, \
                                            int);                                                     \
  EXTERN template std::vector<FourierVector<T>> synthesize<T>(const BasisSpec<T>&, const CVector<T>&, \
                                                              int);                                   \
  EXTERN template CVector<T> to_coordinates<T>(const BasisSpec<T>&, const DualModelVector<T>&);       \
  EXTERN template DualModelVector<T> from_coordinates<T>(const BasisSpec<T>&, const CVector<T>&);     \
  EXTERN template std::vector<Eigen::Index> captured_columns<T>(const OperatorMatrix<T>&, T);         \
  EXTERN template OperatorMatrix<T> assemble<T>(const BasisSpec<T>&, const BasisSpec<T>&, int,        \
                                                const FieldMap<T>&);                                  \
  EXTERN template OperatorMatrix<T> model_projection_matrix<T>(const BlaschkeProduct<T>&, int);       \
  EXTERN template BasisSpec<T> dual_model_basis<T>(const BlaschkeProduct<T>&, int, int);              \
  EXTERN template BasisSpec<T> takenaka_malmquist_basis<T>(const BlaschkeProduct<T>&, int);           \
  EXTERN template AntilinearMatrix<T> conjugation_matrix<T>(const BlaschkeProduct<T>&, int);

DTLAB_SPACES_INSTANTIATE(extern, double)

}  // namespace dtlab
