#pragma once

#include <algorithm>
#include <cmath>

#include "dtlab/impl/inner_rational.ipp"
#include "dtlab/spaces.hpp"

namespace dtlab {

namespace detail {

template <typename T>
FourierVector<T> mul(const FourierVector<T>& a, const FourierVector<T>& b, int W) {
  return multiply(a, b, W, MultiplyMode::Strict).value;
}

template <typename T>
FourierVector<T> model_project(const FourierVector<T>& u, const FourierVector<T>& theta,
                               const FourierVector<T>& theta_bar, int W) {
  const auto p = project_plus(u);
  return p - mul(theta, project_plus(mul(theta_bar, p, W)), W);
}

template <typename T>
void check_window(const FourierVector<T>& f, int W, const char* what) {
  require(natural_radius(f) <= W, ErrorKind::WindowOverflow,
          std::string(what) + " does not fit in the working window");
}

}  // namespace detail

template <typename T>
BasisSpec<T> BasisSpec<T>::full_l2(int N) {
  require(N >= 0, ErrorKind::Precondition, "window radius must be nonnegative");
  BasisSpec s;
  s.kind_ = SpaceKind::FullL2;
  s.n_ = N;
  for (int k = -N; k <= N; ++k) s.labels_.push_back({BasisLabel::Kind::Monomial, k});
  return s;
}

template <typename T>
BasisSpec<T> BasisSpec<T>::hardy_plus(int N) {
  require(N >= 0, ErrorKind::Precondition, "window radius must be nonnegative");
  BasisSpec s;
  s.kind_ = SpaceKind::HardyPlus;
  s.n_ = N;
  for (int k = 0; k <= N; ++k) s.labels_.push_back({BasisLabel::Kind::Monomial, k});
  return s;
}

template <typename T>
BasisSpec<T> BasisSpec<T>::hardy_minus(int N) {
  require(N >= 1, ErrorKind::Precondition, "H^2_- window needs N >= 1");
  BasisSpec s;
  s.kind_ = SpaceKind::HardyMinus;
  s.n_ = N;
  for (int k = -N; k <= -1; ++k) s.labels_.push_back({BasisLabel::Kind::Monomial, k});
  return s;
}

template <typename T>
BasisSpec<T> BasisSpec<T>::model_space(const BlaschkeProduct<T>& theta, int N, std::string name) {
  BasisSpec s;
  s.kind_ = SpaceKind::ModelSpace;
  s.n_ = N;
  s.inner_ = theta;
  s.inner_name_ = name;
  for (int k = 0; k < theta.degree(); ++k) s.labels_.push_back({BasisLabel::Kind::ModelElement, k, -1, name});
  return s;
}

template <typename T>
BasisSpec<T> BasisSpec<T>::dual_model(const BlaschkeProduct<T>& theta, int N, int M, std::string name) {
  require(N >= 1 && M >= 0, ErrorKind::Precondition, "dual model window needs N >= 1 and M >= 0");
  BasisSpec s;
  s.kind_ = SpaceKind::DualModel;
  s.n_ = N;
  s.m_ = M;
  s.inner_ = theta;
  s.inner_name_ = name;
  for (int k = -N; k <= -1; ++k) s.labels_.push_back({BasisLabel::Kind::Monomial, k, -1, name});
  for (int k = 0; k <= M; ++k) s.labels_.push_back({BasisLabel::Kind::InnerShift, k, -1, name});
  return s;
}

template <typename T>
BasisSpec<T> BasisSpec<T>::direct_sum(const std::vector<BasisSpec>& parts) {
  require(!parts.empty(), ErrorKind::Precondition, "direct sum needs at least one summand");
  BasisSpec s;
  s.kind_ = SpaceKind::DirectSum;
  for (std::size_t c = 0; c < parts.size(); ++c) {
    require(parts[c].kind() != SpaceKind::DirectSum, ErrorKind::Precondition, "nested direct sums are flattened by the caller");
    s.parts_.push_back(parts[c]);
    for (auto label : parts[c].labels()) {
      label.component = static_cast<int>(c);
      s.labels_.push_back(label);
    }
  }
  return s;
}

template <typename T>
Eigen::Index BasisSpec<T>::component_offset(int c) const {
  Eigen::Index offset = 0;
  for (int i = 0; i < c; ++i) offset += component(i).size();
  return offset;
}

template <typename T>
bool BasisSpec<T>::operator==(const BasisSpec& other) const {
  if (kind_ != other.kind_ || n_ != other.n_ || m_ != other.m_ || labels_ != other.labels_) return false;
  if (inner_.has_value() != other.inner_.has_value()) return false;
  if (inner_ && (inner_->zeros() != other.inner_->zeros() || inner_->constant() != other.inner_->constant()))
    return false;
  if (parts_.size() != other.parts_.size()) return false;
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (!(parts_[i] == other.parts_[i])) return false;
  return true;
}

template <typename T>
std::vector<FourierVector<T>> takenaka_malmquist_vectors(const BlaschkeProduct<T>& theta, T cutoff) {
  std::vector<FourierVector<T>> out;
  auto prefix = FourierVector<T>::constant(Complex<T>(1));
  for (const auto& a : theta.zeros()) {
    FourierVector<T> kernel;
    if (a == Complex<T>(0)) {
      kernel = FourierVector<T>::constant(Complex<T>(1));
    } else {
      const int len = detail::geometric_length(std::abs(a), cutoff);
      CVector<T> c = CVector<T>::Zero(2 * len + 1);
      const T scale = std::sqrt(T(1) - std::norm(a));
      Complex<T> power(1);
      for (int k = 0; k <= len; ++k) {
        c(len + k) = scale * power;
        power *= std::conj(a);
      }
      kernel = FourierVector<T>(len, std::move(c));
    }
    out.push_back(detail::series_product(prefix, kernel, cutoff));
    prefix = detail::series_product(prefix, blaschke_natural_series(BlaschkeProduct<T>::factor(a), cutoff), cutoff);
  }
  return out;
}

template <typename T>
BasisExpansion<T> expand(const BasisSpec<T>& spec, int W) {
  BasisExpansion<T> e;
  e.radius = W;
  e.vectors = CMatrix<T>::Zero(2 * W + 1, spec.size());
  Eigen::Index col = 0;
  for (int c = 0; c < spec.component_count(); ++c) {
    const BasisSpec<T>& part = spec.component(c);
    auto put = [&](const FourierVector<T>& f) {
      detail::check_window(f, W, "basis vector");
      e.vectors.col(col) = f.resized(W).coeffs();
      e.component.push_back(c);
      ++col;
    };
    switch (part.kind()) {
      case SpaceKind::FullL2:
      case SpaceKind::HardyPlus:
      case SpaceKind::HardyMinus:
        for (const auto& label : part.labels()) put(FourierVector<T>::monomial(label.index, 0));
        break;
      case SpaceKind::DualModel: {
        const auto theta = blaschke_natural_series(*part.inner_function());
        for (const auto& label : part.labels()) {
          if (label.kind == BasisLabel::Kind::Monomial) {
            put(FourierVector<T>::monomial(label.index, 0));
          } else {
            const int r = natural_radius(theta) + label.index;
            put(theta.resized(r).shifted(label.index));
          }
        }
        break;
      }
      case SpaceKind::ModelSpace:
        for (const auto& v : takenaka_malmquist_vectors(*part.inner_function())) put(v);
        break;
      case SpaceKind::DirectSum:
        throw Error(ErrorKind::Precondition, "nested direct sum");
    }
  }
  return e;
}

template <typename T>
std::vector<Eigen::Index> interior_indices(const BasisSpec<T>& spec, int margin) {
  std::vector<Eigen::Index> out;
  Eigen::Index idx = 0;
  for (int c = 0; c < spec.component_count(); ++c) {
    const BasisSpec<T>& part = spec.component(c);
    for (const auto& label : part.labels()) {
      bool inside = true;
      if (part.kind() == SpaceKind::DualModel && label.kind == BasisLabel::Kind::InnerShift) {
        inside = label.index <= part.positive_count() - margin;
      } else if (label.kind == BasisLabel::Kind::Monomial) {
        inside = std::abs(label.index) <= part.window_radius() - margin;
      }
      if (inside) out.push_back(idx);
      ++idx;
    }
  }
  return out;
}

template <typename T>
CVector<T> coordinates(const BasisSpec<T>& spec, const std::vector<FourierVector<T>>& parts, int W) {
  require(static_cast<int>(parts.size()) == spec.component_count(), ErrorKind::BasisMismatch,
          "one function per component is required");
  const auto e = expand(spec, W);
  std::vector<CVector<T>> dense;
  for (const auto& f : parts) {
    detail::check_window(f, W, "function");
    dense.push_back(f.resized(W).coeffs());
  }
  CVector<T> out(spec.size());
  for (Eigen::Index j = 0; j < spec.size(); ++j) out(j) = e.vectors.col(j).dot(dense[e.component[j]]);
  return out;
}

template <typename T>
std::vector<FourierVector<T>> synthesize(const BasisSpec<T>& spec, const CVector<T>& coords, int W) {
  require(coords.size() == spec.size(), ErrorKind::BasisMismatch, "coordinate count mismatch");
  const auto e = expand(spec, W);
  std::vector<CVector<T>> dense(spec.component_count(), CVector<T>::Zero(2 * W + 1));
  for (Eigen::Index j = 0; j < spec.size(); ++j) dense[e.component[j]] += e.vectors.col(j) * coords(j);
  std::vector<FourierVector<T>> out;
  for (auto& d : dense) out.emplace_back(W, std::move(d));
  return out;
}

template <typename T>
CVector<T> to_coordinates(const BasisSpec<T>& dual_model, const DualModelVector<T>& v) {
  require(dual_model.kind() == SpaceKind::DualModel, ErrorKind::BasisMismatch, "expected a dual model basis");
  const int N = dual_model.window_radius();
  const int M = dual_model.positive_count();
  CVector<T> c(dual_model.size());
  for (int k = -N; k <= -1; ++k) c(k + N) = v.minus[k];
  for (int k = 0; k <= M; ++k) c(N + k) = v.plus[k];
  return c;
}

template <typename T>
DualModelVector<T> from_coordinates(const BasisSpec<T>& dual_model, const CVector<T>& coords) {
  require(dual_model.kind() == SpaceKind::DualModel, ErrorKind::BasisMismatch, "expected a dual model basis");
  require(coords.size() == dual_model.size(), ErrorKind::BasisMismatch, "coordinate count mismatch");
  const int N = dual_model.window_radius();
  const int M = dual_model.positive_count();
  CVector<T> minus = CVector<T>::Zero(2 * N + 1);
  CVector<T> plus = CVector<T>::Zero(2 * M + 1);
  minus.head(N) = coords.head(N);
  plus.tail(M + 1) = coords.tail(M + 1);
  return {FourierVector<T>(N, std::move(minus)), FourierVector<T>(M, std::move(plus))};
}

template <typename T>
OperatorMatrix<T> OperatorMatrix<T>::adjoint() const {
  return {codomain, domain, entries.adjoint(), RVector<T>()};
}

template <typename T>
OperatorMatrix<T> OperatorMatrix<T>::operator*(const OperatorMatrix& rhs) const {
  require(domain == rhs.codomain, ErrorKind::BasisMismatch, "composition requires matching bases");
  return {rhs.domain, codomain, entries * rhs.entries, RVector<T>()};
}

template <typename T>
std::vector<Eigen::Index> captured_columns(const OperatorMatrix<T>& op, T tol) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index j = 0; j < op.entries.cols(); ++j) {
    if (op.leakage.size() == 0 || op.leakage(j) <= tol * (T(1) + op.entries.col(j).norm())) out.push_back(j);
  }
  return out;
}

template <typename T>
OperatorMatrix<T> assemble(const BasisSpec<T>& domain, const BasisSpec<T>& codomain, int W,
                           const FieldMap<T>& formula) {
  const auto in = expand(domain, W);
  const auto out = expand(codomain, W);
  const int n_in = domain.component_count();
  const int n_out = codomain.component_count();
  const Eigen::Index n = domain.size();
  const Eigen::Index L = 2 * W + 1;

  std::vector<CMatrix<T>> images(n_out, CMatrix<T>::Zero(L, n));
  std::vector<FourierVector<T>> field(n_in, FourierVector<T>(W));
  for (Eigen::Index j = 0; j < n; ++j) {
    const int c = in.component[j];
    field[c] = FourierVector<T>(W, in.vectors.col(j));
    const auto image = formula(field);
    require(static_cast<int>(image.size()) == n_out, ErrorKind::BasisMismatch, "formula returned the wrong arity");
    for (int o = 0; o < n_out; ++o) {
      detail::check_window(image[o], W, "operator image");
      images[o].col(j) = image[o].resized(W).coeffs();
    }
    field[c] = FourierVector<T>(W);
  }

  OperatorMatrix<T> op{domain, codomain, CMatrix<T>::Zero(codomain.size(), n), RVector<T>::Zero(n)};
  RVector<T> leak_sq = RVector<T>::Zero(n);
  for (int o = 0; o < n_out; ++o) {
    const Eigen::Index offset = codomain.component_offset(o);
    const Eigen::Index rows = codomain.component(o).size();
    const auto U = out.vectors.middleCols(offset, rows);
    op.entries.middleRows(offset, rows) = U.adjoint() * images[o];
    const CMatrix<T> residual = images[o] - U * op.entries.middleRows(offset, rows);
    leak_sq += residual.colwise().squaredNorm().transpose();
  }
  op.leakage = leak_sq.cwiseSqrt();
  return op;
}

template <typename T>
OperatorMatrix<T> model_projection_matrix(const BlaschkeProduct<T>& theta, int N) {
  require(N >= theta.degree() + 16, ErrorKind::WindowOverflow, "window too small: need N >= deg theta + 16");
  const auto th = blaschke_natural_series(theta);
  const auto thb = th.conjugated();
  const int W = N + 2 * natural_radius(th) + 8;
  const auto basis = BasisSpec<T>::full_l2(N);
  return assemble<T>(basis, basis, W, [&](const std::vector<FourierVector<T>>& u) {
    return std::vector<FourierVector<T>>{detail::model_project(u[0], th.resized(W), thb.resized(W), W)};
  });
}

template <typename T>
BasisSpec<T> dual_model_basis(const BlaschkeProduct<T>& theta, int N, int M) {
  return BasisSpec<T>::dual_model(theta, N, M);
}

template <typename T>
BasisSpec<T> takenaka_malmquist_basis(const BlaschkeProduct<T>& theta, int N) {
  require(N >= theta.degree() + 16, ErrorKind::WindowOverflow, "window too small: need N >= deg theta + 16");
  return BasisSpec<T>::model_space(theta, N);
}

template <typename T>
AntilinearMatrix<T> conjugation_matrix(const BlaschkeProduct<T>& theta, int N) {
  require(N >= theta.degree() + 16, ErrorKind::WindowOverflow, "window too small: need N >= deg theta + 16");
  const auto th = blaschke_natural_series(theta);
  const int W = N + natural_radius(th) + 2;
  const auto basis = BasisSpec<T>::full_l2(N);
  CMatrix<T> L = CMatrix<T>::Zero(basis.size(), basis.size());
  for (int k = -N; k <= N; ++k) {
    const auto image = detail::mul(th.resized(W), FourierVector<T>::monomial(-k - 1, W), W);
    L.col(k + N) = image.resized(N).coeffs();
  }
  return {basis, std::move(L)};
}

}  // namespace dtlab
