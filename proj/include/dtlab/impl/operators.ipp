#pragma once

#include <algorithm>

#include "dtlab/impl/spaces.ipp"
#include "dtlab/operators.hpp"

namespace dtlab {

namespace detail {

template <typename T>
FourierVector<T> exact_product(const FourierVector<T>& a, const FourierVector<T>& b) {
  return multiply(a, b, natural_radius(a) + natural_radius(b), MultiplyMode::Strict).value;
}

template <typename T>
int basis_extent(const BasisSpec<T>& spec) {
  int e = 0;
  for (int c = 0; c < spec.component_count(); ++c) {
    const auto& part = spec.component(c);
    switch (part.kind()) {
      case SpaceKind::DualModel:
        e = std::max({e, part.window_radius(),
                      part.positive_count() + natural_radius(blaschke_natural_series(*part.inner_function()))});
        break;
      case SpaceKind::ModelSpace:
        for (const auto& v : takenaka_malmquist_vectors(*part.inner_function())) e = std::max(e, natural_radius(v));
        e = std::max(e, part.window_radius());
        break;
      default:
        e = std::max(e, part.window_radius());
    }
  }
  return e;
}

// Symbols lifted to the working window, so the formulas can multiply strictly.
template <typename T>
struct Lifted {
  int W;
  FourierVector<T> operator()(const FourierVector<T>& f) const { return f.resized(W); }
  FourierVector<T> mul(const FourierVector<T>& a, const FourierVector<T>& b) const { return detail::mul(a, b, W); }
};

template <typename T>
SymbolMatrix<T> lift(const SymbolMatrix<T>& m, int W) {
  SymbolMatrix<T> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = m[i][j].resized(W);
  return out;
}

template <typename T>
int symbol_extent(const SymbolMatrix<T>& m) {
  int e = 0;
  for (const auto& row : m)
    for (const auto& s : row) e = std::max(e, natural_radius(s));
  return e;
}

template <typename T>
BasisSpec<T> l2_pair(int N) {
  return BasisSpec<T>::direct_sum({BasisSpec<T>::full_l2(N), BasisSpec<T>::full_l2(N)});
}

}  // namespace detail

template <typename T>
int working_radius(int base, const std::vector<const FourierVector<T>*>& symbols) {
  int e = 0;
  for (const auto* s : symbols) e += natural_radius(*s);
  return base + 2 * e + 8;
}

template <typename T>
OperatorMatrix<T> toeplitz_matrix(const FourierVector<T>& phi, int N) {
  const int W = working_radius<T>(N, {&phi});
  const detail::Lifted<T> L{W};
  const auto p = L(phi);
  const auto basis = BasisSpec<T>::hardy_plus(N);
  return assemble<T>(basis, basis, W, [&](const std::vector<FourierVector<T>>& u) {
    return std::vector<FourierVector<T>>{project_plus(L.mul(p, u[0]))};
  });
}

template <typename T>
OperatorMatrix<T> block_toeplitz_matrix(const SymbolMatrix<T>& Phi, int N) {
  const int W = N + 2 * detail::symbol_extent(Phi) + 8;
  const detail::Lifted<T> L{W};
  const auto S = detail::lift(Phi, W);
  const auto basis = BasisSpec<T>::direct_sum({BasisSpec<T>::hardy_plus(N), BasisSpec<T>::hardy_plus(N)});
  return assemble<T>(basis, basis, W, [&](const std::vector<FourierVector<T>>& v) {
    std::vector<FourierVector<T>> out;
    for (int i = 0; i < 2; ++i) out.push_back(project_plus(L.mul(S[i][0], v[0]) + L.mul(S[i][1], v[1])));
    return out;
  });
}

template <typename T>
OperatorMatrix<T> truncated_toeplitz_matrix(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                                            const BlaschkeProduct<T>& alpha, int N) {
  require(N >= theta.degree() + alpha.degree() + natural_radius(phi) + 16, ErrorKind::WindowOverflow,
          "window too small: need N >= deg theta + deg alpha + symbol extent + 16");
  const auto domain = BasisSpec<T>::model_space(theta, N, "theta");
  const auto codomain = BasisSpec<T>::model_space(alpha, N, "alpha");
  const auto th = blaschke_natural_series(theta);
  const auto al = blaschke_natural_series(alpha);
  const int base = std::max(detail::basis_extent(domain), detail::basis_extent(codomain));
  const int W = working_radius<T>(base, {&phi, &th, &al});
  const detail::Lifted<T> L{W};
  const auto p = L(phi), a = L(al), ab = L(al.conjugated());
  return assemble<T>(domain, codomain, W, [&](const std::vector<FourierVector<T>>& u) {
    return std::vector<FourierVector<T>>{detail::model_project(L.mul(p, u[0]), a, ab, W)};
  });
}

template <typename T>
OperatorMatrix<T> dual_truncated_matrix(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                                        const BlaschkeProduct<T>& alpha, int N, int M) {
  const auto domain = BasisSpec<T>::dual_model(theta, N, M, "theta");
  const auto codomain = BasisSpec<T>::dual_model(alpha, N, M, "alpha");
  const auto th = blaschke_natural_series(theta);
  const auto al = blaschke_natural_series(alpha);
  const int base = std::max(detail::basis_extent(domain), detail::basis_extent(codomain));
  const int W = working_radius<T>(base, {&phi, &th, &al});
  const detail::Lifted<T> L{W};
  const auto p = L(phi), a = L(al), ab = L(al.conjugated());
  return assemble<T>(domain, codomain, W, [&](const std::vector<FourierVector<T>>& f) {
    const auto pf = L.mul(p, f[0]);
    return std::vector<FourierVector<T>>{project_minus(pf) + L.mul(a, project_plus(L.mul(ab, pf)))};
  });
}

template <typename T>
PairedSymbols<T> paired_symbols(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                                const BlaschkeProduct<T>& alpha) {
  const auto th = blaschke_natural_series(theta);
  const auto ab = blaschke_natural_series(alpha).conjugated();
  const auto one = FourierVector<T>::constant(Complex<T>(1));
  const auto zero = FourierVector<T>(0);
  const auto phi_theta = detail::exact_product(phi, th);
  PairedSymbols<T> s;
  s.A = {{{phi_theta, -one}, {detail::exact_product(phi_theta, ab), zero}}};
  s.B = {{{phi, zero}, {detail::exact_product(ab, phi), -one}}};
  return s;
}

template <typename T>
PairedSymbols<T> paired_symbols_same_inner(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta) {
  const auto th = blaschke_natural_series(theta);
  const auto one = FourierVector<T>::constant(Complex<T>(1));
  const auto zero = FourierVector<T>(0);
  PairedSymbols<T> s;
  s.A = {{{detail::exact_product(phi, th), -one}, {phi, zero}}};
  s.B = {{{phi, zero}, {detail::exact_product(th.conjugated(), phi), -one}}};
  return s;
}

template <typename T>
OperatorMatrix<T> paired_operator_matrix(const PairedSymbols<T>& symbols, int N) {
  const int W = N + 2 * std::max(detail::symbol_extent(symbols.A), detail::symbol_extent(symbols.B)) + 8;
  const detail::Lifted<T> L{W};
  const auto A = detail::lift(symbols.A, W);
  const auto B = detail::lift(symbols.B, W);
  const auto basis = detail::l2_pair<T>(N);
  return assemble<T>(basis, basis, W, [&](const std::vector<FourierVector<T>>& v) {
    const FourierVector<T> p[2] = {project_plus(v[0]), project_plus(v[1])};
    const FourierVector<T> m[2] = {project_minus(v[0]), project_minus(v[1])};
    std::vector<FourierVector<T>> out;
    for (int i = 0; i < 2; ++i)
      out.push_back(L.mul(A[i][0], p[0]) + L.mul(A[i][1], p[1]) + L.mul(B[i][0], m[0]) + L.mul(B[i][1], m[1]));
    return out;
  });
}

template <typename T>
OperatorMatrix<T> paired_adjoint_matrix(const PairedSymbols<T>& symbols, int N) {
  const int W = N + 2 * std::max(detail::symbol_extent(symbols.A), detail::symbol_extent(symbols.B)) + 8;
  const detail::Lifted<T> L{W};
  SymbolMatrix<T> As, Bs;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      As[i][j] = symbols.A[j][i].conjugated().resized(W);
      Bs[i][j] = symbols.B[j][i].conjugated().resized(W);
    }
  const auto basis = detail::l2_pair<T>(N);
  return assemble<T>(basis, basis, W, [&](const std::vector<FourierVector<T>>& v) {
    std::vector<FourierVector<T>> out;
    for (int i = 0; i < 2; ++i) {
      out.push_back(project_plus(L.mul(As[i][0], v[0]) + L.mul(As[i][1], v[1])) +
                    project_minus(L.mul(Bs[i][0], v[0]) + L.mul(Bs[i][1], v[1])));
    }
    return out;
  });
}

template <typename T>
OperatorMatrix<T> extension_E_matrix(const BlaschkeProduct<T>& alpha, int N) {
  const auto al = blaschke_natural_series(alpha);
  const int W = working_radius<T>(N, {&al});
  const detail::Lifted<T> L{W};
  const auto a = L(al), ab = L(al.conjugated());
  const auto basis = detail::l2_pair<T>(N);
  return assemble<T>(basis, basis, W, [&](const std::vector<FourierVector<T>>& v) {
    const auto abv = L.mul(ab, v[0]);
    return std::vector<FourierVector<T>>{L.mul(a, project_minus(abv)) + L.mul(a, project_plus(v[1])),
                                         project_plus(abv) + project_minus(v[1])};
  });
}

template <typename T>
ExtensionF<T> extension_F_matrix(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                                 const BlaschkeProduct<T>& alpha, int N) {
  const auto th_s = blaschke_natural_series(theta);
  const auto al_s = blaschke_natural_series(alpha);
  const auto big = BasisSpec<T>::direct_sum({BasisSpec<T>::dual_model(theta, N, N, "theta"),
                                             BasisSpec<T>::model_space(alpha, N, "alpha"), BasisSpec<T>::full_l2(N)});
  const auto pair = detail::l2_pair<T>(N);
  const int W = working_radius<T>(detail::basis_extent(big), {&phi, &th_s, &al_s});
  const detail::Lifted<T> L{W};
  const auto p = L(phi), th = L(th_s), thb = L(th_s.conjugated()), a = L(al_s), ab = L(al_s.conjugated());

  auto F = assemble<T>(big, pair, W, [&](const std::vector<FourierVector<T>>& in) {
    const auto& f = in[0];
    const auto& g = in[1];
    const auto& h = in[2];
    const auto q = f - detail::model_project(f, th, thb, W);
    const auto pq = L.mul(p, q);
    auto second = project_plus(pq) + project_minus(L.mul(ab, pq)) - detail::model_project(g, a, ab, W) -
                  (project_minus(h) + L.mul(a, project_plus(h)));
    return std::vector<FourierVector<T>>{project_minus(f) + project_plus(L.mul(thb, f)), second};
  });

  auto F_inverse = assemble<T>(pair, big, W, [&](const std::vector<FourierVector<T>>& in) {
    const auto& x = in[0];
    const auto& y = in[1];
    const auto s = project_minus(x) + L.mul(th, project_plus(x));
    const auto ps = L.mul(p, s);
    return std::vector<FourierVector<T>>{
        s, detail::model_project(ps, a, ab, W) - detail::model_project(y, a, ab, W),
        L.mul(ab, ps) - (project_minus(y) + project_plus(L.mul(ab, y)))};
  });
  return {std::move(F), std::move(F_inverse)};
}

template <typename T>
InverseSymbol<T> inverse_symbol(const FourierVector<T>& phi, int N) {
  const int r = std::max(N, natural_radius(phi));
  const std::size_t size = detail::next_power_of_two(static_cast<std::size_t>(std::max(8 * r + 8, 1024)));
  auto grid = to_grid(phi.resized(natural_radius(phi)), size);
  T peak(0);
  for (const auto& s : grid.samples()) peak = std::max(peak, std::abs(s));
  std::vector<Complex<T>> inv(size);
  for (std::size_t j = 0; j < size; ++j) {
    require(std::abs(grid[j]) > T(1e-10) * std::max(peak, T(1)), ErrorKind::NonInvertibleSymbol,
            "symbol vanishes on the unit circle");
    inv[j] = Complex<T>(1) / grid[j];
  }
  const int full = static_cast<int>(size / 2) - 1;
  const auto coeffs = trim(from_grid(BoundaryGrid<T>(std::move(inv)), full), T(1e-15));
  const T total = coeffs.norm();
  const auto kept = coeffs.resized(N);
  const T outside = std::sqrt(std::max(T(0), total * total - kept.norm() * kept.norm()));
  return {kept, total > T(0) ? outside / total : T(0)};
}

template <typename T>
GMatrix<T> g_matrix(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta, const BlaschkeProduct<T>& alpha,
                    int N) {
  const auto inv = inverse_symbol(phi, N);
  GMatrix<T> g;
  g.symbol = {{{blaschke_natural_series(alpha).conjugated(), FourierVector<T>(0)},
               {detail::shrink_to_support(inv.value), blaschke_natural_series(theta)}}};
  g.tail_mass = inv.tail_mass;
  g.toeplitz = block_toeplitz_matrix(g.symbol, N);
  return g;
}

}  // namespace dtlab
