#pragma once

#include <array>

#include "dtlab/spaces.hpp"

namespace dtlab {

template <typename T>
using SymbolMatrix = std::array<std::array<FourierVector<T>, 2>, 2>;

/// Symbols of the paired operator A P_+ + B P_- on L^2 x L^2.
template <typename T>
struct PairedSymbols {
  SymbolMatrix<T> A;
  SymbolMatrix<T> B;
};

/// Working window radius for a builder whose inputs live in |k| <= base and
/// which multiplies by the given symbols.
template <typename T>
int working_radius(int base, const std::vector<const FourierVector<T>*>& symbols);

/// T_phi on H^2 truncated to z^0..z^N.
template <typename T>
OperatorMatrix<T> toeplitz_matrix(const FourierVector<T>& phi, int N);

/// T_Phi on (H^2)^2 truncated to z^0..z^N in each component.
template <typename T>
OperatorMatrix<T> block_toeplitz_matrix(const SymbolMatrix<T>& Phi, int N);

/// A_phi^{theta,alpha} = P_alpha phi P_theta : K_theta -> K_alpha in Takenaka-Malmquist bases.
/// Requires N >= deg theta + deg alpha + (symbol extent) + 16.
template <typename T>
OperatorMatrix<T> truncated_toeplitz_matrix(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                                            const BlaschkeProduct<T>& alpha, int N);

/// D_phi^{theta,alpha} f = P_-(phi f) + alpha P_+(conj(alpha) phi f) from
/// DualModel(theta, N, M) to DualModel(alpha, N, M).
template <typename T>
OperatorMatrix<T> dual_truncated_matrix(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                                        const BlaschkeProduct<T>& alpha, int N, int M);

/// A = [[phi theta, -1], [phi theta conj(alpha), 0]], B = [[phi, 0], [conj(alpha) phi, -1]].
template <typename T>
PairedSymbols<T> paired_symbols(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                                const BlaschkeProduct<T>& alpha);

/// The alpha = theta variant A0 = [[phi theta, -1], [phi, 0]], B0 = [[phi, 0], [conj(theta) phi, -1]].
template <typename T>
PairedSymbols<T> paired_symbols_same_inner(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta);

/// A P_+ + B P_- on FullL2(N) x FullL2(N).
template <typename T>
OperatorMatrix<T> paired_operator_matrix(const PairedSymbols<T>& symbols, int N);

/// P_+ A* + P_- B* on FullL2(N) x FullL2(N).
template <typename T>
OperatorMatrix<T> paired_adjoint_matrix(const PairedSymbols<T>& symbols, int N);

/// E = [[alpha P_- conj(alpha), alpha P_+], [P_+ conj(alpha), P_-]] on FullL2(N) x FullL2(N).
template <typename T>
OperatorMatrix<T> extension_E_matrix(const BlaschkeProduct<T>& alpha, int N);

template <typename T>
struct ExtensionF {
  OperatorMatrix<T> F;          // (DualModel(theta) + K_alpha) + L^2  ->  L^2 + L^2
  OperatorMatrix<T> F_inverse;  // L^2 + L^2  ->  (DualModel(theta) + K_alpha) + L^2
};

template <typename T>
ExtensionF<T> extension_F_matrix(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta,
                                 const BlaschkeProduct<T>& alpha, int N);

/// 1 / phi sampled on the circle and re-expanded on |k| <= N.
template <typename T>
struct InverseSymbol {
  FourierVector<T> value;
  T tail_mass = T(0);  // relative l2 mass of the computed coefficients outside |k| <= N
};

/// Throws NonInvertibleSymbol when phi nearly vanishes on the circle.
template <typename T>
InverseSymbol<T> inverse_symbol(const FourierVector<T>& phi, int N);

template <typename T>
struct GMatrix {
  SymbolMatrix<T> symbol;  // [[conj(alpha), 0], [1 / phi, theta]]
  T tail_mass = T(0);
  OperatorMatrix<T> toeplitz;  // T_G on (H^2)^2, window N
};

template <typename T>
GMatrix<T> g_matrix(const FourierVector<T>& phi, const BlaschkeProduct<T>& theta, const BlaschkeProduct<T>& alpha,
                    int N);

#define DTLAB_OPERATORS_INSTANTIATE(EXTERN, T)                                                          \
  EXTERN template int working_radius<T>(int, const std::vector<const FourierVector<T>*>&);              \
  EXTERN template OperatorMatrix<T> toeplitz_matrix<T>(const FourierVector<T>&, int);                   \
  EXTERN template OperatorMatrix<T> block_toeplitz_matrix<T>(const SymbolMatrix<T>&, int);              \
  EXTERN template OperatorMatrix<T> truncated_toeplitz_matrix<T>(                                       \
      const FourierVector<T>&, const BlaschkeProduct<T>&, const BlaschkeProduct<T>&, int);              \
  EXTERN template OperatorMatrix<T> dual_truncated_matrix<T>(                                           \
      const FourierVector<T>&, const BlaschkeProduct<T>&, const BlaschkeProduct<T>&, int, int);         \
  EXTERN template PairedSymbols<T> paired_symbols<T>(const FourierVector<T>&, const BlaschkeProduct<T>&, \
                                                     const BlaschkeProduct<T>&);                        \
  EXTERN template PairedSymbols<T> paired_symbols_same_inner<T>(const FourierVector<T>&,                \
                                                                const BlaschkeProduct<T>&);             \
  EXTERN template OperatorMatrix<T> paired_operator_matrix<T>(const PairedSymbols<T>&, int);            \
  EXTERN template OperatorMatrix<T> paired_adjoint_matrix<T>(const PairedSymbols<T>&, int);             \
  EXTERN template OperatorMatrix<T> extension_E_matrix<T>(const BlaschkeProduct<T>&, int);              \
  EXTERN template ExtensionF<T> extension_F_matrix<T>(const FourierVector<T>&, const BlaschkeProduct<T>&, \
                                                      const BlaschkeProduct<T>&, int);                  \
  EXTERN template InverseSymbol<T> inverse_symbol<T>(const FourierVector<T>&, int);                     \
  EXTERN template GMatrix<T> g_matrix<T>(const FourierVector<T>&, const BlaschkeProduct<T>&,            \
                                         const BlaschkeProduct<T>&, int);

DTLAB_OPERATORS_INSTANTIATE(extern, double)

}  // namespace dtlab
