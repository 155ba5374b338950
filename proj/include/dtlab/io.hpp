#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "dtlab/analysis.hpp"

namespace dtlab::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "dtlab 0.3.0";

// Value encodings: complex numbers are [re, im]; polynomials are ascending arrays of them.
Json to_json(Complex<double> c);
Json to_json(const CVector<double>& v);
Json to_json(const FourierVector<double>& f);
Json to_json(const BlaschkeProduct<double>& b);
Json to_json(const RationalFunction<double>& r);
Json to_json(const BasisSpec<double>& spec);
Json to_json(const OperatorMatrix<double>& op);
Json to_json(const KernelReport<double>& report);
Json to_json(const RationalKernelReport<double>& report);
Json to_json(const SpectrumReport<double>& report);
Json to_json(const PredicateVerdict<double>& verdict);

/// Non-finite reals are written as the strings "inf", "-inf" and "nan".
Json real(double x);

/// %.17g, used for every CSV number.
std::string format_real(double x);

Complex<double> complex_from_json(const Json& j, const std::string& where);
CVector<double> polynomial_from_json(const Json& j, const std::string& where);
BlaschkeProduct<double> blaschke_from_json(const Json& j, const std::string& where);
RationalFunction<double> rational_from_json(const Json& j, const std::string& where);
FourierVector<double> fourier_from_json(const Json& j, const std::string& where);

/// Flat row-major CSV: row,col,row_label,col_label,re,im.
std::string matrix_csv(const OperatorMatrix<double>& op);

/// λ_re, λ_im, kernel dimension and verdict per grid point.
std::string spectrum_csv(const SpectrumReport<double>& report);

struct ToleranceConfig {
  double kernel_threshold = 1e-8;
  double min_gap_ratio = 1e3;
  double capture = 1e-11;
  double corona_delta = 1e-4;
  double residual = 1e-8;
};

using SymbolConfig = std::variant<RationalFunction<double>, FourierVector<double>>;

/// Parsed problem description. Every default that was filled in is echoed by to_json.
struct ProblemConfig {
  std::string operator_name = "dual";
  std::string method = "auto";  // kernel: "auto", "svd" or "rational"
  SymbolConfig symbol = RationalFunction<double>::polynomial({Complex<double>(1)});
  BlaschkeProduct<double> theta;
  std::optional<BlaschkeProduct<double>> alpha;
  int window = 128;
  int dual_window = 128;
  ToleranceConfig tolerances;
  std::optional<SpectrumGrid<double>> grid;

  const BlaschkeProduct<double>& alpha_or_theta() const { return alpha ? *alpha : theta; }
  FourierVector<double> symbol_series() const;
  KernelOptions<double> kernel_options() const;
};

/// Window used when the config does not set one: DTLAB_WINDOW if present, else `fallback`.
int default_window(int fallback);

/// Throws Error(Config) on malformed input or unknown fields.
ProblemConfig parse_config(const Json& j, int fallback_window);
ProblemConfig load_config(const std::string& path, int fallback_window);
Json to_json(const ProblemConfig& config);

Json tolerances_json(const ToleranceConfig& t);

}  // namespace dtlab::io
