#include "dtlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace dtlab::io {

namespace {

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Config, where + ": " + what);
}

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) config_error(where, "expected an object");
  for (const auto& item : j.items())
    if (!allowed.count(item.key())) config_error(where, "unknown field '" + item.key() + "'");
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) config_error(where, "expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) config_error(where, "expected an integer");
  return j.get<int>();
}

Json labels_json(const BasisSpec<double>& spec) {
  Json out = Json::array();
  for (const auto& l : spec.labels()) out.push_back(l.to_string());
  return out;
}

}  // namespace

Json real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(Complex<double> c) { return Json::array({real(c.real()), real(c.imag())}); }

Json to_json(const CVector<double>& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const FourierVector<double>& f) {
  return Json{{"window_radius", f.radius()}, {"coeffs", to_json(f.coeffs())}};
}

Json to_json(const BlaschkeProduct<double>& b) {
  Json zeros = Json::array();
  for (const auto& a : b.zeros()) zeros.push_back(to_json(a));
  return Json{{"zeros", zeros}, {"constant", to_json(b.constant())}};
}

Json to_json(const RationalFunction<double>& r) {
  return Json{{"num", to_json(r.numerator())}, {"den", to_json(r.denominator())}};
}

Json to_json(const BasisSpec<double>& spec) {
  Json out{{"kind", to_string(spec.kind())}};
  if (spec.kind() == SpaceKind::DirectSum) {
    Json parts = Json::array();
    for (const auto& p : spec.parts()) parts.push_back(to_json(p));
    out["parts"] = parts;
  } else {
    out["window_radius"] = spec.window_radius();
    if (spec.kind() == SpaceKind::DualModel) out["positive_count"] = spec.positive_count();
    if (spec.inner_function()) {
      out["inner_name"] = spec.inner_name();
      out["inner"] = to_json(*spec.inner_function());
    }
  }
  out["labels"] = labels_json(spec);
  return out;
}

Json to_json(const OperatorMatrix<double>& op) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < op.entries.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < op.entries.cols(); ++j) row.push_back(to_json(op.entries(i, j)));
    rows.push_back(row);
  }
  Json leakage = Json::array();
  for (Eigen::Index j = 0; j < op.leakage.size(); ++j) leakage.push_back(real(op.leakage(j)));
  return Json{{"domain", to_json(op.domain)},
              {"codomain", to_json(op.codomain)},
              {"rows", op.entries.rows()},
              {"cols", op.entries.cols()},
              {"entries", rows},
              {"leakage", leakage}};
}

Json to_json(const KernelReport<double>& report) {
  const auto& labels = report.domain.labels();
  Json basis = Json::array();
  for (Eigen::Index k = 0; k < report.basis.cols(); ++k) {
    Json vec = Json::array();
    for (Eigen::Index i = 0; i < report.basis.rows(); ++i) {
      const auto c = report.basis(i, k);
      if (std::abs(c) > 1e-13) vec.push_back(Json{{"label", labels[i].to_string()}, {"value", to_json(c)}});
    }
    basis.push_back(vec);
  }
  Json sv = Json::array();
  for (Eigen::Index i = 0; i < report.singular_values.size(); ++i) sv.push_back(real(report.singular_values(i)));
  return Json{{"dimension", report.dimension},
              {"ambiguous", report.ambiguous},
              {"gap_ratio", real(report.gap_ratio)},
              {"threshold", real(report.threshold)},
              {"residual", real(report.residual)},
              {"basis", basis},
              {"singular_values", sv},
              {"columns_used", report.columns.size()},
              {"domain", to_json(report.domain)}};
}

Json to_json(const RationalKernelReport<double>& report) {
  Json out = to_json(report.kernel);
  out["method"] = "rational";
  out["p1_unknowns"] = report.p1_unknowns;
  out["p2_unknowns"] = report.p2_unknowns;
  out["constraint_residual"] = real(report.constraint_residual);
  return out;
}

Json to_json(const SpectrumReport<double>& report) {
  Json samples = Json::array();
  for (const auto& s : report.essential_samples) samples.push_back(to_json(s));
  Json points = Json::array();
  for (const auto& p : report.points) {
    points.push_back(Json{{"lambda", to_json(p.lambda)},
                          {"verdict", to_string(p.verdict)},
                          {"kernel_dimension", p.kernel_dimension},
                          {"essential_distance", real(p.distance)}});
  }
  Json hits = Json::array();
  for (const auto& p : report.point_spectrum_hits)
    hits.push_back(Json{{"lambda", to_json(p.lambda)}, {"kernel_dimension", p.kernel_dimension}});
  return Json{{"essential_sample_count", report.essential_samples.size()},
              {"point_hit_count", report.point_spectrum_hits.size()},
              {"ambiguous_points", report.ambiguous_points},
              {"point_spectrum_hits", hits},
              {"points", points},
              {"essential_samples", samples}};
}

Json to_json(const PredicateVerdict<double>& verdict) {
  Json hyps = Json::array();
  for (const auto& h : verdict.hypotheses) {
    hyps.push_back(Json{{"name", h.name},
                        {"satisfied", h.satisfied},
                        {"measured", real(h.measured)},
                        {"tolerance", real(h.tolerance)},
                        {"evidence", h.evidence}});
  }
  Json meas = Json::object();
  for (const auto& [k, v] : verdict.measurements) meas[k] = real(v);
  return Json{{"predicate", verdict.predicate},
              {"conclusion", to_string(verdict.conclusion)},
              {"consistent", verdict.consistent},
              {"hypotheses", hyps},
              {"measurements", meas}};
}

Complex<double> complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) config_error(where, "expected [re, im]");
  return {number(j[0], where), number(j[1], where)};
}

CVector<double> polynomial_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) config_error(where, "expected a nonempty coefficient array");
  CVector<double> c(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    c(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], where + "[" + std::to_string(i) + "]");
  return c;
}

BlaschkeProduct<double> blaschke_from_json(const Json& j, const std::string& where) {
  check_keys(j, {"zeros", "constant"}, where);
  std::vector<Complex<double>> zeros;
  if (j.contains("zeros")) {
    if (!j["zeros"].is_array()) config_error(where + ".zeros", "expected an array");
    for (std::size_t i = 0; i < j["zeros"].size(); ++i)
      zeros.push_back(complex_from_json(j["zeros"][i], where + ".zeros[" + std::to_string(i) + "]"));
  }
  const auto c = j.contains("constant") ? complex_from_json(j["constant"], where + ".constant") : Complex<double>(1);
  try {
    return BlaschkeProduct<double>(std::move(zeros), c);
  } catch (const Error& e) {
    config_error(where, e.what());
  }
}

RationalFunction<double> rational_from_json(const Json& j, const std::string& where) {
  check_keys(j, {"num", "den"}, where);
  if (!j.contains("num")) config_error(where, "missing 'num'");
  const auto num = polynomial_from_json(j["num"], where + ".num");
  const auto den = j.contains("den") ? polynomial_from_json(j["den"], where + ".den") : CVector<double>::Ones(1);
  if (den.isZero(0)) config_error(where + ".den", "denominator is identically zero");
  return RationalFunction<double>(num, den);
}

FourierVector<double> fourier_from_json(const Json& j, const std::string& where) {
  check_keys(j, {"window_radius", "coeffs"}, where);
  if (!j.contains("window_radius") || !j.contains("coeffs")) config_error(where, "needs window_radius and coeffs");
  const int r = integer(j["window_radius"], where + ".window_radius");
  if (r < 0) config_error(where + ".window_radius", "must be nonnegative");
  const auto c = polynomial_from_json(j["coeffs"], where + ".coeffs");
  if (c.size() != 2 * r + 1) config_error(where + ".coeffs", "length must be 2 * window_radius + 1");
  return FourierVector<double>(r, c);
}

std::string matrix_csv(const OperatorMatrix<double>& op) {
  std::ostringstream out;
  out << "row,col,row_label,col_label,re,im\n";
  const auto& rl = op.codomain.labels();
  const auto& cl = op.domain.labels();
  for (Eigen::Index i = 0; i < op.entries.rows(); ++i)
    for (Eigen::Index j = 0; j < op.entries.cols(); ++j)
      out << i << ',' << j << ',' << rl[i].to_string() << ',' << cl[j].to_string() << ','
          << format_real(op.entries(i, j).real()) << ',' << format_real(op.entries(i, j).imag()) << '\n';
  return out.str();
}

std::string spectrum_csv(const SpectrumReport<double>& report) {
  std::ostringstream out;
  out << "lambda_re,lambda_im,kernel_dim,verdict\n";
  for (const auto& p : report.points)
    out << format_real(p.lambda.real()) << ',' << format_real(p.lambda.imag()) << ',' << p.kernel_dimension << ','
        << to_string(p.verdict) << '\n';
  return out.str();
}

FourierVector<double> ProblemConfig::symbol_series() const {
  if (const auto* r = std::get_if<RationalFunction<double>>(&symbol)) return r->laurent();
  const auto& f = std::get<FourierVector<double>>(symbol);
  return f.resized(natural_radius(f));
}

KernelOptions<double> ProblemConfig::kernel_options() const {
  KernelOptions<double> k;
  k.relative_threshold = tolerances.kernel_threshold;
  k.min_gap_ratio = tolerances.min_gap_ratio;
  k.capture = tolerances.capture;
  return k;
}

int default_window(int fallback) {
  const char* env = std::getenv("DTLAB_WINDOW");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096) config_error("DTLAB_WINDOW", "expected an integer in [1, 4096]");
  return static_cast<int>(v);
}

ProblemConfig parse_config(const Json& j, int fallback_window) {
  check_keys(j, {"operator", "method", "symbol", "theta", "alpha", "window", "dual_window", "tolerances", "grid"},
             "config");
  ProblemConfig c;
  c.window = fallback_window;
  if (j.contains("operator")) {
    static const std::set<std::string> ops{"toeplitz", "truncated", "dual", "paired", "block", "E", "F", "G"};
    if (!j["operator"].is_string() || !ops.count(j["operator"].get<std::string>()))
      config_error("config.operator", "expected one of toeplitz, truncated, dual, paired, block, E, F, G");
    c.operator_name = j["operator"].get<std::string>();
  }
  if (j.contains("method")) {
    if (!j["method"].is_string()) config_error("config.method", "expected a string");
    c.method = j["method"].get<std::string>();
    if (c.method != "auto" && c.method != "svd" && c.method != "rational")
      config_error("config.method", "expected auto, svd or rational");
  }
  if (j.contains("symbol")) {
    const auto& s = j["symbol"];
    check_keys(s, {"rational", "trig_poly"}, "config.symbol");
    if (s.size() != 1) config_error("config.symbol", "give exactly one of rational, trig_poly");
    if (s.contains("rational")) {
      c.symbol = rational_from_json(s["rational"], "config.symbol.rational");
    } else {
      c.symbol = fourier_from_json(s["trig_poly"], "config.symbol.trig_poly");
    }
  }
  if (j.contains("theta")) c.theta = blaschke_from_json(j["theta"], "config.theta");
  if (j.contains("alpha")) c.alpha = blaschke_from_json(j["alpha"], "config.alpha");
  if (j.contains("window")) c.window = integer(j["window"], "config.window");
  if (c.window < 1) config_error("config.window", "must be at least 1");
  c.dual_window = j.contains("dual_window") ? integer(j["dual_window"], "config.dual_window") : c.window;
  if (c.dual_window < 0) config_error("config.dual_window", "must be nonnegative");
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    check_keys(t, {"kernel_threshold", "min_gap_ratio", "capture", "corona_delta", "residual"}, "config.tolerances");
    auto set = [&](const char* key, double& field) {
      if (!t.contains(key)) return;
      field = number(t[key], std::string("config.tolerances.") + key);
      if (!(field > 0)) config_error(std::string("config.tolerances.") + key, "must be positive");
    };
    set("kernel_threshold", c.tolerances.kernel_threshold);
    set("min_gap_ratio", c.tolerances.min_gap_ratio);
    set("capture", c.tolerances.capture);
    set("corona_delta", c.tolerances.corona_delta);
    set("residual", c.tolerances.residual);
  }
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    check_keys(g, {"re_min", "re_max", "im_min", "im_max", "step"}, "config.grid");
    SpectrumGrid<double> grid;
    for (const char* key : {"re_min", "re_max", "im_min", "im_max", "step"})
      if (!g.contains(key)) config_error("config.grid", std::string("missing '") + key + "'");
    grid.re_min = number(g["re_min"], "config.grid.re_min");
    grid.re_max = number(g["re_max"], "config.grid.re_max");
    grid.im_min = number(g["im_min"], "config.grid.im_min");
    grid.im_max = number(g["im_max"], "config.grid.im_max");
    grid.step = number(g["step"], "config.grid.step");
    if (grid.re_max < grid.re_min || grid.im_max < grid.im_min) config_error("config.grid", "empty rectangle");
    if (grid.step < 0.01) config_error("config.grid.step", "must be at least 0.01");
    c.grid = grid;
  }
  return c;
}

ProblemConfig load_config(const std::string& path, int fallback_window) {
  std::ifstream in(path);
  if (!in) config_error(path, "cannot open config file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    config_error(path, e.what());
  }
  return parse_config(j, fallback_window);
}

Json tolerances_json(const ToleranceConfig& t) {
  return Json{{"kernel_threshold", t.kernel_threshold},
              {"min_gap_ratio", t.min_gap_ratio},
              {"capture", t.capture},
              {"corona_delta", t.corona_delta},
              {"residual", t.residual}};
}

Json to_json(const ProblemConfig& c) {
  Json symbol;
  if (const auto* r = std::get_if<RationalFunction<double>>(&c.symbol)) {
    symbol = Json{{"rational", to_json(*r)}};
  } else {
    symbol = Json{{"trig_poly", to_json(std::get<FourierVector<double>>(c.symbol))}};
  }
  Json out{{"operator", c.operator_name},
           {"method", c.method},
           {"symbol", symbol},
           {"theta", to_json(c.theta)},
           {"alpha", to_json(c.alpha_or_theta())},
           {"window", c.window},
           {"dual_window", c.dual_window},
           {"tolerances", tolerances_json(c.tolerances)}};
  if (c.grid) {
    out["grid"] = Json{{"re_min", c.grid->re_min},
                       {"re_max", c.grid->re_max},
                       {"im_min", c.grid->im_min},
                       {"im_max", c.grid->im_max},
                       {"step", c.grid->step}};
  }
  return out;
}

}  // namespace dtlab::io
