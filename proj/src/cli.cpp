#include "dtlab/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "dtlab/io.hpp"
#include "dtlab/verify.hpp"

namespace dtlab::cli {

namespace {

using io::Json;
namespace fs = std::filesystem;

struct Args {
  std::string config;
  std::string out = "dtlab_out";
  std::string only;
};

class Stopwatch {
 public:
  void lap(const std::string& name) {
    const auto now = std::chrono::steady_clock::now();
    laps_[name] = std::chrono::duration<double>(now - last_).count();
    last_ = now;
  }
  Json json() const {
    Json j = Json::object();
    for (const auto& [k, v] : laps_) j[k] = v;
    return j;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  std::map<std::string, double> laps_;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorKind::Config, "cannot write " + path.string());
  f << text;
}

void write_json(const fs::path& path, const Json& j) { write_file(path, j.dump(2) + "\n"); }

fs::path prepare(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, ErrorKind::Config, "cannot create output directory " + dir + ": " + ec.message());
  return fs::path(dir);
}

io::ProblemConfig load(const Args& a, int fallback) {
  require(!a.config.empty(), ErrorKind::Config, "--config is required");
  return io::load_config(a.config, io::default_window(fallback));
}

Json envelope(const std::string& command, const io::ProblemConfig& c) {
  return Json{{"tool", io::kToolVersion},
              {"command", command},
              {"config", io::to_json(c)},
              {"tolerances", io::tolerances_json(c.tolerances)}};
}

struct Built {
  OperatorMatrix<double> op;
  std::optional<OperatorMatrix<double>> inverse;
};

Built build_operator(const io::ProblemConfig& c) {
  const auto phi = c.symbol_series();
  const auto& theta = c.theta;
  const auto& alpha = c.alpha_or_theta();
  const int N = c.window;
  const std::string& name = c.operator_name;
  if (name == "toeplitz") return {toeplitz_matrix(phi, N), {}};
  if (name == "truncated") return {truncated_toeplitz_matrix(phi, theta, alpha, N), {}};
  if (name == "dual") return {dual_truncated_matrix(phi, theta, alpha, N, c.dual_window), {}};
  if (name == "paired") return {paired_operator_matrix(paired_symbols(phi, theta, alpha), N), {}};
  if (name == "block") {
    SymbolMatrix<double> Phi{{{blaschke_natural_series(theta).conjugated(), FourierVector<double>(0)},
                              {phi, blaschke_natural_series(alpha)}}};
    return {block_toeplitz_matrix(Phi, N), {}};
  }
  if (name == "E") return {extension_E_matrix(alpha, N), {}};
  if (name == "F") {
    auto ext = extension_F_matrix(phi, theta, alpha, N);
    return {std::move(ext.F), std::move(ext.F_inverse)};
  }
  return {g_matrix(phi, theta, alpha, N).toeplitz, {}};
}

int cmd_build(const Args& a, std::ostream& out) {
  Stopwatch clock;
  const auto c = load(a, 128);
  const auto dir = prepare(a.out);
  const auto built = build_operator(c);
  clock.lap("build");
  write_json(dir / "operator.json", io::to_json(built.op));
  write_file(dir / "operator.csv", io::matrix_csv(built.op));
  Json report = envelope("build", c);
  Json files = Json::array({"operator.json", "operator.csv"});
  if (built.inverse) {
    write_json(dir / "operator_inverse.json", io::to_json(*built.inverse));
    write_file(dir / "operator_inverse.csv", io::matrix_csv(*built.inverse));
    files.push_back("operator_inverse.json");
    files.push_back("operator_inverse.csv");
  }
  report["results"] = Json{{"rows", built.op.entries.rows()}, {"cols", built.op.entries.cols()}, {"files", files}};
  write_json(dir / "report.json", report);
  clock.lap("write");
  write_json(dir / "timings.json", clock.json());
  out << c.operator_name << ": " << built.op.entries.rows() << " x " << built.op.entries.cols() << "\n";
  return 0;
}

int cmd_kernel(const Args& a, std::ostream& out) {
  Stopwatch clock;
  const auto c = load(a, 128);
  const auto dir = prepare(a.out);
  const bool rational_symbol = std::holds_alternative<RationalFunction<double>>(c.symbol);
  std::string method = c.method;
  if (method == "auto") method = c.operator_name == "dual" && rational_symbol ? "rational" : "svd";
  if (method == "rational") {
    require(c.operator_name == "dual", ErrorKind::Config, "method 'rational' requires operator 'dual'");
    require(rational_symbol, ErrorKind::Config, "method 'rational' requires a rational symbol");
    require(!c.alpha || c.alpha->degree() == c.theta.degree(), ErrorKind::Config,
            "method 'rational' requires alpha = theta");
  }

  Json report = envelope("kernel", c);
  KernelReport<double> k;
  if (method == "rational") {
    const auto r = rational_kernel_solve(std::get<RationalFunction<double>>(c.symbol), c.theta, c.window,
                                         c.dual_window, c.kernel_options());
    k = r.kernel;
    report["results"] = io::to_json(r);
  } else {
    k = kernel(build_operator(c).op, c.kernel_options());
    report["results"] = io::to_json(k);
  }
  report["method"] = method;
  clock.lap("kernel");
  write_json(dir / "kernel.json", report);
  clock.lap("write");
  write_json(dir / "timings.json", clock.json());
  if (k.ambiguous) throw Error(ErrorKind::Ambiguous, "singular value gap ratio " + io::format_real(k.gap_ratio) +
                                                         " is below the required " +
                                                         io::format_real(c.tolerances.min_gap_ratio));
  out << "dimension " << k.dimension << "\n";
  return 0;
}

int cmd_spectrum(const Args& a, std::ostream& out) {
  Stopwatch clock;
  const auto c = load(a, 128);
  require(c.grid.has_value(), ErrorKind::Config, "spectrum requires a 'grid' block");
  const auto dir = prepare(a.out);
  SpectrumSymbol<double> symbol;
  if (const auto* r = std::get_if<RationalFunction<double>>(&c.symbol)) {
    symbol = *r;
  } else {
    symbol = std::get<FourierVector<double>>(c.symbol);
  }
  const auto rep = spectrum_scan(symbol, c.theta, *c.grid, c.window, c.dual_window, c.kernel_options());
  clock.lap("scan");
  Json report = envelope("spectrum", c);
  report["results"] = io::to_json(rep);
  write_json(dir / "spectrum.json", report);
  write_file(dir / "spectrum.csv", io::spectrum_csv(rep));
  clock.lap("write");
  write_json(dir / "timings.json", clock.json());
  out << "essential: " << rep.essential_samples.size() << " samples; point hits: " << rep.point_spectrum_hits.size()
      << "\n";
  return 0;
}

int cmd_verify(const Args& a, std::ostream& out) {
  Stopwatch clock;
  verify::Options options;
  options.window = a.config.empty() ? io::default_window(64) : io::load_config(a.config, io::default_window(64)).window;
  if (!a.only.empty()) options.only = a.only;
  const auto dir = prepare(a.out);
  const auto report = verify::run(options);
  clock.lap("verify");
  const std::string text = verify::to_text(report);
  write_json(dir / "verify.json", verify::to_json(report));
  write_file(dir / "verify.txt", text);
  clock.lap("write");
  write_json(dir / "timings.json", clock.json());
  out << text;
  return report.exit_code();
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return 2;
    case ErrorKind::Ambiguous: return 4;
    default: return 3;
  }
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual truncated Toeplitz operator laboratory"};
  app.require_subcommand(1);
  Args args;
  auto add = [&](const char* name, const char* help, bool needs_config) {
    auto* sub = app.add_subcommand(name, help);
    auto* opt = sub->add_option("--config", args.config, "problem description (JSON)");
    if (needs_config) opt->required();
    sub->add_option("--out", args.out, "output directory")->capture_default_str();
    return sub;
  };
  auto* build = add("build", "write the matrix of an operator", true);
  auto* kern = add("kernel", "compute a kernel report", true);
  auto* spec = add("spectrum", "scan the spectrum on a grid", true);
  auto* ver = add("verify", "run the verification suite", false);
  ver->add_option("--only", args.only, "run a single tag");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return cmd_build(args, out);
    if (kern->parsed()) return cmd_kernel(args, out);
    if (spec->parsed()) return cmd_spectrum(args, out);
    if (ver->parsed()) return cmd_verify(args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace dtlab::cli
