// scalesplit: solve, tune, inspect spectra, reproduce reference tables and
// export problems for complex symmetric systems (W + iT) z = b.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "scalesplit/bench/reference_tables_data.hpp"
#include "scalesplit/bench/request.hpp"
#include "scalesplit/bench/table.hpp"
#include "scalesplit/problems/checks.hpp"
#include "scalesplit/problems/examples.hpp"
#include "scalesplit/problems/problem_io.hpp"
#include "scalesplit/solvers/run.hpp"
#include "scalesplit/spectral/dense_oracles.hpp"
#include "scalesplit/spectral/grid_search.hpp"
#include "scalesplit/spectral/optimal_alpha.hpp"

namespace ss = scalesplit;
namespace bench = scalesplit::bench;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;

struct Options {
  std::string example = "1";
  std::optional<std::size_t> m;
  std::optional<std::size_t> n;
  std::string method = "tscsp";
  std::string alpha = "paper";
  double tol = 1e-6;
  std::size_t max_iter = 5000;
  std::string inner = "cholesky";
  double cg_tol = 1e-12;
  std::string ordering = "natural";
  std::string format = "markdown";
  std::string out;
  std::string sizes = "32,64";
  std::string grid = "0.01:3:0.01";
  bool allow_large = false;
  std::uint64_t seed = 0;
  std::string synthetic = "random";
  bool history = false;
  bool error_json = false;
  unsigned threads = 1;
  std::string config;
};

/// Fills options that were not given on the command line from a JSON config
/// whose keys are the long flag names.
void apply_config(Options& o, const CLI::App& sub) {
  if (o.config.empty()) return;
  std::ifstream is(o.config);
  if (!is) throw ss::IoError("cannot open config " + o.config);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw ss::ParseError(std::string("malformed config: ") + e.what());
  }
  auto given = [&](const char* flag) {
    const CLI::Option* opt = sub.get_option_no_throw(std::string("--") + flag);
    return opt != nullptr && opt->count() > 0;
  };
  try {
    for (const auto& [key, value] : j.items()) {
      if (given(key.c_str())) continue;
      if (key == "example") o.example = value.is_string() ? value.get<std::string>() : std::to_string(value.get<int>());
      else if (key == "m") o.m = value.get<std::size_t>();
      else if (key == "n") o.n = value.get<std::size_t>();
      else if (key == "method") o.method = value.get<std::string>();
      else if (key == "alpha") o.alpha = value.is_string() ? value.get<std::string>() : value.dump();
      else if (key == "tol") o.tol = value.get<double>();
      else if (key == "max-iter") o.max_iter = value.get<std::size_t>();
      else if (key == "inner") o.inner = value.get<std::string>();
      else if (key == "cg-tol") o.cg_tol = value.get<double>();
      else if (key == "ordering") o.ordering = value.get<std::string>();
      else if (key == "format") o.format = value.get<std::string>();
      else if (key == "out") o.out = value.get<std::string>();
      else if (key == "sizes") o.sizes = value.is_string() ? value.get<std::string>() : value.dump();
      else if (key == "grid") o.grid = value.get<std::string>();
      else if (key == "allow-large") o.allow_large = value.get<bool>();
      else if (key == "seed") o.seed = value.get<std::uint64_t>();
      else if (key == "synthetic") o.synthetic = value.get<std::string>();
      else if (key == "history") o.history = value.get<bool>();
      else if (key == "threads") o.threads = value.get<unsigned>();
      else throw ss::InvalidArgument("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ss::ParseError(std::string("bad config value: ") + e.what());
  }
  if (!o.sizes.empty() && o.sizes.front() == '[') {  // JSON array form
    std::string s;
    for (char c : o.sizes)
      if (c != '[' && c != ']' && c != ' ') s += c;
    o.sizes = s;
  }
}

int parse_example(const std::string& e) {
  if (e == "1" || e == "2" || e == "3" || e == "4") return std::stoi(e);
  if (e == "synthetic") return 0;
  throw ss::InvalidArgument("--example must be 1, 2, 3, 4 or synthetic");
}

ss::SolverConfig base_config(const Options& o) {
  ss::SolverConfig cfg;
  cfg.tolerance = o.tol;
  cfg.max_iterations = o.max_iter;
  if (o.inner == "cholesky") cfg.inner.kind = ss::inner::InnerKind::direct_cholesky;
  else if (o.inner == "cg") cfg.inner.kind = ss::inner::InnerKind::conjugate_gradient;
  else throw ss::InvalidArgument("--inner must be cholesky or cg");
  cfg.inner.cg_tolerance = o.cg_tol;
  if (o.ordering == "natural") cfg.inner.ordering = ss::inner::Ordering::natural;
  else if (o.ordering == "rcm") cfg.inner.ordering = ss::inner::Ordering::reverse_cuthill_mckee;
  else throw ss::InvalidArgument("--ordering must be natural or rcm");
  cfg.record_history = o.history;
  cfg.alpha = 1.0;
  cfg.validate();
  return cfg;
}

void check_format(const Options& o) {
  if (o.format != "markdown" && o.format != "csv" && o.format != "json")
    throw ss::InvalidArgument("--format must be markdown, csv or json");
}

/// Size parameter of a single-problem request: m for examples 1-3, n for 4
/// and synthetic problems.
std::size_t single_size(const Options& o, int example) {
  if (example >= 1 && example <= 3) {
    if (o.n) {
      const auto r = bench::table_column(4, *o.n);
      if (!o.m && r) return *r;
      if (!o.m) throw ss::InvalidArgument("--n must be a perfect square for examples 1-3; use --m");
    }
    return o.m.value_or(32);
  }
  if (example == 4) {
    if (o.m && !o.n) return *o.m * *o.m;
    return o.n.value_or(1024);
  }
  return o.n.value_or(8);
}

ss::Problem build(const Options& o, int example, std::size_t size) {
  if (example == 0) return ss::build_synthetic(size, o.seed, ss::parse_synthetic_kind(o.synthetic));
  bench::check_size_cap(example, size, o.allow_large);
  return bench::build_benchmark_example(example, size);
}

std::string example_label(int example) { return example == 0 ? "synthetic" : std::to_string(example); }

std::filesystem::path resolve_out(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("SCALESPLIT_OUT_DIR"); dir != nullptr && *dir != '\0')
      return std::filesystem::path(dir) / p;
  }
  return p;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  const auto path = resolve_out(o.out);
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream os(path);
  if (!os) throw ss::IoError("cannot write " + path.string());
  os << text;
  if (!os) throw ss::IoError("failed writing " + path.string());
  std::cerr << "wrote " << path.string() << '\n';
}

std::string num(double v, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

json report_json(const std::string& example, const ss::SolveReport& r, std::size_t n, bool with_history) {
  json j;
  j["example"] = example;
  j["method"] = std::string(ss::to_string(r.method));
  j["alpha"] = r.alpha;
  j["n"] = n;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["final_relres"] = r.final_relative_residual;
  j["seconds"] = r.total_seconds();
  j["diverged"] = r.diverged;
  j["setup_seconds"] = r.setup_seconds;
  j["iterate_seconds"] = r.iterate_seconds;
  j["inner_solves"] = r.inner_solves;
  if (with_history) j["residual_history"] = r.residual_history;
  return j;
}

// ---------------------------------------------------------------------------

int cmd_solve(const Options& o) {
  check_format(o);
  const bench::AlphaChoice choice = bench::parse_alpha(o.alpha);  // validated before any work
  const int example = parse_example(o.example);
  const auto methods = bench::parse_methods(o.method);
  ss::SolverConfig base = base_config(o);
  const std::size_t size = single_size(o, example);
  if (example == 0 && choice.mode == bench::AlphaMode::tabulated)
    throw ss::InvalidArgument("synthetic problems have no tabulated alpha; pass a value, grid or theoretical");
  const ss::Problem p = build(o, example, size);

  bench::AlphaContext ctx;
  ctx.reference = &bench::embedded_reference_table();
  ctx.grid = bench::parse_grid(o.grid);
  ctx.base = base;
  ctx.threads = o.threads;

  bool all_converged = true;
  json arr = json::array();
  std::ostringstream text;
  if (o.format == "csv") text << "example,method,alpha,n,iterations,converged,final_relres,seconds\n";
  for (ss::MethodKind m : methods) {
    const bench::ResolvedAlpha ra = bench::resolve_alpha(choice, p, example, size, m, ctx);
    if (ra.warning) std::cerr << "warning: " << *ra.warning << '\n';
    ss::SolverConfig cfg = base;
    cfg.method = m;
    cfg.alpha = ra.alpha;
    const ss::SolveReport r = ss::run(p, cfg);
    all_converged = all_converged && r.converged;
    if (o.format == "json") {
      arr.push_back(report_json(example_label(example), r, p.size(), o.history));
    } else if (o.format == "csv") {
      text << example_label(example) << ',' << ss::to_string(m) << ',' << num(r.alpha) << ',' << p.size() << ','
           << r.iterations << ',' << (r.converged ? "true" : "false") << ',' << num(r.final_relative_residual) << ','
           << std::fixed << std::setprecision(2) << r.total_seconds() << std::defaultfloat << '\n';
    } else {
      text << "example: " << example_label(example) << '\n'
           << "method: " << ss::display_name(m) << '\n'
           << "alpha: " << num(r.alpha) << " (" << ra.source << ")\n"
           << "n: " << p.size() << '\n'
           << "iterations: " << r.iterations << '\n'
           << "converged: " << (r.converged ? "true" : "false") << (r.diverged ? " (diverged)" : "") << '\n'
           << "final_relres: " << num(r.final_relative_residual) << '\n'
           << std::fixed << std::setprecision(2) << "seconds: " << r.total_seconds() << " (setup "
           << r.setup_seconds << ", iterate " << r.iterate_seconds << "; wall clock)\n"
           << std::defaultfloat;
      if (o.history) {
        text << "residual_history:";
        for (double h : r.residual_history) text << ' ' << num(h, 4);
        text << '\n';
      }
      if (methods.size() > 1) text << '\n';
    }
  }
  if (o.format == "json") emit(o, (arr.size() == 1 ? arr.front() : arr).dump(2) + "\n");
  else emit(o, text.str());
  return all_converged ? kExitOk : kExitFailed;
}

int cmd_tune(const Options& o) {
  check_format(o);
  const int example = parse_example(o.example);
  const auto methods = bench::parse_methods(o.method);
  const ss::SolverConfig base = base_config(o);
  const ss::spectral::AlphaGrid grid = bench::parse_grid(o.grid);
  const std::size_t size = single_size(o, example);
  const ss::Problem p = build(o, example, size);

  std::ostringstream text;
  json arr = json::array();
  for (ss::MethodKind m : methods) {
    const ss::spectral::TuneResult r = ss::spectral::grid_search_alpha(p, m, grid, base, std::max(1U, o.threads));
    if (o.format == "json") {
      json j;
      j["example"] = example_label(example);
      j["method"] = std::string(ss::to_string(m));
      j["n"] = p.size();
      j["best_alpha"] = r.best_alpha;
      j["best_iterations"] = r.best_iterations;
      json g = json::array();
      for (const auto& pt : r.grid) g.push_back({{"alpha", pt.alpha}, {"iterations", pt.iterations}, {"converged", pt.converged}});
      j["grid"] = g;
      arr.push_back(j);
    } else if (o.format == "csv") {
      text << "# " << ss::to_string(m) << " best_alpha=" << num(r.best_alpha) << " best_iterations=" << r.best_iterations
           << '\n'
           << "alpha,iterations,converged\n";
      for (const auto& pt : r.grid)
        text << num(pt.alpha) << ',' << pt.iterations << ',' << (pt.converged ? "true" : "false") << '\n';
    } else {
      text << "method: " << ss::display_name(m) << '\n'
           << "best alpha: " << num(r.best_alpha) << '\n'
           << "best iterations: " << r.best_iterations << '\n';
    }
  }
  if (o.format == "json") emit(o, (arr.size() == 1 ? arr.front() : arr).dump(2) + "\n");
  else emit(o, text.str());
  return kExitOk;
}

int cmd_spectrum(const Options& o, bool rho_csv) {
  check_format(o);
  const int example = parse_example(o.example);
  const std::size_t size = single_size(o, example);
  const ss::Problem p = build(o, example, size);
  if (p.size() > ss::kDefaultOracleCap)
    throw ss::OracleCapExceeded(p.size(), ss::kDefaultOracleCap);
  const ss::spectral::SpectralInfo info = ss::spectral::spectral_info(p.w, p.t);
  const double product = info.alpha_opt_minus * info.alpha_opt_plus;
  if (std::abs(product - 1.0) > 1e-12)
    throw ss::Error("alpha_opt- * alpha_opt+ = " + num(product, 17) + " differs from 1");

  std::ostringstream text;
  if (rho_csv) {
    const auto grid = bench::parse_grid(o.grid);
    text << "alpha,rho\n";
    for (double a : grid.points()) text << num(a, 10) << ',' << num(ss::spectral::tscsp_spectral_radius(info.mus, a), 12) << '\n';
    emit(o, text.str());
    return kExitOk;
  }
  if (o.format == "json") {
    json j;
    j["example"] = example_label(example);
    j["n"] = p.size();
    j["mu_min"] = info.mus.front();
    j["mu_max"] = info.mus.back();
    j["case"] = ss::spectral::to_string(info.spectrum_case);
    j["k"] = info.k;
    j["gamma"] = info.gamma;
    j["delta"] = info.delta;
    j["eta"] = info.eta;
    j["alpha_opt_minus"] = info.alpha_opt_minus;
    j["alpha_opt_plus"] = info.alpha_opt_plus;
    j["alpha_product"] = product;
    j["rho_opt"] = info.rho_opt;
    emit(o, j.dump(2) + "\n");
  } else {
    text << std::setprecision(10) << "example: " << example_label(example) << '\n'
         << "n: " << p.size() << '\n'
         << "mu_min: " << info.mus.front() << '\n'
         << "mu_max: " << info.mus.back() << '\n'
         << "case: " << ss::spectral::to_string(info.spectrum_case) << '\n'
         << "k: " << info.k << '\n'
         << "gamma: " << info.gamma << '\n'
         << "delta: " << info.delta << '\n'
         << "eta: " << info.eta << '\n'
         << "alpha_opt-: " << info.alpha_opt_minus << '\n'
         << "alpha_opt+: " << info.alpha_opt_plus << '\n'
         << "alpha_opt- * alpha_opt+: " << product << " (checked to 1e-12)\n"
         << "rho_opt: " << info.rho_opt << '\n';
    emit(o, text.str());
  }
  return kExitOk;
}

int cmd_reproduce_table(const Options& o) {
  check_format(o);
  const int example = parse_example(o.example);
  if (example == 0) throw ss::InvalidArgument("reproduce-table needs --example 1, 2, 3 or 4");
  bench::TableRequest req;
  req.example = example;
  req.methods = bench::parse_methods(o.method);
  req.sizes = bench::parse_sizes(o.sizes, example);
  for (std::size_t s : req.sizes) bench::check_size_cap(example, s, o.allow_large);
  req.alpha = bench::parse_alpha(o.alpha);
  req.context.reference = &bench::embedded_reference_table();
  req.context.grid = bench::parse_grid(o.grid);
  req.context.base = base_config(o);
  req.context.threads = std::max(1U, o.threads);
  const bench::TableArtifact art = bench::reproduce_table(req);
  for (const auto& w : art.warnings) std::cerr << "warning: " << w << '\n';
  if (o.format == "json") emit(o, bench::to_json(art).dump(2) + "\n");
  else if (o.format == "csv") emit(o, bench::render_csv(art));
  else emit(o, bench::render_markdown(art));
  return kExitOk;
}

int cmd_export(const Options& o) {
  const int example = parse_example(o.example);
  if (o.out.empty() && std::getenv("SCALESPLIT_OUT_DIR") == nullptr)
    throw ss::InvalidArgument("export needs --out <dir> or SCALESPLIT_OUT_DIR");
  const std::size_t size = single_size(o, example);
  const ss::Problem p = build(o, example, size);
  const auto dir = o.out.empty() ? std::filesystem::path(std::getenv("SCALESPLIT_OUT_DIR")) : resolve_out(o.out);
  ss::export_problem(p, dir);
  std::cout << "exported example " << example_label(example) << " (n = " << p.size() << ", nnz(W) = " << p.w.nnz()
            << ", nnz(T) = " << p.t.nnz() << ") to " << dir.string() << '\n';
  return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--example", o.example, "Problem: 1, 2, 3, 4 or synthetic");
  sub->add_option("--m", o.m, "Grid side m (order m^2)");
  sub->add_option("--n", o.n, "Problem order n (example 4, synthetic)");
  sub->add_option("--tol", o.tol, "Relative residual tolerance");
  sub->add_option("--max-iter", o.max_iter, "Maximum outer iterations");
  sub->add_option("--inner", o.inner, "Inner SPD solver: cholesky or cg");
  sub->add_option("--cg-tol", o.cg_tol, "Inner CG relative tolerance");
  sub->add_option("--ordering", o.ordering, "Cholesky ordering: natural or rcm");
  sub->add_option("--format", o.format, "Output format: markdown, csv or json");
  sub->add_option("--out", o.out, "Output path (relative paths resolve under SCALESPLIT_OUT_DIR)");
  sub->add_option("--grid", o.grid, "Alpha grid lo:hi:step");
  sub->add_flag("--allow-large", o.allow_large, "Permit sizes above the default cap m <= 256");
  sub->add_option("--seed", o.seed, "Seed for synthetic problems");
  sub->add_option("--synthetic", o.synthetic, "Synthetic kind: random, equal or singular");
  sub->add_option("--threads", o.threads, "Worker threads for grid search and tables");
  sub->add_flag("--error-json", o.error_json, "Print errors as JSON on stdout");
  sub->add_option("--config", o.config, "JSON config; explicit flags take precedence");
}

void print_error(const Options& o, const char* kind, const std::string& message) {
  if (o.error_json) std::cout << json{{"error", kind}, {"message", message}}.dump() << '\n';
  std::cerr << "error: " << message << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scale-splitting and related stationary solvers for complex symmetric systems"};
  app.require_subcommand(1, 1);
  Options o;
  bool rho_csv = false;

  auto* solve = app.add_subcommand("solve", "Solve one problem and report iterations, residual and timings");
  add_common(solve, o);
  solve->add_option("--method", o.method, "tscsp, scsp, mhss, pmhss, gsor or all");
  solve->add_option("--alpha", o.alpha, "Float, paper, grid or theoretical");
  solve->add_flag("--history", o.history, "Include the residual history");

  auto* tune = app.add_subcommand("tune", "Grid-search alpha for the fewest iterations");
  add_common(tune, o);
  tune->add_option("--method", o.method, "tscsp, scsp, mhss, pmhss, gsor or all");

  auto* spectrum = app.add_subcommand("spectrum", "Generalized eigenvalues and the optimal TSCSP alpha");
  add_common(spectrum, o);
  spectrum->add_flag("--rho-csv", rho_csv, "Emit rho(G_alpha) over --grid as CSV");

  auto* table = app.add_subcommand("reproduce-table", "Reproduce a reference results table");
  add_common(table, o);
  table->add_option("--method", o.method, "tscsp, scsp, mhss, pmhss, gsor or all")->default_str("all");
  table->add_option("--alpha", o.alpha, "paper, grid, theoretical or a float");
  table->add_option("--sizes", o.sizes, "Comma-separated sizes, e.g. 32,64 or 32^2");

  auto* exp = app.add_subcommand("export", "Write W.mtx, T.mtx, b.vec and spec.json");
  add_common(exp, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalid;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (active == table && table->get_option("--method")->count() == 0) o.method = "all";
    apply_config(o, *active);
    if (active == solve) return cmd_solve(o);
    if (active == tune) return cmd_tune(o);
    if (active == spectrum) return cmd_spectrum(o, rho_csv);
    if (active == table) return cmd_reproduce_table(o);
    return cmd_export(o);
  } catch (const ss::InvalidArgument& e) {
    print_error(o, e.kind(), e.what());
    return kExitInvalid;
  } catch (const ss::Error& e) {
    print_error(o, e.kind(), e.what());
    return kExitFailed;
  } catch (const std::exception& e) {
    print_error(o, "Error", e.what());
    return kExitFailed;
  }
}
