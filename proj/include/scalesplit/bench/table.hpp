#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <ctime>
#include <future>
#include <iomanip>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scalesplit/bench/reference_table.hpp"
#include "scalesplit/core/error.hpp"
#include "scalesplit/problems/examples.hpp"
#include "scalesplit/solvers/run.hpp"
#include "scalesplit/spectral/dense_oracles.hpp"
#include "scalesplit/spectral/grid_search.hpp"

namespace scalesplit::bench {

enum class AlphaMode { explicit_value, tabulated, grid, theoretical };

inline const char* to_string(AlphaMode m) {
  switch (m) {
    case AlphaMode::explicit_value: return "explicit";
    case AlphaMode::tabulated: return "paper";
    case AlphaMode::grid: return "grid";
    case AlphaMode::theoretical: return "theoretical";
  }
  return "?";
}

struct AlphaChoice {
  AlphaMode mode = AlphaMode::tabulated;
  double value = 0.0;  // explicit mode only
};

/// Problem order for a size parameter: m^2 for examples 1-3, n itself for 4.
inline std::size_t problem_order(int example, std::size_t size) {
  return example == 4 ? size : size * size;
}

/// Table column (grid side m) for a size parameter, if the order is m^2.
inline std::optional<std::size_t> table_column(int example, std::size_t size) {
  if (example != 4) return size;
  const auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(size))));
  if (r * r == size) return r;
  return std::nullopt;
}

inline Problem build_benchmark_example(int example, std::size_t size) {
  switch (example) {
    case 1: return build_example1(size);
    case 2: return build_example2(size);
    case 3: return build_example3(size);
    case 4: return build_example4(size);
    default: throw InvalidArgument("example must be 1, 2, 3 or 4");
  }
}

struct ResolvedAlpha {
  double alpha = 0.0;
  std::string source;
  std::optional<std::string> warning;
};

struct AlphaContext {
  const ReferenceTable* reference = nullptr;
  spectral::AlphaGrid grid{0.01, 3.0, 0.01};
  SolverConfig base;
  std::size_t oracle_cap = kDefaultOracleCap;
  unsigned threads = 1;
};

/// Resolves the iteration parameter for one (problem, method) pair. Missing
/// tabulated values fall back to a grid search and carry a warning.
inline ResolvedAlpha resolve_alpha(const AlphaChoice& choice, const Problem& p, int example, std::size_t size,
                                   MethodKind method, const AlphaContext& ctx) {
  auto by_grid = [&](std::optional<std::string> warning) {
    const auto tuned = spectral::grid_search_alpha(p, method, ctx.grid, ctx.base, ctx.threads);
    return ResolvedAlpha{tuned.best_alpha, "grid", std::move(warning)};
  };
  switch (choice.mode) {
    case AlphaMode::explicit_value:
      if (!(choice.value > 0.0)) throw InvalidArgument("alpha must be positive");
      return {choice.value, "explicit", std::nullopt};
    case AlphaMode::grid:
      return by_grid(std::nullopt);
    case AlphaMode::theoretical: {
      if (method != MethodKind::tscsp)
        throw InvalidArgument("a closed-form optimal alpha is only available for TSCSP");
      const auto info = spectral::spectral_info(p.w, p.t, ctx.oracle_cap);
      return {info.alpha_opt_minus, "theoretical", std::nullopt};
    }
    case AlphaMode::tabulated: {
      std::optional<ReferenceEntry> entry;
      const auto column = table_column(example, size);
      if (ctx.reference != nullptr && column) entry = ctx.reference->lookup(example, method, *column);
      if (entry && entry->alpha) return {*entry->alpha, "paper", std::nullopt};
      return by_grid("no tabulated alpha for example " + std::to_string(example) + ", " +
                     std::string(to_string(method)) + ", size " + std::to_string(size) + "; using grid search");
    }
  }
  throw InvalidArgument("unknown alpha mode");
}

struct TableCell {
  MethodKind method = MethodKind::tscsp;
  std::size_t size = 0;
  std::size_t n = 0;
  std::optional<double> alpha;
  std::string alpha_source;
  std::size_t iterations = 0;
  bool converged = false;
  bool failed = false;
  std::string error;
  double final_relres = 1.0;
  double seconds = 0.0;
  std::optional<double> ref_alpha;
  std::optional<std::size_t> ref_iterations;
};

struct TableArtifact {
  int example = 1;
  double tolerance = 1e-6;
  std::string inner;
  std::string date;
  std::string alpha_mode;
  std::vector<MethodKind> methods;
  std::vector<std::size_t> sizes;
  std::vector<TableCell> cells;  // method-major, then size
  std::vector<std::string> warnings;

  const TableCell& cell(MethodKind m, std::size_t size) const {
    for (const auto& c : cells)
      if (c.method == m && c.size == size) return c;
    throw InvalidArgument("no such table cell");
  }
};

struct TableRequest {
  int example = 1;
  std::vector<MethodKind> methods{kAllMethods.begin(), kAllMethods.end()};
  std::vector<std::size_t> sizes;
  AlphaChoice alpha;
  AlphaContext context;
};

inline std::string today_iso() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%d");
  return os.str();
}

/// Runs every (method, size) cell. Failures are recorded in the cell and
/// never abort the table.
inline TableArtifact reproduce_table(const TableRequest& req) {
  if (req.sizes.empty()) throw InvalidArgument("size list is empty");
  if (req.methods.empty()) throw InvalidArgument("method list is empty");
  if (req.example < 1 || req.example > 4) throw InvalidArgument("example must be 1, 2, 3 or 4");

  TableArtifact art;
  art.example = req.example;
  art.tolerance = req.context.base.tolerance;
  art.inner = inner::to_string(req.context.base.inner.kind);
  art.date = today_iso();
  art.alpha_mode = to_string(req.alpha.mode);
  art.methods = req.methods;
  art.sizes = req.sizes;

  std::map<std::size_t, std::shared_ptr<const Problem>> problems;
  for (std::size_t s : req.sizes)
    if (!problems.count(s)) problems[s] = std::make_shared<const Problem>(build_benchmark_example(req.example, s));

  for (MethodKind m : req.methods)
    for (std::size_t s : req.sizes) {
      TableCell c;
      c.method = m;
      c.size = s;
      c.n = problem_order(req.example, s);
      if (req.context.reference != nullptr) {
        if (const auto col = table_column(req.example, s)) {
          if (const auto e = req.context.reference->lookup(req.example, m, *col)) {
            c.ref_alpha = e->alpha;
            c.ref_iterations = e->iterations;
          }
        }
      }
      art.cells.push_back(c);
    }

  std::vector<std::optional<std::string>> warnings(art.cells.size());
  auto evaluate = [&](std::size_t idx) {
    TableCell& c = art.cells[idx];
    const Problem& p = *problems.at(c.size);
    try {
      AlphaContext ctx = req.context;
      ctx.threads = 1;
      const ResolvedAlpha ra = resolve_alpha(req.alpha, p, req.example, c.size, c.method, ctx);
      warnings[idx] = ra.warning;
      c.alpha = ra.alpha;
      c.alpha_source = ra.source;
      SolverConfig cfg = req.context.base;
      cfg.method = c.method;
      cfg.alpha = ra.alpha;
      const SolveReport r = run(p, cfg);
      c.iterations = r.iterations;
      c.converged = r.converged;
      c.failed = !r.converged;
      c.final_relres = r.final_relative_residual;
      c.seconds = r.total_seconds();
      if (!r.converged) c.error = r.diverged ? "diverged" : "not converged";
    } catch (const std::exception& e) {
      c.failed = true;
      c.error = e.what();
    }
  };

  const unsigned threads = std::max(1U, req.context.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < art.cells.size(); ++i) evaluate(i);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < threads; ++t)
      jobs.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t i = t; i < art.cells.size(); i += threads) evaluate(i);
      }));
    for (auto& j : jobs) j.get();
  }
  for (auto& w : warnings)
    if (w) art.warnings.push_back(*w);
  return art;
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string size_label(int example, std::size_t size) {
  if (const auto col = table_column(example, size)) return std::to_string(*col) + "^2";
  return std::to_string(size);
}

inline std::string fmt_fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

inline std::string fmt_alpha(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

}  // namespace detail

inline std::string render_markdown(const TableArtifact& art, bool with_reference = true) {
  std::ostringstream os;
  os << "### Example " << art.example << " (tol " << art.tolerance << ", inner " << art.inner << ", alpha "
     << art.alpha_mode << ", " << art.date << ")\n\n";
  os << "| Method | | ";
  for (std::size_t s : art.sizes) os << detail::size_label(art.example, s) << " | ";
  os << "\n|---|---|";
  for (std::size_t i = 0; i < art.sizes.size(); ++i) os << "---|";
  os << '\n';
  for (MethodKind m : art.methods) {
    auto row = [&](const std::string& head, const std::string& label, auto&& value) {
      os << "| " << head << " | " << label << " | ";
      for (std::size_t s : art.sizes) os << value(art.cell(m, s)) << " | ";
      os << '\n';
    };
    row(display_name(m), "alpha", [](const TableCell& c) { return c.alpha ? detail::fmt_alpha(*c.alpha) : "-"; });
    row("", "Iter", [](const TableCell& c) { return c.failed ? std::string("†") : std::to_string(c.iterations); });
    if (with_reference)
      row("", "Iter (ref)", [](const TableCell& c) {
        return c.ref_iterations ? std::to_string(*c.ref_iterations) : std::string("†");
      });
    row("", "wall s", [](const TableCell& c) { return c.failed ? std::string("-") : detail::fmt_fixed(c.seconds, 2); });
  }
  os << "\nWall-clock seconds on this machine; not comparable to the reference hardware.\n";
  for (const auto& w : art.warnings) os << "\nwarning: " << w;
  if (!art.warnings.empty()) os << '\n';
  return os.str();
}

inline std::string render_csv(const TableArtifact& art) {
  std::ostringstream os;
  os << "example,method,size,n,alpha,alpha_source,iterations,converged,final_relres,seconds,ref_alpha,ref_iterations\n";
  for (const auto& c : art.cells) {
    os << art.example << ',' << to_string(c.method) << ',' << c.size << ',' << c.n << ','
       << (c.alpha ? detail::fmt_alpha(*c.alpha) : "") << ',' << c.alpha_source << ','
       << (c.failed ? std::string("†") : std::to_string(c.iterations)) << ',' << (c.converged ? "true" : "false")
       << ',' << c.final_relres << ',' << detail::fmt_fixed(c.seconds, 2) << ','
       << (c.ref_alpha ? detail::fmt_alpha(*c.ref_alpha) : "") << ','
       << (c.ref_iterations ? std::to_string(*c.ref_iterations) : "") << '\n';
  }
  return os.str();
}

inline nlohmann::json to_json(const TableArtifact& art) {
  nlohmann::json j;
  j["example"] = art.example;
  j["tolerance"] = art.tolerance;
  j["inner"] = art.inner;
  j["date"] = art.date;
  j["alpha_mode"] = art.alpha_mode;
  j["warnings"] = art.warnings;
  j["cells"] = nlohmann::json::array();
  for (const auto& c : art.cells) {
    nlohmann::json cj;
    cj["example"] = art.example;
    cj["method"] = to_string(c.method);
    cj["alpha"] = c.alpha ? nlohmann::json(*c.alpha) : nlohmann::json(nullptr);
    cj["n"] = c.n;
    cj["size"] = c.size;
    cj["iterations"] = c.iterations;
    cj["converged"] = c.converged;
    cj["final_relres"] = c.final_relres;
    cj["seconds"] = c.seconds;
    cj["alpha_source"] = c.alpha_source;
    if (c.failed) cj["error"] = c.error;
    if (c.ref_iterations) cj["ref_iterations"] = *c.ref_iterations;
    if (c.ref_alpha) cj["ref_alpha"] = *c.ref_alpha;
    j["cells"].push_back(cj);
  }
  return j;
}

}  // namespace scalesplit::bench
