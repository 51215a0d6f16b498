#pragma once

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <variant>

#include "scalesplit/core/error.hpp"
#include "scalesplit/io/matrix_market.hpp"
#include "scalesplit/io/vector_io.hpp"
#include "scalesplit/problems/problem.hpp"

// On-disk problem layout (one directory):
//   W.mtx, T.mtx   coordinate real symmetric Matrix Market
//   b.vec          text complex vector ("n" header, then "re im" lines)
//   spec.json      {example, m|n, tau, omega, mu_damp, theta1, theta2, normalized}

namespace scalesplit {

inline std::string to_string(SyntheticKind k) {
  switch (k) {
    case SyntheticKind::random_pair: return "random";
    case SyntheticKind::equal_pair: return "equal";
    case SyntheticKind::singular_t: return "singular";
  }
  return "?";
}

inline SyntheticKind parse_synthetic_kind(const std::string& s) {
  if (s == "random") return SyntheticKind::random_pair;
  if (s == "equal") return SyntheticKind::equal_pair;
  if (s == "singular") return SyntheticKind::singular_t;
  throw InvalidArgument("unknown synthetic kind '" + s + "'");
}

inline nlohmann::json spec_to_json(const ProblemSpec& spec, bool normalized) {
  nlohmann::json j;
  std::visit(
      [&j](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Example1>) {
          j["example"] = 1;
          j["m"] = s.m;
          j["tau"] = s.tau ? nlohmann::json(*s.tau) : nlohmann::json(nullptr);
        } else if constexpr (std::is_same_v<S, Example2>) {
          j["example"] = 2;
          j["m"] = s.m;
          j["omega"] = s.omega;
          j["mu_damp"] = s.mu_damp;
        } else if constexpr (std::is_same_v<S, Example3>) {
          j["example"] = 3;
          j["m"] = s.m;
        } else if constexpr (std::is_same_v<S, Example4>) {
          j["example"] = 4;
          j["n"] = s.n;
          j["theta1"] = s.theta1;
          j["theta2"] = s.theta2;
        } else {
          j["example"] = "synthetic";
          j["n"] = s.n;
          j["seed"] = s.seed;
          j["kind"] = to_string(s.kind);
        }
      },
      spec);
  j["normalized"] = normalized;
  return j;
}

inline ProblemSpec spec_from_json(const nlohmann::json& j) {
  try {
    const auto& ex = j.at("example");
    if (ex.is_string()) {
      return Synthetic{j.at("n").get<std::size_t>(), j.at("seed").get<std::uint64_t>(),
                       parse_synthetic_kind(j.at("kind").get<std::string>())};
    }
    switch (ex.get<int>()) {
      case 1: {
        Example1 e{j.at("m").get<std::size_t>(), std::nullopt};
        if (j.contains("tau") && !j["tau"].is_null()) e.tau = j["tau"].get<double>();
        return e;
      }
      case 2: return Example2{j.at("m").get<std::size_t>(), j.at("omega").get<double>(), j.at("mu_damp").get<double>()};
      case 3: return Example3{j.at("m").get<std::size_t>()};
      case 4: return Example4{j.at("n").get<std::size_t>(), j.at("theta1").get<double>(), j.at("theta2").get<double>()};
      default: break;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed problem spec: ") + e.what());
  }
  throw ParseError("unknown example id in problem spec");
}

inline void export_problem(const Problem& p, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  io::write_matrix_market(dir / "W.mtx", p.w);
  io::write_matrix_market(dir / "T.mtx", p.t);
  io::save_complex_vector(dir / "b.vec", p.b);
  std::ofstream os(dir / "spec.json");
  if (!os) throw IoError("cannot write " + (dir / "spec.json").string());
  os << spec_to_json(p.spec, p.normalized).dump(2) << '\n';
  if (!os) throw IoError("failed writing " + (dir / "spec.json").string());
}

inline Problem import_problem(const std::filesystem::path& dir) {
  Problem p;
  p.w = io::read_matrix_market(dir / "W.mtx");
  p.t = io::read_matrix_market(dir / "T.mtx");
  p.b = io::load_complex_vector(dir / "b.vec");
  std::ifstream is(dir / "spec.json");
  if (!is) throw IoError("cannot open " + (dir / "spec.json").string());
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed spec.json: ") + e.what());
  }
  p.spec = spec_from_json(j);
  p.normalized = j.value("normalized", false);
  p.validate();
  return p;
}

}  // namespace scalesplit
