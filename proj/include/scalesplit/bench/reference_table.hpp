#pragma once

#include <cstddef>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <tuple>

#include "scalesplit/core/error.hpp"
#include "scalesplit/solvers/config.hpp"

namespace scalesplit::bench {

struct ReferenceEntry {
  std::optional<double> alpha;
  std::optional<std::size_t> iterations;
};

/// Reference (alpha, iterations) pairs keyed by (example, method, column m),
/// loaded from the versioned data file. Column m means problem order m^2.
class ReferenceTable {
 public:
  static ReferenceTable from_json(const nlohmann::json& j) {
    ReferenceTable t;
    try {
      t.version_ = j.at("version").get<int>();
      const auto& columns = j.at("columns");
      for (const auto& [ex, methods] : j.at("examples").items()) {
        const int example = std::stoi(ex);
        for (const auto& [name, row] : methods.items()) {
          const MethodKind m = parse_method(name);
          const auto& alphas = row.at("alpha");
          const auto& iters = row.at("iterations");
          for (std::size_t c = 0; c < columns.size(); ++c) {
            ReferenceEntry e;
            if (!alphas.at(c).is_null()) e.alpha = alphas.at(c).get<double>();
            if (!iters.at(c).is_null()) e.iterations = iters.at(c).get<std::size_t>();
            t.entries_[{example, m, columns.at(c).get<std::size_t>()}] = e;
          }
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed reference table: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("malformed reference table: ") + e.what());
    }
    return t;
  }

  static ReferenceTable parse(const std::string& text) {
    try {
      return from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("reference table is not valid JSON: ") + e.what());
    }
  }

  int version() const noexcept { return version_; }

  /// Empty when the key is absent from the table.
  std::optional<ReferenceEntry> lookup(int example, MethodKind method, std::size_t column) const {
    const auto it = entries_.find({example, method, column});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const noexcept { return entries_.size(); }

 private:
  int version_ = 0;
  std::map<std::tuple<int, MethodKind, std::size_t>, ReferenceEntry> entries_;
};

}  // namespace scalesplit::bench
