#include <gtest/gtest.h>

#include "scalesplit/bench/reference_table.hpp"
#include "scalesplit/bench/reference_tables_data.hpp"
#include "scalesplit/bench/request.hpp"
#include "scalesplit/bench/table.hpp"

using namespace scalesplit;
using namespace scalesplit::bench;

TEST(ReferenceTable, EmbeddedTableLoads) {
  const ReferenceTable& t = embedded_reference_table();
  EXPECT_EQ(t.version(), 1);
  EXPECT_EQ(t.size(), 4u * 5u * 6u);
  const auto e = t.lookup(1, MethodKind::tscsp, 32);
  ASSERT_TRUE(e && e->alpha && e->iterations);
  EXPECT_DOUBLE_EQ(*e->alpha, 0.46);
  EXPECT_EQ(*e->iterations, 7u);
  EXPECT_DOUBLE_EQ(*t.lookup(3, MethodKind::gsor, 32)->alpha, 0.776);
  EXPECT_FALSE(t.lookup(3, MethodKind::mhss, 1024)->iterations.has_value());
  EXPECT_FALSE(t.lookup(1, MethodKind::tscsp, 48).has_value());
}

TEST(ReferenceTable, MalformedRejected) {
  EXPECT_THROW(ReferenceTable::parse("{"), ParseError);
  EXPECT_THROW(ReferenceTable::parse(R"({"version": 1})"), ParseError);
}

TEST(Request, ParseSizes) {
  EXPECT_EQ(parse_sizes("32,64", 1), (std::vector<std::size_t>{32, 64}));
  EXPECT_EQ(parse_sizes("32^2, 64^2", 2), (std::vector<std::size_t>{32, 64}));
  EXPECT_EQ(parse_sizes("32^2", 4), (std::vector<std::size_t>{1024}));
  EXPECT_EQ(parse_sizes("1024", 4), (std::vector<std::size_t>{1024}));
  EXPECT_THROW(parse_sizes("", 1), InvalidArgument);
  EXPECT_THROW(parse_sizes(" , ", 1), InvalidArgument);
  EXPECT_THROW(parse_sizes("3x", 1), InvalidArgument);
  EXPECT_THROW(parse_sizes("0", 1), InvalidArgument);
}

TEST(Request, ParseAlpha) {
  EXPECT_EQ(parse_alpha("paper").mode, AlphaMode::tabulated);
  EXPECT_EQ(parse_alpha("grid").mode, AlphaMode::grid);
  EXPECT_EQ(parse_alpha("theoretical").mode, AlphaMode::theoretical);
  EXPECT_DOUBLE_EQ(parse_alpha("0.46").value, 0.46);
  EXPECT_THROW(parse_alpha("0"), InvalidArgument);
  EXPECT_THROW(parse_alpha("-1"), InvalidArgument);
  EXPECT_THROW(parse_alpha("fast"), InvalidArgument);
}

TEST(Request, ParseGridAndMethods) {
  const auto g = parse_grid("0.1:2:0.05");
  EXPECT_DOUBLE_EQ(g.lo, 0.1);
  EXPECT_DOUBLE_EQ(g.hi, 2.0);
  EXPECT_DOUBLE_EQ(g.step, 0.05);
  EXPECT_THROW(parse_grid("0.1:2"), InvalidArgument);
  EXPECT_THROW(parse_grid("2:1:0.1"), InvalidArgument);
  EXPECT_EQ(parse_methods("all").size(), 5u);
  EXPECT_EQ(parse_methods("gsor").front(), MethodKind::gsor);
}

TEST(Request, SizeCap) {
  EXPECT_NO_THROW(check_size_cap(1, 256, false));
  EXPECT_THROW(check_size_cap(1, 512, false), InvalidArgument);
  EXPECT_NO_THROW(check_size_cap(1, 512, true));
  EXPECT_NO_THROW(check_size_cap(4, 65536, false));
  EXPECT_THROW(check_size_cap(4, 65537, false), InvalidArgument);
}

TEST(ReproduceTable, Example1MatchesReference) {
  TableRequest req;
  req.example = 1;
  req.sizes = {32, 64};
  req.context.reference = &embedded_reference_table();
  const TableArtifact art = reproduce_table(req);
  ASSERT_EQ(art.cells.size(), 10u);
  const std::pair<MethodKind, std::array<std::size_t, 2>> rows[] = {
      {MethodKind::tscsp, {7, 7}}, {MethodKind::scsp, {9, 9}},    {MethodKind::mhss, {53, 72}},
      {MethodKind::pmhss, {21, 21}}, {MethodKind::gsor, {22, 24}}};
  for (const auto& [m, counts] : rows) {
    EXPECT_EQ(art.cell(m, 32).iterations, counts[0]) << to_string(m);
    EXPECT_EQ(art.cell(m, 64).iterations, counts[1]) << to_string(m);
    EXPECT_TRUE(art.cell(m, 32).alpha.has_value());
    EXPECT_EQ(art.cell(m, 32).alpha_source, "paper");
  }
  EXPECT_TRUE(art.warnings.empty());
  const std::string md = render_markdown(art);
  EXPECT_NE(md.find("| TSCSP | alpha | 0.46 | 0.46 |"), std::string::npos);
  EXPECT_NE(md.find("| MHSS | alpha | 0.78 | 0.55 |"), std::string::npos);
  EXPECT_NE(md.find("not comparable"), std::string::npos);
}

TEST(ReproduceTable, CellsRunConcurrentlyWithSameOutput) {
  TableRequest req;
  req.example = 4;
  req.sizes = {256, 1024};
  req.context.reference = &embedded_reference_table();
  const TableArtifact serial = reproduce_table(req);
  req.context.threads = 3;
  const TableArtifact parallel = reproduce_table(req);
  ASSERT_EQ(serial.cells.size(), parallel.cells.size());
  for (std::size_t i = 0; i < serial.cells.size(); ++i) {
    EXPECT_EQ(serial.cells[i].method, parallel.cells[i].method);
    EXPECT_EQ(serial.cells[i].size, parallel.cells[i].size);
    EXPECT_EQ(serial.cells[i].iterations, parallel.cells[i].iterations);
  }
  EXPECT_EQ(render_csv(serial).substr(0, 60), render_csv(parallel).substr(0, 60));
}

TEST(ReproduceTable, MissingReferenceAlphaFallsBackToGrid) {
  TableRequest req;
  req.example = 4;
  req.methods = {MethodKind::scsp};
  req.sizes = {400};  // 20^2 is not a tabulated column
  req.context.reference = &embedded_reference_table();
  req.context.grid = {0.1, 2.0, 0.1};
  const TableArtifact art = reproduce_table(req);
  EXPECT_EQ(art.cells.front().alpha_source, "grid");
  ASSERT_EQ(art.warnings.size(), 1u);
}

TEST(ReproduceTable, FailedCellMarkedWithoutAborting) {
  TableRequest req;
  req.example = 1;
  req.methods = {MethodKind::mhss, MethodKind::tscsp};
  req.sizes = {16};
  req.alpha = {AlphaMode::explicit_value, 0.5};
  req.context.base.max_iterations = 3;
  const TableArtifact art = reproduce_table(req);
  EXPECT_TRUE(art.cell(MethodKind::mhss, 16).failed);
  EXPECT_NE(render_markdown(art).find("†"), std::string::npos);
  EXPECT_EQ(art.cells.size(), 2u);
}

TEST(ReproduceTable, TheoreticalAlphaOnlyForTscsp) {
  TableRequest req;
  req.example = 4;
  req.methods = {MethodKind::tscsp, MethodKind::scsp};
  req.sizes = {64};
  req.alpha = {AlphaMode::theoretical, 0.0};
  const TableArtifact art = reproduce_table(req);
  EXPECT_FALSE(art.cell(MethodKind::tscsp, 64).failed);
  EXPECT_EQ(art.cell(MethodKind::tscsp, 64).alpha_source, "theoretical");
  EXPECT_TRUE(art.cell(MethodKind::scsp, 64).failed);
}

TEST(ReproduceTable, Validation) {
  TableRequest req;
  req.example = 1;
  EXPECT_THROW(reproduce_table(req), InvalidArgument);
  req.sizes = {8};
  req.methods.clear();
  EXPECT_THROW(reproduce_table(req), InvalidArgument);
  req.methods = {MethodKind::tscsp};
  req.example = 7;
  EXPECT_THROW(reproduce_table(req), InvalidArgument);
}

TEST(ReproduceTable, JsonSchemaKeys) {
  TableRequest req;
  req.example = 3;
  req.methods = {MethodKind::gsor};
  req.sizes = {32};
  req.context.reference = &embedded_reference_table();
  const auto j = to_json(reproduce_table(req));
  const auto& cell = j.at("cells").at(0);
  for (const char* key : {"example", "method", "alpha", "n", "iterations", "converged", "final_relres", "seconds"})
    EXPECT_TRUE(cell.contains(key)) << key;
  EXPECT_EQ(cell.at("iterations"), 11);
  EXPECT_EQ(cell.at("alpha"), 0.776);
}
