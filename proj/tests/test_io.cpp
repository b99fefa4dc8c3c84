#include <gtest/gtest.h>

#include <filesystem>

#include "holon/error.hpp"
#include "holon/io.hpp"

using namespace holon;

namespace {

std::filesystem::path data(const std::string& name) {
  return std::filesystem::path(HOLON_DATA_DIR) / name;
}

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error raised";
  return Error(ErrorCode::kInvalidInput, "");
}

}  // namespace

TEST(Io, LoadNerves) {
  auto t = io::load_nerve(data("triangle.json"));
  EXPECT_EQ(t.vertex_count(), 3u);
  EXPECT_EQ(t.triangle_count(), 1u);
  auto c = io::load_nerve(data("c3.json"));
  auto e02 = c.find_edge("e02");
  ASSERT_TRUE(e02.has_value());
  EXPECT_EQ(c.edge(*e02).lo, 0u);
  EXPECT_EQ(c.edge(*e02).hi, 2u);
  EXPECT_EQ(io::load_nerve(data("theta.json")).edge_count(), 3u);
}

TEST(Io, MalformedAndSyntax) {
  auto e = error_of([] { io::load_nerve(data("malformed_nerve.json")); });
  EXPECT_EQ(e.code(), ErrorCode::kMalformedNerve);
  auto s = error_of([] { io::load_nerve(data("syntax_error.json")); });
  EXPECT_EQ(s.code(), ErrorCode::kInvalidInput);
  EXPECT_NE(std::string(s.what()).find(":3:"), std::string::npos) << s.what();
  auto missing = error_of([] { io::load_nerve(data("nope.json")); });
  EXPECT_EQ(missing.code(), ErrorCode::kInvalidInput);
  auto shape = error_of([] { io::parse_nerve(R"({"vertices": ["a"], "edges": [{"id": 3}]})"); });
  EXPECT_NE(std::string(shape.what()).find("/edges/0"), std::string::npos) << shape.what();
}

TEST(Io, NerveRoundTrip) {
  auto t = io::load_nerve(data("triangle.json"));
  auto again = Nerve::validate(io::parse_nerve(io::to_json(t)));
  EXPECT_EQ(io::to_json(again), io::to_json(t));
}

TEST(Io, Sheaves) {
  auto s = io::load_sheaf(data("c3swap.json"));
  EXPECT_EQ(holonomy_group(s, 0).order(), 2u);
  auto bad = error_of([] { io::load_sheaf(data("triangle_bad_cocycle.json")); });
  EXPECT_EQ(bad.code(), ErrorCode::kCocycleViolation);
  auto capped = error_of([] { io::load_sheaf(data("c3swap.json"), 1); });
  EXPECT_EQ(capped.code(), ErrorCode::kBoundExceeded);
  auto json = io::to_json(s);
  auto again = io::parse_sheaf(json, "<round-trip>", HOLON_DATA_DIR);
  for (EdgeId e = 0; e < 3; ++e) EXPECT_EQ(again.glue(e), s.glue(e));
}

TEST(Io, Structures) {
  auto f = io::load_structure(data("c3swap_structure.json"));
  ASSERT_TRUE(f.charts.has_value());
  auto s = f.structure();
  EXPECT_EQ(s.model().size(), 3u);
  EXPECT_EQ(s.transition(2), Perm::parse("[0 2 1]"));
  auto c = io::load_structure(data("c3swap_cocycle.json"));
  EXPECT_FALSE(c.charts.has_value());
  EXPECT_THROW(c.structure(), Error);
  auto chasles = error_of([] { io::load_structure(data("triangle_chasles.json")); });
  EXPECT_EQ(chasles.code(), ErrorCode::kChaslesViolation);
  auto again = io::parse_structure(io::to_json(s), "<round-trip>", HOLON_DATA_DIR).structure();
  EXPECT_EQ(again, s);
}

TEST(Io, Words) {
  const char* text = R"({
    "nerve": {"vertices": ["a", "b"], "edges": [{"id": "x", "ends": ["a", "b"]}]},
    "model": {"points": ["0", "1", "2"], "generators": [[1, 2, 0], {"name": "s", "perm": "[1 0 2]"}]},
    "transitions": {"x": "g0*s^-1"}
  })";
  auto f = io::parse_structure(text, "<inline>", ".");
  EXPECT_EQ(f.cocycle.transition(0), Perm::parse("[1 2 0]") * Perm::parse("[1 0 2]").inverse());
  const char* unknown = R"({
    "nerve": {"vertices": ["a", "b"], "edges": [{"id": "x", "ends": ["a", "b"]}]},
    "model": {"points": ["0", "1"], "generators": ["[1 0]"]},
    "transitions": {"x": "h"}
  })";
  EXPECT_THROW(io::parse_structure(unknown, "<inline>", "."), Error);
}

TEST(Io, FieldStructures) {
  auto s = io::load_field_structure(data("field_gf16.json"));
  EXPECT_EQ(s.model_degree, 4u);
  EXPECT_EQ(s.group_order, 4u);
  EXPECT_EQ(s.transitions.at({0, 1}), 2u);
  EXPECT_EQ(io::parse_field_structure(io::to_json(s)), s);
  EXPECT_FALSE(is_complete_field_structure(io::load_field_structure(data("field_incomplete.json"))));
  EXPECT_EQ(build_fsg(io::load_field_structure(data("field_23.json"))).degree, 6u);
  auto bad = error_of([] { io::parse_field_structure(R"({"p": 2, "members": []})"); });
  EXPECT_TRUE(bad.code() == ErrorCode::kInvalidInput || bad.code() == ErrorCode::kInvalidStructure);
}

TEST(Io, CoverMap) {
  auto base = io::load_nerve(data("c3.json"));
  auto cm = io::load_cover_map(data("hexagon_cover.json"), base);
  EXPECT_EQ(cm.cover.vertex_count(), 6u);
  EXPECT_FALSE(nerve_map_defect(cm.cover, base, cm.map).has_value());
  auto s = io::load_sheaf(data("c3swap.json"));
  EXPECT_TRUE(is_constant(pullback_to_cover(s, cm.cover, cm.map)));
}
