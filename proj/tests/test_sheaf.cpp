#include <gtest/gtest.h>

#include <array>
#include <functional>

#include "holon/error.hpp"
#include "holon/perm_group.hpp"
#include "holon/sheaf.hpp"
#include "oracles.hpp"

using namespace holon;

namespace {

Nerve c3() {
  std::vector<std::pair<VertexId, VertexId>> edges{{0, 1}, {1, 2}, {2, 0}};
  return Nerve::from_indices(3, edges);
}

Nerve filled_triangle() {
  std::vector<std::pair<VertexId, VertexId>> edges{{0, 1}, {1, 2}, {0, 2}};
  std::vector<std::array<EdgeId, 3>> tris{{0, 1, 2}};
  return Nerve::from_indices(3, edges, tris);
}

// Identity on e01 and e12, `twist` on the edge joining 0 and 2.
LocallyConstantSheaf twisted_c3(const Perm& twist) {
  auto id = Perm::identity(twist.degree());
  return LocallyConstantSheaf::from_glue(c3(), {id, id, twist});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidInput;
}

// The hexagon 0a-1a-2a-0b-1b-2b-0a over the 3-cycle.
std::pair<Nerve, NerveMap> hexagon_cover() {
  std::vector<std::pair<VertexId, VertexId>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}};
  auto hex = Nerve::from_indices(6, edges);
  NerveMap map{{0, 1, 2, 0, 1, 2}, {0, 1, 2, 0, 1, 2}};
  return {hex, map};
}

}  // namespace

TEST(Sheaf, IdentityGlueOnFilledTriangle) {
  auto id = Perm::identity(2);
  auto s = LocallyConstantSheaf::from_glue(filled_triangle(), {id, id, id});
  EXPECT_TRUE(is_constant(s));
}

TEST(Sheaf, CocycleViolationNamesTriangle) {
  auto id = Perm::identity(2);
  try {
    LocallyConstantSheaf::from_glue(filled_triangle(), {id, id, Perm::swap(2, 0, 1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCocycleViolation);
    EXPECT_NE(std::string(e.what()).find("e0, e1, e2"), std::string::npos);
  }
}

TEST(Sheaf, NotBijection) {
  RawSheaf raw;
  raw.fibers = {{"a", "b"}, {"a", "b"}};
  raw.glue = {{{"a", "a"}, {"b", "a"}}};
  std::vector<std::pair<VertexId, VertexId>> edge{{0, 1}};
  EXPECT_EQ(code_of([&] { LocallyConstantSheaf::validate(Nerve::from_indices(2, edge), raw); }),
            ErrorCode::kNotBijection);
}

TEST(Sheaf, FiberSizeMismatch) {
  RawSheaf raw;
  raw.fibers = {{"a", "b"}, {"a"}};
  raw.glue = {{{"a", "a"}}};
  std::vector<std::pair<VertexId, VertexId>> edge{{0, 1}};
  EXPECT_EQ(code_of([&] { LocallyConstantSheaf::validate(Nerve::from_indices(2, edge), raw); }),
            ErrorCode::kFiberSizeMismatch);
}

TEST(Sheaf, FiberCap) {
  std::vector<std::pair<VertexId, VertexId>> edge{{0, 1}};
  auto id = Perm::identity(17);
  EXPECT_EQ(code_of([&] { LocallyConstantSheaf::from_glue(Nerve::from_indices(2, edge), {id}); }),
            ErrorCode::kBoundExceeded);
}

TEST(Sheaf, LabelledGlueOrientation) {
  // glue maps the fiber over the higher vertex to the fiber over the lower one.
  RawSheaf raw;
  raw.fibers = {{"x", "y"}, {"p", "q"}};
  raw.glue = {{{"p", "y"}, {"q", "x"}}};
  std::vector<std::pair<VertexId, VertexId>> edge{{0, 1}};
  auto s = LocallyConstantSheaf::validate(Nerve::from_indices(2, edge), raw);
  EXPECT_EQ(s.glue(0), Perm::parse("[1 0]"));
  auto back = s.to_raw();
  EXPECT_EQ(back.glue[0], raw.glue[0]);
}

TEST(Sheaf, HolonomyOfLoops) {
  auto s = twisted_c3(Perm::swap(2, 0, 1));
  EXPECT_TRUE(holonomy_of_loop(s, PathWord::trivial(0)).is_identity());
  std::vector<VertexId> loop{0, 1, 2, 0};
  auto h = holonomy_of_loop(s, PathWord::from_vertices(s.nerve(), loop));
  // Oracle: compose the three bijections by hand: id * id * swap^{-1}.
  EXPECT_EQ(h, Perm::swap(2, 0, 1));
  auto constant = twisted_c3(Perm::identity(2));
  EXPECT_TRUE(holonomy_of_loop(constant, PathWord::from_vertices(constant.nerve(), loop)).is_identity());
  std::vector<VertexId> open{0, 1};
  EXPECT_EQ(code_of([&] { holonomy_of_loop(s, PathWord::from_vertices(s.nerve(), open)); }),
            ErrorCode::kInvalidPath);
}

TEST(Sheaf, HolonomyGroups) {
  auto swap = twisted_c3(Perm::swap(2, 0, 1));
  auto g = holonomy_group(swap, 0);
  EXPECT_EQ(g.order(), 2u);
  EXPECT_EQ(oracle::loop_holonomies(swap, 0, 6).size(), 2u);

  auto rot = twisted_c3(Perm::rotation(3));
  auto g3 = holonomy_group(rot, 0);
  EXPECT_EQ(g3.order(), 3u);
  EXPECT_EQ(oracle::loop_holonomies(rot, 0, 6).size(), 3u);

  auto id = Perm::identity(3);
  EXPECT_EQ(holonomy_group(twisted_c3(id), 0).order(), 1u);

  auto disconnected = LocallyConstantSheaf::from_glue(Nerve::from_indices(2, {}), {});
  EXPECT_EQ(code_of([&] { holonomy_group(disconnected, 0); }), ErrorCode::kDisconnected);
}

TEST(Sheaf, TransportAlongEdgeAndFunctoriality) {
  auto s = twisted_c3(Perm::rotation(3));
  EXPECT_EQ(transport_iso(s, PathWord::along_edge(s.nerve(), 2)), s.glue(2));
  std::vector<VertexId> a{0, 1}, b{1, 2, 0};
  auto x = PathWord::from_vertices(s.nerve(), a);
  auto y = PathWord::from_vertices(s.nerve(), b);
  EXPECT_EQ(transport_iso(s, compose_paths(s.nerve(), x, y)),
            transport_iso(s, x) * transport_iso(s, y));
}

TEST(Sheaf, BasepointIndependenceOnSwap) {
  auto s = twisted_c3(Perm::swap(2, 0, 1));
  auto g0 = holonomy_group(s, 0);
  auto g1 = holonomy_group(s, 1);
  EXPECT_EQ(g0.order(), 2u);
  EXPECT_EQ(g1.order(), 2u);
  std::vector<VertexId> path{0, 1};
  auto t = transport_iso(s, PathWord::from_vertices(s.nerve(), path));
  EXPECT_EQ(conjugate_set(g1.elements, t), g0.elements);
}

TEST(Sheaf, ConstancyAndSections) {
  auto swap = twisted_c3(Perm::swap(2, 0, 1));
  EXPECT_FALSE(is_constant(swap));
  EXPECT_TRUE(global_sections(swap).empty());
  auto id = twisted_c3(Perm::identity(2));
  EXPECT_TRUE(is_constant(id));
  EXPECT_EQ(global_sections(id).size(), 2u);
}

TEST(Sheaf, PullbackToHexagonIsConstant) {
  auto s = twisted_c3(Perm::swap(2, 0, 1));
  auto [hex, map] = hexagon_cover();
  auto pulled = pullback_to_cover(s, hex, map);
  // Six-edge composition: swap is met twice.
  std::vector<VertexId> loop{0, 1, 2, 3, 4, 5, 0};
  EXPECT_TRUE(holonomy_of_loop(pulled, PathWord::from_vertices(hex, loop)).is_identity());
  EXPECT_EQ(holonomy_group(pulled, 0).order(), 1u);
  EXPECT_TRUE(is_constant(pulled));
}

TEST(Sheaf, IdentityPullbackAndConstantPullback) {
  auto s = twisted_c3(Perm::rotation(3));
  NerveMap id{{0, 1, 2}, {0, 1, 2}};
  auto same = pullback_to_cover(s, s.nerve(), id);
  for (EdgeId e = 0; e < 3; ++e) EXPECT_EQ(same.glue(e), s.glue(e));
  auto constant = twisted_c3(Perm::identity(3));
  auto [hex, map] = hexagon_cover();
  EXPECT_TRUE(is_constant(pullback_to_cover(constant, hex, map)));
}

TEST(Sheaf, NotACoverMap) {
  auto s = twisted_c3(Perm::swap(2, 0, 1));
  NerveMap bad{{0, 1, 2}, {1, 0, 2}};
  EXPECT_EQ(code_of([&] { pullback_to_cover(s, s.nerve(), bad); }), ErrorCode::kNotACoverMap);
}

TEST(Sheaf, RefinementKeepsHolonomyOrder) {
  auto s = twisted_c3(Perm::rotation(3));
  for (EdgeId e = 0; e < 3; ++e) {
    auto r = subdivide_edge(s.nerve(), e);
    EXPECT_EQ(holonomy_group(refine(s, r), 0).order(), 3u);
  }
}
