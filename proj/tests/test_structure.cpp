#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <functional>
#include <set>

#include "holon/error.hpp"
#include "holon/perm_group.hpp"
#include "holon/random.hpp"
#include "holon/structure.hpp"
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

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidInput;
}

ModelSpace z2() { return ModelSpace::cyclic(2); }

// The swap acting on two of three points; point 0 is fixed, so charts can sit
// there while the transition on the edge (0,2) is nontrivial.
ModelSpace swap_model() { return ModelSpace::make({"fixed", "left", "right"}, {Perm::parse("[0 2 1]")}); }

GeoStructure swap_structure() {
  auto s = Perm::parse("[0 2 1]");
  auto id = Perm::identity(3);
  return GeoStructure::verify(c3(), swap_model(), {0, 0, 0}, {id, id, s});
}

TransitionCocycle swap_cocycle() {
  auto id = Perm::identity(2);
  return TransitionCocycle::verify(c3(), z2(), {id, id, Perm::swap(2, 0, 1)});
}

}  // namespace

TEST(ModelSpace, Basics) {
  auto m = ModelSpace::cyclic(4);
  EXPECT_EQ(m.size(), 4u);
  EXPECT_EQ(m.order(), 4u);
  EXPECT_TRUE(m.contains(Perm::rotation(4, 3)));
  EXPECT_FALSE(m.contains(Perm::swap(4, 0, 1)));
  EXPECT_EQ(m.find_point("2"), 2u);
  EXPECT_FALSE(m.find_point("x").has_value());
  std::vector<Perm> s3{Perm::swap(3, 0, 1), Perm::rotation(3)};
  auto reg = ModelSpace::regular(s3, 3);
  EXPECT_EQ(reg.size(), 6u);
  EXPECT_EQ(reg.order(), 6u);
  EXPECT_EQ(code_of([] { ModelSpace::make({"a", "a"}, {}); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([] { ModelSpace::make({}, {}); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([] { ModelSpace::make({"a", "b"}, {Perm::identity(3)}); }),
            ErrorCode::kInvalidInput);
}

TEST(Structure, TrivialOnUnfilledCycle) {
  auto id = Perm::identity(2);
  auto s = verify_structure(z2(), c3(), {0, 0, 0}, {id, id, id});
  EXPECT_EQ(s, trivial_structure(c3(), z2(), 0));
}

TEST(Structure, ChaslesViolation) {
  auto id = Perm::identity(2);
  try {
    verify_structure(z2(), filled_triangle(), {0, 0, 0}, {id, id, Perm::swap(2, 0, 1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kChaslesViolation);
    EXPECT_NE(std::string(e.what()).find("e0"), std::string::npos);
  }
}

TEST(Structure, NotInGroup) {
  auto id = Perm::identity(3);
  EXPECT_EQ(code_of([&] {
              verify_structure(ModelSpace::cyclic(3), c3(), {0, 0, 0}, {id, id, Perm::swap(3, 0, 1)});
            }),
            ErrorCode::kNotInGroup);
}

TEST(Structure, ChartIncompatibleNamesEdge) {
  auto id = Perm::identity(2);
  try {
    verify_structure(z2(), c3(), {0, 0, 0}, {id, id, Perm::swap(2, 0, 1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kChartIncompatible);
    EXPECT_NE(std::string(e.what()).find("e2"), std::string::npos);
  }
}

TEST(Structure, CountMismatch) {
  EXPECT_EQ(code_of([&] { verify_structure(z2(), c3(), {0, 0}, {}); }), ErrorCode::kInvalidInput);
}

TEST(Holonomy, Representations) {
  auto triv = holonomy_representation(trivial_structure(c3(), z2(), 0), 0);
  ASSERT_EQ(triv.generator_images.size(), 1u);
  EXPECT_TRUE(triv.generator_images[0].is_identity());
  EXPECT_EQ(triv.image.size(), 1u);

  auto s = swap_structure();
  auto rep = holonomy_representation(s, 0);
  ASSERT_EQ(rep.generator_images.size(), 1u);
  // Product of the three edge elements around the cycle.
  auto loop = rep.presentation.generator_loops[0];
  auto product = Perm::identity(3);
  auto at = loop.base();
  for (auto step : loop.steps()) {
    product = product * s.cocycle().step_element(step);
    at = step.target(s.nerve(), at);
  }
  EXPECT_EQ(rep.generator_images[0], product);
  EXPECT_EQ(rep.generator_images[0], Perm::parse("[0 2 1]"));
  EXPECT_EQ(rep.image.size(), 2u);
}

TEST(Holonomy, BaseChangeConjugates) {
  auto c = swap_cocycle();
  auto rho0 = holonomy_representation(c, 0);
  auto rho1 = holonomy_representation(c, 1);
  std::vector<VertexId> path{0, 1};
  auto g = transport_element(c, PathWord::from_vertices(c.nerve(), path));
  EXPECT_EQ(conjugate_set(rho1.image, g), rho0.image);
  // Each generator loop at 1, carried to 0, evaluates to the conjugate.
  for (std::size_t k = 0; k < rho1.generator_images.size(); ++k) {
    auto carried = compose_paths(c.nerve(), PathWord::from_vertices(c.nerve(), path),
                                 compose_paths(c.nerve(), rho1.presentation.generator_loops[k],
                                               PathWord::from_vertices(c.nerve(), path).inverse()));
    EXPECT_EQ(transport_element(c, carried), conjugate(rho1.generator_images[k], g));
  }
}

TEST(Bundle, ProductAndTwisted) {
  auto triv = FlatBundle(trivial_cocycle(c3(), z2()));
  EXPECT_EQ(triv.total_space_components().size(), 2u);
  auto twisted = FlatBundle(swap_cocycle());
  auto comps = twisted.total_space_components();
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps[0].size(), 6u);
  // Orbit count of the holonomy action on the base fiber.
  auto rep = holonomy_representation(swap_cocycle(), 0);
  EXPECT_EQ(orbit(rep.image, 0, 2).size(), 2u);
}

TEST(Bundle, TriangleGluingsInherited) {
  std::vector<Perm> h{Perm::rotation(3), Perm::swap(3, 0, 2), Perm::identity(3)};
  std::vector<Perm> s3{Perm::swap(3, 0, 1), Perm::rotation(3)};
  auto m = ModelSpace::make({"a", "b", "c"}, s3);
  auto b = FlatBundle(coboundary(filled_triangle(), m, h));
  EXPECT_TRUE(is_constant(b.sheaf()));
}

TEST(Sections, TrivialRoundTrip) {
  auto triv = FlatBundle(trivial_cocycle(c3(), z2()));
  std::vector<Perm::Point> section{1, 1, 1};
  auto s = check_transverse_section(triv, section);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(*s, trivial_structure(c3(), z2(), 1));
  std::vector<Perm::Point> broken{1, 0, 1};
  EXPECT_FALSE(check_transverse_section(triv, broken).has_value());
}

TEST(Sections, SwapHasNone) {
  auto b = FlatBundle(swap_cocycle());
  std::size_t found = 0;
  for (Perm::Point a = 0; a < 2; ++a)
    for (Perm::Point x = 0; x < 2; ++x)
      for (Perm::Point y = 0; y < 2; ++y) {
        std::vector<Perm::Point> sec{a, x, y};
        if (check_transverse_section(b, sec)) ++found;
      }
  EXPECT_EQ(found, 0u);
  EXPECT_TRUE(transverse_sections(b).empty());
}

TEST(Cover, TrivialHolonomy) {
  auto s = trivial_structure(c3(), ModelSpace::cyclic(3), 2);
  auto cover = build_holonomy_cover(s, 0);
  EXPECT_EQ(cover.holonomy.size(), 1u);
  EXPECT_EQ(cover.nerve.vertex_count(), 3u);
  EXPECT_EQ(cover.nerve.edge_count(), 3u);
  for (VertexId v = 0; v < 3; ++v) EXPECT_EQ(cover.dev[v], s.chart(v));
}

TEST(Cover, SwapGivesHexagon) {
  auto s = swap_structure();
  auto cover = build_holonomy_cover(s, 0);
  EXPECT_EQ(cover.holonomy.size(), 2u);
  EXPECT_EQ(cover.nerve.vertex_count(), 6u);
  EXPECT_EQ(cover.nerve.edge_count(), 6u);
  EXPECT_TRUE(is_connected(cover.nerve).connected);
  EXPECT_FALSE(nerve_map_defect(cover.nerve, s.nerve(), cover.projection).has_value());
  auto pulled = pullback(s, cover.nerve, cover.projection);
  EXPECT_TRUE(is_constant(FlatBundle(pulled.cocycle()).sheaf()));
  auto witness = gauge_equivalent(pulled.cocycle(), trivial_cocycle(cover.nerve, s.model()));
  ASSERT_TRUE(witness.has_value());
  for (EdgeId e = 0; e < cover.nerve.edge_count(); ++e) {
    const auto& edge = cover.nerve.edge(e);
    EXPECT_TRUE((cover.trivializing_gauge[edge.lo] * pulled.transition(e) *
                 cover.trivializing_gauge[edge.hi].inverse())
                    .is_identity());
  }
}

TEST(Cover, DevEquivariance) {
  auto s = swap_structure();
  auto cover = build_holonomy_cover(s, 0);
  const auto& group = cover.holonomy;
  for (VertexId i = 0; i < 3; ++i) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      EXPECT_EQ(cover.dev[cover.cover_vertex(i, a)], group[a].inverse()(s.chart(i)));
      for (std::size_t b = 0; b < group.size(); ++b) {
        auto gh = group[a] * group[b];
        auto idx = static_cast<std::size_t>(std::lower_bound(group.begin(), group.end(), gh) - group.begin());
        EXPECT_EQ(cover.dev[cover.cover_vertex(i, idx)],
                  group[b].inverse()(cover.dev[cover.cover_vertex(i, a)]));
      }
    }
  }
}

TEST(Completeness, OrbitModels) {
  auto one = trivial_structure(c3(), ModelSpace::make({"pt"}, {}), 0);
  EXPECT_TRUE(is_complete(one));
  // Charts a, a, b with the swap on two edges: trivial holonomy, charts cover M.
  auto sw = Perm::swap(2, 0, 1);
  auto ab = ModelSpace::make({"a", "b"}, {sw});
  auto s = GeoStructure::verify(c3(), ab, {0, 0, 1}, {Perm::identity(2), sw, sw});
  EXPECT_EQ(holonomy_representation(s, 0).image.size(), 1u);
  EXPECT_TRUE(is_complete(s));
  auto sw3 = Perm::parse("[1 0 2]");
  auto bigger = ModelSpace::make({"a", "b", "far"}, {sw3});
  auto t = GeoStructure::verify(c3(), bigger, {0, 0, 1}, {Perm::identity(3), sw3, sw3});
  EXPECT_FALSE(is_complete(t));
  // The swap structure keeps every chart on its fixed point.
  EXPECT_FALSE(is_complete(swap_structure()));
}

TEST(Gauge, SelfAndCoboundary) {
  auto s = swap_structure();
  auto w = gauge_equivalent(s, s);
  ASSERT_TRUE(w.has_value());
  for (const auto& h : *w) EXPECT_TRUE(h.is_identity());

  std::vector<Perm> s3{Perm::swap(3, 0, 1), Perm::rotation(3)};
  auto m = ModelSpace::regular(s3, 3);
  Rng rng(11);
  std::vector<Perm> h;
  for (int v = 0; v < 3; ++v) h.push_back(m.elements()[rng() % m.order()]);
  auto cob = coboundary(c3(), m, h);
  EXPECT_TRUE(gauge_equivalent(trivial_cocycle(c3(), m), cob).has_value());
  EXPECT_TRUE(oracle::gauge_bruteforce(trivial_cocycle(c3(), m), cob));
}

TEST(Gauge, SwapVersusTrivial) {
  auto c = swap_cocycle();
  auto t = trivial_cocycle(c3(), z2());
  EXPECT_FALSE(gauge_equivalent(c, t).has_value());
  EXPECT_FALSE(oracle::gauge_bruteforce(c, t));
  EXPECT_NE(holonomy_representation(c, 0).image.size(), holonomy_representation(t, 0).image.size());
}

TEST(Gauge, Errors) {
  auto c = swap_cocycle();
  EXPECT_EQ(code_of([&] { gauge_equivalent(c, trivial_cocycle(c3(), ModelSpace::cyclic(3))); }),
            ErrorCode::kModelMismatch);
  EXPECT_EQ(code_of([&] { gauge_equivalent(c, trivial_cocycle(filled_triangle(), z2())); }),
            ErrorCode::kInvalidInput);
  auto m = ModelSpace::regular(std::vector<Perm>{Perm::swap(4, 0, 1), Perm::rotation(4)}, 4);
  std::vector<std::pair<VertexId, VertexId>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  auto n = Nerve::from_indices(4, edges);
  auto gens = m.generators();
  std::vector<Perm> t{m.identity(), m.identity(), m.identity(), gens[0]};
  auto twisted = TransitionCocycle::verify(n, m, t);
  EXPECT_EQ(code_of([&] { gauge_equivalent(twisted, trivial_cocycle(n, m), 3); }),
            ErrorCode::kSearchBudgetExceeded);
}

TEST(Morphism, IdentityGaugeAndViolation) {
  auto s = swap_structure();
  std::vector<Perm> ids(3, Perm::identity(3));
  EXPECT_TRUE(check_cg_morphism(s, s, identity_map(s.nerve()), ids));

  auto sw = Perm::parse("[0 2 1]");
  std::vector<Perm> h{sw, Perm::identity(3), sw};
  auto other_cocycle = coboundary(c3(), s.model(), h);
  // other(e) = h(lo) t(e) h(hi)^{-1}.
  std::vector<Perm> t2;
  for (EdgeId e = 0; e < 3; ++e) {
    const auto& edge = s.nerve().edge(e);
    t2.push_back(h[edge.lo] * s.transition(e) * h[edge.hi].inverse());
  }
  (void)other_cocycle;
  auto other = GeoStructure::verify(c3(), s.model(), {0, 0, 0}, t2);
  auto w = gauge_equivalent(s, other);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(check_cg_morphism(s, other, identity_map(s.nerve()), *w));

  std::vector<Perm> bad{Perm::identity(3), sw, Perm::identity(3)};
  EXPECT_FALSE(check_cg_morphism(s, s, identity_map(s.nerve()), bad));

  NerveMap broken{{0, 0, 0}, {0, 1, 2}};
  EXPECT_EQ(code_of([&] { check_cg_morphism(s, s, broken, ids); }), ErrorCode::kNotANerveMap);
}
