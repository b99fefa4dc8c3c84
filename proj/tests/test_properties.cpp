#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "corpus.hpp"
#include "holon/error.hpp"
#include "holon/galois.hpp"
#include "holon/perm_group.hpp"
#include "holon/random.hpp"
#include "holon/sheaf.hpp"
#include "holon/structure.hpp"
#include "oracles.hpp"

using namespace holon;

namespace {

// Random edge walk of `length` steps from `start`, with stay steps mixed in.
PathWord random_walk(Rng& rng, const Nerve& n, VertexId start, std::size_t length) {
  std::vector<Step> steps;
  VertexId at = start;
  for (std::size_t i = 0; i < length; ++i) {
    auto inc = n.incident_edges(at);
    if (inc.empty() || rng() % 5 == 0) {
      steps.push_back(Step{});
      continue;
    }
    EdgeId e = inc[rng() % inc.size()];
    Step s{e, n.edge(e).lo == at};
    // Self-loops are rejected by validation, so the direction is determined.
    steps.push_back(s);
    at = s.target(n, at);
  }
  return PathWord::make(n, start, steps);
}

// Collapses stays and backtracks at random positions until none remain.
std::vector<Step> random_collapse(Rng& rng, std::vector<Step> steps) {
  while (true) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (steps[i].is_stay()) spots.push_back(i);
      else if (i + 1 < steps.size() && steps[i + 1] == steps[i].reversed()) spots.push_back(i);
    }
    if (spots.empty()) return steps;
    auto i = spots[rng() % spots.size()];
    if (steps[i].is_stay()) steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(i));
    else steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(i), steps.begin() + static_cast<std::ptrdiff_t>(i) + 2);
  }
}

NerveShape shape_upto(std::size_t v) {
  NerveShape s;
  s.max_vertices = v;
  s.multi_edge_prob = 0.1;
  return s;
}

}  // namespace

TEST(NerveProperties, ReductionConfluence) {
  Rng rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    auto n = random_connected_nerve(rng, shape_upto(6));
    auto w = random_walk(rng, n, 0, 1 + rng() % 12);
    auto r = reduce_path(n, w, ReductionMode::kBacktrack);
    EXPECT_EQ(reduce_path(n, r, ReductionMode::kBacktrack), r);
    for (int k = 0; k < 4; ++k) {
      auto collapsed = random_collapse(rng, std::vector<Step>(w.steps().begin(), w.steps().end()));
      EXPECT_EQ(PathWord::make(n, w.base(), collapsed), r);
    }
    auto repeat = reduce_path(n, w, ReductionMode::kRepeatOnly);
    EXPECT_EQ(reduce_path(n, repeat, ReductionMode::kRepeatOnly), repeat);
    for (auto s : repeat.steps()) EXPECT_FALSE(s.is_stay());
    EXPECT_LE(r.length(), repeat.length());
  }
}

TEST(NerveProperties, GroupoidLaws) {
  Rng rng(102);
  for (int trial = 0; trial < 300; ++trial) {
    auto n = random_connected_nerve(rng, shape_upto(6));
    VertexId v = rng() % n.vertex_count();
    auto x = random_walk(rng, n, v, rng() % 9);
    auto back = compose_paths(n, x, invert_path(x));
    EXPECT_TRUE(back.is_trivial());
    EXPECT_EQ(back.base(), x.base());
    auto y = random_walk(rng, n, x.end(), rng() % 9);
    auto z = random_walk(rng, n, y.end(), rng() % 9);
    EXPECT_EQ(compose_paths(n, compose_paths(n, x, y), z), compose_paths(n, x, compose_paths(n, y, z)));
    EXPECT_EQ(compose_paths(n, PathWord::trivial(x.base()), x), reduce_path(n, x, ReductionMode::kBacktrack));
  }
}

TEST(NerveProperties, RankFormulaAndRelators) {
  Rng rng(103);
  for (int trial = 0; trial < 60; ++trial) {
    auto n = random_triangle_free_nerve(rng, shape_upto(6));
    auto p = pi1_presentation(n, 0);
    EXPECT_EQ(p.rank(), oracle::euler_rank(n));
    if (p.rank() <= 10) {
      EXPECT_EQ(enumerate_perm_reps(p, 2).size(), std::size_t{1} << p.rank());
    }
  }
  for (int trial = 0; trial < 60; ++trial) {
    auto n = random_connected_nerve(rng, shape_upto(5));
    auto p = pi1_presentation(n, 0);
    if (p.rank() > 4) continue;
    auto reps = enumerate_perm_reps(p, 3);
    EXPECT_EQ(reps.size(), oracle::count_reps(p, 3));
    for (const auto& rep : reps) {
      for (const auto& r : p.relators) EXPECT_TRUE(oracle::kills(r.word, rep, 3));
    }
  }
}

TEST(SheafProperties, BacktrackInvariance) {
  Rng rng(201);
  for (const auto& s : corpus::sheaves(21, 80)) {
    const auto& n = s.nerve();
    auto loop = random_walk(rng, n, 0, 6);
    // Close the walk through the spanning tree.
    auto tree = spanning_tree(n, 0);
    auto closed = compose_paths(n, loop, invert_path(tree.path_from_root(n, loop.end())));
    auto h = holonomy_of_loop(s, closed);
    std::vector<Step> padded;
    VertexId at = closed.base();
    auto steps = closed.steps();
    for (std::size_t i = 0; i <= steps.size(); ++i) {
      if (rng() % 2 && !n.incident_edges(at).empty()) {
        auto inc = n.incident_edges(at);
        EdgeId e = inc[rng() % inc.size()];
        Step out{e, n.edge(e).lo == at};
        padded.push_back(out);
        padded.push_back(out.reversed());
      }
      if (i < steps.size()) {
        padded.push_back(steps[i]);
        at = steps[i].target(n, at);
      }
    }
    auto noisy = PathWord::make(n, closed.base(), padded);
    EXPECT_EQ(holonomy_of_loop(s, noisy), h);
    EXPECT_EQ(transport_iso(s, noisy), h);
  }
}

TEST(SheafProperties, BasepointIndependence) {
  std::size_t twisted = 0;
  for (const auto& s : corpus::sheaves(22, 80)) {
    const auto& n = s.nerve();
    auto g0 = holonomy_group(s, 0);
    twisted += g0.order() > 1;
    for (VertexId v = 1; v < n.vertex_count(); ++v) {
      auto gv = holonomy_group(s, v);
      EXPECT_EQ(gv.order(), g0.order());
      auto t = transport_iso(s, spanning_tree(n, 0).path_from_root(n, v));
      EXPECT_EQ(conjugate_set(gv.elements, t), g0.elements);
    }
  }
  EXPECT_GT(twisted, 10u);
}

TEST(SheafProperties, HolonomyGroupIsAllLoops) {
  // Small nerves only: every closed walk of bounded length.
  Rng rng(23);
  NerveShape shape;
  shape.max_vertices = 4;
  for (int i = 0; i < 30; ++i) {
    auto s = random_sheaf(rng, shape, 4);
    auto g = holonomy_group(s, 0);
    auto loops = oracle::loop_holonomies(s, 0, 8);
    for (const auto& h : loops) EXPECT_TRUE(g.contains(h));
    auto words = oracle::words_up_to(g.generators, s.fiber_size(0), 8);
    EXPECT_EQ(std::set<Perm>(g.elements.begin(), g.elements.end()), words);
  }
}

TEST(SheafProperties, RefinementInvariance) {
  for (const auto& s : corpus::sheaves(24, 60)) {
    auto order = holonomy_group(s, 0).order();
    for (EdgeId e = 0; e < s.nerve().edge_count(); ++e) {
      auto r = subdivide_edge(s.nerve(), e);
      EXPECT_EQ(holonomy_group(refine(s, r), 0).order(), order);
    }
  }
}

TEST(SheafProperties, TriangleBoundariesTrivial) {
  for (const auto& s : corpus::sheaves(25, 80)) {
    const auto& n = s.nerve();
    for (const auto& t : n.triangles()) {
      std::vector<VertexId> walk{t.vertices[0], t.vertices[1], t.vertices[2], t.vertices[0]};
      std::vector<Step> steps{Step{t.edges[0], true}, Step{t.edges[1], true}, Step{t.edges[2], false}};
      EXPECT_TRUE(holonomy_of_loop(s, PathWord::make(n, t.vertices[0], steps)).is_identity());
    }
  }
}

TEST(StructureProperties, TamperDetection) {
  Rng rng(301);
  std::size_t tampered = 0;
  for (const auto& s : corpus::free_structures(31, 200)) {
    const auto& n = s.nerve();
    for (const auto& t : n.triangles()) {
      EXPECT_EQ(s.transition(t.edges[0]) * s.transition(t.edges[1]), s.transition(t.edges[2]));
    }
    if (n.edge_count() == 0 || s.model().order() < 2) continue;
    EdgeId e = rng() % n.edge_count();
    std::vector<Perm> t(s.transitions().begin(), s.transitions().end());
    const auto& g = s.model().elements();
    auto replacement = g[rng() % g.size()];
    if (replacement == t[e]) replacement = g[(std::find(g.begin(), g.end(), replacement) - g.begin() + 1) % g.size()];
    t[e] = replacement;
    std::vector<Perm::Point> charts(s.charts().begin(), s.charts().end());
    EXPECT_THROW(GeoStructure::verify(n, s.model(), charts, t), Error);
    ++tampered;
  }
  EXPECT_GT(tampered, 150u);
}

TEST(StructureProperties, HolonomyConjugateUnderGauge) {
  Rng rng(302);
  for (const auto& s : corpus::structures(32, 60, 6)) {
    const auto& n = s.nerve();
    const auto& g = s.model().elements();
    std::vector<Perm> h;
    for (VertexId v = 0; v < n.vertex_count(); ++v) h.push_back(g[rng() % g.size()]);
    std::vector<Perm> t;
    std::vector<Perm::Point> charts;
    for (EdgeId e = 0; e < n.edge_count(); ++e) {
      const auto& edge = n.edge(e);
      t.push_back(h[edge.lo] * s.transition(e) * h[edge.hi].inverse());
    }
    for (VertexId v = 0; v < n.vertex_count(); ++v) charts.push_back(h[v](s.chart(v)));
    auto other = GeoStructure::verify(n, s.model(), charts, t);
    auto w = gauge_equivalent(s, other);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(check_cg_morphism(s, other, identity_map(n), *w));
    auto a = holonomy_representation(s, 0).image;
    auto b = holonomy_representation(other, 0).image;
    EXPECT_EQ(a.size(), b.size());
    EXPECT_TRUE(find_conjugator(g, a, b).has_value());
    EXPECT_EQ(conjugate_set(a, h[0]), b);
  }
}

TEST(StructureProperties, CoverPullbackIsTrivial) {
  std::size_t twisted = 0;
  for (const auto& s : corpus::structures(33, 80, 6)) {
    auto cover = build_holonomy_cover(s, 0);
    if (cover.holonomy.size() > 8) continue;
    twisted += cover.holonomy.size() > 1;
    EXPECT_FALSE(nerve_map_defect(cover.nerve, s.nerve(), cover.projection).has_value());
    auto pulled = pullback(s, cover.nerve, cover.projection);
    auto trivial = trivial_cocycle(cover.nerve, s.model());
    EXPECT_TRUE(gauge_equivalent(pulled.cocycle(), trivial).has_value());
    for (EdgeId e = 0; e < cover.nerve.edge_count(); ++e) {
      const auto& edge = cover.nerve.edge(e);
      EXPECT_TRUE((cover.trivializing_gauge[edge.lo] * pulled.transition(e) *
                   cover.trivializing_gauge[edge.hi].inverse())
                      .is_identity());
    }
    EXPECT_TRUE(is_constant(FlatBundle(pulled.cocycle()).sheaf()));
  }
  EXPECT_GT(twisted, 10u);
}

TEST(StructureProperties, DevEquivariance) {
  for (const auto& s : corpus::structures(34, 80, 6)) {
    auto cover = build_holonomy_cover(s, 0);
    const auto& group = cover.holonomy;
    if (group.size() > 8) continue;
    for (VertexId i = 0; i < s.nerve().vertex_count(); ++i) {
      for (std::size_t a = 0; a < group.size(); ++a) {
        for (std::size_t b = 0; b < group.size(); ++b) {
          auto gh = group[a] * group[b];
          auto idx = static_cast<std::size_t>(std::lower_bound(group.begin(), group.end(), gh) - group.begin());
          ASSERT_LT(idx, group.size());
          EXPECT_EQ(cover.dev[cover.cover_vertex(i, idx)],
                    group[b].inverse()(cover.dev[cover.cover_vertex(i, a)]));
        }
      }
    }
  }
}

TEST(StructureProperties, TransverseSectionRoundTrip) {
  for (const auto& s : corpus::structures(35, 100)) {
    auto b = build_flat_bundle(s);
    auto back = check_transverse_section(b, s.charts());
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, s);
  }
}

TEST(StructureProperties, GaugeSearchMatchesBruteForce) {
  Rng rng(306);
  NerveShape shape;
  shape.max_vertices = 4;
  const auto groups = small_groups();
  for (int i = 0; i < 40; ++i) {
    const auto& g = groups[rng() % 9];  // cyclic groups up to order 8
    auto model = natural_model(g);
    auto a = random_structure(rng, shape, model, 0, 0.0);
    auto b = TransitionCocycle::verify(a.nerve(), model, [&] {
      std::vector<Perm> t;
      const auto& el = model.elements();
      for (EdgeId e = 0; e < a.nerve().edge_count(); ++e) t.push_back(el[rng() % el.size()]);
      // Keep Chasles by reusing the original on edges of triangles.
      for (const auto& tri : a.nerve().triangles()) {
        for (auto e : tri.edges) t[e] = a.transition(e);
      }
      return t;
    }());
    EXPECT_EQ(gauge_equivalent(a.cocycle(), b).has_value(), oracle::gauge_bruteforce(a.cocycle(), b));
  }
}

TEST(GaloisProperties, FrobeniusOrder) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint32_t n = 1; n <= 8; ++n) {
      std::uint64_t q = 0;
      if (!power_within(p, n, kDefaultFieldBound, &q)) continue;
      FiniteField k(p, n);
      EXPECT_EQ(k.frobenius_orbit_length(k.root()), n);
      for (std::uint32_t j = 1; j < n; ++j) EXPECT_NE(k.frobenius(k.root(), j), k.root());
    }
  }
}

TEST(GaloisProperties, TensorLaw) {
  for (std::uint32_t p : {2u, 3u}) {
    for (std::uint32_t a = 1; a <= 6; ++a) {
      for (std::uint32_t b = 1; b <= 4; ++b) {
        FiniteField k(p, b);
        auto factors = factor_over_extension(irreducible_modulus(p, a), k);
        EXPECT_EQ(factors.size(), gcd_u(a, b));
        for (const auto& f : factors) EXPECT_EQ(f.size() - 1, lcm_u(a, b) / b);
      }
    }
  }
}

TEST(GaloisProperties, CorrespondenceUpTo24) {
  for (std::uint32_t n = 1; n <= 24; ++n) {
    auto entries = enumerate_complete_structures(2, n, std::uint64_t{1} << 24);
    EXPECT_EQ(entries.size(), oracle::divisor_count(n));
    for (const auto& e : entries) {
      EXPECT_EQ(e.subfield.degree, e.holonomy.step);
      EXPECT_EQ(e.holonomy.order() * e.subfield.degree, n);
    }
  }
  for (std::uint32_t n = 1; n <= 12; ++n) {
    EXPECT_EQ(enumerate_complete_structures(3, n).size(), oracle::divisor_count(n));
  }
}

TEST(GaloisProperties, BaseChangeAndAdjunction) {
  Rng rng(401);
  for (int i = 0; i < 40; ++i) {
    FieldStructure s;
    s.p = 2;
    s.model_degree = 4;
    s.group_order = 4;
    s.base_degree = 4;
    auto m = 1 + rng() % 2;
    for (std::size_t j = 0; j < m; ++j) {
      FieldMember member{4u * (1u + static_cast<std::uint32_t>(rng() % 2)), 0};
      member.embed_exp = static_cast<std::uint32_t>(rng() % 4);
      s.members.push_back(member);
    }
    if (m == 2) s.transitions[{0, 1}] = static_cast<std::uint32_t>(rng() % 4);
    validate_field_structure(s);
    for (std::uint32_t e : {1u, 2u, 4u}) {
      auto back = base_change_pushforward(base_change_pullback(s, e), 4);
      EXPECT_TRUE(field_isomorphism(back, s).has_value());
      auto src = base_change_pullback(s, e);
      auto left = field_morphisms(base_change_pushforward(src, 4), s);
      auto right = field_morphisms(src, base_change_pullback(s, e));
      EXPECT_EQ(left.size(), right.size());
    }
  }
}

TEST(GaloisProperties, CompletenessMonotone) {
  Rng rng(402);
  for (int i = 0; i < 200; ++i) {
    FieldStructure s;
    s.p = 2;
    s.model_degree = 1 + rng() % 6;
    s.group_order = s.model_degree;
    for (int j = 0; j < 3; ++j) {
      s.members.push_back({static_cast<std::uint32_t>(1 + rng() % 8), 0});
      validate_field_structure(s);
      bool before = is_complete_field_structure(s);
      auto bigger = s;
      bigger.members.push_back({static_cast<std::uint32_t>(1 + rng() % 8), 0});
      if (before) EXPECT_TRUE(is_complete_field_structure(bigger));
    }
  }
}
