#include "holon/structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "holon/error.hpp"

namespace holon {

ModelSpace ModelSpace::make(std::vector<std::string> points, std::vector<Perm> generators,
                            std::size_t max_elements) {
  if (points.empty()) fail(ErrorCode::kInvalidInput, "model has no points");
  std::set<std::string> seen(points.begin(), points.end());
  if (seen.size() != points.size()) fail(ErrorCode::kInvalidInput, "repeated model point");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].degree() != points.size()) {
      fail(ErrorCode::kInvalidInput, "generator " + std::to_string(i) + " has degree " +
                                         std::to_string(generators[i].degree()) + ", model has " +
                                         std::to_string(points.size()) + " points");
    }
  }
  auto data = std::make_shared<Data>();
  data->elements = closure(generators, points.size(), max_elements);
  data->points = std::move(points);
  data->generators = std::move(generators);
  return ModelSpace(std::move(data));
}

ModelSpace ModelSpace::cyclic(std::size_t m) {
  std::vector<std::string> points;
  for (std::size_t i = 0; i < m; ++i) points.push_back(std::to_string(i));
  return make(std::move(points), {Perm::rotation(m)});
}

ModelSpace ModelSpace::regular(std::span<const Perm> generators, std::size_t degree) {
  auto elements = closure(generators, degree);
  auto index = [&](const Perm& g) {
    return static_cast<Perm::Point>(std::lower_bound(elements.begin(), elements.end(), g) -
                                    elements.begin());
  };
  std::vector<std::string> points;
  for (const auto& g : elements) points.push_back(g.to_string());
  std::vector<Perm> left;
  for (const auto& s : generators) {
    std::vector<Perm::Point> images;
    for (const auto& g : elements) images.push_back(index(s * g));
    left.emplace_back(std::move(images));
  }
  return make(std::move(points), std::move(left));
}

std::optional<Perm::Point> ModelSpace::find_point(std::string_view label) const {
  const auto& pts = data_->points;
  auto it = std::find(pts.begin(), pts.end(), label);
  if (it == pts.end()) return std::nullopt;
  return static_cast<Perm::Point>(it - pts.begin());
}

bool ModelSpace::contains(const Perm& g) const {
  return std::binary_search(data_->elements.begin(), data_->elements.end(), g);
}

bool operator==(const ModelSpace& a, const ModelSpace& b) {
  return a.data_ == b.data_ ||
         (a.data_->points == b.data_->points && a.data_->elements == b.data_->elements);
}

TransitionCocycle TransitionCocycle::verify(Nerve nerve, ModelSpace model,
                                            std::vector<Perm> transitions) {
  if (transitions.size() != nerve.edge_count()) {
    fail(ErrorCode::kInvalidInput, "expected " + std::to_string(nerve.edge_count()) +
                                       " transitions, got " + std::to_string(transitions.size()));
  }
  for (EdgeId e = 0; e < transitions.size(); ++e) {
    if (transitions[e].degree() != model.size() || !model.contains(transitions[e])) {
      fail(ErrorCode::kNotInGroup, "transition on edge '" + nerve.edge(e).id + "' (" +
                                       transitions[e].to_string() + ") is not in the group");
    }
  }
  for (const auto& tri : nerve.triangles()) {
    const auto& [ab, bc, ac] = tri.edges;
    if (transitions[ab] * transitions[bc] != transitions[ac]) {
      fail(ErrorCode::kChaslesViolation,
           "triangle (" + nerve.edge(ab).id + ", " + nerve.edge(bc).id + ", " +
               nerve.edge(ac).id + "): t(" + nerve.edge(ab).id + ") * t(" + nerve.edge(bc).id +
               ") != t(" + nerve.edge(ac).id + ")");
    }
  }
  return TransitionCocycle(std::move(nerve), std::move(model), std::move(transitions));
}

Perm TransitionCocycle::step_element(Step step) const {
  if (step.is_stay()) return model_.identity();
  const auto& g = transitions_.at(step.edge);
  return step.forward ? g : g.inverse();
}

GeoStructure GeoStructure::verify(Nerve nerve, ModelSpace model, std::vector<Perm::Point> charts,
                                  std::vector<Perm> transitions) {
  auto cocycle = TransitionCocycle::verify(std::move(nerve), std::move(model),
                                           std::move(transitions));
  return from_cocycle(std::move(cocycle), std::move(charts));
}

GeoStructure GeoStructure::from_cocycle(TransitionCocycle cocycle,
                                        std::vector<Perm::Point> charts) {
  const auto& n = cocycle.nerve();
  if (charts.size() != n.vertex_count()) {
    fail(ErrorCode::kInvalidInput, "expected " + std::to_string(n.vertex_count()) +
                                       " charts, got " + std::to_string(charts.size()));
  }
  for (VertexId v = 0; v < charts.size(); ++v) {
    if (charts[v] >= cocycle.model().size()) {
      fail(ErrorCode::kInvalidInput, "chart of '" + n.vertex_label(v) + "' is not a model point");
    }
  }
  for (EdgeId e = 0; e < n.edge_count(); ++e) {
    const auto& edge = n.edge(e);
    if (cocycle.transition(e)(charts[edge.hi]) != charts[edge.lo]) {
      const auto& m = cocycle.model();
      fail(ErrorCode::kChartIncompatible,
           "edge '" + edge.id + "': t(" + edge.id + ") sends chart '" + m.point(charts[edge.hi]) +
               "' of '" + n.vertex_label(edge.hi) + "' to '" +
               m.point(cocycle.transition(e)(charts[edge.hi])) + "', but '" +
               n.vertex_label(edge.lo) + "' has chart '" + m.point(charts[edge.lo]) + "'");
    }
  }
  return GeoStructure(std::move(cocycle), std::move(charts));
}

bool operator==(const GeoStructure& a, const GeoStructure& b) {
  return a.model() == b.model() && a.nerve().to_raw().vertices == b.nerve().to_raw().vertices &&
         a.nerve().edge_count() == b.nerve().edge_count() && a.charts_ == b.charts_ &&
         std::equal(a.transitions().begin(), a.transitions().end(), b.transitions().begin(),
                    b.transitions().end());
}

TransitionCocycle trivial_cocycle(const Nerve& nerve, const ModelSpace& model) {
  return TransitionCocycle::verify(nerve, model,
                                   std::vector<Perm>(nerve.edge_count(), model.identity()));
}

GeoStructure trivial_structure(const Nerve& nerve, const ModelSpace& model, Perm::Point chart) {
  return GeoStructure::from_cocycle(trivial_cocycle(nerve, model),
                                    std::vector<Perm::Point>(nerve.vertex_count(), chart));
}

TransitionCocycle coboundary(const Nerve& nerve, const ModelSpace& model,
                             std::span<const Perm> h) {
  if (h.size() != nerve.vertex_count()) {
    fail(ErrorCode::kInvalidInput, "need one group element per vertex");
  }
  std::vector<Perm> t;
  for (const auto& edge : nerve.edges()) t.push_back(h[edge.lo] * h[edge.hi].inverse());
  return TransitionCocycle::verify(nerve, model, std::move(t));
}

Perm transport_element(const TransitionCocycle& c, const PathWord& path) {
  std::vector<Step> steps(path.steps().begin(), path.steps().end());
  PathWord::make(c.nerve(), path.base(), steps);
  Perm out = c.model().identity();
  for (const auto& step : steps) out *= c.step_element(step);
  return out;
}

HolonomyRepresentation holonomy_representation(const TransitionCocycle& c, VertexId base) {
  HolonomyRepresentation rep;
  rep.presentation = pi1_presentation(c.nerve(), base);
  for (const auto& loop : rep.presentation.generator_loops) {
    rep.generator_images.push_back(transport_element(c, loop));
  }
  rep.image = closure(rep.generator_images, c.model().size());
  return rep;
}

namespace {

LocallyConstantSheaf bundle_sheaf(const TransitionCocycle& c) {
  const auto& m = c.model();
  std::vector<std::vector<std::string>> fibers(c.nerve().vertex_count(),
                                               std::vector<std::string>(m.points().begin(),
                                                                        m.points().end()));
  std::vector<Perm> glue(c.transitions().begin(), c.transitions().end());
  return LocallyConstantSheaf::from_glue(c.nerve(), std::move(fibers), std::move(glue),
                                         std::max(kDefaultFiberCap, m.size()));
}

}  // namespace

FlatBundle::FlatBundle(TransitionCocycle cocycle)
    : cocycle_(std::move(cocycle)), sheaf_(bundle_sheaf(cocycle_)) {}

std::vector<std::vector<std::size_t>> FlatBundle::total_space_components() const {
  const auto& n = cocycle_.nerve();
  const std::size_t m = cocycle_.model().size();
  std::vector<std::size_t> parent(n.vertex_count() * m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e = 0; e < n.edge_count(); ++e) {
    const auto& edge = n.edge(e);
    for (Perm::Point x = 0; x < m; ++x) {
      auto a = find(edge.hi * m + x);
      auto b = find(edge.lo * m + cocycle_.transition(e)(x));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<std::size_t>> by_root(parent.size());
  for (std::size_t x = 0; x < parent.size(); ++x) by_root[find(x)].push_back(x);
  std::vector<std::vector<std::size_t>> out;
  for (auto& comp : by_root) {
    if (!comp.empty()) out.push_back(std::move(comp));
  }
  return out;
}

std::optional<GeoStructure> check_transverse_section(const FlatBundle& b,
                                                     std::span<const Perm::Point> section) {
  const auto& c = b.cocycle();
  const auto& n = c.nerve();
  if (section.size() != n.vertex_count()) return std::nullopt;
  for (auto x : section) {
    if (x >= c.model().size()) return std::nullopt;
  }
  for (EdgeId e = 0; e < n.edge_count(); ++e) {
    const auto& edge = n.edge(e);
    if (c.transition(e)(section[edge.hi]) != section[edge.lo]) return std::nullopt;
  }
  return GeoStructure::from_cocycle(c, std::vector<Perm::Point>(section.begin(), section.end()));
}

std::vector<std::vector<Perm::Point>> transverse_sections(const FlatBundle& b) {
  return global_sections(b.sheaf());
}

HolonomyCover build_holonomy_cover(const GeoStructure& s, VertexId base) {
  const auto& n = s.nerve();
  const auto& c = s.cocycle();
  auto rep = holonomy_representation(c, base);

  HolonomyCover cover;
  cover.base = base;
  cover.holonomy = rep.image;
  const auto& h = cover.holonomy;
  const std::size_t k = h.size();
  auto index = [&](const Perm& g) {
    auto it = std::lower_bound(h.begin(), h.end(), g);
    if (it == h.end() || *it != g) throw std::logic_error("normalized transition outside H");
    return static_cast<std::size_t>(it - h.begin());
  };

  // tau[i]: transport along the tree from base to i.
  auto tree = spanning_tree(n, base);
  std::vector<Perm> tau;
  for (VertexId v = 0; v < n.vertex_count(); ++v) {
    tau.push_back(transport_element(c, tree.path_from_root(n, v)));
  }
  // Normalized edge elements tau(lo) t(e) tau(hi)^{-1}; they lie in H.
  std::vector<Perm> normalized;
  for (EdgeId e = 0; e < n.edge_count(); ++e) {
    const auto& edge = n.edge(e);
    normalized.push_back(tau[edge.lo] * c.transition(e) * tau[edge.hi].inverse());
  }

  RawNerve raw;
  for (VertexId v = 0; v < n.vertex_count(); ++v) {
    for (std::size_t j = 0; j < k; ++j) {
      raw.vertices.push_back(n.vertex_label(v) + "#" + std::to_string(j));
      cover.lift.emplace_back(v, j);
      cover.dev.push_back(h[j].inverse()(s.chart(v)));
      cover.trivializing_gauge.push_back(h[j].inverse() * tau[v]);
      cover.projection.vertex_map.push_back(v);
    }
  }
  // Edge (lo, h) -- (hi, g^{-1} h), numbered e * |H| + index(h).
  auto lifted = [&](EdgeId e, std::size_t j) { return index(normalized[e].inverse() * h[j]); };
  for (EdgeId e = 0; e < n.edge_count(); ++e) {
    const auto& edge = n.edge(e);
    for (std::size_t j = 0; j < k; ++j) {
      raw.edges.push_back(RawEdge{edge.id + "#" + std::to_string(j),
                                  raw.vertices[cover.cover_vertex(edge.lo, j)],
                                  raw.vertices[cover.cover_vertex(edge.hi, lifted(e, j))]});
      cover.projection.edge_map.push_back(e);
    }
  }
  for (const auto& tri : n.triangles()) {
    const auto& [ab, bc, ac] = tri.edges;
    for (std::size_t j = 0; j < k; ++j) {
      auto jb = lifted(ab, j);
      raw.triangles.push_back(RawTriangle{{raw.edges[ab * k + j].id, raw.edges[bc * k + jb].id,
                                           raw.edges[ac * k + j].id}});
    }
  }
  cover.nerve = Nerve::validate(raw);
  return cover;
}

bool is_complete(const GeoStructure& s, const HolonomyCover& cover) {
  std::vector<bool> hit(s.model().size(), false);
  for (auto x : cover.dev) hit[x] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool is_complete(const GeoStructure& s, VertexId base) {
  return is_complete(s, build_holonomy_cover(s, base));
}

TransitionCocycle pullback(const TransitionCocycle& c, const Nerve& cover, const NerveMap& map) {
  if (auto defect = nerve_map_defect(cover, c.nerve(), map)) {
    fail(ErrorCode::kNotACoverMap, *defect);
  }
  std::vector<Perm> t;
  for (EdgeId e = 0; e < cover.edge_count(); ++e) {
    t.push_back(c.step_element(map_step(cover, c.nerve(), map, Step{e, true})));
  }
  return TransitionCocycle::verify(cover, c.model(), std::move(t));
}

GeoStructure pullback(const GeoStructure& s, const Nerve& cover, const NerveMap& map) {
  auto c = pullback(s.cocycle(), cover, map);
  std::vector<Perm::Point> charts;
  for (auto v : map.vertex_map) charts.push_back(s.chart(v));
  return GeoStructure::from_cocycle(std::move(c), std::move(charts));
}

namespace {

void require_same_setting(const TransitionCocycle& a, const TransitionCocycle& b) {
  if (!(a.model() == b.model())) fail(ErrorCode::kModelMismatch, "structures use different models");
  const auto& x = a.nerve();
  const auto& y = b.nerve();
  bool same = x.vertex_count() == y.vertex_count() && x.edge_count() == y.edge_count() &&
              x.triangle_count() == y.triangle_count();
  for (EdgeId e = 0; same && e < x.edge_count(); ++e) {
    same = x.edge(e).lo == y.edge(e).lo && x.edge(e).hi == y.edge(e).hi;
  }
  for (TriangleId t = 0; same && t < x.triangle_count(); ++t) {
    same = x.triangle(t).edges == y.triangle(t).edges;
  }
  if (!same) fail(ErrorCode::kInvalidInput, "structures live on different nerves");
}

std::optional<std::vector<Perm>> gauge_search(const TransitionCocycle& c,
                                              const TransitionCocycle& other,
                                              std::span<const Perm::Point> charts,
                                              std::span<const Perm::Point> other_charts,
                                              std::uint64_t budget) {
  require_same_setting(c, other);
  const auto& n = c.nerve();
  const auto& group = c.model().elements();
  std::vector<Perm> h(n.vertex_count());
  std::uint64_t nodes = 0;

  for (const auto& comp : is_connected(n).components) {
    auto tree = spanning_tree(n, comp.front());
    bool found = false;
    for (const auto& root_value : group) {
      if (++nodes > budget) {
        fail(ErrorCode::kSearchBudgetExceeded,
             "gauge search exceeded " + std::to_string(budget) + " assignments");
      }
      h[comp.front()] = root_value;
      // The tree edge into each vertex determines its element.
      for (auto v : tree.order) {
        if (v == tree.root) continue;
        EdgeId e = *tree.parent_edge[v];
        const auto& edge = n.edge(e);
        const auto& t = c.transition(e);
        const auto& t2 = other.transition(e);
        if (v == edge.hi) {
          h[v] = t2.inverse() * h[edge.lo] * t;
        } else {
          h[v] = t2 * h[edge.hi] * t.inverse();
        }
      }
      bool ok = true;
      for (auto v : comp) {
        if (!charts.empty() && h[v](charts[v]) != other_charts[v]) ok = false;
        for (auto e : n.incident_edges(v)) {
          const auto& edge = n.edge(e);
          if (h[edge.lo] * c.transition(e) * h[edge.hi].inverse() != other.transition(e)) ok = false;
        }
        if (!ok) break;
      }
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return h;
}

}  // namespace

std::optional<std::vector<Perm>> gauge_equivalent(const TransitionCocycle& c,
                                                  const TransitionCocycle& other,
                                                  std::uint64_t budget) {
  return gauge_search(c, other, {}, {}, budget);
}

std::optional<std::vector<Perm>> gauge_equivalent(const GeoStructure& s, const GeoStructure& other,
                                                  std::uint64_t budget) {
  return gauge_search(s.cocycle(), other.cocycle(), s.charts(), other.charts(), budget);
}

bool check_cg_morphism(const GeoStructure& src, const GeoStructure& dst, const NerveMap& r,
                       std::span<const Perm> k) {
  if (auto defect = nerve_map_defect(src.nerve(), dst.nerve(), r)) {
    fail(ErrorCode::kNotANerveMap, *defect);
  }
  if (!(src.model() == dst.model())) fail(ErrorCode::kModelMismatch, "structures use different models");
  if (k.size() != src.nerve().vertex_count()) {
    fail(ErrorCode::kInvalidInput, "need one group element per source vertex");
  }
  for (const auto& g : k) {
    if (!src.model().contains(g)) return false;
  }
  for (VertexId v = 0; v < k.size(); ++v) {
    if (dst.chart(r.vertex_map[v]) != k[v](src.chart(v))) return false;
  }
  for (EdgeId e = 0; e < src.nerve().edge_count(); ++e) {
    const auto& edge = src.nerve().edge(e);
    auto image = dst.cocycle().step_element(map_step(src.nerve(), dst.nerve(), r, Step{e, true}));
    if (image * k[edge.hi] != k[edge.lo] * src.transition(e)) return false;
  }
  return true;
}

NerveMap identity_map(const Nerve& n) {
  NerveMap map;
  map.vertex_map.resize(n.vertex_count());
  std::iota(map.vertex_map.begin(), map.vertex_map.end(), 0);
  map.edge_map.resize(n.edge_count());
  std::iota(map.edge_map.begin(), map.edge_map.end(), 0);
  return map;
}

}  // namespace holon
