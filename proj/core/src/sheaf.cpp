#include "holon/sheaf.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "holon/error.hpp"

namespace holon {

LocallyConstantSheaf LocallyConstantSheaf::checked(Nerve nerve,
                                                   std::vector<std::vector<std::string>> fibers,
                                                   std::vector<Perm> glue,
                                                   std::size_t fiber_cap) {
  if (fibers.size() != nerve.vertex_count()) {
    fail(ErrorCode::kInvalidInput, "expected " + std::to_string(nerve.vertex_count()) +
                                       " fibers, got " + std::to_string(fibers.size()));
  }
  if (glue.size() != nerve.edge_count()) {
    fail(ErrorCode::kInvalidInput, "expected " + std::to_string(nerve.edge_count()) +
                                       " gluings, got " + std::to_string(glue.size()));
  }
  for (VertexId v = 0; v < fibers.size(); ++v) {
    if (fibers[v].empty()) {
      fail(ErrorCode::kInvalidInput, "empty fiber over '" + nerve.vertex_label(v) + "'");
    }
    if (fibers[v].size() > fiber_cap) {
      fail(ErrorCode::kBoundExceeded, "fiber over '" + nerve.vertex_label(v) + "' has " +
                                          std::to_string(fibers[v].size()) +
                                          " elements; cap is " + std::to_string(fiber_cap));
    }
  }
  for (EdgeId e = 0; e < glue.size(); ++e) {
    const auto& edge = nerve.edge(e);
    if (fibers[edge.lo].size() != fibers[edge.hi].size()) {
      fail(ErrorCode::kFiberSizeMismatch, "edge '" + edge.id + "' joins fibers of sizes " +
                                              std::to_string(fibers[edge.lo].size()) + " and " +
                                              std::to_string(fibers[edge.hi].size()));
    }
    if (glue[e].degree() != fibers[edge.lo].size()) {
      fail(ErrorCode::kNotBijection, "gluing on edge '" + edge.id + "' has wrong degree");
    }
  }
  for (const auto& tri : nerve.triangles()) {
    const auto& [ab, bc, ac] = tri.edges;
    if (glue[ab] * glue[bc] != glue[ac]) {
      fail(ErrorCode::kCocycleViolation,
           "triangle (" + nerve.edge(ab).id + ", " + nerve.edge(bc).id + ", " +
               nerve.edge(ac).id + "): glue(" + nerve.edge(ab).id + ") * glue(" +
               nerve.edge(bc).id + ") != glue(" + nerve.edge(ac).id + ")");
    }
  }
  return LocallyConstantSheaf(std::move(nerve), std::move(fibers), std::move(glue));
}

LocallyConstantSheaf LocallyConstantSheaf::validate(Nerve nerve, const RawSheaf& raw,
                                                    std::size_t fiber_cap) {
  if (raw.fibers.size() != nerve.vertex_count() || raw.glue.size() != nerve.edge_count()) {
    fail(ErrorCode::kInvalidInput, "sheaf needs one fiber per vertex and one gluing per edge");
  }
  for (VertexId v = 0; v < raw.fibers.size(); ++v) {
    std::vector<std::string> sorted = raw.fibers[v];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail(ErrorCode::kInvalidInput, "repeated label in fiber over '" + nerve.vertex_label(v) + "'");
    }
  }
  std::vector<Perm> glue;
  for (EdgeId e = 0; e < raw.glue.size(); ++e) {
    const auto& edge = nerve.edge(e);
    const auto& from = raw.fibers[edge.hi];
    const auto& to = raw.fibers[edge.lo];
    if (from.size() != to.size()) {
      fail(ErrorCode::kFiberSizeMismatch, "edge '" + edge.id + "' joins fibers of sizes " +
                                              std::to_string(to.size()) + " and " +
                                              std::to_string(from.size()));
    }
    auto index_in = [](const std::vector<std::string>& fiber, const std::string& label) {
      auto it = std::find(fiber.begin(), fiber.end(), label);
      return it == fiber.end() ? std::optional<std::size_t>{}
                               : std::optional<std::size_t>(it - fiber.begin());
    };
    std::vector<std::optional<Perm::Point>> images(from.size());
    for (const auto& [x, y] : raw.glue[e]) {
      auto xi = index_in(from, x);
      auto yi = index_in(to, y);
      if (!xi || !yi) {
        fail(ErrorCode::kNotBijection, "gluing on edge '" + edge.id + "' mentions '" +
                                           (!xi ? x : y) + "', which is not in its fiber");
      }
      if (images[*xi] && *images[*xi] != *yi) {
        fail(ErrorCode::kNotBijection, "gluing on edge '" + edge.id + "' sends '" + x +
                                           "' to two elements");
      }
      images[*xi] = static_cast<Perm::Point>(*yi);
    }
    std::vector<Perm::Point> dense;
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (!images[i]) {
        fail(ErrorCode::kNotBijection, "gluing on edge '" + edge.id + "' is undefined on '" +
                                           from[i] + "'");
      }
      dense.push_back(*images[i]);
    }
    if (!is_bijection(dense)) {
      fail(ErrorCode::kNotBijection, "gluing on edge '" + edge.id + "' is not injective");
    }
    glue.emplace_back(std::move(dense));
  }
  return checked(std::move(nerve), raw.fibers, std::move(glue), fiber_cap);
}

LocallyConstantSheaf LocallyConstantSheaf::from_glue(Nerve nerve, std::vector<Perm> glue,
                                                     std::size_t isolated_fiber,
                                                     std::size_t fiber_cap) {
  std::vector<std::size_t> size(nerve.vertex_count(), 0);
  for (EdgeId e = 0; e < std::min(glue.size(), nerve.edge_count()); ++e) {
    size[nerve.edge(e).lo] = glue[e].degree();
    size[nerve.edge(e).hi] = glue[e].degree();
  }
  std::vector<std::vector<std::string>> fibers(nerve.vertex_count());
  for (VertexId v = 0; v < nerve.vertex_count(); ++v) {
    auto k = size[v] ? size[v] : isolated_fiber;
    for (std::size_t i = 0; i < k; ++i) fibers[v].push_back(std::to_string(i));
  }
  return checked(std::move(nerve), std::move(fibers), std::move(glue), fiber_cap);
}

LocallyConstantSheaf LocallyConstantSheaf::from_glue(Nerve nerve,
                                                     std::vector<std::vector<std::string>> fibers,
                                                     std::vector<Perm> glue,
                                                     std::size_t fiber_cap) {
  return checked(std::move(nerve), std::move(fibers), std::move(glue), fiber_cap);
}

Perm LocallyConstantSheaf::step_map(Step step, VertexId at) const {
  if (step.is_stay()) return Perm::identity(fiber_size(at));
  const auto& g = glue_.at(step.edge);
  return step.forward ? g : g.inverse();
}

RawSheaf LocallyConstantSheaf::to_raw() const {
  RawSheaf raw;
  raw.fibers = fibers_;
  for (EdgeId e = 0; e < glue_.size(); ++e) {
    const auto& edge = nerve_.edge(e);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t x = 0; x < glue_[e].degree(); ++x) {
      pairs.emplace_back(fibers_[edge.hi][x], fibers_[edge.lo][glue_[e](static_cast<Perm::Point>(x))]);
    }
    raw.glue.push_back(std::move(pairs));
  }
  return raw;
}

Perm transport_iso(const LocallyConstantSheaf& s, const PathWord& path) {
  const auto& n = s.nerve();
  std::vector<Step> steps(path.steps().begin(), path.steps().end());
  PathWord::make(n, path.base(), steps);
  Perm out = Perm::identity(s.fiber_size(path.base()));
  VertexId at = path.base();
  for (const auto& step : steps) {
    out *= s.step_map(step, at);
    at = step.target(n, at);
  }
  return out;
}

Perm holonomy_of_loop(const LocallyConstantSheaf& s, const PathWord& loop) {
  if (!loop.is_closed()) {
    fail(ErrorCode::kInvalidPath, "path " + loop.to_string(s.nerve()) + " is not closed");
  }
  return transport_iso(s, reduce_path(s.nerve(), loop, ReductionMode::kBacktrack));
}

bool HolonomyGroup::contains(const Perm& g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

HolonomyGroup holonomy_group(const LocallyConstantSheaf& s, VertexId base,
                             std::size_t max_elements) {
  auto p = pi1_presentation(s.nerve(), base);
  HolonomyGroup group;
  group.base = base;
  for (const auto& loop : p.generator_loops) group.generators.push_back(holonomy_of_loop(s, loop));
  group.elements = closure(group.generators, s.fiber_size(base), max_elements);
  return group;
}

bool is_constant(const LocallyConstantSheaf& s) {
  const auto& n = s.nerve();
  auto p = pi1_presentation(n, 0);
  bool trivial_holonomy = std::all_of(p.generator_loops.begin(), p.generator_loops.end(),
                                      [&](const PathWord& loop) {
                                        return holonomy_of_loop(s, loop).is_identity();
                                      });

  // Identify every fiber with fiber(0) through the tree and test all edges.
  auto tree = spanning_tree(n, 0);
  std::vector<Perm> to_root;
  for (VertexId v = 0; v < n.vertex_count(); ++v) {
    to_root.push_back(transport_iso(s, tree.path_from_root(n, v)));
  }
  bool trivializable = true;
  for (EdgeId e = 0; e < n.edge_count() && trivializable; ++e) {
    const auto& edge = n.edge(e);
    trivializable = to_root[edge.lo] * s.glue(e) == to_root[edge.hi];
  }
  if (trivial_holonomy != trivializable) {
    throw std::logic_error("holonomy triviality and trivializability disagree");
  }
  return trivializable;
}

std::vector<std::vector<Perm::Point>> global_sections(const LocallyConstantSheaf& s) {
  const auto& n = s.nerve();
  auto components = is_connected(n).components;

  // Sections of each component, then their product.
  std::vector<std::vector<std::vector<std::pair<VertexId, Perm::Point>>>> per_component;
  for (const auto& comp : components) {
    auto tree = spanning_tree(n, comp.front());
    std::vector<std::vector<std::pair<VertexId, Perm::Point>>> sections;
    for (Perm::Point x = 0; x < s.fiber_size(comp.front()); ++x) {
      std::vector<Perm::Point> value(n.vertex_count(), 0);
      for (auto v : comp) {
        // transport: fiber(v) -> fiber(root); the section value is its preimage of x.
        value[v] = transport_iso(s, tree.path_from_root(n, v)).inverse()(x);
      }
      bool ok = true;
      for (auto v : comp) {
        for (auto e : n.incident_edges(v)) {
          const auto& edge = n.edge(e);
          if (s.glue(e)(value[edge.hi]) != value[edge.lo]) ok = false;
        }
      }
      if (!ok) continue;
      std::vector<std::pair<VertexId, Perm::Point>> assignment;
      for (auto v : comp) assignment.emplace_back(v, value[v]);
      sections.push_back(std::move(assignment));
    }
    per_component.push_back(std::move(sections));
  }

  std::vector<std::vector<Perm::Point>> out{std::vector<Perm::Point>(n.vertex_count(), 0)};
  for (const auto& sections : per_component) {
    std::vector<std::vector<Perm::Point>> next;
    for (const auto& partial : out) {
      for (const auto& assignment : sections) {
        auto extended = partial;
        for (const auto& [v, x] : assignment) extended[v] = x;
        next.push_back(std::move(extended));
      }
    }
    out = std::move(next);
  }
  return out;
}

LocallyConstantSheaf pullback_to_cover(const LocallyConstantSheaf& s, const Nerve& cover,
                                       const NerveMap& map) {
  if (auto defect = nerve_map_defect(cover, s.nerve(), map)) {
    fail(ErrorCode::kNotACoverMap, *defect);
  }
  std::vector<std::vector<std::string>> fibers;
  for (VertexId v = 0; v < cover.vertex_count(); ++v) {
    auto f = s.fiber(map.vertex_map[v]);
    fibers.emplace_back(f.begin(), f.end());
  }
  std::vector<Perm> glue;
  for (EdgeId e = 0; e < cover.edge_count(); ++e) {
    auto image = map_step(cover, s.nerve(), map, Step{e, true});
    glue.push_back(s.step_map(image, map.vertex_map[cover.edge(e).lo]));
  }
  return LocallyConstantSheaf::from_glue(cover, std::move(fibers), std::move(glue),
                                         std::max<std::size_t>(kDefaultFiberCap, s.fiber_size(0)));
}

LocallyConstantSheaf refine(const LocallyConstantSheaf& s, const Refinement& r) {
  std::vector<std::vector<std::string>> fibers;
  for (VertexId v = 0; v < r.nerve.vertex_count(); ++v) {
    auto f = s.fiber(r.vertex_image.at(v));
    fibers.emplace_back(f.begin(), f.end());
  }
  std::vector<Perm> glue;
  for (EdgeId e = 0; e < r.nerve.edge_count(); ++e) {
    glue.push_back(transport_iso(s, r.edge_image.at(e)));
  }
  return LocallyConstantSheaf::from_glue(r.nerve, std::move(fibers), std::move(glue),
                                         std::max<std::size_t>(kDefaultFiberCap, s.fiber_size(0)));
}

}  // namespace holon
