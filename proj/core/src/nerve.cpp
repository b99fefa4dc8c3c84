#include "holon/nerve.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "holon/error.hpp"

namespace holon {

Nerve Nerve::validate(const RawNerve& raw) {
  if (raw.vertices.empty()) fail(ErrorCode::kEmptyNerve, "nerve has no vertices");

  Nerve n;
  std::map<std::string, VertexId, std::less<>> vertex_index;
  for (const auto& label : raw.vertices) {
    if (!vertex_index.emplace(label, n.labels_.size()).second) {
      fail(ErrorCode::kMalformedNerve, "duplicate vertex '" + label + "'");
    }
    n.labels_.push_back(label);
  }

  std::map<std::string, EdgeId, std::less<>> edge_index;
  for (const auto& e : raw.edges) {
    auto a = vertex_index.find(e.a);
    auto b = vertex_index.find(e.b);
    if (a == vertex_index.end() || b == vertex_index.end()) {
      const auto& missing = a == vertex_index.end() ? e.a : e.b;
      fail(ErrorCode::kMalformedNerve,
           "edge '" + e.id + "' references unknown vertex '" + missing + "'");
    }
    if (a->second == b->second) {
      fail(ErrorCode::kMalformedNerve, "edge '" + e.id + "' joins vertex '" + e.a +
                                           "' to itself");
    }
    if (!edge_index.emplace(e.id, n.edges_.size()).second) {
      fail(ErrorCode::kMalformedNerve, "duplicate edge id '" + e.id + "'");
    }
    n.edges_.push_back(Edge{e.id, std::min(a->second, b->second),
                            std::max(a->second, b->second)});
  }

  for (std::size_t t = 0; t < raw.triangles.size(); ++t) {
    const auto& tri = raw.triangles[t];
    std::array<EdgeId, 3> ids{};
    for (int k = 0; k < 3; ++k) {
      auto it = edge_index.find(tri.edges[k]);
      if (it == edge_index.end()) {
        fail(ErrorCode::kMalformedNerve, "triangle " + std::to_string(t) +
                                             " references unknown edge '" + tri.edges[k] + "'");
      }
      ids[k] = it->second;
    }
    std::set<VertexId> corners;
    std::set<std::pair<VertexId, VertexId>> sides;
    for (auto id : ids) {
      corners.insert(n.edges_[id].lo);
      corners.insert(n.edges_[id].hi);
      sides.emplace(n.edges_[id].lo, n.edges_[id].hi);
    }
    if (corners.size() != 3 || sides.size() != 3) {
      fail(ErrorCode::kMalformedNerve,
           "triangle " + std::to_string(t) + " (" + tri.edges[0] + ", " + tri.edges[1] + ", " +
               tri.edges[2] + ") does not close on three vertices");
    }
    Triangle out;
    std::copy(corners.begin(), corners.end(), out.vertices.begin());
    const auto [va, vb, vc] = out.vertices;
    for (auto id : ids) {
      const auto& e = n.edges_[id];
      if (e.lo == va && e.hi == vb) out.edges[0] = id;
      else if (e.lo == vb && e.hi == vc) out.edges[1] = id;
      else out.edges[2] = id;
    }
    n.triangles_.push_back(out);
  }

  n.incidence_.assign(n.labels_.size(), {});
  for (EdgeId e = 0; e < n.edges_.size(); ++e) {
    n.incidence_[n.edges_[e].lo].push_back(e);
    n.incidence_[n.edges_[e].hi].push_back(e);
  }
  for (VertexId v = 0; v < n.labels_.size(); ++v) {
    auto& inc = n.incidence_[v];
    std::sort(inc.begin(), inc.end(), [&](EdgeId x, EdgeId y) {
      return std::pair(n.other_end(x, v), x) < std::pair(n.other_end(y, v), y);
    });
  }
  return n;
}

Nerve Nerve::from_indices(std::size_t vertex_count,
                          std::span<const std::pair<VertexId, VertexId>> edges,
                          std::span<const std::array<EdgeId, 3>> triangles) {
  RawNerve raw;
  for (std::size_t v = 0; v < vertex_count; ++v) raw.vertices.push_back(std::to_string(v));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto label = [&](VertexId v) {
      return v < vertex_count ? raw.vertices[v] : std::to_string(v);
    };
    raw.edges.push_back(
        RawEdge{"e" + std::to_string(e), label(edges[e].first), label(edges[e].second)});
  }
  for (const auto& t : triangles) {
    RawTriangle tri;
    for (int k = 0; k < 3; ++k) tri.edges[k] = "e" + std::to_string(t[k]);
    raw.triangles.push_back(tri);
  }
  return validate(raw);
}

std::optional<VertexId> Nerve::find_vertex(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<VertexId>(it - labels_.begin());
}

std::optional<EdgeId> Nerve::find_edge(std::string_view id) const {
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    if (edges_[e].id == id) return e;
  }
  return std::nullopt;
}

std::vector<EdgeId> Nerve::edges_between(VertexId u, VertexId v) const {
  std::vector<EdgeId> out;
  for (auto e : incidence_.at(u)) {
    if (other_end(e, u) == v) out.push_back(e);
  }
  return out;
}

VertexId Nerve::other_end(EdgeId e, VertexId v) const {
  const auto& edge = edges_.at(e);
  return edge.lo == v ? edge.hi : edge.lo;
}

RawNerve Nerve::to_raw() const {
  RawNerve raw;
  raw.vertices = labels_;
  for (const auto& e : edges_) raw.edges.push_back({e.id, labels_[e.lo], labels_[e.hi]});
  for (const auto& t : triangles_) {
    raw.triangles.push_back(
        RawTriangle{{edges_[t.edges[0]].id, edges_[t.edges[1]].id, edges_[t.edges[2]].id}});
  }
  return raw;
}

VertexId Step::source(const Nerve& n, VertexId at_stay) const {
  if (is_stay()) return at_stay;
  const auto& e = n.edge(edge);
  return forward ? e.lo : e.hi;
}

VertexId Step::target(const Nerve& n, VertexId at_stay) const {
  if (is_stay()) return at_stay;
  const auto& e = n.edge(edge);
  return forward ? e.hi : e.lo;
}

PathWord PathWord::trivial(VertexId v) { return PathWord(v, v, {}); }

PathWord PathWord::make(const Nerve& n, VertexId base, std::vector<Step> steps) {
  if (base >= n.vertex_count()) {
    fail(ErrorCode::kInvalidPath, "base vertex " + std::to_string(base) + " out of range");
  }
  VertexId at = base;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    if (s.is_stay()) continue;
    if (s.edge >= n.edge_count()) {
      fail(ErrorCode::kInvalidPath, "step " + std::to_string(i) + " uses unknown edge");
    }
    if (s.source(n, at) != at) {
      fail(ErrorCode::kInvalidPath, "step " + std::to_string(i) + " along edge '" +
                                        n.edge(s.edge).id + "' does not start at '" +
                                        n.vertex_label(at) + "'");
    }
    at = s.target(n, at);
  }
  return PathWord(base, at, std::move(steps));
}

PathWord PathWord::from_vertices(const Nerve& n, std::span<const VertexId> vertices) {
  if (vertices.empty()) fail(ErrorCode::kInvalidPath, "empty vertex word");
  for (auto v : vertices) {
    if (v >= n.vertex_count()) fail(ErrorCode::kInvalidPath, "vertex out of range");
  }
  std::vector<Step> steps;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    auto u = vertices[i - 1];
    auto v = vertices[i];
    if (u == v) {
      steps.push_back(Step{});
      continue;
    }
    auto between = n.edges_between(u, v);
    if (between.size() != 1) {
      fail(ErrorCode::kInvalidPath,
           (between.empty() ? "no edge" : "several edges") + std::string(" between '") +
               n.vertex_label(u) + "' and '" + n.vertex_label(v) + "'");
    }
    steps.push_back(Step{between.front(), n.edge(between.front()).lo == u});
  }
  return make(n, vertices.front(), std::move(steps));
}

PathWord PathWord::along_edge(const Nerve& n, EdgeId e, bool forward) {
  const auto& edge = n.edge(e);
  return make(n, forward ? edge.lo : edge.hi, {Step{e, forward}});
}

std::vector<VertexId> PathWord::vertices(const Nerve& n) const {
  std::vector<VertexId> out{base_};
  VertexId at = base_;
  for (const auto& s : steps_) {
    at = s.target(n, at);
    out.push_back(at);
  }
  return out;
}

std::string PathWord::to_string(const Nerve& n) const {
  std::string out = "(";
  auto vs = vertices(n);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += n.vertex_label(vs[i]);
  }
  return out + ")";
}

PathWord reduce_path(const Nerve& n, const PathWord& w, ReductionMode mode) {
  // Re-validate: w may have been built against another nerve.
  std::vector<Step> steps(w.steps().begin(), w.steps().end());
  PathWord::make(n, w.base(), steps);

  std::vector<Step> out;
  out.reserve(steps.size());
  for (const auto& s : steps) {
    if (s.is_stay()) continue;
    if (mode == ReductionMode::kBacktrack && !out.empty() && out.back() == s.reversed()) {
      out.pop_back();
      continue;
    }
    out.push_back(s);
  }
  return PathWord::make(n, w.base(), std::move(out));
}

PathWord compose_paths(const Nerve& n, const PathWord& x, const PathWord& y,
                       ReductionMode mode) {
  if (x.end() != y.base()) {
    fail(ErrorCode::kEndpointMismatch, "path ends at '" + n.vertex_label(x.end()) +
                                           "' but the next starts at '" +
                                           n.vertex_label(y.base()) + "'");
  }
  std::vector<Step> steps(x.steps().begin(), x.steps().end());
  steps.insert(steps.end(), y.steps().begin(), y.steps().end());
  return reduce_path(n, PathWord::make(n, x.base(), std::move(steps)), mode);
}

PathWord PathWord::inverse() const {
  std::vector<Step> steps;
  steps.reserve(steps_.size());
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) steps.push_back(it->reversed());
  return PathWord(end_, base_, std::move(steps));
}

PathWord invert_path(const PathWord& x) { return x.inverse(); }

Connectivity is_connected(const Nerve& n) {
  Connectivity out;
  std::vector<bool> seen(n.vertex_count(), false);
  for (VertexId start = 0; start < n.vertex_count(); ++start) {
    if (seen[start]) continue;
    std::vector<VertexId> component;
    std::vector<VertexId> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      component.push_back(v);
      for (auto e : n.incident_edges(v)) {
        auto w = n.other_end(e, v);
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(component.begin(), component.end());
    out.components.push_back(std::move(component));
  }
  out.connected = out.components.size() == 1;
  return out;
}

bool SpanningTree::is_tree_edge(EdgeId e) const {
  for (const auto& pe : parent_edge) {
    if (pe && *pe == e) return true;
  }
  return false;
}

PathWord SpanningTree::path_from_root(const Nerve& n, VertexId v) const {
  if (!reached.at(v)) {
    fail(ErrorCode::kDisconnected, "vertex '" + n.vertex_label(v) +
                                       "' is not connected to '" + n.vertex_label(root) + "'");
  }
  std::vector<Step> reversed;
  VertexId at = v;
  while (parent_edge[at]) {
    EdgeId e = *parent_edge[at];
    VertexId parent = n.other_end(e, at);
    reversed.push_back(Step{e, n.edge(e).lo == parent});
    at = parent;
  }
  return PathWord::make(n, root, {reversed.rbegin(), reversed.rend()});
}

SpanningTree spanning_tree(const Nerve& n, VertexId root) {
  if (root >= n.vertex_count()) {
    fail(ErrorCode::kInvalidPath, "root vertex " + std::to_string(root) + " out of range");
  }
  SpanningTree tree;
  tree.root = root;
  tree.parent_edge.assign(n.vertex_count(), std::nullopt);
  tree.reached.assign(n.vertex_count(), false);
  std::deque<VertexId> queue{root};
  tree.reached[root] = true;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    tree.order.push_back(v);
    for (auto e : n.incident_edges(v)) {
      auto w = n.other_end(e, v);
      if (!tree.reached[w]) {
        tree.reached[w] = true;
        tree.parent_edge[w] = e;
        queue.push_back(w);
      }
    }
  }
  return tree;
}

namespace {

// Loop at the tree root: tree path to `from`, the given steps, tree path back.
PathWord loop_through(const Nerve& n, const SpanningTree& tree, VertexId from,
                      std::span<const Step> steps) {
  auto head = tree.path_from_root(n, from);
  std::vector<Step> all(head.steps().begin(), head.steps().end());
  VertexId at = from;
  for (const auto& s : steps) {
    all.push_back(s);
    at = s.target(n, at);
  }
  auto tail = tree.path_from_root(n, at).inverse();
  all.insert(all.end(), tail.steps().begin(), tail.steps().end());
  return PathWord::make(n, tree.root, std::move(all));
}

}  // namespace

Pi1Presentation pi1_presentation(const Nerve& n, VertexId base) {
  auto conn = is_connected(n);
  if (!conn.connected) {
    fail(ErrorCode::kDisconnected,
         "nerve has " + std::to_string(conn.components.size()) + " components");
  }
  auto tree = spanning_tree(n, base);
  Pi1Presentation p;
  p.base = base;
  std::vector<std::optional<std::size_t>> generator_of(n.edge_count());
  std::vector<bool> in_tree(n.edge_count(), false);
  for (const auto& pe : tree.parent_edge) {
    if (pe) in_tree[*pe] = true;
  }
  for (EdgeId e = 0; e < n.edge_count(); ++e) {
    if (in_tree[e]) continue;
    generator_of[e] = p.generator_edges.size();
    p.generator_edges.push_back(e);
    Step step{e, true};
    p.generator_loops.push_back(loop_through(n, tree, n.edge(e).lo, std::span(&step, 1)));
  }
  for (TriangleId t = 0; t < n.triangle_count(); ++t) {
    const auto& tri = n.triangle(t);
    // a -> b -> c -> a
    std::array<Step, 3> boundary{Step{tri.edges[0], true}, Step{tri.edges[1], true},
                                 Step{tri.edges[2], false}};
    Relator r{t, loop_through(n, tree, tri.vertices[0], boundary), {}};
    for (const auto& s : r.loop.steps()) {
      if (s.is_stay() || !generator_of[s.edge]) continue;
      r.word.push_back(Letter{*generator_of[s.edge], s.forward ? 1 : -1});
    }
    p.relators.push_back(std::move(r));
  }
  return p;
}

Perm evaluate_word(std::span<const Letter> word, std::span<const Perm> images,
                   std::size_t degree) {
  Perm out = Perm::identity(degree);
  for (const auto& letter : word) {
    const auto& g = images[letter.generator];
    out *= letter.exponent > 0 ? g : g.inverse();
  }
  return out;
}

void for_each_perm_rep(const Pi1Presentation& p, std::size_t degree,
                       const std::function<bool(const PermRep&)>& visit,
                       std::uint64_t budget) {
  if (degree == 0) fail(ErrorCode::kInvalidInput, "representation degree must be >= 1");
  const auto sym = symmetric_group(degree);
  const std::size_t rank = p.rank();

  // A relator can be checked once its largest generator is assigned.
  std::vector<std::vector<const Relator*>> check_at(rank);
  for (const auto& r : p.relators) {
    if (r.word.empty()) continue;
    std::size_t top = 0;
    for (const auto& l : r.word) top = std::max(top, l.generator);
    check_at[top].push_back(&r);
  }

  PermRep current(rank, Perm::identity(degree));
  std::uint64_t nodes = 0;
  bool stopped = false;

  std::function<void(std::size_t)> descend = [&](std::size_t g) {
    if (stopped) return;
    if (g == rank) {
      if (!visit(current)) stopped = true;
      return;
    }
    for (const auto& candidate : sym) {
      if (++nodes > budget) {
        fail(ErrorCode::kSearchBudgetExceeded,
             "representation search exceeded " + std::to_string(budget) + " nodes");
      }
      current[g] = candidate;
      bool ok = true;
      for (const auto* r : check_at[g]) {
        if (!evaluate_word(r->word, current, degree).is_identity()) {
          ok = false;
          break;
        }
      }
      if (ok) descend(g + 1);
      if (stopped) return;
    }
  };
  descend(0);
}

std::vector<PermRep> enumerate_perm_reps(const Pi1Presentation& p, std::size_t degree,
                                         std::uint64_t budget) {
  std::vector<PermRep> out;
  for_each_perm_rep(
      p, degree,
      [&](const PermRep& rep) {
        out.push_back(rep);
        return true;
      },
      budget);
  return out;
}

bool is_simply_connected_up_to(const Nerve& n, std::size_t degree, std::uint64_t budget) {
  auto p = pi1_presentation(n, 0);
  bool all_trivial = true;
  for_each_perm_rep(
      p, degree,
      [&](const PermRep& rep) {
        for (const auto& g : rep) {
          if (!g.is_identity()) {
            all_trivial = false;
            return false;
          }
        }
        return true;
      },
      budget);
  return all_trivial;
}

std::optional<std::string> nerve_map_defect(const Nerve& src, const Nerve& dst,
                                            const NerveMap& map) {
  if (map.vertex_map.size() != src.vertex_count()) return "vertex map has wrong size";
  if (map.edge_map.size() != src.edge_count()) return "edge map has wrong size";
  for (VertexId v = 0; v < src.vertex_count(); ++v) {
    if (map.vertex_map[v] >= dst.vertex_count()) {
      return "vertex '" + src.vertex_label(v) + "' maps outside the target";
    }
  }
  for (EdgeId e = 0; e < src.edge_count(); ++e) {
    if (map.edge_map[e] >= dst.edge_count()) {
      return "edge '" + src.edge(e).id + "' maps outside the target";
    }
    const auto& se = src.edge(e);
    const auto& de = dst.edge(map.edge_map[e]);
    auto a = map.vertex_map[se.lo];
    auto b = map.vertex_map[se.hi];
    if (!((a == de.lo && b == de.hi) || (a == de.hi && b == de.lo))) {
      return "edge '" + se.id + "' does not map onto the endpoints of '" + de.id + "'";
    }
  }
  for (TriangleId t = 0; t < src.triangle_count(); ++t) {
    std::set<EdgeId> image;
    for (auto e : src.triangle(t).edges) image.insert(map.edge_map[e]);
    bool found = false;
    for (const auto& dt : dst.triangles()) {
      if (std::set<EdgeId>(dt.edges.begin(), dt.edges.end()) == image) {
        found = true;
        break;
      }
    }
    if (!found) return "triangle " + std::to_string(t) + " does not map onto a triangle";
  }
  return std::nullopt;
}

Step map_step(const Nerve& src, const Nerve& dst, const NerveMap& map, Step step) {
  if (step.is_stay()) return step;
  const auto& se = src.edge(step.edge);
  EdgeId image = map.edge_map.at(step.edge);
  bool same_orientation = map.vertex_map.at(se.lo) == dst.edge(image).lo;
  return Step{image, same_orientation == step.forward};
}

PathWord map_path(const Nerve& src, const Nerve& dst, const NerveMap& map,
                  const PathWord& path) {
  std::vector<Step> steps;
  steps.reserve(path.length());
  for (const auto& s : path.steps()) steps.push_back(map_step(src, dst, map, s));
  return PathWord::make(dst, map.vertex_map.at(path.base()), std::move(steps));
}

Refinement subdivide_edge(const Nerve& n, EdgeId e) {
  const auto& split = n.edge(e);
  RawNerve raw = n.to_raw();
  const std::string mid = split.id + "@mid";
  raw.vertices.push_back(mid);

  // Edge order: old edges with `e` replaced by (lo, m); then (hi, m); then one
  // (k, m) per triangle through `e`.
  raw.edges[e] = RawEdge{split.id + "/lo", n.vertex_label(split.lo), mid};
  raw.edges.push_back(RawEdge{split.id + "/hi", n.vertex_label(split.hi), mid});
  const EdgeId hi_edge = n.edge_count();

  std::vector<PathWord> edge_image;
  for (EdgeId f = 0; f < n.edge_count(); ++f) edge_image.push_back(PathWord::along_edge(n, f));
  edge_image[e] = PathWord::along_edge(n, e);  // lo -> m  ~>  lo -> hi
  edge_image.push_back(PathWord::trivial(split.hi));

  std::vector<RawTriangle> triangles;
  for (TriangleId t = 0; t < n.triangle_count(); ++t) {
    const auto& tri = n.triangle(t);
    if (std::find(tri.edges.begin(), tri.edges.end(), e) == tri.edges.end()) {
      triangles.push_back(raw.triangles[t]);
      continue;
    }
    VertexId k = 0;
    for (auto v : tri.vertices) {
      if (v != split.lo && v != split.hi) k = v;
    }
    EdgeId k_lo = 0;
    EdgeId k_hi = 0;
    for (auto f : tri.edges) {
      if (f == e) continue;
      const auto& fe = n.edge(f);
      if (fe.lo == split.lo || fe.hi == split.lo) k_lo = f;
      else k_hi = f;
    }
    const std::string spoke = split.id + "/t" + std::to_string(t);
    raw.edges.push_back(RawEdge{spoke, n.vertex_label(k), mid});
    // (k, m) ~> k -> hi
    edge_image.push_back(PathWord::along_edge(n, k_hi, n.edge(k_hi).lo == k));
    triangles.push_back(RawTriangle{{raw.edges[e].id, spoke, n.edge(k_lo).id}});
    triangles.push_back(RawTriangle{{raw.edges[hi_edge].id, spoke, n.edge(k_hi).id}});
  }
  raw.triangles = std::move(triangles);

  std::vector<VertexId> vertex_image(n.vertex_count());
  std::iota(vertex_image.begin(), vertex_image.end(), VertexId{0});
  vertex_image.push_back(split.hi);
  return Refinement{Nerve::validate(raw), std::move(vertex_image), std::move(edge_image)};
}

}  // namespace holon
