#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "holon/perm.hpp"

namespace holon {

// Finite nerve of a covering family: vertices are charts, edges are nonempty
// pairwise overlaps (parallel edges model overlaps with several components),
// triangles are nonempty triple overlaps.

using VertexId = std::size_t;
using EdgeId = std::size_t;
using TriangleId = std::size_t;

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

struct RawEdge {
  std::string id;
  std::string a;
  std::string b;
};

struct RawTriangle {
  std::array<std::string, 3> edges;
};

/// Unchecked description, as read from a nerve file.
struct RawNerve {
  std::vector<std::string> vertices;
  std::vector<RawEdge> edges;
  std::vector<RawTriangle> triangles;
};

/// Edges are stored with lo < hi; "forward" traversal goes lo -> hi.
struct Edge {
  std::string id;
  VertexId lo;
  VertexId hi;
};

/// vertices a < b < c; edges ordered (a,b), (b,c), (a,c).
struct Triangle {
  std::array<VertexId, 3> vertices;
  std::array<EdgeId, 3> edges;
};

class Nerve {
 public:
  /// Throws kEmptyNerve or kMalformedNerve.
  static Nerve validate(const RawNerve& raw);

  /// Convenience form for code and tests: vertices "0".."n-1", edge ids
  /// "e0".., triangles given by their three edge indices.
  static Nerve from_indices(std::size_t vertex_count,
                            std::span<const std::pair<VertexId, VertexId>> edges,
                            std::span<const std::array<EdgeId, 3>> triangles = {});

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t triangle_count() const noexcept { return triangles_.size(); }

  const std::string& vertex_label(VertexId v) const { return labels_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const Triangle& triangle(TriangleId t) const { return triangles_.at(t); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Triangle> triangles() const noexcept { return triangles_; }

  std::optional<VertexId> find_vertex(std::string_view label) const;
  std::optional<EdgeId> find_edge(std::string_view id) const;

  /// Incident edges of v ordered by (other endpoint, edge index).
  std::span<const EdgeId> incident_edges(VertexId v) const { return incidence_.at(v); }
  std::vector<EdgeId> edges_between(VertexId u, VertexId v) const;
  VertexId other_end(EdgeId e, VertexId v) const;

  RawNerve to_raw() const;

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::vector<std::vector<EdgeId>> incidence_;
};

inline Nerve validate_nerve(const RawNerve& raw) { return Nerve::validate(raw); }

/// One traversal of an edge. A "stay" step keeps the current vertex; it is the
/// edge-path image of a repeated vertex (i_l, i_l) in a vertex word.
struct Step {
  static constexpr EdgeId kStay = static_cast<EdgeId>(-1);

  EdgeId edge = kStay;
  bool forward = true;

  bool is_stay() const noexcept { return edge == kStay; }
  Step reversed() const noexcept { return Step{edge, !forward}; }
  VertexId source(const Nerve& n, VertexId at_stay) const;
  VertexId target(const Nerve& n, VertexId at_stay) const;

  friend bool operator==(const Step&, const Step&) = default;
};

/// An edge path. Consecutive steps are endpoint-compatible; an empty step list
/// is the trivial path at `base`.
class PathWord {
 public:
  static PathWord trivial(VertexId v);
  /// Throws kInvalidPath if a step is not incident to the current vertex.
  static PathWord make(const Nerve& n, VertexId base, std::vector<Step> steps);
  /// Vertex-word form (i_1, ..., i_n). Needs a unique edge between every pair
  /// of consecutive distinct vertices; repeated vertices become stay steps.
  static PathWord from_vertices(const Nerve& n, std::span<const VertexId> vertices);
  static PathWord along_edge(const Nerve& n, EdgeId e, bool forward = true);

  VertexId base() const noexcept { return base_; }
  VertexId end() const noexcept { return end_; }
  std::span<const Step> steps() const noexcept { return steps_; }
  std::size_t length() const noexcept { return steps_.size(); }
  bool is_closed() const noexcept { return base_ == end_; }
  bool is_trivial() const noexcept { return steps_.empty(); }
  /// The reverse path (i_n, ..., i_1).
  PathWord inverse() const;

  std::vector<VertexId> vertices(const Nerve& n) const;
  std::string to_string(const Nerve& n) const;

  friend bool operator==(const PathWord&, const PathWord&) = default;

 private:
  PathWord(VertexId base, VertexId end, std::vector<Step> steps)
      : base_(base), end_(end), steps_(std::move(steps)) {}

  VertexId base_ = 0;
  VertexId end_ = 0;
  std::vector<Step> steps_;
};

/// kRepeatOnly drops repeated vertices only; kBacktrack also cancels an edge
/// traversal immediately followed by its reverse. Holonomy uses kBacktrack.
enum class ReductionMode { kRepeatOnly, kBacktrack };

/// Fully reduced representative of `w`. Throws kInvalidPath if `w` does not
/// live in `n`.
PathWord reduce_path(const Nerve& n, const PathWord& w, ReductionMode mode);

/// x followed by y, reduced. Throws kEndpointMismatch unless x.end() == y.base().
PathWord compose_paths(const Nerve& n, const PathWord& x, const PathWord& y,
                       ReductionMode mode = ReductionMode::kBacktrack);

/// Reverse path (i_n, ..., i_1).
PathWord invert_path(const PathWord& x);

struct Connectivity {
  bool connected = false;
  std::vector<std::vector<VertexId>> components;  // each sorted; ordered by least vertex
};

Connectivity is_connected(const Nerve& n);

/// Breadth-first spanning tree of the component of `root`, neighbours visited
/// lowest vertex index first.
struct SpanningTree {
  VertexId root = 0;
  std::vector<std::optional<EdgeId>> parent_edge;
  std::vector<bool> reached;
  std::vector<VertexId> order;

  bool is_tree_edge(EdgeId e) const;
  /// Tree path from root to v.
  PathWord path_from_root(const Nerve& n, VertexId v) const;
};

SpanningTree spanning_tree(const Nerve& n, VertexId root);

struct Letter {
  std::size_t generator;
  int exponent;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

struct Relator {
  TriangleId triangle;
  PathWord loop;              // triangle boundary conjugated to base through the tree
  std::vector<Letter> word;   // the same loop in the generators
};

/// Presentation of the edge-path group at `base`: one generator per non-tree
/// edge, one relator per triangle.
struct Pi1Presentation {
  VertexId base = 0;
  std::vector<EdgeId> generator_edges;
  std::vector<PathWord> generator_loops;
  std::vector<Relator> relators;

  std::size_t rank() const noexcept { return generator_edges.size(); }
};

/// Throws kDisconnected.
Pi1Presentation pi1_presentation(const Nerve& n, VertexId base);

/// Value of a word under a generator assignment.
Perm evaluate_word(std::span<const Letter> word, std::span<const Perm> images,
                   std::size_t degree);

using PermRep = std::vector<Perm>;

/// Visits every assignment of generators to Sym(degree) that kills all
/// relators, in lexicographic order of (generator 0, generator 1, ...). The
/// visitor returns false to stop. Throws kSearchBudgetExceeded after `budget`
/// partial assignments.
void for_each_perm_rep(const Pi1Presentation& p, std::size_t degree,
                       const std::function<bool(const PermRep&)>& visit,
                       std::uint64_t budget = kDefaultSearchBudget);

std::vector<PermRep> enumerate_perm_reps(const Pi1Presentation& p, std::size_t degree,
                                         std::uint64_t budget = kDefaultSearchBudget);

/// Bounded simple connectivity: no nontrivial homomorphism into Sym(degree).
/// A nontrivial representation of smaller degree extends by fixed points, so
/// checking `degree` alone covers every smaller one. Throws kDisconnected.
bool is_simply_connected_up_to(const Nerve& n, std::size_t degree,
                               std::uint64_t budget = kDefaultSearchBudget);

/// Simplicial map between nerves: vertices to vertices, edges to edges.
struct NerveMap {
  std::vector<VertexId> vertex_map;
  std::vector<EdgeId> edge_map;
};

/// Reason the map is not simplicial, or nullopt when it is: edge endpoints map
/// to the image edge's endpoints and every triangle lands on a triangle.
std::optional<std::string> nerve_map_defect(const Nerve& src, const Nerve& dst,
                                            const NerveMap& map);

/// Image of one step: the image edge, traversed in the matching direction.
Step map_step(const Nerve& src, const Nerve& dst, const NerveMap& map, Step step);
PathWord map_path(const Nerve& src, const Nerve& dst, const NerveMap& map,
                  const PathWord& path);

/// A finer nerve with every new vertex sent to an old vertex and every new
/// edge sent to an old path between the images of its endpoints.
struct Refinement {
  Nerve nerve;
  std::vector<VertexId> vertex_image;
  std::vector<PathWord> edge_image;
};

/// Inserts a midpoint on `e` and splits every triangle through `e` in two.
Refinement subdivide_edge(const Nerve& n, EdgeId e);

}  // namespace holon
