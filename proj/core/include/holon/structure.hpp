#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "holon/nerve.hpp"
#include "holon/perm.hpp"
#include "holon/perm_group.hpp"
#include "holon/sheaf.hpp"

namespace holon {

inline constexpr std::uint64_t kDefaultGaugeBudget = 1'000'000;

/// Finite set of model charts with a permutation group acting on it. The
/// action is faithful by construction since group elements are permutations
/// of the points.
class ModelSpace {
 public:
  /// Throws kInvalidInput (empty or repeated points, generator of the wrong
  /// degree) or kSearchBudgetExceeded (group too large to list).
  static ModelSpace make(std::vector<std::string> points, std::vector<Perm> generators,
                         std::size_t max_elements = kDefaultMaxGroupElements);
  /// Z/m acting on itself by rotation; points "0".."m-1".
  static ModelSpace cyclic(std::size_t m);
  /// G acting on itself by left multiplication, G given by permutation
  /// generators on `degree` points. Points are the elements' one-line forms.
  static ModelSpace regular(std::span<const Perm> generators, std::size_t degree);

  std::size_t size() const noexcept { return data_->points.size(); }
  std::span<const std::string> points() const noexcept { return data_->points; }
  const std::string& point(Perm::Point x) const { return data_->points.at(x); }
  std::optional<Perm::Point> find_point(std::string_view label) const;

  std::span<const Perm> generators() const noexcept { return data_->generators; }
  /// Sorted element list.
  std::span<const Perm> elements() const noexcept { return data_->elements; }
  std::size_t order() const noexcept { return data_->elements.size(); }
  bool contains(const Perm& g) const;
  Perm identity() const { return Perm::identity(size()); }

  /// Same points in the same order and the same group.
  friend bool operator==(const ModelSpace& a, const ModelSpace& b);

 private:
  struct Data {
    std::vector<std::string> points;
    std::vector<Perm> generators;
    std::vector<Perm> elements;
  };
  explicit ModelSpace(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// Group elements on the edges of a nerve satisfying the Chasles relation
/// t(ab) * t(bc) == t(ac) on every triangle. t(e) acts from the chart side of
/// the higher endpoint to that of the lower endpoint; the reverse traversal
/// carries the inverse.
class TransitionCocycle {
 public:
  /// Throws kNotInGroup or kChaslesViolation (triangle named), or
  /// kInvalidInput when the transition count is wrong.
  static TransitionCocycle verify(Nerve nerve, ModelSpace model, std::vector<Perm> transitions);

  const Nerve& nerve() const noexcept { return nerve_; }
  const ModelSpace& model() const noexcept { return model_; }
  const Perm& transition(EdgeId e) const { return transitions_.at(e); }
  std::span<const Perm> transitions() const noexcept { return transitions_; }
  /// Element carried by one step u -> v (acting from v's side to u's).
  Perm step_element(Step step) const;

 private:
  TransitionCocycle(Nerve nerve, ModelSpace model, std::vector<Perm> transitions)
      : nerve_(std::move(nerve)), model_(std::move(model)), transitions_(std::move(transitions)) {}

  Nerve nerve_;
  ModelSpace model_;
  std::vector<Perm> transitions_;
};

/// Charts in the model together with a transition cocycle such that
/// t(e)(chart(hi)) == chart(lo) on every edge.
class GeoStructure {
 public:
  /// Checks group membership, then Chasles, then chart compatibility. Throws
  /// kNotInGroup, kChaslesViolation, kChartIncompatible (edge named) or
  /// kInvalidInput.
  static GeoStructure verify(Nerve nerve, ModelSpace model, std::vector<Perm::Point> charts,
                             std::vector<Perm> transitions);
  /// Throws kChartIncompatible or kInvalidInput.
  static GeoStructure from_cocycle(TransitionCocycle cocycle, std::vector<Perm::Point> charts);

  const TransitionCocycle& cocycle() const noexcept { return cocycle_; }
  const Nerve& nerve() const noexcept { return cocycle_.nerve(); }
  const ModelSpace& model() const noexcept { return cocycle_.model(); }
  Perm::Point chart(VertexId v) const { return charts_.at(v); }
  std::span<const Perm::Point> charts() const noexcept { return charts_; }
  const Perm& transition(EdgeId e) const { return cocycle_.transition(e); }
  std::span<const Perm> transitions() const noexcept { return cocycle_.transitions(); }

  friend bool operator==(const GeoStructure& a, const GeoStructure& b);

 private:
  GeoStructure(TransitionCocycle cocycle, std::vector<Perm::Point> charts)
      : cocycle_(std::move(cocycle)), charts_(std::move(charts)) {}

  TransitionCocycle cocycle_;
  std::vector<Perm::Point> charts_;
};

inline GeoStructure verify_structure(const ModelSpace& model, const Nerve& nerve,
                                     std::vector<Perm::Point> charts,
                                     std::vector<Perm> transitions) {
  return GeoStructure::verify(nerve, model, std::move(charts), std::move(transitions));
}

/// Every transition the identity.
TransitionCocycle trivial_cocycle(const Nerve& nerve, const ModelSpace& model);
GeoStructure trivial_structure(const Nerve& nerve, const ModelSpace& model, Perm::Point chart);

/// t(e) = h(lo) * h(hi)^{-1}. Throws kNotInGroup.
TransitionCocycle coboundary(const Nerve& nerve, const ModelSpace& model,
                             std::span<const Perm> h);

/// Product of the step elements along a path: acts from the end's side to the
/// base's side. Throws kInvalidPath.
Perm transport_element(const TransitionCocycle& c, const PathWord& path);

struct HolonomyRepresentation {
  Pi1Presentation presentation;
  std::vector<Perm> generator_images;
  std::vector<Perm> image;  // sorted subgroup of G

  VertexId base() const noexcept { return presentation.base; }
};

/// Throws kDisconnected.
HolonomyRepresentation holonomy_representation(const TransitionCocycle& c, VertexId base);
inline HolonomyRepresentation holonomy_representation(const GeoStructure& s, VertexId base) {
  return holonomy_representation(s.cocycle(), base);
}

/// Product bundle nerve x M glued along the transitions, seen as a locally
/// constant sheaf with fiber M.
class FlatBundle {
 public:
  explicit FlatBundle(TransitionCocycle cocycle);

  const TransitionCocycle& cocycle() const noexcept { return cocycle_; }
  const LocallyConstantSheaf& sheaf() const noexcept { return sheaf_; }

  /// Connected components of the total space, each a sorted list of
  /// (vertex, point) pairs encoded as vertex * |M| + point.
  std::vector<std::vector<std::size_t>> total_space_components() const;

 private:
  TransitionCocycle cocycle_;
  LocallyConstantSheaf sheaf_;
};

inline FlatBundle build_flat_bundle(const GeoStructure& s) { return FlatBundle(s.cocycle()); }

/// The structure with charts `section` when section(lo) == t(e)(section(hi))
/// on every edge, nullopt otherwise.
std::optional<GeoStructure> check_transverse_section(const FlatBundle& b,
                                                     std::span<const Perm::Point> section);

/// Every transverse section.
std::vector<std::vector<Perm::Point>> transverse_sections(const FlatBundle& b);

/// Cover of the nerve with vertices (i, h), h in the holonomy image H, on
/// which the pulled-back cocycle is a coboundary.
struct HolonomyCover {
  VertexId base = 0;
  std::vector<Perm> holonomy;               // H, sorted
  Nerve nerve;
  NerveMap projection;
  std::vector<std::pair<VertexId, std::size_t>> lift;  // cover vertex -> (i, index of h)
  std::vector<Perm::Point> dev;             // developing labels h^{-1}(chart(i))
  std::vector<Perm> trivializing_gauge;     // k with k(lo) t k(hi)^{-1} == id on every edge

  VertexId cover_vertex(VertexId i, std::size_t h_index) const {
    return i * holonomy.size() + h_index;
  }
};

/// Throws kDisconnected.
HolonomyCover build_holonomy_cover(const GeoStructure& s, VertexId base);

/// Developing labels of the holonomy cover hit every model point.
bool is_complete(const GeoStructure& s, VertexId base = 0);
bool is_complete(const GeoStructure& s, const HolonomyCover& cover);

/// Transitions pulled back along a nerve map. Throws kNotACoverMap.
TransitionCocycle pullback(const TransitionCocycle& c, const Nerve& cover, const NerveMap& map);
GeoStructure pullback(const GeoStructure& s, const Nerve& cover, const NerveMap& map);

/// Elements h with other(e) == h(lo) * c(e) * h(hi)^{-1} on every edge, or
/// nullopt. With charts, also other_chart(i) == h(i)(chart(i)). The search
/// fixes h on each component root and propagates along a spanning tree.
/// Throws kModelMismatch, kInvalidInput (different nerves) or
/// kSearchBudgetExceeded after `budget` root assignments.
std::optional<std::vector<Perm>> gauge_equivalent(const TransitionCocycle& c,
                                                  const TransitionCocycle& other,
                                                  std::uint64_t budget = kDefaultGaugeBudget);
std::optional<std::vector<Perm>> gauge_equivalent(const GeoStructure& s, const GeoStructure& other,
                                                  std::uint64_t budget = kDefaultGaugeBudget);

/// Whether (r, k) is a morphism src -> dst: chart_dst(r(i)) == k(i)(chart_src(i))
/// and t_dst(r(e)) * k(hi) == k(lo) * t_src(e) on every edge. Throws
/// kNotANerveMap, kModelMismatch or kInvalidInput.
bool check_cg_morphism(const GeoStructure& src, const GeoStructure& dst, const NerveMap& r,
                       std::span<const Perm> k);

NerveMap identity_map(const Nerve& n);

}  // namespace holon
