#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "holon/nerve.hpp"
#include "holon/perm.hpp"
#include "holon/perm_group.hpp"

namespace holon {

inline constexpr std::size_t kDefaultFiberCap = 16;

/// Unchecked sheaf data. glue[e] lists pairs (x, y) meaning the element x of
/// the fiber over the higher-indexed endpoint of e goes to y in the fiber over
/// the lower-indexed endpoint.
struct RawSheaf {
  std::vector<std::vector<std::string>> fibers;
  std::vector<std::vector<std::pair<std::string, std::string>>> glue;
};

/// Locally constant sheaf of finite sets on a nerve: a fiber per vertex and a
/// bijection per edge satisfying glue(ab) * glue(bc) == glue(ac) on every
/// triangle. Only the lo <- hi orientation is stored; the reverse is the
/// inverse permutation.
class LocallyConstantSheaf {
 public:
  /// Throws kNotBijection, kFiberSizeMismatch, kCocycleViolation,
  /// kBoundExceeded (fiber larger than `fiber_cap`) or kInvalidInput.
  static LocallyConstantSheaf validate(Nerve nerve, const RawSheaf& raw,
                                       std::size_t fiber_cap = kDefaultFiberCap);

  /// Fibers labelled "0".."k-1" with k read off the glue degrees; isolated
  /// vertices get `isolated_fiber` points.
  static LocallyConstantSheaf from_glue(Nerve nerve, std::vector<Perm> glue,
                                        std::size_t isolated_fiber = 1,
                                        std::size_t fiber_cap = kDefaultFiberCap);

  /// Labelled fibers with glue given as permutations of fiber indices.
  static LocallyConstantSheaf from_glue(Nerve nerve, std::vector<std::vector<std::string>> fibers,
                                        std::vector<Perm> glue,
                                        std::size_t fiber_cap = kDefaultFiberCap);

  const Nerve& nerve() const noexcept { return nerve_; }
  std::span<const std::string> fiber(VertexId v) const { return fibers_.at(v); }
  std::size_t fiber_size(VertexId v) const { return fibers_.at(v).size(); }
  /// fiber(hi) -> fiber(lo).
  const Perm& glue(EdgeId e) const { return glue_.at(e); }
  std::span<const Perm> glue() const noexcept { return glue_; }

  /// For a step u -> v, the induced map fiber(v) -> fiber(u).
  Perm step_map(Step step, VertexId at) const;

  RawSheaf to_raw() const;

 private:
  LocallyConstantSheaf(Nerve nerve, std::vector<std::vector<std::string>> fibers,
                       std::vector<Perm> glue)
      : nerve_(std::move(nerve)), fibers_(std::move(fibers)), glue_(std::move(glue)) {}

  static LocallyConstantSheaf checked(Nerve nerve, std::vector<std::vector<std::string>> fibers,
                                      std::vector<Perm> glue, std::size_t fiber_cap);

  Nerve nerve_;
  std::vector<std::vector<std::string>> fibers_;
  std::vector<Perm> glue_;
};

inline LocallyConstantSheaf validate_sheaf(Nerve nerve, const RawSheaf& raw,
                                           std::size_t fiber_cap = kDefaultFiberCap) {
  return LocallyConstantSheaf::validate(std::move(nerve), raw, fiber_cap);
}

/// Composite of the gluings along `path`: fiber(path.end()) -> fiber(path.base()).
/// Throws kInvalidPath.
Perm transport_iso(const LocallyConstantSheaf& s, const PathWord& path);

/// Holonomy of a closed path, a permutation of fiber(loop.base()). Throws
/// kInvalidPath when the loop is not closed.
Perm holonomy_of_loop(const LocallyConstantSheaf& s, const PathWord& loop);

struct HolonomyGroup {
  VertexId base = 0;
  std::vector<Perm> generators;  // holonomies of the presentation's generator loops
  std::vector<Perm> elements;    // sorted closure

  std::size_t order() const noexcept { return elements.size(); }
  bool contains(const Perm& g) const;
};

/// Throws kDisconnected.
HolonomyGroup holonomy_group(const LocallyConstantSheaf& s, VertexId base,
                             std::size_t max_elements = kDefaultMaxGroupElements);

/// True iff the sheaf is isomorphic to a constant one: trivial holonomy and a
/// compatible identification of all fibers. Both are computed and required to
/// agree. Throws kDisconnected.
bool is_constant(const LocallyConstantSheaf& s);

/// Compatible families (x_v) with glue(e)(x_hi) == x_lo on every edge: the
/// global sections.
std::vector<std::vector<Perm::Point>> global_sections(const LocallyConstantSheaf& s);

/// Pulls fibers and gluings back along a simplicial map. Throws kNotACoverMap.
LocallyConstantSheaf pullback_to_cover(const LocallyConstantSheaf& s, const Nerve& cover,
                                       const NerveMap& map);

/// Carries the sheaf to a refinement of its nerve.
LocallyConstantSheaf refine(const LocallyConstantSheaf& s, const Refinement& r);

}  // namespace holon
