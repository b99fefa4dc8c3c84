#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "holon/perm.hpp"

namespace holon {

inline constexpr std::size_t kDefaultMaxGroupElements = 200'000;

/// Every element of the group generated by `generators`, sorted.
///
/// Breadth-first multiplication by generators from the identity. Throws
/// Error{kSearchBudgetExceeded} once more than `max_elements` are found.
std::vector<Perm> closure(std::span<const Perm> generators, std::size_t degree,
                          std::size_t max_elements = kDefaultMaxGroupElements);

/// Orbit of `point` under the group generated by `generators`, sorted.
std::vector<Perm::Point> orbit(std::span<const Perm> generators, Perm::Point point,
                               std::size_t degree);

/// Group order and membership through a Schreier-Sims stabilizer chain. This
/// never materializes the group, so it also serves as an independent check on
/// `closure`.
class StabilizerChain {
 public:
  StabilizerChain(std::span<const Perm> generators, std::size_t degree);

  std::uint64_t order() const;
  bool contains(const Perm& g) const;

 private:
  struct Level {
    Perm::Point base_point;
    std::vector<Perm> generators;
    // transversal[x] maps base_point to x, when x is in the orbit.
    std::vector<std::optional<Perm>> transversal;
  };

  std::optional<Perm> strip(Perm g, std::size_t from_level, std::size_t* level_out) const;
  void rebuild_transversal(Level& level) const;

  std::size_t degree_;
  std::vector<Level> levels_;
};

/// Some x in `group` with x * a * x^{-1} == b as sets, or nullopt. `a`, `b` and
/// `group` are element lists (sorted or not).
std::optional<Perm> find_conjugator(std::span<const Perm> group, std::span<const Perm> a,
                                    std::span<const Perm> b);

/// {x g x^{-1} : g in elements}, sorted.
std::vector<Perm> conjugate_set(std::span<const Perm> elements, const Perm& x);

}  // namespace holon
