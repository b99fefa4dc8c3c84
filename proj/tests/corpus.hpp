#pragma once

// Seeded random instances shared by the property tests and the acceptance run.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "holon/random.hpp"
#include "holon/structure.hpp"

namespace corpus {

/// Structures over random connected nerves with up to `max_vertices`
/// vertices. Even entries use the group acting on itself, odd entries its
/// natural action, where stabilizer twists give nontrivial holonomy.
inline std::vector<holon::GeoStructure> structures(std::uint64_t seed, std::size_t count,
                                                   std::size_t max_vertices = 8) {
  holon::Rng rng(seed);
  const auto groups = holon::small_groups();
  // Natural actions with nontrivial point stabilizers.
  std::vector<holon::NamedGroup> twisting;
  for (const auto& g : groups) {
    if (holon::natural_model(g).order() > g.degree) twisting.push_back(g);
  }
  holon::NerveShape shape;
  shape.max_vertices = max_vertices;
  shape.extra_edge_prob = 0.4;
  shape.multi_edge_prob = 0.1;
  shape.triangle_prob = 0.6;
  std::vector<holon::GeoStructure> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 2 == 0) {
      auto model = holon::free_model(groups[rng() % groups.size()]);
      out.push_back(holon::random_structure(rng, shape, model, static_cast<holon::Perm::Point>(rng() % model.size())));
    } else {
      auto model = holon::natural_model(twisting[rng() % twisting.size()]);
      out.push_back(holon::random_structure(rng, shape, model,
                                            static_cast<holon::Perm::Point>(rng() % model.size()), 0.5));
    }
  }
  return out;
}

/// Free-model structures only: every transition is pinned by its two charts.
inline std::vector<holon::GeoStructure> free_structures(std::uint64_t seed, std::size_t count,
                                                        std::size_t max_vertices = 8) {
  holon::Rng rng(seed);
  const auto groups = holon::small_groups();
  holon::NerveShape shape;
  shape.min_vertices = 2;
  shape.max_vertices = max_vertices;
  shape.multi_edge_prob = 0.1;
  shape.triangle_prob = 0.6;
  std::vector<holon::GeoStructure> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto model = holon::free_model(groups[rng() % groups.size()]);
    out.push_back(holon::random_structure(rng, shape, model, static_cast<holon::Perm::Point>(rng() % model.size())));
  }
  return out;
}

inline std::vector<holon::LocallyConstantSheaf> sheaves(std::uint64_t seed, std::size_t count,
                                                        std::size_t max_fiber = 6) {
  holon::Rng rng(seed);
  holon::NerveShape shape;
  shape.max_vertices = 6;
  shape.multi_edge_prob = 0.1;
  std::vector<holon::LocallyConstantSheaf> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(holon::random_sheaf(rng, shape, max_fiber));
  return out;
}

}  // namespace corpus
