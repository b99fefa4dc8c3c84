#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "holon/nerve.hpp"
#include "holon/perm.hpp"
#include "holon/sheaf.hpp"
#include "holon/structure.hpp"

namespace holon {

using Rng = std::mt19937_64;

struct NerveShape {
  std::size_t min_vertices = 1;
  std::size_t max_vertices = 6;
  double extra_edge_prob = 0.3;   // per non-adjacent pair
  double multi_edge_prob = 0.0;   // per tree or extra edge, adds a parallel copy
  double triangle_prob = 0.5;     // per admissible closed triple
};

/// Random connected nerve: a random tree plus extra edges, with closed
/// triples filled independently.
Nerve random_connected_nerve(Rng& rng, const NerveShape& shape);

/// Same, never filling a triangle.
Nerve random_triangle_free_nerve(Rng& rng, const NerveShape& shape);

/// Uniform element of Sym(degree).
Perm random_perm(Rng& rng, std::size_t degree);

/// A connected nerve with edge elements h(lo) * t(e) * h(hi)^{-1}, where h is
/// a random gauge from `gauge_pool` and t(e) is the identity or, with
/// probability `twist_prob`, an element of `twist_pool`. A closed triple is
/// filled only when the twists satisfy the Chasles relation on it, so every
/// triangle holds by construction.
struct TwistedGlue {
  Nerve nerve;
  std::vector<Perm> glue;
  std::vector<Perm> gauge;
};

TwistedGlue random_twisted_glue(Rng& rng, const NerveShape& shape,
                                const std::vector<Perm>& gauge_pool,
                                const std::vector<Perm>& twist_pool, double twist_prob);

/// Sheaf with fibers of a random size in [1, max_fiber] and twists drawn
/// from Sym(fiber).
LocallyConstantSheaf random_sheaf(Rng& rng, const NerveShape& shape, std::size_t max_fiber,
                                  double twist_prob = 0.4);

/// Permutation groups of order at most 24 in their natural actions.
struct NamedGroup {
  std::string name;
  std::size_t degree;
  std::vector<Perm> generators;
};
std::vector<NamedGroup> small_groups();

/// G acting on itself: every point has a trivial stabilizer.
ModelSpace free_model(const NamedGroup& g);
/// G acting on its natural points.
ModelSpace natural_model(const NamedGroup& g);

/// Structure with charts h(v)(base_point) and twists in the stabilizer of
/// base_point. On a free model the structure has trivial holonomy.
GeoStructure random_structure(Rng& rng, const NerveShape& shape, const ModelSpace& model,
                              Perm::Point base_point, double twist_prob = 0.4);

}  // namespace holon
