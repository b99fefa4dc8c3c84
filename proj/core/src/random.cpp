#include "holon/random.hpp"

#include <algorithm>
#include <numeric>

namespace holon {

namespace {

bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

std::vector<std::pair<VertexId, VertexId>> random_graph(Rng& rng, const NerveShape& shape,
                                                        std::size_t* vertex_count) {
  auto n = std::uniform_int_distribution<std::size_t>(shape.min_vertices, shape.max_vertices)(rng);
  *vertex_count = n;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  for (VertexId v = 1; v < n; ++v) {
    VertexId u = pick(rng, v);
    edges.emplace_back(u, v);
    adjacent[u][v] = adjacent[v][u] = true;
  }
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (!adjacent[u][v] && coin(rng, shape.extra_edge_prob)) {
        edges.emplace_back(u, v);
        adjacent[u][v] = adjacent[v][u] = true;
      }
    }
  }
  const auto simple = edges.size();
  for (std::size_t e = 0; e < simple; ++e) {
    if (coin(rng, shape.multi_edge_prob)) edges.push_back(edges[e]);
  }
  return edges;
}

// Closed triples (ab, bc, ac) over vertices a < b < c, one per choice of
// parallel edges.
std::vector<std::array<EdgeId, 3>> closed_triples(
    std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
  std::vector<std::vector<std::vector<EdgeId>>> between(
      n, std::vector<std::vector<EdgeId>>(n));
  for (EdgeId e = 0; e < edges.size(); ++e) {
    auto [a, b] = edges[e];
    between[std::min(a, b)][std::max(a, b)].push_back(e);
  }
  std::vector<std::array<EdgeId, 3>> out;
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      for (VertexId c = b + 1; c < n; ++c) {
        for (auto ab : between[a][b]) {
          for (auto bc : between[b][c]) {
            for (auto ac : between[a][c]) out.push_back({ab, bc, ac});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

Nerve random_connected_nerve(Rng& rng, const NerveShape& shape) {
  std::size_t n = 0;
  auto edges = random_graph(rng, shape, &n);
  std::vector<std::array<EdgeId, 3>> triangles;
  for (const auto& t : closed_triples(n, edges)) {
    if (coin(rng, shape.triangle_prob)) triangles.push_back(t);
  }
  return Nerve::from_indices(n, edges, triangles);
}

Nerve random_triangle_free_nerve(Rng& rng, const NerveShape& shape) {
  std::size_t n = 0;
  auto edges = random_graph(rng, shape, &n);
  return Nerve::from_indices(n, edges);
}

Perm random_perm(Rng& rng, std::size_t degree) {
  std::vector<Perm::Point> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::shuffle(images.begin(), images.end(), rng);
  return Perm(std::move(images));
}

TwistedGlue random_twisted_glue(Rng& rng, const NerveShape& shape,
                                const std::vector<Perm>& gauge_pool,
                                const std::vector<Perm>& twist_pool, double twist_prob) {
  std::size_t n = 0;
  auto edges = random_graph(rng, shape, &n);
  const auto identity = Perm::identity(gauge_pool.front().degree());
  std::vector<Perm> twist;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    twist.push_back(coin(rng, twist_prob) && !twist_pool.empty()
                        ? twist_pool[pick(rng, twist_pool.size())]
                        : identity);
  }
  std::vector<std::array<EdgeId, 3>> triangles;
  for (const auto& t : closed_triples(n, edges)) {
    if (twist[t[0]] * twist[t[1]] == twist[t[2]] && coin(rng, shape.triangle_prob)) {
      triangles.push_back(t);
    }
  }
  TwistedGlue out{Nerve::from_indices(n, edges, triangles), {}, {}};
  for (std::size_t v = 0; v < n; ++v) out.gauge.push_back(gauge_pool[pick(rng, gauge_pool.size())]);
  for (EdgeId e = 0; e < edges.size(); ++e) {
    const auto& edge = out.nerve.edge(e);
    out.glue.push_back(out.gauge[edge.lo] * twist[e] * out.gauge[edge.hi].inverse());
  }
  return out;
}

LocallyConstantSheaf random_sheaf(Rng& rng, const NerveShape& shape, std::size_t max_fiber,
                                  double twist_prob) {
  auto k = std::uniform_int_distribution<std::size_t>(1, max_fiber)(rng);
  std::vector<Perm> gauge_pool, twist_pool;
  for (int i = 0; i < 8; ++i) {
    gauge_pool.push_back(random_perm(rng, k));
    twist_pool.push_back(random_perm(rng, k));
  }
  auto data = random_twisted_glue(rng, shape, gauge_pool, twist_pool, twist_prob);
  return LocallyConstantSheaf::from_glue(std::move(data.nerve), std::move(data.glue), k);
}

std::vector<NamedGroup> small_groups() {
  std::vector<NamedGroup> out;
  for (std::size_t m = 2; m <= 8; ++m) {
    out.push_back({"Z" + std::to_string(m), m, {Perm::rotation(m)}});
  }
  out.push_back({"Z12", 12, {Perm::rotation(12)}});
  out.push_back({"S3", 3, {Perm::swap(3, 0, 1), Perm::rotation(3)}});
  out.push_back({"V4", 4, {Perm({1, 0, 3, 2}), Perm({2, 3, 0, 1})}});
  out.push_back({"D4", 4, {Perm::rotation(4), Perm({0, 3, 2, 1})}});
  out.push_back({"D5", 5, {Perm::rotation(5), Perm({0, 4, 3, 2, 1})}});
  out.push_back({"D6", 6, {Perm::rotation(6), Perm({0, 5, 4, 3, 2, 1})}});
  out.push_back({"A4", 4, {Perm({1, 2, 0, 3}), Perm({0, 2, 3, 1})}});
  out.push_back({"S4", 4, {Perm::swap(4, 0, 1), Perm::rotation(4)}});
  return out;
}

ModelSpace free_model(const NamedGroup& g) { return ModelSpace::regular(g.generators, g.degree); }

ModelSpace natural_model(const NamedGroup& g) {
  std::vector<std::string> points;
  for (std::size_t i = 0; i < g.degree; ++i) points.push_back(std::to_string(i));
  return ModelSpace::make(std::move(points), g.generators);
}

GeoStructure random_structure(Rng& rng, const NerveShape& shape, const ModelSpace& model,
                              Perm::Point base_point, double twist_prob) {
  std::vector<Perm> gauge_pool(model.elements().begin(), model.elements().end());
  std::vector<Perm> stabilizer;
  for (const auto& g : model.elements()) {
    if (g(base_point) == base_point) stabilizer.push_back(g);
  }
  auto data = random_twisted_glue(rng, shape, gauge_pool, stabilizer, twist_prob);
  std::vector<Perm::Point> charts;
  for (const auto& h : data.gauge) charts.push_back(h(base_point));
  return GeoStructure::verify(std::move(data.nerve), model, std::move(charts),
                              std::move(data.glue));
}

}  // namespace holon
