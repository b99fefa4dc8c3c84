#include <memory>

#include "cli.hpp"
#include "holon/error.hpp"
#include "holon/io.hpp"
#include "holon/nerve.hpp"
#include "holon/sheaf.hpp"

namespace holon::cli {

namespace {

VertexId resolve_vertex(const Nerve& n, const std::string& label) {
  if (label.empty()) return 0;
  auto v = n.find_vertex(label);
  if (!v) fail(ErrorCode::kInvalidInput, "unknown base vertex '" + label + "'");
  return *v;
}

std::uint64_t budget_or(const Common& c, std::uint64_t fallback) {
  return c.budget ? c.budget : fallback;
}

Json word_json(const Nerve& n, const std::vector<Letter>& word,
               const std::vector<EdgeId>& generator_edges) {
  Json out = Json::array();
  for (const auto& l : word) {
    out.push_back(n.edge(generator_edges[l.generator]).id + (l.exponent < 0 ? "^-1" : ""));
  }
  return out;
}

Json perms_json(std::span<const Perm> perms) {
  Json out = Json::array();
  for (const auto& p : perms) out.push_back(p.to_string());
  return out;
}

}  // namespace

void register_nerve_commands(CLI::App& app, Registry& reg, Common& common) {
  auto* nerve = app.add_subcommand("nerve", "Nerves of covering families");

  struct CheckArgs {
    std::string file;
    std::size_t degree = 4;
  };
  auto check_args = std::make_shared<CheckArgs>();
  auto* check = nerve->add_subcommand("check", "Validate a nerve; connectivity and bounded simple connectivity");
  check->add_option("file", check_args->file, "Nerve file")->required();
  check->add_option("--degree", check_args->degree, "Representation degree bound");
  reg.add(check, "nerve check", [check_args, &common] {
    auto n = io::load_nerve(check_args->file);
    auto conn = is_connected(n);
    Outcome out;
    out.payload["vertices"] = n.vertex_count();
    out.payload["edges"] = n.edge_count();
    out.payload["triangles"] = n.triangle_count();
    out.payload["connected"] = conn.connected;
    Json comps = Json::array();
    for (const auto& c : conn.components) {
      Json labels = Json::array();
      for (auto v : c) labels.push_back(n.vertex_label(v));
      comps.push_back(labels);
    }
    out.payload["components"] = comps;
    if (conn.connected) {
      bool sc = is_simply_connected_up_to(n, check_args->degree,
                                          budget_or(common, kDefaultSearchBudget));
      out.payload["simplyConnectedUpTo"] = check_args->degree;
      out.payload["simplyConnected"] = sc;
      out.summary = std::string("connected, ") + (sc ? "" : "not ") +
                    "simply connected up to degree " + std::to_string(check_args->degree);
    } else {
      out.summary = "disconnected, " + std::to_string(conn.components.size()) + " components";
    }
    return out;
  });

  struct Pi1Args {
    std::string file;
    std::string base;
  };
  auto pi1_args = std::make_shared<Pi1Args>();
  auto* pi1 = nerve->add_subcommand("pi1", "Presentation of the edge-path group");
  pi1->add_option("file", pi1_args->file, "Nerve file")->required();
  pi1->add_option("--base", pi1_args->base, "Base vertex label (default: first vertex)");
  reg.add(pi1, "nerve pi1", [pi1_args] {
    auto n = io::load_nerve(pi1_args->file);
    auto p = pi1_presentation(n, resolve_vertex(n, pi1_args->base));
    Outcome out;
    out.payload["base"] = n.vertex_label(p.base);
    out.payload["rank"] = p.rank();
    Json gens = Json::array();
    for (auto e : p.generator_edges) gens.push_back(n.edge(e).id);
    out.payload["generators"] = gens;
    Json rels = Json::array();
    for (const auto& r : p.relators) rels.push_back(word_json(n, r.word, p.generator_edges));
    out.payload["relators"] = rels;
    out.summary = std::to_string(p.rank()) + " generators, " + std::to_string(p.relators.size()) +
                  " relators";
    return out;
  });

  struct RepsArgs {
    std::string file;
    std::string base;
    std::size_t degree = 2;
    std::size_t limit = 16;
  };
  auto reps_args = std::make_shared<RepsArgs>();
  auto* reps = nerve->add_subcommand("reps", "Permutation representations of the edge-path group");
  reps->add_option("file", reps_args->file, "Nerve file")->required();
  reps->add_option("--base", reps_args->base, "Base vertex label");
  reps->add_option("--degree", reps_args->degree, "Symmetric group degree");
  reps->add_option("--limit", reps_args->limit, "Representations listed in the report");
  reg.add(reps, "nerve reps", [reps_args, &common] {
    auto n = io::load_nerve(reps_args->file);
    auto p = pi1_presentation(n, resolve_vertex(n, reps_args->base));
    std::size_t count = 0;
    Json listed = Json::array();
    for_each_perm_rep(
        p, reps_args->degree,
        [&](const PermRep& rep) {
          if (count++ < reps_args->limit) listed.push_back(perms_json(rep));
          return true;
        },
        budget_or(common, kDefaultSearchBudget));
    Outcome out;
    out.payload["degree"] = reps_args->degree;
    out.payload["rank"] = p.rank();
    out.payload["count"] = count;
    out.payload["representations"] = listed;
    out.summary = std::to_string(count) + " representations into Sym(" +
                  std::to_string(reps_args->degree) + ")";
    return out;
  });
}

void register_sheaf_commands(CLI::App& app, Registry& reg, Common&) {
  auto* sheaf = app.add_subcommand("sheaf", "Locally constant sheaves");

  struct Args {
    std::string file;
    std::string base;
    std::string cover;
    std::size_t fiber_cap = kDefaultFiberCap;
  };
  auto args = std::make_shared<Args>();

  auto* check = sheaf->add_subcommand("check", "Validate a sheaf");
  check->add_option("file", args->file, "Sheaf file")->required();
  check->add_option("--fiber-cap", args->fiber_cap, "Largest accepted fiber");
  reg.add(check, "sheaf check", [args] {
    auto s = io::load_sheaf(args->file, args->fiber_cap);
    Outcome out;
    out.payload["vertices"] = s.nerve().vertex_count();
    out.payload["edges"] = s.nerve().edge_count();
    out.payload["fiberSize"] = s.fiber_size(0);
    auto conn = is_connected(s.nerve());
    out.payload["globalSections"] = global_sections(s).size();
    if (conn.connected) {
      bool constant = is_constant(s);
      out.payload["constant"] = constant;
      out.summary = std::string("valid sheaf, ") + (constant ? "constant" : "not constant");
    } else {
      out.summary = "valid sheaf on a disconnected nerve";
    }
    return out;
  });

  auto* hol = sheaf->add_subcommand("holonomy", "Holonomy group at a base vertex");
  hol->add_option("file", args->file, "Sheaf file")->required();
  hol->add_option("--base", args->base, "Base vertex label");
  hol->add_option("--fiber-cap", args->fiber_cap, "Largest accepted fiber");
  reg.add(hol, "sheaf holonomy", [args] {
    auto s = io::load_sheaf(args->file, args->fiber_cap);
    auto g = holonomy_group(s, resolve_vertex(s.nerve(), args->base));
    Outcome out;
    out.payload["base"] = s.nerve().vertex_label(g.base);
    out.payload["order"] = g.order();
    out.payload["generators"] = perms_json(g.generators);
    out.payload["fiber"] = std::vector<std::string>(s.fiber(g.base).begin(), s.fiber(g.base).end());
    out.summary = "holonomy group order " + std::to_string(g.order());
    return out;
  });

  auto* pull = sheaf->add_subcommand("pullback", "Pull a sheaf back along a cover map");
  pull->add_option("file", args->file, "Sheaf file")->required();
  pull->add_option("cover", args->cover, "Cover map file")->required();
  pull->add_option("--fiber-cap", args->fiber_cap, "Largest accepted fiber");
  reg.add(pull, "sheaf pullback", [args] {
    auto s = io::load_sheaf(args->file, args->fiber_cap);
    auto cover = io::load_cover_map(args->cover, s.nerve());
    auto pulled = pullback_to_cover(s, cover.cover, cover.map);
    Outcome out;
    out.payload["coverVertices"] = cover.cover.vertex_count();
    out.payload["coverEdges"] = cover.cover.edge_count();
    auto conn = is_connected(cover.cover);
    out.payload["connected"] = conn.connected;
    if (conn.connected) {
      auto g = holonomy_group(pulled, 0);
      bool constant = is_constant(pulled);
      out.payload["holonomyOrder"] = g.order();
      out.payload["constant"] = constant;
      out.summary = "pullback holonomy order " + std::to_string(g.order()) +
                    (constant ? ", constant" : ", not constant");
    } else {
      out.summary = "pullback on a disconnected cover";
    }
    return out;
  });
}

}  // namespace holon::cli
