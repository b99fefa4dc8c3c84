#include <memory>
#include <random>

#include "cli.hpp"
#include "holon/error.hpp"
#include "holon/io.hpp"
#include "holon/structure.hpp"

namespace holon::cli {

namespace {

VertexId resolve_vertex(const Nerve& n, const std::string& label) {
  if (label.empty()) return 0;
  auto v = n.find_vertex(label);
  if (!v) fail(ErrorCode::kInvalidInput, "unknown base vertex '" + label + "'");
  return *v;
}

Json perms_json(std::span<const Perm> perms) {
  Json out = Json::array();
  for (const auto& p : perms) out.push_back(p.to_string());
  return out;
}

}  // namespace

void register_structure_commands(CLI::App& app, Registry& reg, Common& common) {
  auto* st = app.add_subcommand("structure", "(C,G)-structures on nerves");

  struct Args {
    std::string file;
    std::string other;
    std::string base;
    std::size_t fuzz = 0;
    bool trivial = false;
  };
  auto args = std::make_shared<Args>();

  auto* check = st->add_subcommand("check", "Verify a structure or cocycle");
  check->add_option("file", args->file, "Structure file")->required();
  check->add_option("--fuzz", args->fuzz, "Tamper with N random transitions and count rejections");
  reg.add(check, "structure check", [args, &common] {
    auto f = io::load_structure(args->file);
    const auto& c = f.cocycle;
    Outcome out;
    out.payload["vertices"] = c.nerve().vertex_count();
    out.payload["edges"] = c.nerve().edge_count();
    out.payload["triangles"] = c.nerve().triangle_count();
    out.payload["modelPoints"] = c.model().size();
    out.payload["groupOrder"] = c.model().order();
    out.payload["hasCharts"] = f.charts.has_value();
    out.summary = f.charts ? "valid structure" : "valid transition cocycle";
    if (args->fuzz > 0 && c.nerve().edge_count() > 0 && c.model().order() > 1) {
      std::mt19937_64 rng(common.seed);
      std::size_t rejected = 0;
      const auto& group = c.model().elements();
      for (std::size_t i = 0; i < args->fuzz; ++i) {
        std::vector<Perm> t(c.transitions().begin(), c.transitions().end());
        auto e = std::uniform_int_distribution<std::size_t>(0, t.size() - 1)(rng);
        Perm g = t[e];
        while (g == t[e]) g = group[std::uniform_int_distribution<std::size_t>(0, group.size() - 1)(rng)];
        t[e] = g;
        try {
          if (f.charts) GeoStructure::verify(c.nerve(), c.model(), *f.charts, std::move(t));
          else TransitionCocycle::verify(c.nerve(), c.model(), std::move(t));
        } catch (const Error&) {
          ++rejected;
        }
      }
      out.payload["fuzzTrials"] = args->fuzz;
      out.payload["fuzzRejected"] = rejected;
      if (rejected < args->fuzz) {
        out.diagnostics.push_back("some tamperings still form a valid structure: they change a "
                                  "transition only by a stabilizer element on an edge in no triangle");
      }
    }
    return out;
  });

  auto* hol = st->add_subcommand("holonomy", "Holonomy representation at a base vertex");
  hol->add_option("file", args->file, "Structure file")->required();
  hol->add_option("--base", args->base, "Base vertex label");
  reg.add(hol, "structure holonomy", [args] {
    auto f = io::load_structure(args->file);
    const auto& n = f.cocycle.nerve();
    auto rep = holonomy_representation(f.cocycle, resolve_vertex(n, args->base));
    Outcome out;
    out.payload["base"] = n.vertex_label(rep.base());
    Json gens = Json::object();
    for (std::size_t i = 0; i < rep.generator_images.size(); ++i) {
      gens[n.edge(rep.presentation.generator_edges[i]).id] = rep.generator_images[i].to_string();
    }
    out.payload["generatorImages"] = gens;
    out.payload["imageOrder"] = rep.image.size();
    out.payload["image"] = perms_json(rep.image);
    out.summary = "holonomy image of order " + std::to_string(rep.image.size());
    return out;
  });

  auto* dev = st->add_subcommand("develop", "Holonomy cover and developing labels");
  dev->add_option("file", args->file, "Structure file")->required();
  dev->add_option("--base", args->base, "Base vertex label");
  reg.add(dev, "structure develop", [args] {
    auto s = io::load_structure(args->file).structure();
    auto cover = build_holonomy_cover(s, resolve_vertex(s.nerve(), args->base));
    Outcome out;
    out.payload["holonomyOrder"] = cover.holonomy.size();
    out.payload["coverVertices"] = cover.nerve.vertex_count();
    out.payload["coverEdges"] = cover.nerve.edge_count();
    out.payload["coverTriangles"] = cover.nerve.triangle_count();
    Json labels = Json::object();
    for (VertexId v = 0; v < cover.nerve.vertex_count(); ++v) {
      labels[cover.nerve.vertex_label(v)] = s.model().point(cover.dev[v]);
    }
    out.payload["developingLabels"] = labels;
    auto trivial = trivial_cocycle(cover.nerve, s.model());
    auto pulled = pullback(s.cocycle(), cover.nerve, cover.projection);
    out.payload["pullbackGaugeTrivial"] = gauge_equivalent(pulled, trivial).has_value();
    out.summary = std::to_string(cover.nerve.vertex_count()) + "-vertex holonomy cover";
    return out;
  });

  auto* comp = st->add_subcommand("complete", "Whether the developing labels cover the model");
  comp->add_option("file", args->file, "Structure file")->required();
  comp->add_option("--base", args->base, "Base vertex label");
  reg.add(comp, "structure complete", [args] {
    auto s = io::load_structure(args->file).structure();
    auto cover = build_holonomy_cover(s, resolve_vertex(s.nerve(), args->base));
    bool complete = is_complete(s, cover);
    std::vector<bool> hit(s.model().size(), false);
    for (auto x : cover.dev) hit[x] = true;
    Json image = Json::array(), missed = Json::array();
    for (Perm::Point x = 0; x < hit.size(); ++x) (hit[x] ? image : missed).push_back(s.model().point(x));
    Outcome out;
    out.payload["complete"] = complete;
    out.payload["developingImage"] = image;
    out.payload["missedPoints"] = missed;
    out.summary = complete ? "complete" : "incomplete";
    return out;
  });

  auto* gauge = st->add_subcommand("gauge", "Gauge equivalence of two structures");
  gauge->add_option("file", args->file, "Structure file")->required();
  gauge->add_option("other", args->other, "Second structure file");
  gauge->add_flag("--trivial", args->trivial, "Compare with the all-identity cocycle");
  reg.add(gauge, "structure gauge", [args, &common] {
    auto a = io::load_structure(args->file);
    auto budget = common.budget ? common.budget : kDefaultGaugeBudget;
    std::optional<std::vector<Perm>> witness;
    if (args->trivial || args->other.empty()) {
      witness = gauge_equivalent(a.cocycle, trivial_cocycle(a.cocycle.nerve(), a.cocycle.model()),
                                 budget);
    } else {
      auto b = io::load_structure(args->other);
      if (a.charts && b.charts) {
        witness = gauge_equivalent(a.structure(), b.structure(), budget);
      } else {
        witness = gauge_equivalent(a.cocycle, b.cocycle, budget);
      }
    }
    Outcome out;
    out.payload["equivalent"] = witness.has_value();
    if (witness) {
      Json w = Json::object();
      const auto& n = a.cocycle.nerve();
      for (VertexId v = 0; v < n.vertex_count(); ++v) w[n.vertex_label(v)] = (*witness)[v].to_string();
      out.payload["witness"] = w;
    }
    out.summary = witness ? "gauge equivalent" : "not gauge equivalent";
    return out;
  });
}

}  // namespace holon::cli
