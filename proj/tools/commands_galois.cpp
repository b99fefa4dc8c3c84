#include <memory>

#include "cli.hpp"
#include "holon/error.hpp"
#include "holon/galois.hpp"
#include "holon/io.hpp"

namespace holon::cli {

namespace {

Json structure_json(const FieldStructure& s) { return Json::parse(io::to_json(s)); }

}  // namespace

void register_galois_commands(CLI::App& app, Registry& reg, Common&) {
  auto* galois = app.add_subcommand("galois", "Finite-field (E,G)-structures");

  struct Args {
    std::uint32_t p = 2;
    std::uint32_t n = 1;
    std::uint64_t bound = kDefaultFieldBound;
    std::vector<std::uint32_t> a{1};
    std::vector<std::uint32_t> b{1};
    std::uint32_t e = 1;
    std::uint32_t hom = 0;
    std::string file;
    std::uint32_t pull = 0, push = 0, round = 0;
    std::uint32_t candidate = 0, dev = 0;
  };
  auto args = std::make_shared<Args>();

  auto* corr = galois->add_subcommand("correspondence", "Complete structures versus subgroups of Gal(GF(p^n):GF(p))");
  corr->add_option("--p", args->p, "Characteristic")->required();
  corr->add_option("--n", args->n, "Extension degree")->required();
  corr->add_option("--bound", args->bound, "Largest field order");
  reg.add(corr, "galois correspondence", [args] {
    auto entries = enumerate_complete_structures(args->p, args->n, args->bound);
    Json list = Json::array();
    for (const auto& e : entries) {
      list.push_back({{"subgroupGenerator", "Frob^" + std::to_string(e.holonomy.step)},
                      {"subgroupOrder", e.holonomy.order()},
                      {"subfield", "GF(" + std::to_string(args->p) + "^" +
                                       std::to_string(e.subfield.degree) + ")"}});
    }
    Outcome out;
    out.payload["p"] = args->p;
    out.payload["n"] = args->n;
    out.payload["subgroups"] = subgroup_lattice(args->n).size();
    out.payload["pairs"] = list;
    out.summary = std::to_string(entries.size()) + " subgroup/subfield pairs";
    return out;
  });

  auto* tensor = galois->add_subcommand("tensor", "Tensor product of etale algebras");
  tensor->add_option("--p", args->p, "Characteristic")->required();
  tensor->add_option("--a", args->a, "Member degrees of A")->delimiter(',')->required();
  tensor->add_option("--b", args->b, "Member degrees of B")->delimiter(',')->required();
  tensor->add_option("--bound", args->bound, "Largest field used by the factorization check");
  reg.add(tensor, "galois tensor", [args] {
    auto a = EtaleAlgebra::make(args->p, args->a);
    auto b = EtaleAlgebra::make(args->p, args->b);
    auto t = tensor_etale(a, b);
    // Cross-check each pair by factoring a defining polynomial.
    Json checks = Json::array();
    for (auto x : a.degrees) {
      for (auto y : b.degrees) {
        if (x > 12 || !power_within(args->p, y, args->bound, nullptr) ||
            !power_within(args->p, x, args->bound, nullptr)) {
          continue;
        }
        FiniteField k(args->p, y, args->bound);
        auto factors = factor_over_extension(irreducible_modulus(args->p, x, args->bound), k);
        bool agree = factors.size() == gcd_u(x, y);
        for (const auto& f : factors) agree = agree && f.size() - 1 == x / gcd_u(x, y);
        checks.push_back({{"a", x}, {"b", y}, {"factors", factors.size()}, {"agrees", agree}});
      }
    }
    Outcome out;
    out.payload["A"] = a.to_string();
    out.payload["B"] = b.to_string();
    out.payload["product"] = t.to_string();
    out.payload["degrees"] = t.degrees;
    out.payload["factorizationChecks"] = checks;
    out.summary = a.to_string() + " (x) " + b.to_string() + " = " + t.to_string();
    return out;
  });

  auto* bc = galois->add_subcommand("basechange", "Base change of a field structure");
  bc->add_option("file", args->file, "Field-structure file")->required();
  auto* mode = bc->add_option_group("mode");
  mode->add_option("--pullback", args->pull, "Restrict the model to GF(p^e)");
  mode->add_option("--pushforward", args->push, "Extend the model to GF(p^e')");
  mode->add_option("--roundtrip", args->round, "Pull back to GF(p^e), push forward again, compare");
  mode->require_option(1);
  reg.add(bc, "galois basechange", [args] {
    auto s = io::load_field_structure(args->file);
    Outcome out;
    if (args->pull) {
      auto t = base_change_pullback(s, args->pull);
      out.payload["result"] = structure_json(t);
      out.summary = "pullback: " + t.to_string();
    } else if (args->push) {
      auto t = base_change_pushforward(s, args->push);
      out.payload["result"] = structure_json(t);
      out.summary = "pushforward: " + t.to_string();
    } else {
      auto t = base_change_pushforward(base_change_pullback(s, args->round), s.model_degree);
      auto iso = field_isomorphism(t, s);
      out.payload["result"] = structure_json(t);
      out.payload["isomorphic"] = iso.has_value();
      if (iso) out.payload["witness"] = *iso;
      out.summary = iso ? "round trip is isomorphic to the input" : "round trip is not isomorphic";
    }
    return out;
  });

  auto* coc = galois->add_subcommand("cocycle", "Structure from a homomorphism and a coboundary");
  coc->add_option("--p", args->p, "Characteristic")->required();
  coc->add_option("--e", args->e, "Model degree")->required();
  coc->add_option("--hom", args->hom, "Image of Frobenius over E in Z/e");
  coc->add_option("--b", args->b, "Coboundary data b0,b1,b2,b3")->delimiter(',')->expected(4);
  coc->add_option("--bound", args->bound, "Largest field order");
  reg.add(coc, "galois cocycle", [args] {
    std::array<std::uint32_t, 4> b{0, 0, 0, 0};
    if (args->b.size() == 4) std::copy(args->b.begin(), args->b.end(), b.begin());
    auto s = structure_from_cocycle(args->p, args->e, args->hom, b, args->bound);
    auto c = to_cocycle(s);
    auto rep = holonomy_representation(c, 0);
    bool trivial = gauge_equivalent(c, trivial_cocycle(c.nerve(), c.model())).has_value();
    Outcome out;
    out.payload["structure"] = structure_json(s);
    out.payload["holonomyOrder"] = rep.image.size();
    out.payload["gaugeTrivial"] = trivial;
    out.summary = trivial ? "gauge-trivial structure" : "structure with holonomy of order " +
                                                            std::to_string(rep.image.size());
    return out;
  });

  auto* fsg = galois->add_subcommand("fsg", "Universal field of a field structure");
  fsg->add_option("file", args->file, "Field-structure file")->required();
  fsg->add_option("--candidate", args->candidate, "Degree k of a candidate field GF(p^k)");
  fsg->add_option("--dev", args->dev, "Developing exponent of the candidate");
  reg.add(fsg, "galois fsg", [args] {
    auto s = io::load_field_structure(args->file);
    auto u = build_fsg(s);
    Outcome out;
    out.payload["field"] = "GF(" + std::to_string(u.p) + "^" + std::to_string(u.degree) + ")";
    out.payload["degree"] = u.degree;
    out.payload["complete"] = is_complete_field_structure(s);
    if (u.developing_exp) out.payload["developingExponent"] = *u.developing_exp;
    if (args->candidate) {
      auto v = universal_factorization(s, args->candidate, args->dev);
      out.payload["embedsInCandidate"] = v.has_value();
      if (v) out.payload["factorizationExponent"] = *v;
    }
    out.summary = "F_{S,G} = " + out.payload["field"].get<std::string>() +
                  (is_complete_field_structure(s) ? ", complete" : ", incomplete");
    return out;
  });
}

}  // namespace holon::cli
