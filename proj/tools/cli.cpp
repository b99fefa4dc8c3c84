#include "cli.hpp"

#include <iostream>

#include "holon/error.hpp"

namespace holon::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

std::string render(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void print_text(const Outcome& out) {
  std::cout << out.summary << "\n";
  std::size_t width = 0;
  for (const auto& [key, value] : out.payload.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : out.payload.items()) {
    std::cout << "  " << key << std::string(width - key.size() + 2, ' ') << render(value) << "\n";
  }
  for (const auto& d : out.diagnostics) std::cout << "  note: " << d << "\n";
}

void print_report(const std::string& command, const std::string& status, const Outcome& out) {
  Json report;
  report["status"] = status;
  report["command"] = command;
  report["summary"] = out.summary;
  report["payload"] = out.payload;
  report["diagnostics"] = out.diagnostics;
  std::cout << report.dump(2) << "\n";
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Holonomy, geometric structures and finite-field Galois structures on nerves",
               "holon"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--json", common.json, "Print a machine-readable report");
  app.add_option("--budget", common.budget, "Search budget for exhaustive searches");
  app.add_option("--seed", common.seed, "Seed for randomized checks");

  Registry reg;
  register_nerve_commands(app, reg, common);
  register_sheaf_commands(app, reg, common);
  register_structure_commands(app, reg, common);
  register_galois_commands(app, reg, common);
  for (auto* group : app.get_subcommands({})) {
    group->fallthrough();
    group->require_subcommand(1);
    for (auto* leaf : group->get_subcommands({})) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  for (std::size_t i = 0; i < reg.leaves.size(); ++i) {
    auto* leaf = reg.leaves[i].first;
    if (!leaf->parsed()) continue;
    const auto& name = reg.names[i].second;
    try {
      auto out = reg.leaves[i].second();
      if (common.json) print_report(name, "ok", out);
      else print_text(out);
      return kExitOk;
    } catch (const Error& e) {
      bool budget = e.code() == ErrorCode::kSearchBudgetExceeded ||
                    e.code() == ErrorCode::kBoundExceeded;
      Outcome failed;
      failed.summary = std::string(budget ? "budget exceeded" : "invalid input");
      failed.payload["error"] = std::string(to_string(e.code()));
      failed.diagnostics.push_back(e.what());
      if (common.json) print_report(name, budget ? "budget-exceeded" : "invalid-input", failed);
      std::cerr << "holon: " << e.what() << "\n";
      return budget ? kExitBudget : kExitInvalid;
    }
  }
  std::cerr << app.help();
  return kExitUsage;
}

}  // namespace holon::cli
