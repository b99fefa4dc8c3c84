#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace holon::cli {

using Json = nlohmann::ordered_json;

/// What a command hands back: a one-line summary for text mode and the
/// payload of the JSON report.
struct Outcome {
  std::string summary;
  Json payload = Json::object();
  std::vector<std::string> diagnostics;
};

/// Options shared by every leaf command.
struct Common {
  bool json = false;
  std::uint64_t budget = 0;  // 0: library default
  std::uint64_t seed = 20240601;
};

using Handler = std::function<Outcome()>;

/// Registers a leaf; `run` dispatches to the handler of the parsed leaf.
struct Registry {
  std::vector<std::pair<CLI::App*, Handler>> leaves;
  std::vector<std::pair<CLI::App*, std::string>> names;

  void add(CLI::App* leaf, std::string name, Handler h) {
    leaves.emplace_back(leaf, std::move(h));
    names.emplace_back(leaf, std::move(name));
  }
};

void register_nerve_commands(CLI::App& app, Registry& reg, Common& common);
void register_sheaf_commands(CLI::App& app, Registry& reg, Common& common);
void register_structure_commands(CLI::App& app, Registry& reg, Common& common);
void register_galois_commands(CLI::App& app, Registry& reg, Common& common);

int run(int argc, char** argv);

}  // namespace holon::cli
