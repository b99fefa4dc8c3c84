#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holon/galois.hpp"
#include "holon/nerve.hpp"
#include "holon/sheaf.hpp"
#include "holon/structure.hpp"

// Description files. All are JSON. Syntax errors are reported as
// "<source>:<line>:<column>", content errors by the path of the offending
// field, e.g. "<source>: /edges/2/ends: ...". Every failure is an Error with
// kInvalidInput, or the domain code raised by validation.
//
// Nerve:     {"vertices": [..], "edges": [{"id", "ends": [a, b]}],
//             "triangles": [{"edges": [e1, e2, e3]}]}
// Sheaf:     {"nerve": <path or inline nerve>, "fibers": {vertex: [labels]},
//             "glue": {edgeId: {from: to}}}   maps fiber(higher) -> fiber(lower)
// Structure: {"nerve": .., "model": {"points": [..], "generators": [..]},
//             "charts": {vertex: point}, "transitions": {edgeId: word}}
//            A generator is a one-line permutation ("[1 0 2]" or [1, 0, 2]) or
//            {"name", "perm"}; unnamed generators are called g0, g1, ... A word
//            is a product like "g0*g1^-1", "id", or a one-line permutation.
//            Without "charts" the file describes a bare transition cocycle.
// Field structure: {"p", "baseDegree", "modelDegree", "groupOrder" (default
//            modelDegree), "members": [{"degree", "embedExp"}],
//            "transitions": {"i,j": exponent}}
// Cover map: {"cover": <path or inline nerve>, "vertexMap": {coverVertex: vertex},
//            "edgeMap": {coverEdge: edge}}
// Paths inside a file are resolved relative to that file.

namespace holon::io {

std::string read_file(const std::filesystem::path& path);

RawNerve parse_nerve(std::string_view text, const std::string& source = "<input>");
Nerve load_nerve(const std::filesystem::path& path);

LocallyConstantSheaf parse_sheaf(std::string_view text, const std::string& source,
                                 const std::filesystem::path& base_dir,
                                 std::size_t fiber_cap = kDefaultFiberCap);
LocallyConstantSheaf load_sheaf(const std::filesystem::path& path,
                                std::size_t fiber_cap = kDefaultFiberCap);

struct StructureFile {
  TransitionCocycle cocycle;
  std::optional<std::vector<Perm::Point>> charts;

  /// Throws kInvalidInput when the file has no charts.
  GeoStructure structure() const;
};

StructureFile parse_structure(std::string_view text, const std::string& source,
                              const std::filesystem::path& base_dir);
StructureFile load_structure(const std::filesystem::path& path);

FieldStructure parse_field_structure(std::string_view text, const std::string& source = "<input>");
FieldStructure load_field_structure(const std::filesystem::path& path);

struct CoverMap {
  Nerve cover;
  NerveMap map;
};
CoverMap load_cover_map(const std::filesystem::path& path, const Nerve& base);

std::string to_json(const Nerve& n);
std::string to_json(const LocallyConstantSheaf& s);
std::string to_json(const GeoStructure& s);
std::string to_json(const FieldStructure& s);

}  // namespace holon::io
