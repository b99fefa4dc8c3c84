#include "holon/io.hpp"

#include <fstream>
#include <sstream>

#include "holon/error.hpp"
#include "json.hpp"

namespace holon::io {

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Reader {
  std::string source;

  [[noreturn]] void bad(const std::string& path, const std::string& msg) const {
    fail(ErrorCode::kInvalidInput, source + ": " + (path.empty() ? "/" : path) + ": " + msg);
  }

  Json parse(std::string_view text) const {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      // Byte offsets become line and column.
      std::size_t line = 1, col = 1;
      for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      fail(ErrorCode::kInvalidInput, source + ":" + std::to_string(line) + ":" +
                                         std::to_string(col) + ": malformed JSON");
    }
  }

  const Json& field(const Json& j, const std::string& key, const std::string& path) const {
    if (!j.is_object()) bad(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(path, "missing field '" + key + "'");
    return *it;
  }

  const Json& array(const Json& j, const std::string& path) const {
    if (!j.is_array()) bad(path, "expected an array");
    return j;
  }

  const Json& object(const Json& j, const std::string& path) const {
    if (!j.is_object()) bad(path, "expected an object");
    return j;
  }

  std::string string(const Json& j, const std::string& path) const {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    bad(path, "expected a string");
  }

  std::uint32_t uint(const Json& j, const std::string& path) const {
    if (!j.is_number_integer() || j.get<long long>() < 0 ||
        j.get<long long>() > static_cast<long long>(UINT32_MAX)) {
      bad(path, "expected a nonnegative integer");
    }
    return j.get<std::uint32_t>();
  }

  Perm perm(const Json& j, const std::string& path) const {
    try {
      if (j.is_string()) return Perm::parse(j.get<std::string>());
      if (j.is_array()) {
        std::vector<Perm::Point> images;
        for (std::size_t i = 0; i < j.size(); ++i) {
          images.push_back(uint(j[i], path + "/" + std::to_string(i)));
        }
        return Perm(std::move(images));
      }
    } catch (const Error& e) {
      bad(path, e.what());
    }
    bad(path, "expected a permutation");
  }
};

std::string pointer_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

RawNerve read_nerve(const Reader& r, const Json& j, const std::string& path) {
  RawNerve raw;
  const auto& vertices = r.array(r.field(j, "vertices", path), path + "/vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    raw.vertices.push_back(r.string(vertices[i], path + "/vertices/" + std::to_string(i)));
  }
  if (j.contains("edges")) {
    const auto& edges = r.array(j["edges"], path + "/edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto p = path + "/edges/" + std::to_string(i);
      auto id = r.string(r.field(edges[i], "id", p), p + "/id");
      const auto& ends = r.array(r.field(edges[i], "ends", p), p + "/ends");
      if (ends.size() != 2) r.bad(p + "/ends", "an edge has exactly two ends");
      raw.edges.push_back(RawEdge{id, r.string(ends[0], p + "/ends/0"),
                                  r.string(ends[1], p + "/ends/1")});
    }
  }
  if (j.contains("triangles")) {
    const auto& tris = r.array(j["triangles"], path + "/triangles");
    for (std::size_t i = 0; i < tris.size(); ++i) {
      auto p = path + "/triangles/" + std::to_string(i);
      const auto& edges = r.array(r.field(tris[i], "edges", p), p + "/edges");
      if (edges.size() != 3) r.bad(p + "/edges", "a triangle has exactly three edges");
      RawTriangle t;
      for (int k = 0; k < 3; ++k) t.edges[k] = r.string(edges[k], p + "/edges/" + std::to_string(k));
      raw.triangles.push_back(t);
    }
  }
  return raw;
}

Nerve nerve_reference(const Reader& r, const Json& j, const fs::path& base_dir) {
  const auto& ref = r.field(j, "nerve", "");
  if (ref.is_string()) return load_nerve(base_dir / ref.get<std::string>());
  if (ref.is_object()) return Nerve::validate(read_nerve(r, ref, "/nerve"));
  r.bad("/nerve", "expected a file path or an inline nerve");
}

VertexId vertex_of(const Reader& r, const Nerve& n, const std::string& label,
                   const std::string& path) {
  auto v = n.find_vertex(label);
  if (!v) r.bad(path, "unknown vertex '" + label + "'");
  return *v;
}

EdgeId edge_of(const Reader& r, const Nerve& n, const std::string& id, const std::string& path) {
  auto e = n.find_edge(id);
  if (!e) r.bad(path, "unknown edge '" + id + "'");
  return *e;
}

// Product of generator names, inverses ("^-1") and powers ("^k"), or a
// one-line permutation.
Perm read_word(const Reader& r, const std::string& word, const std::vector<std::string>& names,
               const std::vector<Perm>& gens, std::size_t degree, const std::string& path) {
  auto trimmed = word;
  trimmed.erase(0, trimmed.find_first_not_of(" \t"));
  if (!trimmed.empty() && trimmed.front() == '[') {
    Json j = trimmed;
    return r.perm(j, path);
  }
  Perm out = Perm::identity(degree);
  std::string cleaned;
  for (char c : word) cleaned.push_back(c == '*' ? ' ' : c);
  std::istringstream in(cleaned);
  std::string token;
  while (in >> token) {
    std::string name = token;
    long long power = 1;
    if (auto caret = token.find('^'); caret != std::string::npos) {
      name = token.substr(0, caret);
      try {
        std::size_t used = 0;
        power = std::stoll(token.substr(caret + 1), &used);
        if (used != token.size() - caret - 1) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        r.bad(path, "bad exponent in '" + token + "'");
      }
    }
    Perm factor = Perm::identity(degree);
    if (name != "id" && name != "e" && name != "1") {
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) r.bad(path, "unknown generator '" + name + "'");
      factor = gens[static_cast<std::size_t>(it - names.begin())];
    }
    if (power < 0) {
      factor = factor.inverse();
      power = -power;
    }
    for (long long i = 0; i < power; ++i) out *= factor;
  }
  return out;
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kInvalidInput, path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RawNerve parse_nerve(std::string_view text, const std::string& source) {
  Reader r{source};
  return read_nerve(r, r.parse(text), "");
}

Nerve load_nerve(const fs::path& path) {
  return Nerve::validate(parse_nerve(read_file(path), path.string()));
}

LocallyConstantSheaf parse_sheaf(std::string_view text, const std::string& source,
                                 const fs::path& base_dir, std::size_t fiber_cap) {
  Reader r{source};
  auto j = r.parse(text);
  auto nerve = nerve_reference(r, j, base_dir);
  RawSheaf raw;
  raw.fibers.resize(nerve.vertex_count());
  raw.glue.resize(nerve.edge_count());
  std::vector<bool> have_fiber(nerve.vertex_count(), false), have_glue(nerve.edge_count(), false);
  const auto& fibers = r.object(r.field(j, "fibers", ""), "/fibers");
  for (const auto& [label, list] : fibers.items()) {
    auto p = "/fibers/" + pointer_token(label);
    auto v = vertex_of(r, nerve, label, p);
    r.array(list, p);
    for (std::size_t i = 0; i < list.size(); ++i) {
      raw.fibers[v].push_back(r.string(list[i], p + "/" + std::to_string(i)));
    }
    have_fiber[v] = true;
  }
  const auto& glue = r.object(r.field(j, "glue", ""), "/glue");
  for (const auto& [id, map] : glue.items()) {
    auto p = "/glue/" + pointer_token(id);
    auto e = edge_of(r, nerve, id, p);
    r.object(map, p);
    for (const auto& [from, to] : map.items()) {
      raw.glue[e].emplace_back(from, r.string(to, p + "/" + pointer_token(from)));
    }
    have_glue[e] = true;
  }
  for (VertexId v = 0; v < nerve.vertex_count(); ++v) {
    if (!have_fiber[v]) r.bad("/fibers", "no fiber for vertex '" + nerve.vertex_label(v) + "'");
  }
  for (EdgeId e = 0; e < nerve.edge_count(); ++e) {
    if (!have_glue[e]) r.bad("/glue", "no gluing for edge '" + nerve.edge(e).id + "'");
  }
  return LocallyConstantSheaf::validate(std::move(nerve), raw, fiber_cap);
}

LocallyConstantSheaf load_sheaf(const fs::path& path, std::size_t fiber_cap) {
  return parse_sheaf(read_file(path), path.string(), path.parent_path(), fiber_cap);
}

GeoStructure StructureFile::structure() const {
  if (!charts) fail(ErrorCode::kInvalidInput, "the structure file has no charts");
  return GeoStructure::from_cocycle(cocycle, *charts);
}

StructureFile parse_structure(std::string_view text, const std::string& source,
                              const fs::path& base_dir) {
  Reader r{source};
  auto j = r.parse(text);
  auto nerve = nerve_reference(r, j, base_dir);

  const auto& model_json = r.field(j, "model", "");
  const auto& points_json = r.array(r.field(model_json, "points", "/model"), "/model/points");
  std::vector<std::string> points;
  for (std::size_t i = 0; i < points_json.size(); ++i) {
    points.push_back(r.string(points_json[i], "/model/points/" + std::to_string(i)));
  }
  std::vector<std::string> names;
  std::vector<Perm> gens;
  if (model_json.contains("generators")) {
    const auto& list = r.array(model_json["generators"], "/model/generators");
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto p = "/model/generators/" + std::to_string(i);
      if (list[i].is_object()) {
        names.push_back(r.string(r.field(list[i], "name", p), p + "/name"));
        gens.push_back(r.perm(r.field(list[i], "perm", p), p + "/perm"));
      } else {
        names.push_back("g" + std::to_string(i));
        gens.push_back(r.perm(list[i], p));
      }
    }
  }
  auto model = [&] {
    try {
      return ModelSpace::make(points, gens);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvalidInput) r.bad("/model", e.what());
      throw;
    }
  }();

  std::vector<Perm> transitions(nerve.edge_count(), model.identity());
  std::vector<bool> have(nerve.edge_count(), false);
  const auto& tj = r.object(r.field(j, "transitions", ""), "/transitions");
  for (const auto& [id, word] : tj.items()) {
    auto p = "/transitions/" + pointer_token(id);
    auto e = edge_of(r, nerve, id, p);
    if (word.is_array()) {
      transitions[e] = r.perm(word, p);
    } else {
      transitions[e] = read_word(r, r.string(word, p), names, gens, model.size(), p);
    }
    if (transitions[e].degree() != model.size()) r.bad(p, "permutation has the wrong degree");
    have[e] = true;
  }
  for (EdgeId e = 0; e < nerve.edge_count(); ++e) {
    if (!have[e]) r.bad("/transitions", "no transition for edge '" + nerve.edge(e).id + "'");
  }

  std::optional<std::vector<Perm::Point>> charts;
  if (j.contains("charts")) {
    charts.emplace(nerve.vertex_count(), 0);
    std::vector<bool> seen(nerve.vertex_count(), false);
    const auto& cj = r.object(j["charts"], "/charts");
    for (const auto& [label, point] : cj.items()) {
      auto p = "/charts/" + pointer_token(label);
      auto v = vertex_of(r, nerve, label, p);
      auto name = r.string(point, p);
      auto x = model.find_point(name);
      if (!x) r.bad(p, "unknown model point '" + name + "'");
      (*charts)[v] = *x;
      seen[v] = true;
    }
    for (VertexId v = 0; v < nerve.vertex_count(); ++v) {
      if (!seen[v]) r.bad("/charts", "no chart for vertex '" + nerve.vertex_label(v) + "'");
    }
  }
  StructureFile out{TransitionCocycle::verify(std::move(nerve), std::move(model),
                                              std::move(transitions)),
                    std::move(charts)};
  if (out.charts) out.structure();
  return out;
}

StructureFile load_structure(const fs::path& path) {
  return parse_structure(read_file(path), path.string(), path.parent_path());
}

FieldStructure parse_field_structure(std::string_view text, const std::string& source) {
  Reader r{source};
  auto j = r.parse(text);
  FieldStructure s;
  s.p = r.uint(r.field(j, "p", ""), "/p");
  s.base_degree = r.uint(r.field(j, "baseDegree", ""), "/baseDegree");
  s.model_degree = r.uint(r.field(j, "modelDegree", ""), "/modelDegree");
  s.group_order = j.contains("groupOrder") ? r.uint(j["groupOrder"], "/groupOrder") : s.model_degree;
  const auto& members = r.array(r.field(j, "members", ""), "/members");
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto p = "/members/" + std::to_string(i);
    FieldMember m;
    m.degree = r.uint(r.field(members[i], "degree", p), p + "/degree");
    m.embed_exp = members[i].contains("embedExp") ? r.uint(members[i]["embedExp"], p + "/embedExp") : 0;
    s.members.push_back(m);
  }
  if (j.contains("transitions")) {
    for (const auto& [key, value] : r.object(j["transitions"], "/transitions").items()) {
      auto p = "/transitions/" + pointer_token(key);
      auto comma = key.find(',');
      std::size_t a = 0, b = 0;
      try {
        if (comma == std::string::npos) throw std::invalid_argument(key);
        a = std::stoul(key.substr(0, comma));
        b = std::stoul(key.substr(comma + 1));
      } catch (const std::exception&) {
        r.bad(p, "expected a key of the form \"i,j\"");
      }
      s.transitions[{a, b}] = r.uint(value, p);
    }
  }
  validate_field_structure(s);
  return s;
}

FieldStructure load_field_structure(const fs::path& path) {
  return parse_field_structure(read_file(path), path.string());
}

CoverMap load_cover_map(const fs::path& path, const Nerve& base) {
  Reader r{path.string()};
  auto j = r.parse(read_file(path));
  const auto& ref = r.field(j, "cover", "");
  Nerve cover = ref.is_string() ? load_nerve(path.parent_path() / ref.get<std::string>())
                : ref.is_object() ? Nerve::validate(read_nerve(r, ref, "/cover"))
                                  : (r.bad("/cover", "expected a file path or an inline nerve"), base);
  NerveMap map;
  map.vertex_map.assign(cover.vertex_count(), 0);
  map.edge_map.assign(cover.edge_count(), 0);
  std::vector<bool> vseen(cover.vertex_count(), false), eseen(cover.edge_count(), false);
  for (const auto& [label, target] : r.object(r.field(j, "vertexMap", ""), "/vertexMap").items()) {
    auto p = "/vertexMap/" + pointer_token(label);
    auto v = vertex_of(r, cover, label, p);
    map.vertex_map[v] = vertex_of(r, base, r.string(target, p), p);
    vseen[v] = true;
  }
  for (const auto& [id, target] : r.object(r.field(j, "edgeMap", ""), "/edgeMap").items()) {
    auto p = "/edgeMap/" + pointer_token(id);
    auto e = edge_of(r, cover, id, p);
    map.edge_map[e] = edge_of(r, base, r.string(target, p), p);
    eseen[e] = true;
  }
  for (VertexId v = 0; v < cover.vertex_count(); ++v) {
    if (!vseen[v]) r.bad("/vertexMap", "no image for vertex '" + cover.vertex_label(v) + "'");
  }
  for (EdgeId e = 0; e < cover.edge_count(); ++e) {
    if (!eseen[e]) r.bad("/edgeMap", "no image for edge '" + cover.edge(e).id + "'");
  }
  return CoverMap{std::move(cover), std::move(map)};
}

namespace {

Json nerve_json(const Nerve& n) {
  auto raw = n.to_raw();
  Json j;
  j["vertices"] = raw.vertices;
  j["edges"] = Json::array();
  for (const auto& e : raw.edges) j["edges"].push_back({{"id", e.id}, {"ends", {e.a, e.b}}});
  j["triangles"] = Json::array();
  for (const auto& t : raw.triangles) {
    j["triangles"].push_back({{"edges", {t.edges[0], t.edges[1], t.edges[2]}}});
  }
  return j;
}

}  // namespace

std::string to_json(const Nerve& n) { return nerve_json(n).dump(2); }

std::string to_json(const LocallyConstantSheaf& s) {
  auto raw = s.to_raw();
  const auto& n = s.nerve();
  Json j;
  j["nerve"] = nerve_json(n);
  j["fibers"] = Json::object();
  for (VertexId v = 0; v < n.vertex_count(); ++v) j["fibers"][n.vertex_label(v)] = raw.fibers[v];
  j["glue"] = Json::object();
  for (EdgeId e = 0; e < n.edge_count(); ++e) {
    Json map = Json::object();
    for (const auto& [from, to] : raw.glue[e]) map[from] = to;
    j["glue"][n.edge(e).id] = map;
  }
  return j.dump(2);
}

std::string to_json(const GeoStructure& s) {
  const auto& n = s.nerve();
  const auto& m = s.model();
  Json j;
  j["nerve"] = nerve_json(n);
  j["model"]["points"] = std::vector<std::string>(m.points().begin(), m.points().end());
  j["model"]["generators"] = Json::array();
  for (const auto& g : m.generators()) j["model"]["generators"].push_back(g.to_string());
  j["charts"] = Json::object();
  for (VertexId v = 0; v < n.vertex_count(); ++v) j["charts"][n.vertex_label(v)] = m.point(s.chart(v));
  j["transitions"] = Json::object();
  for (EdgeId e = 0; e < n.edge_count(); ++e) j["transitions"][n.edge(e).id] = s.transition(e).to_string();
  return j.dump(2);
}

std::string to_json(const FieldStructure& s) {
  Json j;
  j["p"] = s.p;
  j["baseDegree"] = s.base_degree;
  j["modelDegree"] = s.model_degree;
  j["groupOrder"] = s.group_order;
  j["members"] = Json::array();
  for (const auto& m : s.members) j["members"].push_back({{"degree", m.degree}, {"embedExp", m.embed_exp}});
  j["transitions"] = Json::object();
  for (const auto& [key, g] : s.transitions) {
    j["transitions"][std::to_string(key.first) + "," + std::to_string(key.second)] = g;
  }
  return j.dump(2);
}

}  // namespace holon::io
