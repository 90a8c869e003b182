#include "cubecx/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cubecx::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

[[noreturn]] void fail(const std::string& origin, const std::string& where, const std::string& what) {
  throw ParseError(origin + ": " + where + ": " + what);
}

}  // namespace

RawComplex parse_complex(const std::string& text, const std::string& origin) {
  json j = parse_json(text, origin);
  if (!j.is_object()) fail(origin, "top level", "expected an object");
  if (!j.contains("vertices") || !j["vertices"].is_array()) fail(origin, "vertices", "missing or not an array");
  if (!j.contains("cubes") || !j["cubes"].is_array()) fail(origin, "cubes", "missing or not an array");
  RawComplex raw;
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    const auto& v = j["vertices"][i];
    if (!v.is_string()) fail(origin, "vertices[" + std::to_string(i) + "]", "expected a string");
    raw.vertices.push_back(v.get<std::string>());
  }
  for (std::size_t i = 0; i < j["cubes"].size(); ++i) {
    const auto& c = j["cubes"][i];
    std::string where = "cubes[" + std::to_string(i) + "]";
    if (!c.is_object()) fail(origin, where, "expected an object");
    if (!c.contains("dim") || !c["dim"].is_number_integer()) fail(origin, where + ".dim", "missing or not an integer");
    if (!c.contains("verts") || !c["verts"].is_array()) fail(origin, where + ".verts", "missing or not an array");
    RawCube rc;
    rc.dim = c["dim"].get<int>();
    for (const auto& v : c["verts"]) {
      if (!v.is_string()) fail(origin, where + ".verts", "expected strings");
      rc.verts.push_back(v.get<std::string>());
    }
    if (c.contains("faces")) {
      if (!c["faces"].is_array()) fail(origin, where + ".faces", "not an array");
      for (const auto& f : c["faces"]) {
        if (!f.is_number_integer()) fail(origin, where + ".faces", "expected integers");
        rc.faces.push_back(f.get<int>());
      }
    }
    raw.cubes.push_back(std::move(rc));
  }
  return raw;
}

std::string dump_complex(const RawComplex& raw) {
  // one cube per line
  std::ostringstream os;
  os << "{\"vertices\": " << json(raw.vertices).dump() << ",\n \"cubes\": [";
  for (std::size_t i = 0; i < raw.cubes.size(); ++i) {
    const auto& c = raw.cubes[i];
    os << (i ? ",\n  " : "\n  ") << "{\"dim\": " << c.dim << ", \"verts\": " << json(c.verts).dump();
    if (!c.faces.empty()) os << ", \"faces\": " << json(c.faces).dump();
    os << "}";
  }
  os << "\n ]}\n";
  return os.str();
}

CubeComplex load_complex(const std::string& path) {
  RawComplex raw = parse_complex(read_file(path), path);
  ValidationReport rep = validate(raw);
  if (!rep.ok()) throw ParseError(path + ": invalid complex:\n" + rep.str());
  return CubeComplex::from_raw(raw);
}

std::vector<std::vector<std::string>> parse_group(const std::string& text, const std::string& origin) {
  json j = parse_json(text, origin);
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
    fail(origin, "generators", "missing or not an array");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < j["generators"].size(); ++i) {
    const auto& g = j["generators"][i];
    std::string where = "generators[" + std::to_string(i) + "]";
    if (!g.is_object()) fail(origin, where, "expected a name -> name mapping");
    std::vector<std::string> pairs;
    for (auto it = g.begin(); it != g.end(); ++it) {
      if (!it.value().is_string()) fail(origin, where + "." + it.key(), "expected a vertex name");
      pairs.push_back(it.key());
      pairs.push_back(it.value().get<std::string>());
    }
    out.push_back(std::move(pairs));
  }
  return out;
}

GroupAction load_group(const CubeComplex& cx, const std::string& path) {
  auto gens = parse_group(read_file(path), path);
  std::vector<std::vector<int>> perms;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<int> p(cx.num_vertices());
    for (int v = 0; v < cx.num_vertices(); ++v) p[v] = v;
    std::vector<char> hit(cx.num_vertices(), 0);
    for (std::size_t k = 0; k < gens[i].size(); k += 2) {
      auto a = cx.find_vertex(gens[i][k]);
      auto b = cx.find_vertex(gens[i][k + 1]);
      if (!a || !b) fail(path, "generators[" + std::to_string(i) + "]", "unknown vertex '" + (a ? gens[i][k + 1] : gens[i][k]) + "'");
      p[*a] = *b;
    }
    for (int v : p) {
      if (hit[v]) fail(path, "generators[" + std::to_string(i) + "]", "not a bijection");
      hit[v] = 1;
    }
    perms.push_back(p);
  }
  return GroupAction::generate(cx, perms);
}

std::string dump_group(const CubeComplex& cx, const GroupAction& g) {
  json j;
  j["generators"] = json::array();
  for (const auto& p : g.generators()) {
    json m = json::object();
    for (int v = 0; v < cx.num_vertices(); ++v)
      if (p[v] != v) m[cx.name(v)] = cx.name(p[v]);
    j["generators"].push_back(m);
  }
  return j.dump() + "\n";
}

Coloring parse_coloring(const std::string& text, int nodes, const std::string& origin) {
  json j = parse_json(text, origin);
  if (!j.is_object()) fail(origin, "top level", "expected a wall-id -> colour mapping");
  Coloring c(nodes, 0);
  for (auto it = j.begin(); it != j.end(); ++it) {
    int w = -1;
    try {
      std::size_t used = 0;
      w = std::stoi(it.key(), &used);
      if (used != it.key().size()) w = -1;
    } catch (const std::exception&) {
    }
    if (w < 0 || w >= nodes) fail(origin, it.key(), "not a wall id in [0, " + std::to_string(nodes) + ")");
    if (!it.value().is_number_integer() || it.value().get<int>() < 1) fail(origin, it.key(), "colour must be a positive integer");
    c[w] = it.value().get<int>();
  }
  for (int w = 0; w < nodes; ++w)
    if (c[w] == 0) fail(origin, std::to_string(w), "wall has no colour");
  return c;
}

std::string dump_coloring(const Coloring& c) {
  // keys in numeric order
  std::ostringstream os;
  os << "{";
  for (std::size_t w = 0; w < c.size(); ++w) os << (w ? ", " : "") << "\"" << w << "\": " << c[w];
  os << "}\n";
  return os.str();
}

WallGraph parse_gamma(const std::string& text, const std::string& origin) {
  json j = parse_json(text, origin);
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_number_integer())
    fail(origin, "nodes", "missing or not an integer");
  int n = j["nodes"].get<int>();
  if (n < 0) fail(origin, "nodes", "negative");
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) fail(origin, "edges", "not an array");
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
      const auto& e = j["edges"][i];
      std::string where = "edges[" + std::to_string(i) + "]";
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        fail(origin, where, "expected a pair of node ids");
      int a = e[0].get<int>(), b = e[1].get<int>();
      if (a < 0 || b < 0 || a >= n || b >= n || a == b) fail(origin, where, "bad node ids");
      edges.emplace_back(a, b);
    }
  }
  WallGraph g = WallGraph::from_edges(n, edges);
  if (j.contains("radius") && j["radius"].is_number_integer()) g.radius = j["radius"].get<int>();
  return g;
}

std::string dump_gamma(const WallGraph& g) {
  std::ostringstream os;
  os << "{\"nodes\": " << g.size() << ", \"radius\": " << g.radius << ", \"edges\": [";
  bool first = true;
  for (auto [a, b] : g.edges()) {
    os << (first ? "" : ", ") << "[" << a << ", " << b << "]";
    first = false;
  }
  os << "]}\n";
  return os.str();
}

IntMatrix parse_matrix(const std::string& text, const std::string& origin) {
  IntMatrix m;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  std::size_t width = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<Int> row;
    std::string tok;
    while (ls >> tok) {
      try {
        row.emplace_back(tok);
      } catch (const std::exception&) {
        fail(origin, "line " + std::to_string(lineno), "not an integer: '" + tok + "'");
      }
    }
    if (row.empty()) continue;
    if (!m.empty() && row.size() != width) fail(origin, "line " + std::to_string(lineno), "row length differs");
    width = row.size();
    m.push_back(std::move(row));
  }
  return m;
}

std::vector<Rational> parse_vector(const std::string& text, const std::string& origin) {
  std::vector<Rational> v;
  std::istringstream is(text);
  std::string tok;
  int idx = 0;
  while (is >> tok) {
    try {
      v.push_back(parse_rational(tok));
    } catch (const std::exception&) {
      fail(origin, "entry " + std::to_string(idx), "not a rational: '" + tok + "'");
    }
    ++idx;
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(resolve(path), std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot write file");
  out << text;
}

std::string resolve(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  const char* dir = std::getenv("CUBECX_FIXTURES");
  if (dir && *dir && fs::path(path).is_relative()) {
    fs::path alt = fs::path(dir) / path;
    if (fs::exists(alt)) return alt.string();
  }
  return path;
}

}  // namespace cubecx::io
