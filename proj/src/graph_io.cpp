#include "sgspec/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "sgspec/error.hpp"

namespace sgspec {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

double number_field(const json& obj, const char* key, const std::string& where, double fallback,
                    bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) fail(where, std::string("missing field '") + key + "'");
    return fallback;
  }
  if (!it->is_number()) fail(where + "." + key, "must be a number");
  return it->get<double>();
}

std::string id_field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  fail(where + "." + key, "vertex id must be a string");
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace

SignedGraph graph_from_json(const json& doc) {
  if (!doc.is_object()) fail("document", "must be an object");
  auto vit = doc.find("vertices");
  if (vit == doc.end() || !vit->is_array()) fail("document", "'vertices' must be an array");
  std::vector<VertexSpec> vs;
  std::unordered_map<std::string, Index> lookup;
  for (std::size_t i = 0; i < vit->size(); ++i) {
    const json& v = (*vit)[i];
    std::string where = "vertices[" + std::to_string(i) + "]";
    if (!v.is_object()) fail(where, "must be an object");
    VertexSpec spec;
    spec.id = id_field(v, "id", where);
    spec.mu = number_field(v, "mu", where, 1.0, false);
    spec.kappa = number_field(v, "kappa", where, 0.0, false);
    if (!(spec.mu > 0.0)) fail(where + ".mu", "must be positive");
    if (!lookup.emplace(spec.id, i).second) fail(where + ".id", "duplicate vertex id '" + spec.id + "'");
    vs.push_back(std::move(spec));
  }
  std::vector<Edge> edges;
  auto eit = doc.find("edges");
  if (eit != doc.end()) {
    if (!eit->is_array()) fail("document", "'edges' must be an array");
    std::set<std::pair<Index, Index>> seen;
    for (std::size_t i = 0; i < eit->size(); ++i) {
      const json& e = (*eit)[i];
      std::string where = "edges[" + std::to_string(i) + "]";
      if (!e.is_object()) fail(where, "must be an object");
      std::string u = id_field(e, "u", where), v = id_field(e, "v", where);
      auto iu = lookup.find(u), iv = lookup.find(v);
      if (iu == lookup.end()) fail(where + ".u", "unknown vertex '" + u + "'");
      if (iv == lookup.end()) fail(where + ".v", "unknown vertex '" + v + "'");
      if (iu->second == iv->second) fail(where, "self-loop at '" + u + "'");
      double w = number_field(e, "w", where, 1.0, false);
      if (!(w > 0.0)) fail(where + ".w", "weight must be positive");
      auto sit = e.find("sigma");
      if (sit == e.end()) fail(where, "missing field 'sigma'");
      if (!sit->is_number() || (sit->get<double>() != 1.0 && sit->get<double>() != -1.0))
        fail(where + ".sigma", "signature must be ±1");
      Index a = std::min(iu->second, iv->second), b = std::max(iu->second, iv->second);
      if (!seen.emplace(a, b).second) fail(where, "parallel edge between '" + u + "' and '" + v + "'");
      edges.push_back({a, b, w, sit->get<double>() > 0 ? 1 : -1});
    }
  }
  try {
    return SignedGraph(std::move(vs), std::move(edges));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

SignedGraph parse_graph(std::string_view text) { return graph_from_json(parse_text(text)); }

ordered_json graph_to_json(const SignedGraph& g) {
  ordered_json doc;
  doc["vertices"] = ordered_json::array();
  for (Index i = 0; i < g.size(); ++i)
    doc["vertices"].push_back({{"id", g.id(i)}, {"mu", g.mu(i)}, {"kappa", g.kappa(i)}});
  doc["edges"] = ordered_json::array();
  for (const auto& e : g.edges())
    doc["edges"].push_back({{"u", g.id(e.u)}, {"v", g.id(e.v)}, {"w", e.w}, {"sigma", e.sigma}});
  return doc;
}

std::string serialize_graph(const SignedGraph& g) { return graph_to_json(g).dump(2) + "\n"; }

VertexFunction function_from_json(const SignedGraph& g, const json& doc) {
  if (!doc.is_object()) fail("document", "must be an object");
  auto it = doc.find("values");
  if (it == doc.end() || !it->is_object()) fail("document", "'values' must be an object");
  VertexFunction f(g.size());
  std::vector<bool> given(g.size(), false);
  for (auto kv = it->begin(); kv != it->end(); ++kv) {
    auto idx = g.index_of(kv.key());
    if (!idx) fail("values." + kv.key(), "unknown vertex");
    if (!kv->is_number()) fail("values." + kv.key(), "must be a number");
    f[*idx] = kv->get<double>();
    given[*idx] = true;
  }
  for (Index i = 0; i < g.size(); ++i)
    if (!given[i]) fail("values", "missing value for vertex '" + g.id(i) + "'");
  return f;
}

VertexFunction parse_function(const SignedGraph& g, std::string_view text) {
  return function_from_json(g, parse_text(text));
}

ordered_json function_to_json(const SignedGraph& g, const VertexFunction& f) {
  if (f.size() != g.size()) throw DomainError("function size does not match the vertex set");
  ordered_json values = ordered_json::object();
  for (Index i = 0; i < g.size(); ++i) values[g.id(i)] = f[i];
  return {{"values", values}};
}

std::string serialize_function(const SignedGraph& g, const VertexFunction& f) {
  return function_to_json(g, f).dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace sgspec
