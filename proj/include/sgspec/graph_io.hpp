#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "sgspec/graph.hpp"

namespace sgspec {

// Errors carry the offending location, e.g. "edges[2].sigma: signature must be ±1".
SignedGraph parse_graph(std::string_view text);
SignedGraph graph_from_json(const nlohmann::json& doc);
// Canonical form: vertices in index order with all fields, edges sorted by endpoint index.
std::string serialize_graph(const SignedGraph& g);
nlohmann::ordered_json graph_to_json(const SignedGraph& g);

// Every vertex must be assigned a value; unknown ids are rejected.
VertexFunction parse_function(const SignedGraph& g, std::string_view text);
VertexFunction function_from_json(const SignedGraph& g, const nlohmann::json& doc);
std::string serialize_function(const SignedGraph& g, const VertexFunction& f);
nlohmann::ordered_json function_to_json(const SignedGraph& g, const VertexFunction& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace sgspec
