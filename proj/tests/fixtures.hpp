#pragma once

#include <vector>

#include "sgspec/graph.hpp"
#include "sgspec/harness.hpp"
#include "sgspec/random.hpp"

namespace fixture {

using sgspec::Edge;
using sgspec::Index;
using sgspec::SignedGraph;
using sgspec::VertexFunction;

inline SignedGraph path(std::size_t n, int sigma = 1, double w = 1.0) {
  std::vector<Edge> edges;
  for (Index i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w, sigma});
  return SignedGraph::from_edges(n, edges);
}

inline SignedGraph clique(std::size_t n, int sigma = 1) {
  std::vector<Edge> edges;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0, sigma});
  return SignedGraph::from_edges(n, edges);
}

// Triangle with a single negative edge {v1, v2}.
inline SignedGraph unbalanced_triangle() {
  return SignedGraph::from_edges(3, {{0, 1, 1.0, -1}, {0, 2, 1.0, 1}, {1, 2, 1.0, 1}});
}

inline SignedGraph random_graph(std::uint64_t seed, std::size_t n, double density = 0.6,
                                sgspec::SignatureModel model = sgspec::SignatureModel::Uniform,
                                bool connected = false) {
  sgspec::RandomGraphParams p;
  p.n = n;
  p.density = density;
  p.model = model;
  p.seed = seed;
  p.connected = connected;
  return sgspec::random_signed_graph(p);
}

inline VertexFunction random_function(sgspec::Rng& rng, std::size_t n, double zero_rate = 0.2) {
  VertexFunction f(n);
  for (Index x = 0; x < n; ++x) f[x] = rng.bernoulli(zero_rate) ? 0.0 : rng.uniform(-2.0, 2.0);
  return f;
}

// All 3^n functions with values in {-1, 0, 1}, including the zero function.
inline std::vector<VertexFunction> ternary_functions(std::size_t n) {
  std::vector<VertexFunction> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    VertexFunction f(n);
    std::size_t c = code;
    for (Index x = 0; x < n; ++x, c /= 3) f[x] = static_cast<double>(static_cast<int>(c % 3) - 1);
    out.push_back(f);
  }
  return out;
}

// All signed simple graphs on n labelled vertices (each pair absent, +1 or -1), unit weights.
inline std::vector<SignedGraph> all_signed_graphs(std::size_t n) {
  std::vector<std::pair<Index, Index>> pairs;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::size_t total = 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;
  std::vector<SignedGraph> out;
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Edge> edges;
    std::size_t c = code;
    for (const auto& [u, v] : pairs) {
      const int t = static_cast<int>(c % 3);
      c /= 3;
      if (t) edges.push_back({u, v, 1.0, t == 1 ? 1 : -1});
    }
    out.push_back(SignedGraph::from_edges(n, edges));
  }
  return out;
}

}  // namespace fixture
