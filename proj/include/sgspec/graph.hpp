#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sgspec {

using Index = std::size_t;

struct Edge {
  Index u;  // u < v
  Index v;
  double w;
  int sigma;

  bool operator==(const Edge&) const = default;
};

struct Neighbor {
  Index y;
  double w;
  int sigma;
  Index edge;
};

struct VertexSpec {
  std::string id;
  double mu = 1.0;
  double kappa = 0.0;
};

struct VertexFunction {
  std::vector<double> values;

  VertexFunction() = default;
  explicit VertexFunction(std::size_t n, double fill = 0.0) : values(n, fill) {}
  VertexFunction(std::initializer_list<double> init) : values(init) {}
  explicit VertexFunction(std::vector<double> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  double& operator[](Index i) { return values[i]; }
  double operator[](Index i) const { return values[i]; }
  bool is_zero() const;
  double max_abs() const;

  bool operator==(const VertexFunction&) const = default;
};

struct SwitchingFunction {
  std::vector<int> tau;

  SwitchingFunction() = default;
  explicit SwitchingFunction(std::size_t n) : tau(n, 1) {}
  SwitchingFunction(std::initializer_list<int> init) : tau(init) {}
  explicit SwitchingFunction(std::vector<int> t) : tau(std::move(t)) {}

  std::size_t size() const { return tau.size(); }
  int operator[](Index i) const { return tau[i]; }

  // tau * f, pointwise.
  VertexFunction apply(const VertexFunction& f) const;

  bool operator==(const SwitchingFunction&) const = default;
};

// Immutable after construction. Edges are stored with u < v, sorted by (u, v).
class SignedGraph {
 public:
  SignedGraph() = default;
  // Validates every invariant; throws DomainError on violation.
  SignedGraph(std::vector<VertexSpec> vertices, std::vector<Edge> edges);

  // Vertices get ids "v1".."vn", mu = 1, kappa = 0.
  static SignedGraph from_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t size() const { return ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(Index e) const { return edges_[e]; }
  std::span<const Neighbor> neighbors(Index x) const { return adjacency_[x]; }

  const std::string& id(Index x) const { return ids_[x]; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::optional<Index> index_of(std::string_view id) const;
  Index require_index(std::string_view id) const;  // throws NotFoundError

  double mu(Index x) const { return mu_[x]; }
  double kappa(Index x) const { return kappa_[x]; }
  const std::vector<double>& mu() const { return mu_; }
  const std::vector<double>& kappa() const { return kappa_; }
  double degree(Index x) const;  // sum of incident weights
  bool kappa_is_zero() const;

  std::optional<Index> find_edge(Index x, Index y) const;

  std::vector<VertexSpec> vertex_specs() const;

  SignedGraph with_kappa(std::vector<double> kappa) const;
  SignedGraph with_mu(std::vector<double> mu) const;
  // mu_x = sum of incident weights; isolated vertices keep their mu.
  SignedGraph with_degree_measure() const;
  // Same graph with every signature flipped.
  SignedGraph negated() const;
  SignedGraph without_edge(Index e) const;
  // Induced subgraph on the listed vertices, in the given order.
  SignedGraph induced(std::span<const Index> keep) const;
  // Vertices of `other` appended after ours; ids must not collide.
  SignedGraph disjoint_union(const SignedGraph& other) const;

  bool operator==(const SignedGraph& other) const;

 private:
  void index();

  std::vector<std::string> ids_;
  std::vector<double> mu_;
  std::vector<double> kappa_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::unordered_map<std::string, Index> lookup_;
};

SignedGraph switch_signature(const SignedGraph& g, const SwitchingFunction& tau);

enum class BalanceKind { Balanced, Antibalanced, Both, Neither };

struct BalanceState {
  BalanceKind kind;
  std::optional<SwitchingFunction> balancing;      // sigma^tau == +1
  std::optional<SwitchingFunction> antibalancing;  // sigma^tau == -1

  bool balanced() const { return balancing.has_value(); }
  bool antibalanced() const { return antibalancing.has_value(); }
};

BalanceState balance_state(const SignedGraph& g);
const char* to_string(BalanceKind kind);

// Sign-blind connected components, each sorted ascending, ordered by smallest vertex.
std::vector<std::vector<Index>> components(const SignedGraph& g);
long cycle_surplus(const SignedGraph& g);
bool is_forest(const SignedGraph& g);

}  // namespace sgspec
