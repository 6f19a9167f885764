#include "sgspec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "sgspec/error.hpp"

namespace sgspec {

bool VertexFunction::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

double VertexFunction::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

VertexFunction SwitchingFunction::apply(const VertexFunction& f) const {
  if (f.size() != tau.size()) throw DomainError("switching function and vertex function sizes differ");
  VertexFunction out(f.size());
  for (Index i = 0; i < f.size(); ++i) out[i] = tau[i] * f[i];
  return out;
}

SignedGraph::SignedGraph(std::vector<VertexSpec> vertices, std::vector<Edge> edges) {
  const std::size_t n = vertices.size();
  ids_.reserve(n);
  for (Index i = 0; i < n; ++i) {
    auto& v = vertices[i];
    if (v.id.empty()) throw DomainError("vertex " + std::to_string(i) + " has an empty id");
    if (!(v.mu > 0.0) || !std::isfinite(v.mu))
      throw DomainError("vertex " + v.id + ": mu must be positive");
    if (!std::isfinite(v.kappa)) throw DomainError("vertex " + v.id + ": kappa must be finite");
    if (!lookup_.emplace(v.id, i).second) throw DomainError("duplicate vertex id " + v.id);
    ids_.push_back(std::move(v.id));
    mu_.push_back(v.mu);
    kappa_.push_back(v.kappa);
  }
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) throw DomainError("edge endpoint out of range");
    if (e.u == e.v) throw DomainError("self-loop at vertex " + ids_[e.u]);
    if (!(e.w > 0.0) || !std::isfinite(e.w)) throw DomainError("edge weight must be positive");
    if (e.sigma != 1 && e.sigma != -1) throw DomainError("signature must be ±1");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
      throw DomainError("parallel edge between " + ids_[edges[i].u] + " and " + ids_[edges[i].v]);
  }
  edges_ = std::move(edges);
  index();
}

void SignedGraph::index() {
  adjacency_.assign(ids_.size(), {});
  for (Index e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    adjacency_[ed.u].push_back({ed.v, ed.w, ed.sigma, e});
    adjacency_[ed.v].push_back({ed.u, ed.w, ed.sigma, e});
  }
}

SignedGraph SignedGraph::from_edges(std::size_t n, std::vector<Edge> edges) {
  std::vector<VertexSpec> vs(n);
  for (Index i = 0; i < n; ++i) vs[i].id = "v" + std::to_string(i + 1);
  return SignedGraph(std::move(vs), std::move(edges));
}

std::optional<Index> SignedGraph::index_of(std::string_view id) const {
  auto it = lookup_.find(std::string(id));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Index SignedGraph::require_index(std::string_view id) const {
  auto idx = index_of(id);
  if (!idx) throw NotFoundError("unknown vertex " + std::string(id));
  return *idx;
}

double SignedGraph::degree(Index x) const {
  double d = 0.0;
  for (const auto& nb : adjacency_[x]) d += nb.w;
  return d;
}

bool SignedGraph::kappa_is_zero() const {
  return std::all_of(kappa_.begin(), kappa_.end(), [](double k) { return k == 0.0; });
}

std::optional<Index> SignedGraph::find_edge(Index x, Index y) const {
  if (x >= size() || y >= size()) return std::nullopt;
  for (const auto& nb : adjacency_[x])
    if (nb.y == y) return nb.edge;
  return std::nullopt;
}

std::vector<VertexSpec> SignedGraph::vertex_specs() const {
  std::vector<VertexSpec> vs(size());
  for (Index i = 0; i < size(); ++i) vs[i] = {ids_[i], mu_[i], kappa_[i]};
  return vs;
}

SignedGraph SignedGraph::with_kappa(std::vector<double> kappa) const {
  if (kappa.size() != size()) throw DomainError("kappa size mismatch");
  auto vs = vertex_specs();
  for (Index i = 0; i < size(); ++i) vs[i].kappa = kappa[i];
  return SignedGraph(std::move(vs), edges_);
}

SignedGraph SignedGraph::with_mu(std::vector<double> mu) const {
  if (mu.size() != size()) throw DomainError("mu size mismatch");
  auto vs = vertex_specs();
  for (Index i = 0; i < size(); ++i) vs[i].mu = mu[i];
  return SignedGraph(std::move(vs), edges_);
}

SignedGraph SignedGraph::with_degree_measure() const {
  std::vector<double> mu = mu_;
  for (Index i = 0; i < size(); ++i)
    if (!adjacency_[i].empty()) mu[i] = degree(i);
  return with_mu(std::move(mu));
}

SignedGraph SignedGraph::negated() const {
  auto edges = edges_;
  for (auto& e : edges) e.sigma = -e.sigma;
  return SignedGraph(vertex_specs(), std::move(edges));
}

SignedGraph SignedGraph::without_edge(Index e) const {
  if (e >= edges_.size()) throw NotFoundError("edge index out of range");
  auto edges = edges_;
  edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(e));
  return SignedGraph(vertex_specs(), std::move(edges));
}

SignedGraph SignedGraph::induced(std::span<const Index> keep) const {
  std::vector<Index> pos(size(), size());
  std::vector<VertexSpec> vs;
  for (Index k = 0; k < keep.size(); ++k) {
    if (keep[k] >= size()) throw NotFoundError("vertex index out of range");
    if (pos[keep[k]] != size()) throw DomainError("vertex listed twice");
    pos[keep[k]] = k;
    vs.push_back({ids_[keep[k]], mu_[keep[k]], kappa_[keep[k]]});
  }
  std::vector<Edge> edges;
  for (const auto& e : edges_)
    if (pos[e.u] != size() && pos[e.v] != size()) edges.push_back({pos[e.u], pos[e.v], e.w, e.sigma});
  return SignedGraph(std::move(vs), std::move(edges));
}

SignedGraph SignedGraph::disjoint_union(const SignedGraph& other) const {
  auto vs = vertex_specs();
  auto more = other.vertex_specs();
  vs.insert(vs.end(), more.begin(), more.end());
  auto edges = edges_;
  for (auto e : other.edges_) edges.push_back({e.u + size(), e.v + size(), e.w, e.sigma});
  return SignedGraph(std::move(vs), std::move(edges));
}

bool SignedGraph::operator==(const SignedGraph& other) const {
  return ids_ == other.ids_ && mu_ == other.mu_ && kappa_ == other.kappa_ && edges_ == other.edges_;
}

SignedGraph switch_signature(const SignedGraph& g, const SwitchingFunction& tau) {
  if (tau.size() != g.size()) throw DomainError("switching function is not defined on the vertex set");
  for (int t : tau.tau)
    if (t != 1 && t != -1) throw DomainError("switching values must be ±1");
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.sigma = tau[e.u] * e.sigma * tau[e.v];
  return SignedGraph(g.vertex_specs(), std::move(edges));
}

namespace {

// Propagates tau along a BFS forest so that target * tau(x) sigma tau(y) == +1 on tree edges,
// then checks every edge.
std::optional<SwitchingFunction> switch_to_constant(const SignedGraph& g, int target) {
  const std::size_t n = g.size();
  std::vector<int> tau(n, 0);
  for (Index root = 0; root < n; ++root) {
    if (tau[root] != 0) continue;
    tau[root] = 1;
    std::deque<Index> queue{root};
    while (!queue.empty()) {
      Index x = queue.front();
      queue.pop_front();
      for (const auto& nb : g.neighbors(x)) {
        if (tau[nb.y] == 0) {
          tau[nb.y] = tau[x] * nb.sigma * target;
          queue.push_back(nb.y);
        }
      }
    }
  }
  for (const auto& e : g.edges())
    if (tau[e.u] * e.sigma * tau[e.v] != target) return std::nullopt;
  return SwitchingFunction(std::move(tau));
}

}  // namespace

BalanceState balance_state(const SignedGraph& g) {
  BalanceState st{BalanceKind::Neither, switch_to_constant(g, 1), switch_to_constant(g, -1)};
  if (st.balanced() && st.antibalanced())
    st.kind = BalanceKind::Both;
  else if (st.balanced())
    st.kind = BalanceKind::Balanced;
  else if (st.antibalanced())
    st.kind = BalanceKind::Antibalanced;
  return st;
}

const char* to_string(BalanceKind kind) {
  switch (kind) {
    case BalanceKind::Balanced: return "balanced";
    case BalanceKind::Antibalanced: return "antibalanced";
    case BalanceKind::Both: return "both";
    case BalanceKind::Neither: return "neither";
  }
  return "?";
}

std::vector<std::vector<Index>> components(const SignedGraph& g) {
  const std::size_t n = g.size();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<Index>> out;
  for (Index root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<Index> comp{root};
    seen[root] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (const auto& nb : g.neighbors(comp[head])) {
        if (!seen[nb.y]) {
          seen[nb.y] = true;
          comp.push_back(nb.y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

long cycle_surplus(const SignedGraph& g) {
  return static_cast<long>(g.edge_count()) - static_cast<long>(g.size()) +
         static_cast<long>(components(g).size());
}

bool is_forest(const SignedGraph& g) { return cycle_surplus(g) == 0; }

}  // namespace sgspec
