#include <doctest.h>

#include "fixtures.hpp"
#include "sgspec/error.hpp"
#include "sgspec/graph.hpp"
#include "sgspec/graph_io.hpp"
#include "sgspec/random.hpp"

using namespace sgspec;

namespace {

// Balance by trying every tau: the oracle for the BFS propagation.
bool balanced_by_enumeration(const SignedGraph& g, int target) {
  const std::size_t n = g.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (const auto& e : g.edges()) {
      const int tu = (mask >> e.u) & 1 ? -1 : 1, tv = (mask >> e.v) & 1 ? -1 : 1;
      ok = ok && tu * e.sigma * tv == target;
    }
    if (ok) return true;
  }
  return false;
}

SwitchingFunction random_tau(Rng& rng, std::size_t n) {
  SwitchingFunction t(n);
  for (auto& v : t.tau) v = rng.sign();
  return t;
}

}  // namespace

TEST_CASE("construction rejects invalid graphs") {
  CHECK_THROWS_AS(SignedGraph({{"a", 0.0, 0.0}, {"b", 1.0, 0.0}}, {}), DomainError);
  CHECK_THROWS_AS(SignedGraph::from_edges(2, {{0, 1, 0.0, 1}}), DomainError);
  CHECK_THROWS_AS(SignedGraph::from_edges(2, {{0, 1, 1.0, 0}}), DomainError);
  CHECK_THROWS_AS(SignedGraph::from_edges(2, {{0, 0, 1.0, 1}}), DomainError);
  CHECK_THROWS_AS(SignedGraph::from_edges(2, {{0, 1, 1.0, 1}, {1, 0, 2.0, -1}}), DomainError);
  CHECK_THROWS_AS(SignedGraph({{"a", 1.0, 0.0}, {"a", 1.0, 0.0}}, {}), DomainError);
}

TEST_CASE("switching flips signatures across the cut") {
  const SignedGraph p2 = fixture::path(2);
  CHECK(switch_signature(p2, SwitchingFunction{1, -1}).edge(0).sigma == -1);

  const SignedGraph tri = fixture::clique(3, -1);
  const SignedGraph s = switch_signature(tri, SwitchingFunction{1, 1, -1});
  CHECK(s.edge(*s.find_edge(0, 1)).sigma == -1);
  CHECK(s.edge(*s.find_edge(0, 2)).sigma == 1);
  CHECK(s.edge(*s.find_edge(1, 2)).sigma == 1);

  CHECK(switch_signature(tri, SwitchingFunction(3)) == tri);
  CHECK_THROWS_AS(switch_signature(tri, SwitchingFunction{1, 1}), DomainError);
}

TEST_CASE("balance classification") {
  const auto p2 = balance_state(fixture::path(2));
  CHECK(p2.kind == BalanceKind::Both);
  REQUIRE(p2.antibalancing);
  CHECK(switch_signature(fixture::path(2), *p2.antibalancing).edge(0).sigma == -1);

  CHECK(balance_state(fixture::unbalanced_triangle()).kind == BalanceKind::Antibalanced);
  CHECK(balance_state(fixture::clique(3)).kind == BalanceKind::Balanced);
  CHECK(balance_state(fixture::clique(4, -1)).kind == BalanceKind::Antibalanced);
  // A 4-cycle with one negative edge fails both tests.
  const SignedGraph c4 = SignedGraph::from_edges(4, {{0, 1, 1, -1}, {1, 2, 1, 1}, {2, 3, 1, 1}, {0, 3, 1, 1}});
  CHECK(balance_state(c4).kind == BalanceKind::Neither);
}

TEST_CASE("balance agrees with tau enumeration and is a switching invariant") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.index(7);
    const SignedGraph g = fixture::random_graph(rng.next(), n, rng.uniform(0.1, 1.0));
    const BalanceState st = balance_state(g);
    CHECK(st.balanced() == balanced_by_enumeration(g, 1));
    CHECK(st.antibalanced() == balanced_by_enumeration(g, -1));
    if (st.balancing)
      for (const auto& e : switch_signature(g, *st.balancing).edges()) CHECK(e.sigma == 1);
    if (st.antibalancing)
      for (const auto& e : switch_signature(g, *st.antibalancing).edges()) CHECK(e.sigma == -1);

    const SwitchingFunction tau = random_tau(rng, n);
    const SignedGraph s = switch_signature(g, tau);
    CHECK(switch_signature(s, tau) == g);
    CHECK(balance_state(s).kind == st.kind);
    if (is_forest(g)) CHECK(st.kind == BalanceKind::Both);
  }
}

TEST_CASE("components and cycle surplus") {
  const SignedGraph tree = SignedGraph::from_edges(5, {{0, 1, 1, 1}, {1, 2, 1, -1}, {1, 3, 1, 1}, {3, 4, 1, 1}});
  CHECK(components(tree).size() == 1);
  CHECK(cycle_surplus(tree) == 0);
  CHECK(cycle_surplus(fixture::clique(5)) == 6);
  const SignedGraph two = SignedGraph::from_edges(4, {{0, 1, 1, 1}, {2, 3, 1, -1}});
  CHECK(components(two) == std::vector<std::vector<Index>>{{0, 1}, {2, 3}});
  CHECK(cycle_surplus(two) == 0);

  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const SignedGraph g = fixture::random_graph(rng.next(), 1 + rng.index(8), rng.uniform(0.05, 1.0));
    CHECK(cycle_surplus(g) >= 0);
    CHECK((cycle_surplus(g) == 0) == is_forest(g));
  }
}

TEST_CASE("derived graphs") {
  const SignedGraph g = fixture::clique(4, -1);
  CHECK(g.negated().edge(0).sigma == 1);
  CHECK(g.without_edge(0).edge_count() == 5);
  const std::vector<Index> keep{3, 1};
  const SignedGraph h = g.induced(keep);
  CHECK(h.size() == 2);
  CHECK(h.id(0) == "v4");
  CHECK(h.edge_count() == 1);
  CHECK(g.with_degree_measure().mu(0) == 3.0);
  CHECK_THROWS_AS(g.require_index("nope"), NotFoundError);
}

TEST_CASE("graph JSON parsing") {
  const SignedGraph p2 = parse_graph(R"({"vertices":[{"id":"a"},{"id":"b"}],"edges":[{"u":"a","v":"b","w":1,"sigma":1}]})");
  CHECK(p2.size() == 2);
  CHECK(p2.edge_count() == 1);
  CHECK(p2.mu(0) == 1.0);
  CHECK(p2.kappa(1) == 0.0);

  auto message = [](const char* doc) {
    try {
      parse_graph(doc);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"vertices":[{"id":"a"},{"id":"b"}],"edges":[{"u":"a","v":"b","sigma":0}]})") ==
        "edges[0].sigma: signature must be ±1");
  CHECK(message(R"({"vertices":[{"id":"a"}],"edges":[{"u":"a","v":"z","sigma":1}]})") ==
        "edges[0].v: unknown vertex 'z'");
  CHECK(message(R"({"vertices":[{"id":"a","mu":-1}]})") == "vertices[0].mu: must be positive");
  CHECK(message(R"({"vertices":[{"id":"a"},{"id":"b"}],"edges":[{"u":"a","v":"b","w":0,"sigma":1}]})") ==
        "edges[0].w: weight must be positive");
  CHECK(message(R"({"vertices":[{"id":"a"},{"id":"b"}],"edges":[{"u":"a","v":"b","sigma":1},{"u":"b","v":"a","sigma":-1}]})")
            .find("parallel edge") != std::string::npos);
  CHECK(message(R"({"vertices": [)").find("malformed JSON at byte") == 0);
}

TEST_CASE("graph and function round trips") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    SignedGraph g = fixture::random_graph(rng.next(), 1 + rng.index(8), rng.uniform(0.1, 1.0));
    std::vector<double> mu(g.size()), kappa(g.size());
    for (auto& m : mu) m = rng.uniform(0.1, 3.0);
    for (auto& k : kappa) k = rng.uniform(-2.0, 2.0);
    g = g.with_mu(mu).with_kappa(kappa);
    const std::string text = serialize_graph(g);
    const SignedGraph back = parse_graph(text);
    CHECK(back == g);
    CHECK(serialize_graph(back) == text);

    const VertexFunction f = fixture::random_function(rng, g.size());
    CHECK(parse_function(g, serialize_function(g, f)).values == f.values);
  }
}

TEST_CASE("function parsing requires every vertex") {
  const SignedGraph p2 = fixture::path(2);
  CHECK(parse_function(p2, R"({"values":{"v1":0.5,"v2":-1}})").values == std::vector<double>{0.5, -1.0});
  CHECK_THROWS_AS(parse_function(p2, R"({"values":{"v1":0.5}})"), ParseError);
  CHECK_THROWS_AS(parse_function(p2, R"({"values":{"v1":0.5,"v2":1,"v3":2}})"), ParseError);
}
