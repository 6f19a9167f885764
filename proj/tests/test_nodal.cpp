#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sgspec/error.hpp"
#include "sgspec/nodal.hpp"
#include "sgspec/random.hpp"
#include "sgspec/spectra.hpp"

using namespace sgspec;

namespace {

const TheoremRecord* find_record(const BoundReport& rep, const std::string& name) {
  for (const auto& r : rep.records)
    if (r.theorem == name) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("strong domains on small examples") {
  const SignedGraph p3 = fixture::path(3);
  CHECK(strong_domains(p3, {1, -1, 1}).count == 3);
  const StrongDomains sep = strong_domains(p3, {1, 0, 1});
  CHECK(sep.count == 2);
  CHECK(sep.domains == std::vector<std::vector<Index>>{{0}, {2}});
  CHECK(strong_domains(fixture::unbalanced_triangle(), {1, -1, 1}).count == 1);
  CHECK_THROWS_AS(strong_domains(p3, VertexFunction(3)), DomainError);
}

TEST_CASE("weak domains on small examples") {
  const SignedGraph p3 = fixture::path(3);
  const WeakDomains joined = weak_domains(p3, {1, 0, 1});
  CHECK(joined.count == 1);
  CHECK(joined.classes == std::vector<std::vector<Index>>{{0, 2}});
  CHECK(joined.closures == std::vector<std::vector<Index>>{{0, 1, 2}});
  CHECK(weak_domains(p3, {1, 0, -1}).count == 2);
  CHECK(weak_domains(p3, {1, -1, 1}).count == 3);
  CHECK_THROWS_AS(weak_domains(p3, VertexFunction(3)), DomainError);

  // A zero vertex reached with both signs: v1 - z - v2 positive, v1 - z negative via the other route.
  const SignedGraph g = SignedGraph::from_edges(4, {{0, 1, 1, 1}, {1, 2, 1, -1}, {1, 3, 1, 1}, {2, 3, 1, 1}});
  CHECK(weak_domains(g, {1, 0, 1, 0}).count == oracle::weak_count(g, {1, 0, 1, 0}));
}

TEST_CASE("dual counts") {
  const DualCounts pos = dual_counts(fixture::path(2), {1, 1});
  CHECK(strong_domains(fixture::path(2), {1, 1}).count == 1);
  CHECK(pos.strong == 2);
  const DualCounts neg = dual_counts(fixture::path(2, -1), {1, 1});
  CHECK(strong_domains(fixture::path(2, -1), {1, 1}).count == 2);
  CHECK(neg.strong == 1);
  CHECK(dual_counts(fixture::clique(3), {1, 1, 1}).strong == 3);
}

TEST_CASE("negative edge identity examples") {
  const NodalSummary p3 = nodal_quantities(fixture::path(3), {1, 0, -1});
  CHECK(p3.edges_zero == 2);
  CHECK(p3.zeros == 1);
  CHECK(p3.edges_positive == 0);
  CHECK(p3.edges_negative == 0);
  CHECK(p3.surplus_positive == 0);
  CHECK(p3.strong.count == 2);
  CHECK(p3.identity_rhs == 0);
  CHECK(p3.identity_holds);

  const NodalSummary k5 = nodal_quantities(fixture::clique(5), {1, 1, 1, 1, 1});
  CHECK(k5.edges_positive == 10);
  CHECK(k5.surplus_positive == 6);
  CHECK(k5.strong.count == 1);
  CHECK(k5.identity_rhs == 0);
  CHECK(k5.identity_holds);
  CHECK_THROWS_AS(nodal_quantities(fixture::clique(5), VertexFunction(5)), DomainError);
}

TEST_CASE("counts agree with path enumeration on every graph with at most four vertices") {
  std::size_t compared = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto functions = fixture::ternary_functions(n);
    for (const SignedGraph& g : fixture::all_signed_graphs(n))
      for (const VertexFunction& f : functions) {
        if (f.is_zero()) continue;
        const StrongDomains s = strong_domains(g, f);
        const WeakDomains w = weak_domains(g, f);
        CHECK(s.count == oracle::strong_count(g, f));
        CHECK(w.count == oracle::weak_count(g, f));
        ++compared;
      }
  }
  CHECK(compared > 50000);
}

TEST_CASE("structural properties on random inputs") {
  Rng rng(53);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng.index(9);
    const SignedGraph g = fixture::random_graph(rng.next(), n, rng.uniform(0.1, 1.0));
    VertexFunction f = fixture::random_function(rng, n, rng.uniform(0.0, 0.6));
    if (f.is_zero()) f[rng.index(n)] = 1.0;

    const NodalSummary s = nodal_quantities(g, f);
    CHECK(s.weak.count <= s.strong.count);
    CHECK(s.identity_holds);
    CHECK(static_cast<long>(s.edges_negative) == s.identity_rhs);

    // Strong domains partition the support.
    std::vector<int> owner(n, -1);
    for (std::size_t i = 0; i < s.strong.domains.size(); ++i)
      for (Index x : s.strong.domains[i]) {
        CHECK(owner[x] == -1);
        owner[x] = static_cast<int>(i);
      }
    for (Index x = 0; x < n; ++x) CHECK((owner[x] >= 0) == (f[x] != 0.0));
    CHECK(s.zeros + (n - s.zeros) == n);

    // Each strong domain lies inside one weak closure.
    for (const auto& dom : s.strong.domains) {
      bool inside = false;
      for (const auto& cl : s.weak.closures)
        inside = inside || std::includes(cl.begin(), cl.end(), dom.begin(), dom.end());
      CHECK(inside);
    }

    // Switching equivariance.
    SwitchingFunction tau(n);
    for (auto& t : tau.tau) t = rng.sign();
    const SignedGraph sg = switch_signature(g, tau);
    const VertexFunction tf = tau.apply(f);
    CHECK(strong_domains(sg, tf).count == s.strong.count);
    CHECK(weak_domains(sg, tf).count == s.weak.count);
    const DualCounts d = dual_counts(sg, tf);
    CHECK(d.strong == s.dual_strong.count);
    CHECK(d.weak == s.dual_weak.count);

    // With no zeros the strong count follows from the positive-edge subgraph.
    if (s.zeros == 0) {
      const long m = static_cast<long>(g.edge_count());
      CHECK(static_cast<long>(s.strong.count) == static_cast<long>(n) - static_cast<long>(s.edges_positive) + s.surplus_positive);
      CHECK(static_cast<long>(s.strong.count + s.dual_strong.count) ==
            2 * static_cast<long>(n) - m + s.surplus_positive + s.surplus_negative);
      if (is_forest(g)) {
        CHECK(s.edges_positive + s.edges_negative == g.edge_count());
        CHECK(s.surplus_positive == 0);
        CHECK(s.surplus_negative == 0);
      }
    }
  }
}

TEST_CASE("snapping zeros") {
  const VertexFunction f = snap_zeros({1.0, 1e-12, -0.5, -1e-10});
  CHECK(f.values == std::vector<double>{1.0, 0.0, -0.5, 0.0});
}

TEST_CASE("bound report on the path") {
  const SignedGraph p3 = fixture::path(3);
  SpectrumContext ctx;
  ctx.position = EigenPosition{2, 1};
  const BoundReport rep = bound_report(p3, {1, 0, -1}, ctx);
  CHECK(rep.all_pass());
  const TheoremRecord* upper = find_record(rep, "strong-upper");
  REQUIRE(upper);
  CHECK(upper->lhs == 2.0);
  CHECK(upper->rhs == 2.0);
  const TheoremRecord* dual = find_record(rep, "dual-strong-upper");
  REQUIRE(dual);
  CHECK(dual->lhs == 2.0);
  CHECK(dual->rhs == 2.0);

  SpectrumContext first;
  first.position = EigenPosition{1, 1};
  const BoundReport c = bound_report(p3, {1, 1, 1}, first);
  CHECK(c.all_pass());
  CHECK(find_record(c, "strong-upper")->lhs == 1.0);

  SpectrumContext bad;
  bad.position = EigenPosition{3, 2};
  CHECK_THROWS_AS(bound_report(p3, {1, 0, -1}, bad), DomainError);

  SpectrumContext nonlinear;
  nonlinear.p = 3.0;
  nonlinear.position = EigenPosition{2, 1};
  CHECK(bound_report(p3, {1, 0, -1}, nonlinear).partial);
}

TEST_CASE("bounds hold for exact eigenvectors of random graphs") {
  Rng rng(59);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 2 + rng.index(7);
    const SignedGraph g = fixture::random_graph(rng.next(), n, rng.uniform(0.3, 1.0), SignatureModel::Uniform, true);
    const SpectrumP2 spec = spectrum_p2(g);
    for (Index i = 0; i < n; ++i) {
      const EigenPosition pos = spec.position_of(i);
      SpectrumContext ctx;
      ctx.position = pos;
      ctx.minimal_support = pos.r == 1;
      const BoundReport rep = bound_report(g, snap_zeros(spec.vectors[i]), ctx);
      for (const auto& r : rep.records)
        if (!r.skipped) CHECK_MESSAGE(r.pass, r.theorem);
    }
  }
}

TEST_CASE("forest eigenfunctions without zeros have exactly k + c - 1 strong domains") {
  Rng rng(61);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.index(7);
    const SignedGraph g = fixture::random_graph(rng.next(), n, 1e-9, SignatureModel::Uniform, true);
    REQUIRE(is_forest(g));
    const SpectrumP2 spec = spectrum_p2(g);
    const std::size_t c = components(g).size();
    for (Index i = 0; i < n; ++i) {
      const VertexFunction f = snap_zeros(spec.vectors[i]);
      if (std::any_of(f.values.begin(), f.values.end(), [](double v) { return v == 0.0; })) continue;
      const EigenPosition pos = spec.position_of(i);
      CHECK(strong_domains(g, f).count == static_cast<std::size_t>(pos.k) + c - 1);
      ++checked;
    }
  }
  CHECK(checked > 100);
}
