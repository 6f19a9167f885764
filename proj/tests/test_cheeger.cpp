#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sgspec/cheeger.hpp"
#include "sgspec/error.hpp"
#include "sgspec/operators.hpp"
#include "sgspec/random.hpp"

using namespace sgspec;

namespace {

// Random disjoint (V1, V2) with nonempty union.
std::pair<std::vector<Index>, std::vector<Index>> random_pair(Rng& rng, std::size_t n) {
  std::vector<Index> a, b;
  while (a.empty() && b.empty()) {
    a.clear();
    b.clear();
    for (Index x = 0; x < n; ++x) {
      const auto r = rng.index(3);
      if (r == 1) a.push_back(x);
      if (r == 2) b.push_back(x);
    }
  }
  return {a, b};
}

std::vector<int> side_vector(std::size_t n, const std::vector<Index>& a, const std::vector<Index>& b) {
  std::vector<int> side(n, 0);
  for (Index x : a) side[x] = 1;
  for (Index x : b) side[x] = -1;
  return side;
}

SignedGraph dyadic_measure(const SignedGraph& g, Rng& rng) {
  std::vector<double> mu(g.size());
  for (auto& m : mu) m = static_cast<double>(1 + rng.index(8)) / 4.0;
  return g.with_mu(mu);
}

}  // namespace

TEST_CASE("beta examples") {
  const SignedGraph k5 = fixture::clique(5).with_degree_measure();
  CHECK(beta_exact(k5, {0, 1}, {}) == Rational(3, 4));
  CHECK(beta(k5, {0, 1}, {}) == 0.75);
  const SignedGraph tri = fixture::unbalanced_triangle().with_degree_measure();
  // Only the internal negative edge counts (twice): 2 / 6.
  CHECK(beta_exact(tri, {0, 1, 2}, {}) == Rational(1, 3));
  // Both positive edges cross the pair (2 * 2) plus the internal negative edge (2): 6 / 6.
  CHECK(beta_exact(tri, {0, 1}, {2}) == 1);
  CHECK(beta_exact(fixture::clique(4), {0, 1, 2, 3}, {}) == 0);
  CHECK_THROWS_AS(beta(k5, {}, {}), DomainError);
  CHECK_THROWS_AS(beta(k5, {0, 1}, {1}), DomainError);
}

TEST_CASE("beta agrees with the literal formula and with R_1 of the signed indicator") {
  Rng rng(67);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.index(8);
    const SignedGraph g = dyadic_measure(fixture::random_graph(rng.next(), n, rng.uniform(0.2, 1.0)), rng);
    const auto [a, b] = random_pair(rng, n);
    const Rational want = oracle::beta_literal(g, side_vector(n, a, b));
    CHECK(beta_exact(g, a, b) == want);
    CHECK(beta(g, a, b) == doctest::Approx(to_double(want)).epsilon(1e-12));
    VertexFunction ind(n);
    for (Index x : a) ind[x] = 1.0;
    for (Index x : b) ind[x] = -1.0;
    CHECK(rayleigh1_exact(g, ind) == want);
  }
}

TEST_CASE("frustration index") {
  CHECK(frustration_index(fixture::unbalanced_triangle(), {0, 1, 2}).value == 2.0);
  CHECK(frustration_index(fixture::clique(5), {0, 1, 2, 3, 4}).value == 0.0);
  const SignedGraph anti = fixture::clique(3, -1);
  CHECK(frustration_index(anti, {0, 1}).value == 0.0);
  CHECK_THROWS_AS(frustration_index(anti, {}), DomainError);

  Rng rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.index(8);
    const SignedGraph g = fixture::random_graph(rng.next(), n, rng.uniform(0.2, 1.0));
    std::vector<Index> omega;
    for (Index x = 0; x < n; ++x)
      if (rng.bernoulli(0.7)) omega.push_back(x);
    if (omega.empty()) omega.push_back(0);
    const FrustrationResult fr = frustration_index(g, omega);
    CHECK(fr.value == doctest::Approx(oracle::frustration_bruteforce(g, omega)).epsilon(1e-12));
    CHECK_FALSE(fr.heuristic);
    // The witness attains the value.
    double total = 0.0;
    std::vector<int> tau(n, 0);
    for (std::size_t i = 0; i < fr.omega.size(); ++i) tau[fr.omega[i]] = fr.tau[i];
    for (const auto& e : g.edges())
      if (tau[e.u] != 0 && tau[e.v] != 0) total += e.w * std::abs(tau[e.u] - e.sigma * tau[e.v]);
    CHECK(total == doctest::Approx(fr.value).epsilon(1e-12));

    // The minimum of beta over bipartitions of omega is (iota + boundary) / vol.
    if (omega.size() <= 6) {
      std::optional<Rational> best;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << omega.size()); ++mask) {
        std::vector<Index> a, b;
        for (std::size_t i = 0; i < omega.size(); ++i) ((mask >> i) & 1 ? b : a).push_back(omega[i]);
        const Rational v = beta_exact(g, a, b);
        if (!best || v < *best) best = v;
      }
      double boundary = 0.0, vol = 0.0;
      std::vector<bool> in(n, false);
      for (Index x : omega) in[x] = true;
      for (Index x : omega) {
        vol += g.mu(x);
        for (const auto& nb : g.neighbors(x))
          if (!in[nb.y]) boundary += nb.w;
      }
      CHECK(to_double(*best) == doctest::Approx((fr.value + boundary) / vol).epsilon(1e-12));
    }
  }
}

TEST_CASE("Cheeger constants of K5 and the unbalanced triangle") {
  const SignedGraph k5 = fixture::clique(5).with_degree_measure();
  CHECK(cheeger_k(k5, 1).exact_value == 0);
  const CheegerResult h2 = cheeger_k(k5, 2);
  CHECK(h2.exact_value == Rational(3, 4));
  CHECK(h2.value == 0.75);
  REQUIRE(h2.argmin.k() == 2);
  for (int k = 3; k <= 5; ++k) CHECK(cheeger_k(k5, k).exact_value == 1);
  CHECK(cheeger_k(fixture::unbalanced_triangle().with_degree_measure(), 1).exact_value == Rational(1, 3));
}

TEST_CASE("Cheeger constants match brute-force labelling") {
  Rng rng(73);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + rng.index(6);
    SignedGraph g = fixture::random_graph(rng.next(), n, rng.uniform(0.2, 1.0));
    if (rng.bernoulli(0.5)) g = dyadic_measure(g, rng);
    std::optional<Rational> prev;
    for (int k = 1; k <= std::min<int>(3, static_cast<int>(n)); ++k) {
      if (n > 5 && k == 3) break;
      const CheegerResult res = cheeger_k(g, k);
      CHECK(res.exact_value == oracle::cheeger_bruteforce(g, k));
      // The argmin attains the value.
      Rational worst = 0;
      REQUIRE(res.argmin.k() == static_cast<std::size_t>(k));
      for (const auto& [a, b] : res.argmin.pairs) worst = std::max(worst, beta_exact(g, a, b));
      CHECK(worst == res.exact_value);
      if (prev) CHECK(*prev <= res.exact_value);
      prev = res.exact_value;

      SwitchingFunction tau(n);
      for (auto& t : tau.tau) t = rng.sign();
      CHECK(cheeger_k(switch_signature(g, tau), k).exact_value == res.exact_value);
    }
  }
}

TEST_CASE("vanishing Cheeger constants count balanced components") {
  Rng rng(79);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 2 + rng.index(7);
    const SignedGraph g = fixture::random_graph(rng.next(), n, rng.uniform(0.1, 0.6));
    std::size_t balanced = 0;
    for (const auto& comp : components(g))
      balanced += balance_state(g.induced(comp)).balanced();
    int zeros = 0;
    for (int k = 1; k <= std::min<int>(static_cast<int>(n), 3); ++k) {
      if (k == 3 && n > 8) break;
      if (cheeger_k(g, k).exact_value == 0) ++zeros;
    }
    CHECK(static_cast<std::size_t>(zeros) == std::min<std::size_t>(balanced, std::min<std::size_t>(n, 3)));
  }
}

TEST_CASE("Cheeger errors") {
  const SignedGraph p3 = fixture::path(3);
  CHECK_THROWS_AS(cheeger_k(p3.with_kappa({0, 1, 0}), 1), UnsupportedError);
  CHECK_THROWS_AS(cheeger_k(p3, 4), DomainError);
  CHECK_THROWS_AS(cheeger_k(p3, 0), DomainError);
  CHECK_THROWS_AS(cheeger_k(fixture::path(11), 2), CapacityError);
  const CheegerResult h = cheeger_k(fixture::path(11), 2, {}, CheegerMode::Heuristic);
  CHECK(h.heuristic);
  CheegerCaps wide;
  wide.n_max[2] = 11;
  CHECK(h.value >= to_double(cheeger_k(fixture::path(11), 2, wide).exact_value) - 1e-12);
}

TEST_CASE("two-sided eigenvalue bounds") {
  const SignedGraph p2 = fixture::path(2);
  CHECK(degree_ratio_constant(p2) == 1.0);
  const TwoSidedBoundRecord r = check_two_sided_bound(p2, 2.0, 2, {2.0, EigenSource::P2Exact}, 2);
  CHECK(r.h_k == 1.0);
  CHECK(r.lower == doctest::Approx(0.5));
  CHECK(r.upper == doctest::Approx(2.0));
  CHECK(r.pass);

  const SignedGraph k5 = fixture::clique(5).with_degree_measure();
  const TwoSidedBoundRecord one = check_two_sided_bound(k5, 1.0, 2, {0.75, EigenSource::P1Special}, 2);
  CHECK(one.C == 1.0);
  CHECK(one.upper == doctest::Approx(0.75));
  CHECK(one.pass);

  const TwoSidedBoundRecord flat = check_two_sided_bound(fixture::clique(4), 2.0, 1, {0.0, EigenSource::P2Exact}, 1);
  CHECK(flat.lower == 0.0);
  CHECK(flat.upper == 0.0);
  CHECK(flat.pass);

  CHECK_THROWS(check_two_sided_bound(p2, 2.0, 2, {2.0, EigenSource::Uncertified}, 2));
  CHECK_FALSE(check_two_sided_bound(p2, 2.0, 2, {2.5, EigenSource::P2Exact}, 2).pass);
}
