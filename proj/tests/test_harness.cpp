#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sgspec/error.hpp"
#include "sgspec/graph_io.hpp"
#include "sgspec/harness.hpp"
#include "sgspec/spectra.hpp"

using namespace sgspec;
using nlohmann::json;

TEST_CASE("random graph models") {
  RandomGraphParams p;
  p.n = 8;
  p.density = 0.7;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    p.seed = seed;
    p.model = SignatureModel::AllPositive;
    for (const auto& e : random_signed_graph(p).edges()) CHECK(e.sigma == 1);
    p.model = SignatureModel::AllNegative;
    for (const auto& e : random_signed_graph(p).edges()) CHECK(e.sigma == -1);
    p.model = SignatureModel::Balanced;
    CHECK(balance_state(random_signed_graph(p)).balanced());
    p.model = SignatureModel::Antibalanced;
    CHECK(balance_state(random_signed_graph(p)).antibalanced());

    p.model = SignatureModel::Uniform;
    p.connected = true;
    const SignedGraph g = random_signed_graph(p);
    CHECK(components(g).size() == 1);
    for (const auto& e : g.edges()) {
      CHECK(e.w >= 0.5);
      CHECK(e.w <= 2.0);
      CHECK(e.w * 1024.0 == std::floor(e.w * 1024.0));
    }
    CHECK(random_signed_graph(p) == g);
    p.connected = false;
  }
  p.mu_mode = MuMode::Degree;
  p.connected = true;
  const SignedGraph d = random_signed_graph(p);
  for (Index x = 0; x < d.size(); ++x) {
    double deg = 0.0;
    for (const auto& nb : d.neighbors(x)) deg += nb.w;
    CHECK(d.mu(x) == deg);
  }

  p.density = 0.0;
  CHECK_THROWS_AS(random_signed_graph(p), ConfigError);
  CHECK_THROWS_AS(parse_signature_model("mostly-positive"), ConfigError);
  CHECK(parse_signature_model("antibalanced") == SignatureModel::Antibalanced);
  CHECK(to_string(SignatureModel::AllNegative) == "all-negative");
  CHECK(parse_mu_mode("degree") == MuMode::Degree);
}

TEST_CASE("matrix import") {
  std::vector<std::vector<double>> k7(7, std::vector<double>(7, 1.0));
  for (int i = 0; i < 7; ++i) k7[i][i] = i + 1;
  const MatrixImport imp = import_symmetric_matrix(k7);
  CHECK(imp.graph.edge_count() == 21);
  for (const auto& e : imp.graph.edges()) {
    CHECK(e.sigma == -1);
    CHECK(e.w == 1.0);
  }
  for (Index x = 0; x < 7; ++x) {
    CHECK(imp.graph.kappa(x) == static_cast<double>(x) + 1.0 - 6.0);
    CHECK(imp.shifts[x].degree == 6.0);
  }

  const MatrixImport diag = import_symmetric_matrix({{2, 0}, {0, -3}});
  CHECK(diag.graph.edge_count() == 0);
  CHECK(diag.graph.kappa(0) == 2.0);
  CHECK(diag.graph.kappa(1) == -3.0);

  const MatrixImport lap = import_symmetric_matrix({{1, -1}, {-1, 1}});
  REQUIRE(lap.graph.edge_count() == 1);
  CHECK(lap.graph.edge(0).sigma == 1);
  CHECK(lap.graph.kappa(0) == 0.0);

  CHECK_THROWS_AS(import_symmetric_matrix({{1, 2}, {2.5, 1}}), DomainError);
  CHECK_THROWS_AS(import_symmetric_matrix({{1, 2}}), DomainError);

  Rng rng(97);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.index(6);
    std::vector<std::vector<double>> M(n, std::vector<double>(n, 0.0));
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) M[i][j] = M[j][i] = rng.bernoulli(0.3) ? 0.0 : rng.uniform(-2.0, 2.0);
    const std::vector<double> L = form_matrix(import_symmetric_matrix(M).graph);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) CHECK(L[i * n + j] == doctest::Approx(M[i][j]).epsilon(1e-14));
  }
}

TEST_CASE("negative clique example") {
  const WeakCountRecord rec = negative_clique_weak_count_check();
  CHECK(rec.pass);
  CHECK(rec.control_pass);
  CHECK(rec.multiplicity >= 1);
  for (auto w : rec.weak_counts) CHECK(w == 1);
  for (auto w : rec.control_weak_counts) CHECK(w == 2);
  // The eigenvalues match a reference decomposition of the same matrix.
  std::vector<std::vector<double>> k7(7, std::vector<double>(7, 1.0));
  for (int i = 0; i < 7; ++i) k7[i][i] = i + 1;
  Eigen::MatrixXd M(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) M(i, j) = k7[i][j];
  const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M).eigenvalues();
  for (int i = 0; i < 7; ++i) CHECK(rec.eigenvalues[i] == doctest::Approx(ref[i]).epsilon(1e-12));
}

TEST_CASE("K5 Cheeger example") {
  const CliqueCheegerRecord rec = clique_cheeger_check();
  CHECK(rec.pass);
  REQUIRE(rec.h.size() == 5);
  CHECK(rec.h[0] == 0);
  CHECK(rec.h[1] == Rational(3, 4));
  for (int k = 2; k < 5; ++k) CHECK(rec.h[k] == 1);
  CHECK(rec.smallest_positive == Rational(3, 4));
  CHECK(rec.smallest_positive_cheeger == Rational(3, 4));
}

TEST_CASE("suite configuration") {
  const SuiteConfig cfg = suite_config_from_json(json::parse(
      R"({"seed":5,"trials":3,"n":[4,6],"density":0.5,"models":["balanced","uniform"],"p":[1,2],
          "mu_mode":"degree","checks":["nodal-bounds"],"tolerance":1e-8,"fuzz_samples":10})"));
  CHECK(cfg.seed == 5);
  CHECK(cfg.n_min == 4);
  CHECK(cfg.n_max == 6);
  CHECK(cfg.models.size() == 2);
  CHECK(cfg.mu_mode == MuMode::Degree);
  CHECK(cfg.p == std::vector<double>{1.0, 2.0});
  const SuiteConfig back = suite_config_from_json(json::parse(to_json(cfg).dump()));
  CHECK(to_json(back) == to_json(cfg));

  CHECK_THROWS_AS(suite_config_from_json(json::parse(R"({"trails":3})")), ConfigError);
  CHECK_THROWS_AS(suite_config_from_json(json::parse(R"({"n":[5,3]})")), ConfigError);
  CHECK_THROWS_AS(suite_config_from_json(json::parse(R"({"p":[0.5]})")), ConfigError);
  CHECK_THROWS_AS(suite_config_from_json(json::parse(R"({"checks":["nope"]})")), ConfigError);
  CHECK_THROWS_AS(suite_config_from_json(json::parse(R"({"models":[]})")), ConfigError);
  CHECK_THROWS_AS(suite_config_from_json(json::parse(R"({"checks":["cheeger-two-sided"],"n":[4,9]})")), ConfigError);
  CHECK(suite_check_names().size() >= 10);
}

TEST_CASE("suite runs are deterministic and pass") {
  SuiteConfig cfg;
  cfg.trials = 4;
  cfg.p = {1.0, 2.0, 3.0};
  cfg.models = {SignatureModel::Uniform, SignatureModel::Antibalanced};
  cfg.fuzz_samples = 50;
  const SuiteReport a = run_suite(cfg);
  const SuiteReport b = run_suite(cfg);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.ok());
  for (const auto& f : a.failures) MESSAGE(to_json(f).dump());
  std::size_t checked = 0;
  for (const auto& [name, agg] : a.records) {
    CHECK(agg.checked == agg.passed + agg.failed);
    checked += agg.checked;
  }
  CHECK(checked > 100);

  cfg.seed = 2;
  CHECK(to_json(run_suite(cfg)).dump() != to_json(a).dump());
}

TEST_CASE("failure bundles replay") {
  SuiteConfig cfg;
  cfg.checks = {"cheeger-two-sided"};
  // A potential makes the Cheeger constants undefined, so the check body errors on this graph.
  const SignedGraph g = fixture::path(3).with_kappa({1, 0, 0});
  FailureBundle bad;
  bad.check = "cheeger-two-sided";
  bad.record = "cheeger-two-sided-error";
  bad.seed = 1;
  bad.trial = 0;
  bad.graph = nlohmann::ordered_json::parse(serialize_graph(g));
  const FailureBundle round = failure_bundle_from_json(json::parse(to_json(bad).dump()));
  CHECK(round.check == bad.check);
  CHECK(json::parse(round.graph.dump()) == json::parse(bad.graph.dump()));
  CHECK(replay_bundle(round, cfg));

  FailureBundle good = bad;
  good.graph = nlohmann::ordered_json::parse(serialize_graph(fixture::path(3)));
  CHECK_FALSE(replay_bundle(good, cfg));

  CHECK_THROWS_AS(failure_bundle_from_json(json::parse(R"({"check":"x"})")), ParseError);
}
