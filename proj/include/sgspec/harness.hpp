#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgspec/graph.hpp"
#include "sgspec/rational.hpp"

namespace sgspec {

enum class SignatureModel { Uniform, AllPositive, AllNegative, Balanced, Antibalanced };
enum class MuMode { Unit, Degree };

SignatureModel parse_signature_model(const std::string& name);
std::string to_string(SignatureModel model);
MuMode parse_mu_mode(const std::string& name);
std::string to_string(MuMode mode);

struct RandomGraphParams {
  std::size_t n = 6;
  double density = 0.5;
  SignatureModel model = SignatureModel::Uniform;
  std::uint64_t seed = 1;
  MuMode mu_mode = MuMode::Unit;
  bool connected = false;  // plant a random spanning tree before the density edges
  double w_min = 0.5;
  double w_max = 2.0;
};

// Weights are drawn on a 1/1024 grid in [w_min, w_max] so every weight is exactly representable
// and rational arithmetic on them stays small. Balanced/antibalanced models switch an
// all-positive/all-negative base by a random tau.
SignedGraph random_signed_graph(const RandomGraphParams& params);

struct DiagonalShift {
  double diagonal;
  double degree;
  double kappa;
};

struct MatrixImport {
  SignedGraph graph;
  std::vector<DiagonalShift> shifts;
};

// w = |M_xy|, sigma = -sign(M_xy), kappa_x = M_xx - sum_y w_xy, so the p = 2 form matrix is M.
MatrixImport import_symmetric_matrix(const std::vector<std::vector<double>>& M, double asym_tol = 1e-12);

struct WeakCountRecord {
  std::vector<double> eigenvalues;
  double second_eigenvalue = 0.0;
  std::size_t multiplicity = 0;
  std::vector<std::size_t> weak_counts;  // one per basis eigenfunction of the second eigenvalue
  std::vector<std::size_t> control_weak_counts;
  std::size_t expected = 1;
  std::size_t control_expected = 2;
  bool pass = false;
  bool control_pass = false;
};

// K7 with off-diagonal entries 1 and diagonal 1..7 (mu = 1): the second eigenfunction has one weak
// nodal domain; the all-positive control has two.
WeakCountRecord negative_clique_weak_count_check();

struct CliqueCheegerRecord {
  std::vector<Rational> h;                 // h_1 .. h_5
  std::vector<Rational> one_lap_eigenvalues;
  std::optional<Rational> smallest_positive;         // from the enumeration
  std::optional<Rational> smallest_positive_cheeger;  // from the Cheeger constants of the components
  bool pass = false;
};

// K5 with unit weights and degree measure.
CliqueCheegerRecord clique_cheeger_check();

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::size_t trials = 20;
  std::size_t n_min = 4;
  std::size_t n_max = 7;
  double density = 0.6;
  std::vector<SignatureModel> models{SignatureModel::Uniform};
  std::vector<double> p{2.0};
  MuMode mu_mode = MuMode::Unit;
  std::vector<std::string> checks;  // empty: every check
  double tolerance = 1e-9;
  std::size_t fuzz_samples = 1000;  // per trial, for the elementary inequalities
};

SuiteConfig suite_config_from_json(const nlohmann::json& doc);
nlohmann::ordered_json to_json(const SuiteConfig& cfg);

// All check names understood by the suite.
const std::vector<std::string>& suite_check_names();

struct CheckAggregate {
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::map<std::string, std::size_t> skip_reasons;
};

struct FailureBundle {
  std::string check;  // suite check that produced the failure
  std::string record;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  nlohmann::ordered_json graph;
  nlohmann::ordered_json function;  // null when not applicable
  nlohmann::ordered_json details;
};

struct SuiteReport {
  SuiteConfig config;
  std::map<std::string, CheckAggregate> records;
  std::vector<FailureBundle> failures;

  bool ok() const { return failures.empty(); }
};

SuiteReport run_suite(const SuiteConfig& config);
// Canonical form: keys in fixed order, no timestamps.
nlohmann::ordered_json to_json(const SuiteReport& report);
nlohmann::ordered_json to_json(const FailureBundle& bundle);
FailureBundle failure_bundle_from_json(const nlohmann::json& doc);

// Re-runs the bundle's check on its embedded graph; true if the same record fails again.
bool replay_bundle(const FailureBundle& bundle, const SuiteConfig& config);

}  // namespace sgspec
