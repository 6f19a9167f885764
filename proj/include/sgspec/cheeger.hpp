#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "sgspec/graph.hpp"
#include "sgspec/rational.hpp"

namespace sgspec {

// Pair i is (first = V_{2i-1}, second = V_{2i}); each side sorted ascending.
struct SubBipartition {
  std::vector<std::pair<std::vector<Index>, std::vector<Index>>> pairs;

  std::size_t k() const { return pairs.size(); }
  bool operator==(const SubBipartition&) const = default;
};

// (2|E+(V1,V2)| + |E-(V1)| + |E-(V2)| + |boundary|) / vol, with ordered-pair counting.
double beta(const SignedGraph& g, const std::vector<Index>& v1, const std::vector<Index>& v2);
Rational beta_exact(const SignedGraph& g, const std::vector<Index>& v1, const std::vector<Index>& v2);

struct FrustrationResult {
  double value = 0.0;
  std::vector<Index> omega;  // sorted
  std::vector<int> tau;      // tau[i] belongs to omega[i]
  bool heuristic = false;
};

// Weighted: min over tau of sum over edges inside omega of w |tau(x) - sigma tau(y)|.
FrustrationResult frustration_index(const SignedGraph& g, std::vector<Index> omega, std::uint64_t seed = 1);

struct CheegerCaps {
  std::map<int, std::size_t> n_max{{1, 14}, {2, 10}, {3, 8}};
  std::size_t fallback = 8;  // k >= 4

  std::size_t cap_for(int k) const;
};

enum class CheegerMode { Exact, Heuristic };

struct CheegerResult {
  int k = 0;
  double value = 0.0;
  Rational exact_value;  // recomputed in rational arithmetic from the argmin
  SubBipartition argmin;
  std::vector<double> betas;
  std::uint64_t evaluated = 0;
  bool heuristic = false;
};

// Exact minimum over all k-sub-bipartitions. Requires kappa == 0 and 1 <= k <= n; refuses with
// CapacityError above the cap unless mode is Heuristic (local search, result flagged).
CheegerResult cheeger_k(const SignedGraph& g, int k, const CheegerCaps& caps = {},
                        CheegerMode mode = CheegerMode::Exact, std::uint64_t seed = 1);

enum class EigenSource { P2Exact, P1Special, Uncertified };

struct CertifiedEigenvalue {
  double value = 0.0;
  EigenSource source = EigenSource::Uncertified;
};

struct TwoSidedBoundRecord {
  double p = 0.0;
  int k = 0;
  int m = 0;
  double C = 0.0;
  double h_k = 0.0;
  double h_m = 0.0;
  double lambda = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double lower_slack = 0.0;  // lambda - lower
  double upper_slack = 0.0;  // upper - lambda
  bool pass = false;
};

// C = max_x (sum_y w_xy) / mu_x.
double degree_ratio_constant(const SignedGraph& g);

// Two-sided Cheeger bound for lambda_k with m strong nodal domains of its eigenfunction.
TwoSidedBoundRecord check_two_sided_bound(const SignedGraph& g, double p, int k, const CertifiedEigenvalue& lambda_k,
                                          int m, const CheegerCaps& caps = {}, double tol = 1e-9);

}  // namespace sgspec
