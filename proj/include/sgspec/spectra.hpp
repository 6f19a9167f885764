#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sgspec/cheeger.hpp"
#include "sgspec/graph.hpp"
#include "sgspec/nodal.hpp"
#include "sgspec/operators.hpp"
#include "sgspec/rational.hpp"

namespace sgspec {

// Symmetric form matrix of the p = 2 operator, row-major: L_xx = sum_y w_xy + kappa_x, L_xy = -sigma w.
std::vector<double> form_matrix(const SignedGraph& g);

struct EigenGroup {
  Index first = 0;  // 0-based index of the first eigenvalue in the group
  std::size_t count = 0;
  double value = 0.0;
};

struct SpectrumP2 {
  std::vector<double> values;          // ascending
  std::vector<VertexFunction> vectors;  // mu-orthonormal
  std::vector<EigenGroup> groups;

  // Group containing the 0-based eigenvalue index i.
  const EigenGroup& group_of(Index i) const;
  // 1-based (k, r) of the group containing index i.
  EigenPosition position_of(Index i) const;
};

// Cyclic Jacobi on D^{-1/2} L D^{-1/2}. Eigenvalues whose relative gap is below group_tol share a group.
SpectrumP2 spectrum_p2(const SignedGraph& g, double group_tol = 1e-8);

// Eigenfunctions of one eigenvalue group with minimal support: for every vertex of the eigenspace
// support, a vector vanishing on as many vertices as the eigenspace allows, deduplicated.
std::vector<VertexFunction> minimal_support_eigenfunctions(const SpectrumP2& spec, const EigenGroup& group,
                                                           double zero_tol = 1e-9);

struct ExtremalOptions {
  int max_iter = 4000;
  double step = 0.5;
  double tol = 1e-10;
  int restarts = 8;
  std::uint64_t seed = 1;
  int probes = 100;
};

struct ExtremalCandidate {
  double lambda = 0.0;
  VertexFunction f;
  double residual = 0.0;
  bool converged = false;
  int restart = -1;
};

struct ExtremalTrace {
  int restart = 0;
  bool ascent = false;
  int gradient_steps = 0;
  int newton_steps = 0;
  double value = 0.0;
  double residual = 0.0;
};

struct ExtremalResult {
  double p = 2.0;
  ExtremalCandidate min;
  ExtremalCandidate max;
  std::vector<ExtremalTrace> trace;
  bool unconverged = false;
  int probe_violations = 0;
};

// Projected gradient descent/ascent of the Rayleigh quotient on the l^p sphere with restarts, then
// Newton polishing of the eigen-equation. Eigenfunctions are scaled to unit l^p(mu) norm.
ExtremalResult extremal_p(const SignedGraph& g, double p, const ExtremalOptions& opts = {});

// 2^{p-1} h_k. For p = 2 also throws DomainError if lambda_k exceeds the bound by more than 1e-9.
double upper_bound_lambda_k(const SignedGraph& g, double p, int k, const CheegerCaps& caps = {});

struct OneLapPair {
  Rational lambda;
  double lambda_value = 0.0;
  VertexFunction f;  // entries in {-1, 0, 1}, first nonzero entry +1
  ResidualCertificate certificate;
};

struct OneLapEigenSet {
  std::vector<OneLapPair> pairs;  // sorted by eigenvalue, then pattern
  std::vector<Rational> eigenvalues;  // distinct
  std::optional<Rational> lambda1;
  std::optional<Rational> smallest_positive;
  std::optional<Rational> lambda2;  // connected balanced graphs: equals the smallest positive
  std::uint64_t patterns = 0;
};

// Every {-1,0,1} pattern modulo global sign, each checked at lambda = R_1(f) (the only value an
// eigenvalue with that eigenfunction can take): floating screen, exact confirmation.
OneLapEigenSet one_lap_enumerate(const SignedGraph& g, std::size_t cap = 12);

// Minimum over components: h_2 of balanced ones (at least two vertices), h_1 of unbalanced ones.
std::optional<Rational> smallest_positive_1lap(const SignedGraph& g, const CheegerCaps& caps = {});

}  // namespace sgspec
