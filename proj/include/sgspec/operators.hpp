#pragma once

#include <optional>
#include <vector>

#include "sgspec/graph.hpp"
#include "sgspec/rational.hpp"

namespace sgspec {

// |t|^{p-2} t with phi(p, 0) = 0; |t| < 1e-300 is treated as 0.
double phi(double p, double t);

struct EigenPair {
  double lambda = 0.0;
  VertexFunction f;
  double p = 2.0;
};

// z on edge (u, v) is stored oriented from u to v (u < v); z_vu = -sigma z_uv.
struct OneLapWitness {
  std::vector<double> edge_z;
  std::vector<double> vertex_z;
};

struct ResidualCertificate {
  double max_residual = 0.0;  // p > 1 only
  std::optional<OneLapWitness> witness;
  bool verdict = false;
  bool exact = false;  // decided in rational arithmetic
};

VertexFunction apply_p_laplacian(const SignedGraph& g, double p, const VertexFunction& f);

// Sum over edges of w|f(x) - sigma f(y)|^p plus sum of kappa |f|^p.
double rayleigh_numerator(const SignedGraph& g, double p, const VertexFunction& f);
// Sum of mu |f|^p.
double rayleigh_denominator(const SignedGraph& g, double p, const VertexFunction& f);
double rayleigh(const SignedGraph& g, double p, const VertexFunction& f);
// R_1 in exact arithmetic.
Rational rayleigh1_exact(const SignedGraph& g, const VertexFunction& f);

ResidualCertificate check_eigenpair(const SignedGraph& g, const EigenPair& pair, double tol);

enum class Arithmetic { Exact, Floating };

// Decides the set-valued inclusion for p = 1 as a box-constrained linear feasibility problem.
// Exact mode treats every double input as the rational it represents. Floating mode treats
// differences below tol * max(1, |f|_inf) as zero and accepts phase-one residuals below tol.
ResidualCertificate check_eigenpair_1lap(const SignedGraph& g, double lambda, const VertexFunction& f,
                                         Arithmetic arithmetic = Arithmetic::Exact, double tol = 1e-9);
ResidualCertificate check_eigenpair_1lap(const SignedGraph& g, const Rational& lambda,
                                         const VertexFunction& f);

// Checks a witness against every condition of the inclusion, up to tol.
bool witness_satisfies(const SignedGraph& g, double lambda, const VertexFunction& f,
                       const OneLapWitness& witness, double tol);

}  // namespace sgspec
