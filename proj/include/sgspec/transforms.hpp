#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sgspec/graph.hpp"

namespace sgspec {

struct KappaChange {
  Index vertex;  // index in the new graph
  double before;
  double after;
};

struct SurgeryResult {
  SignedGraph graph;
  std::optional<VertexFunction> f;  // the transported function, when one was supplied
  std::vector<KappaChange> kappa_changes;
  std::vector<Index> kept;  // new index -> old index
};

// Deletes edge {x0, y0} and adds w Phi_p(1 - sigma f(y0)/f(x0)) to kappa at x0 (and symmetrically at
// y0), so an eigenpair (lambda, f) of g stays an eigenpair. `exact` recomputes the shift in rational
// arithmetic before rounding (p = 2 only).
SurgeryResult remove_edge(const SignedGraph& g, double p, const VertexFunction& f, Index x0, Index y0,
                          bool exact = false);

// Deletes x0; each former neighbour x gets kappa_x + w_{x x0}. If f is supplied it is restricted.
SurgeryResult remove_node(const SignedGraph& g, Index x0, const std::optional<VertexFunction>& f = std::nullopt);

struct RemoveEdgeStep {
  Index x0;
  Index y0;
};
struct RemoveNodeStep {
  Index x0;
};
using SurgeryStep = std::variant<RemoveEdgeStep, RemoveNodeStep>;

struct InterlacingCheck {
  int k = 0;  // 1-based
  double lower = 0.0;
  double middle = 0.0;
  double upper = 0.0;
  double slack = 0.0;  // min(middle - lower, upper - middle)
  bool pass = false;
};

struct InterlacingStep {
  std::string kind;  // "remove-edge" or "remove-node"
  std::string family;  // which inequality family was evaluated
  std::vector<double> before;
  std::vector<double> after;
  std::vector<InterlacingCheck> checks;
  bool pass = true;
};

struct InterlacingReport {
  std::vector<InterlacingStep> steps;
  // When the sequence only removes nodes: lambda_k <= eta_k <= lambda_{k+m} against the original.
  std::optional<InterlacingStep> cumulative;
  bool pass = true;
};

// p = 2. Edge steps use f (transported along the sequence, indices refer to the current graph) to
// define the compensating potentials and select the inequality family by the sign of
// f(x0) sigma f(y0). Indices outside 1..n are clamped by the -inf/+inf conventions.
InterlacingReport interlacing_check_p2(const SignedGraph& g, const std::vector<SurgeryStep>& steps,
                                       const std::optional<VertexFunction>& f = std::nullopt,
                                       double slack_tol = 1e-9, bool exact = true);

}  // namespace sgspec
