#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgspec/graph.hpp"

namespace sgspec {

// Every routine here treats exactly-zero values as zeros; snap noisy functions first.
VertexFunction snap_zeros(const VertexFunction& f, double rel_tol = 1e-9);

struct StrongDomains {
  std::size_t count = 0;
  std::vector<std::vector<Index>> domains;  // each sorted, ordered by smallest vertex
};

struct WeakDomains {
  std::size_t count = 0;
  std::vector<std::vector<Index>> classes;
  std::vector<std::vector<Index>> closures;  // classes plus zeros joined to them through zeros
};

StrongDomains strong_domains(const SignedGraph& g, const VertexFunction& f);
WeakDomains weak_domains(const SignedGraph& g, const VertexFunction& f);

struct DualCounts {
  std::size_t strong = 0;
  std::size_t weak = 0;
};

// Counts on (G, -sigma).
DualCounts dual_counts(const SignedGraph& g, const VertexFunction& f);

struct NodalSummary {
  StrongDomains strong;
  WeakDomains weak;
  StrongDomains dual_strong;
  WeakDomains dual_weak;
  std::size_t zeros = 0;
  std::size_t edges_positive = 0;  // |E_{f+}|: f(x) sigma f(y) > 0
  std::size_t edges_negative = 0;  // |E_{f-}|: f(x) sigma f(y) < 0
  std::size_t edges_zero = 0;      // |E_z|: incident to a zero
  long surplus_positive = 0;       // l(G_{f+}) on the full vertex set
  long surplus_negative = 0;       // l(G_{f-})
  long identity_rhs = 0;           // |E| - |E_z| + z - |V| - l+ + S
  bool identity_holds = false;
};

NodalSummary nodal_quantities(const SignedGraph& g, const VertexFunction& f);

// Where an eigenvalue sits among the variational eigenvalues: lambda_{k-1} < lambda_k = ... =
// lambda_{k+r-1} < lambda_{k+r}, k 1-based.
struct EigenPosition {
  int k = 1;
  int r = 1;
};

struct SpectrumContext {
  double p = 2.0;
  std::optional<EigenPosition> position;  // absent: only position-free checks run
  bool minimal_support = false;           // f is known to have minimal support in its eigenspace
};

struct TheoremRecord {
  std::string theorem;
  std::vector<std::pair<std::string, double>> inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string relation;  // "<=", ">=", "=="
  bool pass = false;
  bool skipped = false;
  std::string skip_reason;
};

struct BoundReport {
  std::vector<TheoremRecord> records;
  bool partial = false;

  bool all_pass() const;
};

// Evaluates the nodal-domain upper bounds and the lower bounds for connected graphs. Positional
// theorems are evaluated only for p in {1, 2}; otherwise the report is marked partial.
BoundReport bound_report(const SignedGraph& g, const VertexFunction& f, const SpectrumContext& ctx);

}  // namespace sgspec
