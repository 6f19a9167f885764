#include "sgspec/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "sgspec/cheeger.hpp"
#include "sgspec/error.hpp"
#include "sgspec/graph_io.hpp"
#include "sgspec/inequalities.hpp"
#include "sgspec/nodal.hpp"
#include "sgspec/operators.hpp"
#include "sgspec/parallel.hpp"
#include "sgspec/random.hpp"
#include "sgspec/spectra.hpp"
#include "sgspec/transforms.hpp"

namespace sgspec {

using nlohmann::ordered_json;

namespace {

const std::vector<std::pair<SignatureModel, const char*>> kModels{
    {SignatureModel::Uniform, "uniform"},
    {SignatureModel::AllPositive, "all-positive"},
    {SignatureModel::AllNegative, "all-negative"},
    {SignatureModel::Balanced, "balanced"},
    {SignatureModel::Antibalanced, "antibalanced"},
};

constexpr double kGrid = 1024.0;

double grid_weight(Rng& rng, double lo, double hi) {
  const auto a = static_cast<std::uint64_t>(std::ceil(lo * kGrid));
  const auto b = static_cast<std::uint64_t>(std::floor(hi * kGrid));
  return static_cast<double>(a + rng.index(b - a + 1)) / kGrid;
}

}  // namespace

SignatureModel parse_signature_model(const std::string& name) {
  for (const auto& [m, s] : kModels)
    if (name == s) return m;
  throw ConfigError("unknown signature model '" + name + "'");
}

std::string to_string(SignatureModel model) {
  for (const auto& [m, s] : kModels)
    if (m == model) return s;
  return "uniform";
}

MuMode parse_mu_mode(const std::string& name) {
  if (name == "unit") return MuMode::Unit;
  if (name == "degree") return MuMode::Degree;
  throw ConfigError("unknown mu mode '" + name + "' (expected unit or degree)");
}

std::string to_string(MuMode mode) { return mode == MuMode::Unit ? "unit" : "degree"; }

SignedGraph random_signed_graph(const RandomGraphParams& params) {
  if (params.n < 1) throw ConfigError("n must be at least 1");
  if (!(params.density > 0.0 && params.density <= 1.0)) throw ConfigError("density must lie in (0, 1]");
  if (!(params.w_min > 0.0) || !(params.w_max >= params.w_min) ||
      std::floor(params.w_max * kGrid) < std::ceil(params.w_min * kGrid))
    throw ConfigError("weight range must be positive and contain a multiple of 1/1024");
  Rng rng(params.seed);
  const std::size_t n = params.n;

  std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
  std::vector<std::pair<Index, Index>> pairs;
  if (params.connected) {
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
    for (std::size_t i = 1; i < n; ++i) {
      Index a = order[i], b = order[rng.index(i)];
      if (a > b) std::swap(a, b);
      present[a][b] = true;
      pairs.emplace_back(a, b);
    }
  }
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v)
      if (!present[u][v] && rng.bernoulli(params.density)) {
        present[u][v] = true;
        pairs.emplace_back(u, v);
      }

  std::vector<int> tau(n, 1);
  if (params.model == SignatureModel::Balanced || params.model == SignatureModel::Antibalanced)
    for (auto& t : tau) t = rng.sign();
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) {
    const double w = grid_weight(rng, params.w_min, params.w_max);
    int sigma = 1;
    switch (params.model) {
      case SignatureModel::Uniform: sigma = rng.sign(); break;
      case SignatureModel::AllPositive: sigma = 1; break;
      case SignatureModel::AllNegative: sigma = -1; break;
      case SignatureModel::Balanced: sigma = tau[u] * tau[v]; break;
      case SignatureModel::Antibalanced: sigma = -tau[u] * tau[v]; break;
    }
    edges.push_back({u, v, w, sigma});
  }
  SignedGraph g = SignedGraph::from_edges(n, std::move(edges));
  return params.mu_mode == MuMode::Degree ? g.with_degree_measure() : g;
}

MatrixImport import_symmetric_matrix(const std::vector<std::vector<double>>& M, double asym_tol) {
  const std::size_t n = M.size();
  for (std::size_t i = 0; i < n; ++i)
    if (M[i].size() != n) throw DomainError("matrix must be square");
  std::vector<Edge> edges;
  std::vector<double> degree(n, 0.0);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(M[i][j] - M[j][i]) > asym_tol * std::max(1.0, std::abs(M[i][j])))
        throw DomainError("matrix is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      if (M[i][j] == 0.0) continue;
      const double w = std::abs(M[i][j]);
      edges.push_back({i, j, w, M[i][j] > 0 ? -1 : 1});
      degree[i] += w;
      degree[j] += w;
    }
  MatrixImport out;
  std::vector<double> kappa(n);
  for (Index i = 0; i < n; ++i) {
    kappa[i] = M[i][i] - degree[i];
    out.shifts.push_back({M[i][i], degree[i], kappa[i]});
  }
  out.graph = SignedGraph::from_edges(n, std::move(edges)).with_kappa(std::move(kappa));
  return out;
}

namespace {

std::vector<std::vector<double>> clique_matrix(std::size_t n, double off) {
  std::vector<std::vector<double>> A(n, std::vector<double>(n, off));
  for (std::size_t i = 0; i < n; ++i) A[i][i] = static_cast<double>(i + 1);
  return A;
}

std::vector<std::size_t> second_group_weak_counts(const SignedGraph& g, SpectrumP2* out) {
  SpectrumP2 spec = spectrum_p2(g);
  const EigenGroup& grp = spec.group_of(1);
  std::vector<std::size_t> counts;
  for (Index i = grp.first; i < grp.first + grp.count; ++i)
    counts.push_back(weak_domains(g, snap_zeros(spec.vectors[i])).count);
  if (out) *out = std::move(spec);
  return counts;
}

}  // namespace

WeakCountRecord negative_clique_weak_count_check() {
  WeakCountRecord rec;
  const SignedGraph g = import_symmetric_matrix(clique_matrix(7, 1.0)).graph;
  SpectrumP2 spec;
  rec.weak_counts = second_group_weak_counts(g, &spec);
  rec.eigenvalues = spec.values;
  rec.second_eigenvalue = spec.values[1];
  rec.multiplicity = spec.group_of(1).count;
  const SignedGraph control = import_symmetric_matrix(clique_matrix(7, -1.0)).graph;
  rec.control_weak_counts = second_group_weak_counts(control, nullptr);
  rec.pass = std::all_of(rec.weak_counts.begin(), rec.weak_counts.end(),
                         [&](std::size_t c) { return c == rec.expected; });
  rec.control_pass = std::all_of(rec.control_weak_counts.begin(), rec.control_weak_counts.end(),
                                 [&](std::size_t c) { return c == rec.control_expected; });
  return rec;
}

CliqueCheegerRecord clique_cheeger_check() {
  std::vector<Edge> edges;
  for (Index u = 0; u < 5; ++u)
    for (Index v = u + 1; v < 5; ++v) edges.push_back({u, v, 1.0, 1});
  const SignedGraph g = SignedGraph::from_edges(5, std::move(edges)).with_degree_measure();
  CliqueCheegerRecord rec;
  for (int k = 1; k <= 5; ++k) rec.h.push_back(cheeger_k(g, k).exact_value);
  const OneLapEigenSet set = one_lap_enumerate(g);
  rec.one_lap_eigenvalues = set.eigenvalues;
  rec.smallest_positive = set.smallest_positive;
  rec.smallest_positive_cheeger = smallest_positive_1lap(g);
  const Rational three_quarters(3, 4);
  rec.pass = rec.h[0] == 0 && rec.h[1] == three_quarters && rec.h[2] == 1 &&
             rec.one_lap_eigenvalues == std::vector<Rational>{Rational(0), three_quarters, Rational(1)} &&
             rec.smallest_positive == three_quarters && rec.smallest_positive_cheeger == three_quarters;
  return rec;
}

// ---------------------------------------------------------------------------------------------
// Suite

namespace {

enum class GraphKind { None, Mixed, Connected, BalancedConnected, AntibalancedConnected };

struct Outcome {
  std::string record;
  bool pass = false;
  bool skipped = false;
  std::string reason;
  std::optional<VertexFunction> f;
  ordered_json details;
};

using Outcomes = std::vector<Outcome>;
using CheckBody = std::function<void(const SignedGraph&, Rng&, const SuiteConfig&, Outcomes&)>;

struct CheckSpec {
  std::string name;
  GraphKind graph;
  bool once;  // deterministic, run for trial 0 only
  CheckBody body;
};

void skip(Outcomes& out, std::string record, std::string reason) {
  Outcome o;
  o.record = std::move(record);
  o.skipped = true;
  o.reason = std::move(reason);
  out.push_back(std::move(o));
}

void verdict(Outcomes& out, std::string record, bool pass, ordered_json details,
             std::optional<VertexFunction> f = std::nullopt) {
  Outcome o;
  o.record = std::move(record);
  o.pass = pass;
  o.details = std::move(details);
  o.f = std::move(f);
  out.push_back(std::move(o));
}

ordered_json record_json(const TheoremRecord& r) {
  ordered_json inputs = ordered_json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  return ordered_json{{"theorem", r.theorem}, {"inputs", inputs}, {"lhs", r.lhs},
                      {"relation", r.relation}, {"rhs", r.rhs}, {"pass", r.pass}};
}

ordered_json interlacing_json(const InterlacingStep& st) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : st.checks)
    checks.push_back({{"k", c.k}, {"lower", c.lower}, {"middle", c.middle}, {"upper", c.upper},
                      {"slack", c.slack}, {"pass", c.pass}});
  return ordered_json{{"kind", st.kind}, {"family", st.family}, {"before", st.before},
                      {"after", st.after}, {"checks", checks}, {"pass", st.pass}};
}

void add_bound_report(const SignedGraph& g, const VertexFunction& f, const SpectrumContext& ctx,
                      const std::string& prefix, Outcomes& out) {
  const BoundReport rep = bound_report(g, f, ctx);
  for (const auto& r : rep.records) {
    if (r.skipped) {
      skip(out, prefix + r.theorem, r.skip_reason);
      continue;
    }
    ordered_json d = record_json(r);
    d["k"] = ctx.position ? ctx.position->k : 0;
    d["r"] = ctx.position ? ctx.position->r : 0;
    d["minimal_support"] = ctx.minimal_support;
    verdict(out, prefix + r.theorem, r.pass, std::move(d), f);
  }
}

void nodal_on_spectrum(const SignedGraph& g, const std::string& prefix, Outcomes& out) {
  const SpectrumP2 spec = spectrum_p2(g);
  for (Index i = 0; i < spec.values.size(); ++i) {
    const VertexFunction f = snap_zeros(spec.vectors[i]);
    const EigenPosition pos = spec.position_of(i);
    add_bound_report(g, f, {2.0, pos, pos.r == 1}, prefix, out);
  }
  for (const auto& grp : spec.groups) {
    if (grp.count == 1) continue;
    const EigenPosition pos = spec.position_of(grp.first);
    for (const auto& f : minimal_support_eigenfunctions(spec, grp))
      add_bound_report(g, snap_zeros(f), {2.0, pos, true}, prefix, out);
  }
}

// Random spanning forest of g on the same vertex set.
SignedGraph spanning_forest(const SignedGraph& g, Rng& rng) {
  std::vector<Index> order(g.edge_count());
  std::iota(order.begin(), order.end(), Index{0});
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
  std::vector<Index> parent(g.size());
  std::iota(parent.begin(), parent.end(), Index{0});
  std::function<Index(Index)> find = [&](Index x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<Edge> kept;
  for (Index e : order) {
    const Edge& ed = g.edge(e);
    const Index a = find(ed.u), b = find(ed.v);
    if (a == b) continue;
    parent[a] = b;
    kept.push_back(ed);
  }
  return SignedGraph(g.vertex_specs(), std::move(kept));
}

void check_nodal_bounds(const SignedGraph& g, Rng& rng, const SuiteConfig&, Outcomes& out) {
  nodal_on_spectrum(g, "", out);
  nodal_on_spectrum(spanning_forest(g, rng), "", out);
}

void check_balanced_second(const SignedGraph& g, Rng&, const SuiteConfig&, Outcomes& out) {
  if (g.size() < 2) return skip(out, "balanced-second-weak-count", "needs at least two vertices");
  const SpectrumP2 spec = spectrum_p2(g);
  const EigenGroup& grp = spec.group_of(1);
  if (grp.first != 1)
    return skip(out, "balanced-second-weak-count", "first eigenvalue is not simple");
  for (Index i = grp.first; i < grp.first + grp.count; ++i) {
    const VertexFunction f = snap_zeros(spec.vectors[i]);
    const std::size_t w = weak_domains(g, f).count;
    verdict(out, "balanced-second-weak-count", w == 2,
            {{"lambda", spec.values[i]}, {"multiplicity", grp.count}, {"weak", w}, {"expected", 2}}, f);
  }
}

void check_non_variational(const SignedGraph&, Rng&, const SuiteConfig& cfg, Outcomes& out) {
  for (double p : cfg.p) {
    if (p == 2.0)
      skip(out, "non-variational-zeros", "every p = 2 eigenvalue is variational; no witness available");
    else
      skip(out, "non-variational-zeros",
           "non-variational eigenfunctions are not computable for p = " + ordered_json(p).dump());
  }
}

std::vector<Index> edges_nonzero_at_both(const SignedGraph& g, const VertexFunction& f) {
  std::vector<Index> es;
  for (Index e = 0; e < g.edge_count(); ++e)
    if (f[g.edge(e).u] != 0.0 && f[g.edge(e).v] != 0.0) es.push_back(e);
  return es;
}

void check_edge_interlacing(const SignedGraph& g, Rng& rng, const SuiteConfig& cfg, Outcomes& out) {
  const SpectrumP2 spec = spectrum_p2(g);
  const std::size_t n = g.size();
  for (Index i : {static_cast<Index>(n - 1), static_cast<Index>(rng.index(n))}) {
    const VertexFunction f = snap_zeros(spec.vectors[i]);
    const auto cand = edges_nonzero_at_both(g, f);
    if (cand.empty()) {
      skip(out, "edge-interlacing", "eigenfunction vanishes at an endpoint of every edge");
      continue;
    }
    const Edge& e = g.edge(cand[rng.index(cand.size())]);
    const InterlacingReport rep = interlacing_check_p2(g, {RemoveEdgeStep{e.u, e.v}}, f, cfg.tolerance);
    ordered_json d = interlacing_json(rep.steps.front());
    d["edge"] = {g.id(e.u), g.id(e.v)};
    d["eigen_index"] = i + 1;
    verdict(out, "edge-interlacing", rep.pass, std::move(d), f);
  }
}

void check_node_interlacing(const SignedGraph& g, Rng& rng, const SuiteConfig& cfg, Outcomes& out) {
  const std::size_t n = g.size();
  if (n < 2) return skip(out, "node-interlacing", "needs at least two vertices");
  const Index x0 = rng.index(n);
  const InterlacingReport one = interlacing_check_p2(g, {RemoveNodeStep{x0}}, std::nullopt, cfg.tolerance);
  ordered_json d = interlacing_json(one.steps.front());
  d["node"] = g.id(x0);
  verdict(out, "node-interlacing", one.pass, std::move(d));

  const std::size_t m = 1 + rng.index(std::min<std::size_t>(3, n - 1));
  std::vector<Index> nodes(n);
  std::iota(nodes.begin(), nodes.end(), Index{0});
  for (std::size_t i = n; i > 1; --i) std::swap(nodes[i - 1], nodes[rng.index(i)]);
  nodes.resize(m);
  std::sort(nodes.rbegin(), nodes.rend());  // descending, so earlier removals keep later indices valid
  std::vector<SurgeryStep> steps;
  ordered_json ids = ordered_json::array();
  for (Index x : nodes) {
    steps.push_back(RemoveNodeStep{x});
    ids.push_back(g.id(x));
  }
  const InterlacingReport many = interlacing_check_p2(g, steps, std::nullopt, cfg.tolerance);
  ordered_json dm = interlacing_json(*many.cumulative);
  dm["nodes"] = ids;
  verdict(out, "multi-node-interlacing", many.pass, std::move(dm));
}

struct Pair {
  double lambda;
  VertexFunction f;
  double residual;
};

// A certified eigenpair for p: a random exact eigenvector for p = 2, an extremal one otherwise.
std::optional<Pair> certified_pair(const SignedGraph& g, double p, Rng& rng) {
  if (p == 2.0) {
    const SpectrumP2 spec = spectrum_p2(g);
    const Index i = rng.index(g.size());
    VertexFunction f = snap_zeros(spec.vectors[i]);
    const double res = check_eigenpair(g, {spec.values[i], f, 2.0}, 1e-9).max_residual;
    return Pair{spec.values[i], std::move(f), res};
  }
  ExtremalOptions opts;
  opts.seed = rng.next();
  opts.probes = 0;
  const ExtremalResult ex = extremal_p(g, p, opts);
  const ExtremalCandidate& c = rng.bernoulli(0.5) ? ex.max : ex.min;
  if (!c.converged) return std::nullopt;
  return Pair{c.lambda, c.f, c.residual};
}

constexpr double kInputResidual = 1e-10;
constexpr double kPreservedResidual = 1e-9;

// Adds a vertex joined to y1 and y2 so that f extended by 0 stays an eigenfunction; the kappa
// corrections at y1, y2 are exactly what removing the vertex gives back.
std::pair<SignedGraph, VertexFunction> attach_zero_vertex(const SignedGraph& g, double p, const VertexFunction& f,
                                                         Index y1, Index y2, double w1) {
  const double f1 = f[y1], f2 = f[y2];
  const double w2 = w1 * std::pow(std::abs(f1), p - 1.0) / std::pow(std::abs(f2), p - 1.0);
  std::vector<VertexSpec> vs = g.vertex_specs();
  std::string id = "v" + std::to_string(g.size() + 1);
  while (g.index_of(id)) id += "'";
  vs[y1].kappa -= w1;
  vs[y2].kappa -= w2;
  vs.push_back({id, 1.0, 0.0});
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  const Index x0 = g.size();
  edges.push_back({y1, x0, w1, f1 > 0 ? 1 : -1});
  edges.push_back({y2, x0, w2, f2 > 0 ? -1 : 1});
  std::vector<double> vals = f.values;
  vals.push_back(0.0);
  return {SignedGraph(std::move(vs), std::move(edges)), VertexFunction(std::move(vals))};
}

void check_surgery(const SignedGraph& g, Rng& rng, const SuiteConfig& cfg, Outcomes& out) {
  for (double p : cfg.p) {
    if (p == 1.0) {
      skip(out, "edge-removal-preservation", "edge removal needs p > 1");
      continue;
    }
    const auto pair = certified_pair(g, p, rng);
    if (!pair) {
      skip(out, "edge-removal-preservation", "extremal solver did not converge");
      continue;
    }
    if (pair->residual > kInputResidual) {
      skip(out, "edge-removal-preservation", "input eigenpair residual above 1e-10");
      continue;
    }
    const VertexFunction& f = pair->f;
    const auto cand = edges_nonzero_at_both(g, f);
    if (cand.empty()) {
      skip(out, "edge-removal-preservation", "eigenfunction vanishes at an endpoint of every edge");
    } else {
      const Edge& e = g.edge(cand[rng.index(cand.size())]);
      const SurgeryResult sr = remove_edge(g, p, f, e.u, e.v, p == 2.0);
      const double res = check_eigenpair(sr.graph, {pair->lambda, f, p}, kPreservedResidual).max_residual;
      verdict(out, "edge-removal-preservation", res <= kPreservedResidual,
              {{"p", p}, {"lambda", pair->lambda}, {"edge", {g.id(e.u), g.id(e.v)}}, {"input_residual", pair->residual},
               {"residual", res}},
              f);
    }

    std::vector<Index> support;
    for (Index x = 0; x < g.size(); ++x)
      if (f[x] != 0.0) support.push_back(x);
    if (support.size() < 2) {
      skip(out, "node-removal-preservation", "eigenfunction has fewer than two nonzero entries");
      continue;
    }
    const Index a = support[rng.index(support.size())];
    Index b = support[rng.index(support.size() - 1)];
    if (b == a) b = support.back();
    const double w1 = grid_weight(rng, 0.5, 2.0);
    auto [gz, fz] = attach_zero_vertex(g, p, f, a, b, w1);
    const double built = check_eigenpair(gz, {pair->lambda, fz, p}, kPreservedResidual).max_residual;
    verdict(out, "zero-vertex-construction", built <= kPreservedResidual, {{"p", p}, {"residual", built}}, fz);
    const SurgeryResult sr = remove_node(gz, gz.size() - 1, fz);
    const double res = check_eigenpair(sr.graph, {pair->lambda, *sr.f, p}, kPreservedResidual).max_residual;
    verdict(out, "node-removal-preservation", res <= kPreservedResidual,
            {{"p", p}, {"lambda", pair->lambda}, {"residual", res}}, fz);
    const double r_before = rayleigh(gz, p, fz), r_after = rayleigh(sr.graph, p, *sr.f);
    verdict(out, "node-removal-rayleigh", std::abs(r_before - r_after) <= 1e-12 * (1.0 + std::abs(r_before)),
            {{"p", p}, {"before", r_before}, {"after", r_after}}, fz);
  }
}

void check_identity(const SignedGraph& g, Rng& rng, const SuiteConfig&, Outcomes& out) {
  for (int rep = 0; rep < 5; ++rep) {
    const double zero_rate = rng.uniform(0.0, 0.8);
    VertexFunction f(g.size());
    for (Index x = 0; x < g.size(); ++x)
      f[x] = rng.bernoulli(zero_rate) ? 0.0 : rng.sign() * grid_weight(rng, 0.5, 2.0);
    if (f.is_zero()) f[rng.index(g.size())] = 1.0;
    const NodalSummary s = nodal_quantities(g, f);
    verdict(out, "negative-edge-identity", s.identity_holds,
            {{"edges_negative", s.edges_negative}, {"rhs", s.identity_rhs}, {"zeros", s.zeros},
             {"edges_zero", s.edges_zero}, {"surplus_positive", s.surplus_positive}, {"strong", s.strong.count}},
            f);
  }
}

void check_cheeger(const SignedGraph& g, Rng&, const SuiteConfig& cfg, Outcomes& out) {
  const std::size_t n = g.size();
  std::map<int, double> h;
  const CheegerCaps caps;
  auto hk = [&](int k) {
    auto it = h.find(k);
    if (it == h.end()) it = h.emplace(k, cheeger_k(g, k, caps).value).first;
    return it->second;
  };
  auto record = [&](const std::string& name, double p, int k, double lambda, const VertexFunction& f) {
    const int m = static_cast<int>(strong_domains(g, f).count);
    const double C = degree_ratio_constant(g);
    const double two = std::pow(2.0, p - 1.0);
    const double upper = two * hk(k);
    const double lower = C == 0.0 ? 0.0 : two / (std::pow(C, p - 1.0) * std::pow(p, p)) * std::pow(hk(m), p);
    const double slack = cfg.tolerance * (1.0 + std::abs(lambda));
    verdict(out, name, lambda >= lower - slack && lambda <= upper + slack,
            {{"p", p}, {"k", k}, {"m", m}, {"C", C}, {"h_k", hk(k)}, {"h_m", hk(m)}, {"lambda", lambda},
             {"lower", lower}, {"upper", upper}},
            f);
  };
  for (double p : cfg.p) {
    if (p == 2.0) {
      const SpectrumP2 spec = spectrum_p2(g);
      for (Index i = 0; i < n; ++i)
        record("cheeger-two-sided", 2.0, static_cast<int>(i + 1), spec.values[i], snap_zeros(spec.vectors[i]));
    } else if (p == 1.0) {
      const OneLapEigenSet set = one_lap_enumerate(g);
      for (const auto& pr : set.pairs) {
        if (set.lambda1 && pr.lambda == *set.lambda1) record("cheeger-two-sided", 1.0, 1, pr.lambda_value, pr.f);
        if (set.lambda2 && pr.lambda == *set.lambda2) record("cheeger-two-sided", 1.0, 2, pr.lambda_value, pr.f);
      }
    } else {
      skip(out, "cheeger-two-sided", "interior eigenvalues uncertified for p = " + ordered_json(p).dump());
    }
  }
}

void check_one_lap_h1(const SignedGraph& g, Rng&, const SuiteConfig&, Outcomes& out) {
  const OneLapEigenSet set = one_lap_enumerate(g);
  const CheegerResult h1 = cheeger_k(g, 1);
  const bool pass = set.lambda1 && *set.lambda1 == h1.exact_value;
  verdict(out, "one-lap-first-equals-h1", pass,
          {{"lambda1", set.lambda1 ? to_string(*set.lambda1) : "none"}, {"h1", to_string(h1.exact_value)}});
}

void check_perron(const SignedGraph& g, Rng& rng, const SuiteConfig& cfg, Outcomes& out) {
  const auto state = balance_state(g);
  if (!state.antibalancing) return skip(out, "perron-frobenius-positive", "graph is not antibalanced");
  const SwitchingFunction& tau = *state.antibalancing;
  const std::size_t n = g.size();
  for (double p : cfg.p) {
    if (p == 1.0) {
      skip(out, "perron-frobenius-positive", "p = 1 eigenfunctions are set-valued");
      continue;
    }
    double lambda = 0.0;
    VertexFunction f;
    if (p == 2.0) {
      const SpectrumP2 spec = spectrum_p2(g);
      lambda = spec.values.back();
      f = spec.vectors.back();
      if (n >= 2) {
        const double gap = spec.values[n - 1] - spec.values[n - 2];
        verdict(out, "perron-frobenius-simple", gap > 1e-9 * (1.0 + std::abs(lambda)),
                {{"lambda_n", lambda}, {"lambda_n_minus_1", spec.values[n - 2]}, {"gap", gap}});
      }
    } else {
      ExtremalOptions opts;
      opts.seed = rng.next();
      opts.probes = 0;
      const ExtremalResult ex = extremal_p(g, p, opts);
      lambda = ex.max.lambda;
      f = ex.max.f;
    }
    const double res = check_eigenpair(g, {lambda, f, p}, 1e-8).max_residual;
    verdict(out, "perron-frobenius-residual", res <= 1e-8, {{"p", p}, {"lambda", lambda}, {"residual", res}}, f);
    VertexFunction h = tau.apply(f);
    const double scale = h.max_abs();
    double sum = 0.0;
    for (double v : h.values) sum += v;
    const double sgn = sum < 0 ? -1.0 : 1.0;
    double min_entry = std::numeric_limits<double>::infinity();
    for (double& v : h.values) {
      v = scale > 0 ? sgn * v / scale : 0.0;
      min_entry = std::min(min_entry, v);
    }
    verdict(out, "perron-frobenius-positive", min_entry > 1e-8,
            {{"p", p}, {"lambda", lambda}, {"min_entry", min_entry}}, f);
  }
}

// Fuzz arguments: mostly continuous, with exact zeros, small integers and repeated values mixed in.
double fuzz_value(Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.1) return 0.0;
  if (u < 0.25) return static_cast<double>(static_cast<int>(rng.index(7)) - 3);
  return rng.uniform(-3.0, 3.0);
}

double fuzz_p(Rng& rng, double lo) {
  const double u = rng.uniform();
  if (u < 0.15) return 2.0;
  if (u < 0.25 && lo <= 1.0) return 1.0;
  return rng.uniform(std::max(lo, 1.0), 4.0);
}

void tally(Outcomes& out, const std::string& name, std::size_t checked, std::size_t failed, ordered_json first_fail) {
  Outcome o;
  o.record = name;
  o.pass = failed == 0;
  o.details = {{"samples", checked}, {"failed", failed}, {"first_failure", std::move(first_fail)}};
  out.push_back(std::move(o));
}

struct FuzzTally {
  std::size_t checked = 0, failed = 0, eq_checked = 0, eq_failed = 0;
  ordered_json first = nullptr, eq_first = nullptr;

  void add(bool holds, bool eq_expected, bool eq_observed, const ordered_json& args) {
    ++checked;
    if (!holds && failed++ == 0) first = args;
    if (eq_expected) {
      ++eq_checked;
      if (!eq_observed && eq_failed++ == 0) eq_first = args;
    }
  }
  void emit(Outcomes& out, const std::string& name) {
    tally(out, name, checked, failed, first);
    tally(out, name + "-equality", eq_checked, eq_failed, eq_first);
  }
};

void check_inequalities(const SignedGraph&, Rng& rng, const SuiteConfig& cfg, Outcomes& out) {
  FuzzTally split, split1, power, ratio;
  for (std::size_t i = 0; i < cfg.fuzz_samples; ++i) {
    {
      const double p = fuzz_p(rng, 1.0);
      const double t = fuzz_value(rng);
      const double s = rng.bernoulli(0.1) ? t : fuzz_value(rng);
      const double a = fuzz_value(rng), b = fuzz_value(rng);
      const auto r = product_split_inequality(p, t, s, a, b);
      split.add(r.holds, r.equality_expected, r.equality_observed, {p, t, s, a, b});
    }
    {
      const double t = fuzz_value(rng);
      const double s = rng.bernoulli(0.1) ? t : fuzz_value(rng);
      const double a = fuzz_value(rng);
      const double b = rng.bernoulli(0.1) ? -a : fuzz_value(rng);
      const double sum = a + b;
      const double z = sum > 0 ? 1.0 : sum < 0 ? -1.0 : rng.uniform(-1.0, 1.0);
      const auto r = product_split_inequality_p1(t, s, a, b, z);
      split1.add(r.holds, r.equality_expected, r.equality_observed, {t, s, a, b, z});
    }
    {
      const double p = fuzz_p(rng, 1.0);
      const int sigma = rng.sign();
      const double a = fuzz_value(rng);
      const double b = rng.bernoulli(0.1) ? -sigma * a : fuzz_value(rng);
      const auto r = power_difference_inequality(p, a, b, sigma);
      power.add(r.holds, r.equality_expected, r.equality_observed, {p, a, b, sigma});
    }
    {
      const double p = rng.bernoulli(0.2) ? 2.0 : rng.uniform(1.0 + 1e-3, 4.0);
      double a1 = fuzz_value(rng), a2 = fuzz_value(rng);
      if (a1 == 0.0) a1 = 1.0;
      if (a2 == 0.0) a2 = -1.0;
      double b1 = fuzz_value(rng), b2 = fuzz_value(rng);
      if (rng.bernoulli(0.1)) {
        const double c = std::ldexp(1.0, static_cast<int>(rng.index(7)) - 3) * rng.sign();
        b1 = c * a1;
        b2 = c * a2;
      }
      const auto r = ratio_weighted_power_sign(p, a1, a2, b1, b2);
      ratio.add(r.holds, r.equality_expected, r.equality_observed, {p, a1, a2, b1, b2});
    }
  }
  split.emit(out, "product-split");
  split1.emit(out, "product-split-sgn");
  power.emit(out, "power-difference");
  ratio.emit(out, "ratio-weighted-sign");
}

void check_cheeger_example(const SignedGraph&, Rng&, const SuiteConfig&, Outcomes& out) {
  const CliqueCheegerRecord rec = clique_cheeger_check();
  ordered_json h = ordered_json::array(), ev = ordered_json::array();
  for (const auto& x : rec.h) h.push_back(to_string(x));
  for (const auto& x : rec.one_lap_eigenvalues) ev.push_back(to_string(x));
  verdict(out, "cheeger-example", rec.pass,
          {{"h", h},
           {"one_lap_eigenvalues", ev},
           {"smallest_positive", rec.smallest_positive ? to_string(*rec.smallest_positive) : "none"}});
}

void check_weak_example(const SignedGraph&, Rng&, const SuiteConfig&, Outcomes& out) {
  const WeakCountRecord rec = negative_clique_weak_count_check();
  verdict(out, "weak-count-example", rec.pass,
          {{"second_eigenvalue", rec.second_eigenvalue}, {"multiplicity", rec.multiplicity},
           {"weak_counts", rec.weak_counts}, {"expected", rec.expected}});
  verdict(out, "weak-count-example-control", rec.control_pass,
          {{"weak_counts", rec.control_weak_counts}, {"expected", rec.control_expected}});
}

const std::vector<CheckSpec>& registry() {
  static const std::vector<CheckSpec> specs{
      {"nodal-bounds", GraphKind::Mixed, false, check_nodal_bounds},
      {"balanced-second-weak-count", GraphKind::BalancedConnected, false, check_balanced_second},
      {"non-variational-zeros", GraphKind::None, false, check_non_variational},
      {"edge-interlacing", GraphKind::Mixed, false, check_edge_interlacing},
      {"node-interlacing", GraphKind::Mixed, false, check_node_interlacing},
      {"surgery-preservation", GraphKind::Mixed, false, check_surgery},
      {"negative-edge-identity", GraphKind::Mixed, false, check_identity},
      {"cheeger-two-sided", GraphKind::Mixed, false, check_cheeger},
      {"one-lap-first-equals-h1", GraphKind::Connected, false, check_one_lap_h1},
      {"perron-frobenius", GraphKind::AntibalancedConnected, false, check_perron},
      {"elementary-inequalities", GraphKind::None, false, check_inequalities},
      {"cheeger-example", GraphKind::None, true, check_cheeger_example},
      {"weak-count-example", GraphKind::None, true, check_weak_example},
  };
  return specs;
}

const CheckSpec& find_check(const std::string& name) {
  for (const auto& c : registry())
    if (c.name == name) return c;
  throw ConfigError("unknown check '" + name + "'");
}

std::size_t check_index(const std::string& name) {
  const auto& r = registry();
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i].name == name) return i;
  throw ConfigError("unknown check '" + name + "'");
}

// Streams: graph and body randomness are separate so a bundle can replay the body on its graph.
constexpr std::uint64_t kStreamsPerTrial = 64;

Rng graph_rng(std::uint64_t seed, std::uint64_t trial, std::size_t check) {
  return Rng::derive(seed, trial * kStreamsPerTrial + 2 * check);
}

Rng body_rng(std::uint64_t seed, std::uint64_t trial, std::size_t check) {
  return Rng::derive(seed, trial * kStreamsPerTrial + 2 * check + 1);
}

std::optional<SignedGraph> trial_graph(const CheckSpec& spec, const SuiteConfig& cfg, std::uint64_t trial, Rng& rng) {
  if (spec.graph == GraphKind::None) return std::nullopt;
  RandomGraphParams params;
  params.n = cfg.n_min + rng.index(cfg.n_max - cfg.n_min + 1);
  params.density = cfg.density;
  params.mu_mode = cfg.mu_mode;
  params.seed = rng.next();
  params.model = cfg.models[trial % cfg.models.size()];
  switch (spec.graph) {
    case GraphKind::Mixed: params.connected = rng.bernoulli(0.5); break;
    case GraphKind::Connected: params.connected = true; break;
    case GraphKind::BalancedConnected:
      params.connected = true;
      params.model = SignatureModel::Balanced;
      break;
    case GraphKind::AntibalancedConnected:
      params.connected = true;
      params.model = SignatureModel::Antibalanced;
      break;
    case GraphKind::None: break;
  }
  return random_signed_graph(params);
}

Outcomes run_body(const CheckSpec& spec, const std::optional<SignedGraph>& g, const SuiteConfig& cfg,
                  std::uint64_t trial) {
  Outcomes out;
  Rng rng = body_rng(cfg.seed, trial, check_index(spec.name));
  static const SignedGraph empty;
  try {
    spec.body(g ? *g : empty, rng, cfg, out);
  } catch (const Error& e) {
    Outcome o;
    o.record = spec.name + "-error";
    o.details = {{"error", e.what()}};
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<std::string> selected_checks(const SuiteConfig& cfg) {
  if (!cfg.checks.empty()) return cfg.checks;
  std::vector<std::string> all;
  for (const auto& c : registry()) all.push_back(c.name);
  return all;
}

void validate(const SuiteConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) throw ConfigError("n range must satisfy 1 <= n_min <= n_max");
  if (!(cfg.density > 0.0 && cfg.density <= 1.0)) throw ConfigError("density must lie in (0, 1]");
  if (cfg.models.empty()) throw ConfigError("at least one signature model is required");
  if (cfg.p.empty()) throw ConfigError("at least one p is required");
  for (double p : cfg.p)
    if (!(p >= 1.0)) throw ConfigError("every p must be at least 1");
  if (!(cfg.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  const CheegerCaps caps;
  for (const auto& name : selected_checks(cfg)) {
    find_check(name);
    if (name == "cheeger-two-sided" && cfg.n_max > caps.fallback)
      throw ConfigError("cheeger-two-sided enumerates every k; n_max must be at most " + std::to_string(caps.fallback));
    if (name == "one-lap-first-equals-h1" && cfg.n_max > 12)
      throw ConfigError("one-lap-first-equals-h1 enumerates 3^n patterns; n_max must be at most 12");
  }
}

template <class T>
T get_or(const nlohmann::json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string(key) + ": wrong type");
  }
}

}  // namespace

const std::vector<std::string>& suite_check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : registry()) v.push_back(c.name);
    return v;
  }();
  return names;
}

SuiteConfig suite_config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"seed",   "trials",  "n",         "density",   "models",
                                           "p",      "mu_mode", "checks",    "tolerance", "fuzz_samples"};
  for (const auto& [k, v] : doc.items())
    if (!known.count(k)) throw ConfigError("unknown config key '" + k + "'");
  SuiteConfig cfg;
  cfg.seed = get_or<std::uint64_t>(doc, "seed", cfg.seed);
  cfg.trials = get_or<std::size_t>(doc, "trials", cfg.trials);
  if (doc.contains("n")) {
    const auto range = get_or<std::vector<std::size_t>>(doc, "n", {});
    if (range.size() != 2) throw ConfigError("n: expected [n_min, n_max]");
    cfg.n_min = range[0];
    cfg.n_max = range[1];
  }
  cfg.density = get_or<double>(doc, "density", cfg.density);
  if (doc.contains("models")) {
    cfg.models.clear();
    for (const auto& m : get_or<std::vector<std::string>>(doc, "models", {}))
      cfg.models.push_back(parse_signature_model(m));
  }
  cfg.p = get_or<std::vector<double>>(doc, "p", cfg.p);
  if (doc.contains("mu_mode")) cfg.mu_mode = parse_mu_mode(get_or<std::string>(doc, "mu_mode", ""));
  cfg.checks = get_or<std::vector<std::string>>(doc, "checks", cfg.checks);
  cfg.tolerance = get_or<double>(doc, "tolerance", cfg.tolerance);
  cfg.fuzz_samples = get_or<std::size_t>(doc, "fuzz_samples", cfg.fuzz_samples);
  validate(cfg);
  return cfg;
}

ordered_json to_json(const SuiteConfig& cfg) {
  ordered_json models = ordered_json::array();
  for (auto m : cfg.models) models.push_back(to_string(m));
  return ordered_json{{"seed", cfg.seed},
                      {"trials", cfg.trials},
                      {"n", {cfg.n_min, cfg.n_max}},
                      {"density", cfg.density},
                      {"models", models},
                      {"p", cfg.p},
                      {"mu_mode", to_string(cfg.mu_mode)},
                      {"checks", selected_checks(cfg)},
                      {"tolerance", cfg.tolerance},
                      {"fuzz_samples", cfg.fuzz_samples}};
}

SuiteReport run_suite(const SuiteConfig& config) {
  validate(config);
  const auto names = selected_checks(config);
  struct Task {
    std::size_t check;
    std::uint64_t trial;
  };
  std::vector<Task> tasks;
  for (const auto& name : names) {
    const std::size_t ci = check_index(name);
    const std::uint64_t trials = registry()[ci].once ? 1 : config.trials;
    for (std::uint64_t t = 0; t < trials; ++t) tasks.push_back({ci, t});
  }
  struct TaskResult {
    std::optional<SignedGraph> graph;
    Outcomes outcomes;
  };
  std::vector<TaskResult> results(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    const CheckSpec& spec = registry()[tasks[i].check];
    Rng grng = graph_rng(config.seed, tasks[i].trial, tasks[i].check);
    results[i].graph = trial_graph(spec, config, tasks[i].trial, grng);
    results[i].outcomes = run_body(spec, results[i].graph, config, tasks[i].trial);
  });

  SuiteReport rep;
  rep.config = config;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const CheckSpec& spec = registry()[tasks[i].check];
    for (const auto& o : results[i].outcomes) {
      CheckAggregate& agg = rep.records[o.record];
      if (o.skipped) {
        ++agg.skipped;
        ++agg.skip_reasons[o.reason];
        continue;
      }
      ++agg.checked;
      if (o.pass) {
        ++agg.passed;
        continue;
      }
      ++agg.failed;
      FailureBundle b;
      b.check = spec.name;
      b.record = o.record;
      b.seed = config.seed;
      b.trial = tasks[i].trial;
      b.graph = results[i].graph ? graph_to_json(*results[i].graph) : ordered_json(nullptr);
      b.function = o.f && results[i].graph ? function_to_json(*results[i].graph, *o.f) : ordered_json(nullptr);
      if (o.f && results[i].graph && o.f->size() != results[i].graph->size()) b.function = nullptr;
      b.details = o.details;
      rep.failures.push_back(std::move(b));
    }
  }
  return rep;
}

ordered_json to_json(const FailureBundle& b) {
  return ordered_json{{"check", b.check}, {"record", b.record},     {"seed", b.seed},      {"trial", b.trial},
                      {"graph", b.graph}, {"function", b.function}, {"details", b.details}};
}

FailureBundle failure_bundle_from_json(const nlohmann::json& doc) {
  FailureBundle b;
  try {
    b.check = doc.at("check").get<std::string>();
    b.record = doc.at("record").get<std::string>();
    b.seed = doc.at("seed").get<std::uint64_t>();
    b.trial = doc.at("trial").get<std::uint64_t>();
    b.graph = ordered_json::parse(doc.at("graph").dump());
    if (doc.contains("function")) b.function = ordered_json::parse(doc.at("function").dump());
    if (doc.contains("details")) b.details = ordered_json::parse(doc.at("details").dump());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("failure bundle: ") + e.what());
  }
  return b;
}

ordered_json to_json(const SuiteReport& report) {
  ordered_json records = ordered_json::object();
  for (const auto& [name, agg] : report.records) {
    ordered_json reasons = ordered_json::object();
    for (const auto& [r, c] : agg.skip_reasons) reasons[r] = c;
    records[name] = {{"checked", agg.checked}, {"passed", agg.passed}, {"failed", agg.failed},
                     {"skipped", agg.skipped}, {"skip_reasons", reasons}};
  }
  ordered_json failures = ordered_json::array();
  for (const auto& b : report.failures) failures.push_back(to_json(b));
  return ordered_json{{"config", to_json(report.config)}, {"ok", report.ok()}, {"records", records},
                      {"failures", failures}};
}

bool replay_bundle(const FailureBundle& bundle, const SuiteConfig& config) {
  const CheckSpec& spec = find_check(bundle.check);
  std::optional<SignedGraph> g;
  if (!bundle.graph.is_null()) g = graph_from_json(nlohmann::json::parse(bundle.graph.dump()));
  SuiteConfig cfg = config;
  cfg.seed = bundle.seed;
  for (const auto& o : run_body(spec, g, cfg, bundle.trial))
    if (o.record == bundle.record && !o.skipped && !o.pass) return true;
  return false;
}

}  // namespace sgspec
