#include "sgspec/transforms.hpp"

#include <cmath>
#include <limits>

#include "sgspec/error.hpp"
#include "sgspec/operators.hpp"
#include "sgspec/rational.hpp"
#include "sgspec/spectra.hpp"

namespace sgspec {

SurgeryResult remove_edge(const SignedGraph& g, double p, const VertexFunction& f, Index x0, Index y0,
                          bool exact) {
  if (!(p > 1.0)) throw UnsupportedError("edge removal needs p > 1");
  if (f.size() != g.size()) throw DomainError("function is not defined on the vertex set");
  auto e = g.find_edge(x0, y0);
  if (!e) throw NotFoundError("no edge between the given vertices");
  if (f[x0] == 0.0 || f[y0] == 0.0) throw DomainError("edge removal requires f nonzero at both endpoints");
  if (exact && p != 2.0) throw UnsupportedError("exact potentials are available for p = 2 only");
  const Edge& ed = g.edge(*e);

  auto shifted = [&](Index a, Index b) {
    if (exact) {
      Rational ratio = to_rational(f[b]) / to_rational(f[a]);
      Rational k = to_rational(g.kappa(a)) + to_rational(ed.w) * (Rational(1) - ed.sigma * ratio);
      return to_double(k);
    }
    return g.kappa(a) + ed.w * phi(p, 1.0 - ed.sigma * f[b] / f[a]);
  };
  std::vector<double> kappa = g.kappa();
  kappa[x0] = shifted(x0, y0);
  kappa[y0] = shifted(y0, x0);

  SurgeryResult res{g.without_edge(*e).with_kappa(kappa), f, {}, {}};
  for (Index x : {x0, y0}) res.kappa_changes.push_back({x, g.kappa(x), kappa[x]});
  for (Index x = 0; x < g.size(); ++x) res.kept.push_back(x);
  return res;
}

SurgeryResult remove_node(const SignedGraph& g, Index x0, const std::optional<VertexFunction>& f) {
  if (x0 >= g.size()) throw NotFoundError("vertex index out of range");
  if (f && f->size() != g.size()) throw DomainError("function is not defined on the vertex set");
  std::vector<Index> keep;
  for (Index x = 0; x < g.size(); ++x)
    if (x != x0) keep.push_back(x);
  std::vector<double> kappa;
  for (Index x : keep) kappa.push_back(g.kappa(x));
  std::vector<KappaChange> changes;
  for (const auto& nb : g.neighbors(x0)) {
    const Index nx = nb.y < x0 ? nb.y : nb.y - 1;
    changes.push_back({nx, kappa[nx], kappa[nx] + nb.w});
    kappa[nx] += nb.w;
  }
  SurgeryResult res{g.induced(keep).with_kappa(kappa), std::nullopt, std::move(changes), keep};
  if (f) {
    VertexFunction h(keep.size());
    for (Index i = 0; i < keep.size(); ++i) h[i] = (*f)[keep[i]];
    res.f = std::move(h);
  }
  return res;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1-based access with the -inf / +inf conventions outside 1..n.
double at(const std::vector<double>& v, long k) {
  if (k < 1) return -kInf;
  if (k > static_cast<long>(v.size())) return kInf;
  return v[k - 1];
}

InterlacingCheck make_check(int k, double lo, double mid, double hi, double tol) {
  InterlacingCheck c{k, lo, mid, hi, 0.0, false};
  c.slack = std::min(mid - lo, hi - mid);
  c.pass = c.slack >= -tol * (1.0 + std::abs(mid));
  return c;
}

}  // namespace

InterlacingReport interlacing_check_p2(const SignedGraph& g, const std::vector<SurgeryStep>& steps,
                                       const std::optional<VertexFunction>& f, double slack_tol, bool exact) {
  InterlacingReport rep;
  SignedGraph current = g;
  std::optional<VertexFunction> cur_f = f;
  std::vector<double> lambda = spectrum_p2(current).values;
  const std::vector<double> original = lambda;
  bool nodes_only = true;
  std::size_t removed_nodes = 0;

  for (const auto& step : steps) {
    InterlacingStep st;
    st.before = lambda;
    SurgeryResult sr;
    int product_sign = 0;
    if (const auto* es = std::get_if<RemoveEdgeStep>(&step)) {
      nodes_only = false;
      if (!cur_f) throw DomainError("edge removal needs an eigenfunction");
      auto e = current.find_edge(es->x0, es->y0);
      if (!e) throw NotFoundError("no edge between the given vertices");
      const double prod = (*cur_f)[es->x0] * current.edge(*e).sigma * (*cur_f)[es->y0];
      product_sign = (prod > 0) - (prod < 0);
      sr = remove_edge(current, 2.0, *cur_f, es->x0, es->y0, exact);
      st.kind = "remove-edge";
    } else {
      const auto& ns = std::get<RemoveNodeStep>(step);
      sr = remove_node(current, ns.x0, cur_f);
      st.kind = "remove-node";
      ++removed_nodes;
    }
    std::vector<double> eta = spectrum_p2(sr.graph).values;
    st.after = eta;
    const long n = static_cast<long>(lambda.size());
    if (st.kind == "remove-edge") {
      if (product_sign < 0) {
        st.family = "eta[k-1] <= lambda[k] <= eta[k]";
        for (long k = 1; k <= n; ++k)
          st.checks.push_back(make_check(static_cast<int>(k), at(eta, k - 1), at(lambda, k), at(eta, k), slack_tol));
      } else {
        st.family = "eta[k] <= lambda[k] <= eta[k+1]";
        for (long k = 1; k <= n; ++k)
          st.checks.push_back(make_check(static_cast<int>(k), at(eta, k), at(lambda, k), at(eta, k + 1), slack_tol));
      }
    } else {
      st.family = "lambda[k] <= eta[k] <= lambda[k+1]";
      for (long k = 1; k <= n - 1; ++k)
        st.checks.push_back(make_check(static_cast<int>(k), at(lambda, k), at(eta, k), at(lambda, k + 1), slack_tol));
    }
    for (const auto& c : st.checks) st.pass = st.pass && c.pass;
    rep.pass = rep.pass && st.pass;
    rep.steps.push_back(std::move(st));
    current = std::move(sr.graph);
    cur_f = std::move(sr.f);
    lambda = std::move(eta);
  }

  if (nodes_only && removed_nodes > 0) {
    InterlacingStep cum;
    cum.kind = "remove-nodes";
    const long m = static_cast<long>(removed_nodes);
    cum.family = "lambda[k] <= eta[k] <= lambda[k+m]";
    cum.before = original;
    cum.after = lambda;
    const long n = static_cast<long>(original.size());
    for (long k = 1; k <= n - m; ++k)
      cum.checks.push_back(
          make_check(static_cast<int>(k), at(original, k), at(lambda, k), at(original, k + m), slack_tol));
    for (const auto& c : cum.checks) cum.pass = cum.pass && c.pass;
    rep.pass = rep.pass && cum.pass;
    rep.cumulative = std::move(cum);
  }
  return rep;
}

}  // namespace sgspec
