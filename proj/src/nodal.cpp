#include "sgspec/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sgspec/error.hpp"

namespace sgspec {

namespace {

int sign_of(double v) { return (v > 0) - (v < 0); }

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  Index find(Index x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<Index> parent_;
};

void require_nonzero(const SignedGraph& g, const VertexFunction& f) {
  if (f.size() != g.size()) throw DomainError("function is not defined on the vertex set");
  if (f.is_zero()) throw DomainError("nodal domains of the zero function");
}

// Groups the support by union-find roots, ordered by smallest member.
std::vector<std::vector<Index>> groups_of(const VertexFunction& f, UnionFind& uf) {
  std::vector<std::vector<Index>> out;
  std::vector<long> slot(f.size(), -1);
  for (Index x = 0; x < f.size(); ++x) {
    if (f[x] == 0.0) continue;
    Index r = uf.find(x);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(x);
  }
  return out;
}

}  // namespace

VertexFunction snap_zeros(const VertexFunction& f, double rel_tol) {
  const double cut = rel_tol * f.max_abs();
  VertexFunction out = f;
  for (auto& v : out.values)
    if (std::abs(v) <= cut) v = 0.0;
  return out;
}

StrongDomains strong_domains(const SignedGraph& g, const VertexFunction& f) {
  require_nonzero(g, f);
  UnionFind uf(g.size());
  for (const auto& e : g.edges())
    if (f[e.u] * e.sigma * f[e.v] > 0) uf.unite(e.u, e.v);
  StrongDomains out;
  out.domains = groups_of(f, uf);
  out.count = out.domains.size();
  return out;
}

WeakDomains weak_domains(const SignedGraph& g, const VertexFunction& f) {
  require_nonzero(g, f);
  const std::size_t n = g.size();
  UnionFind uf(n);
  // From each support vertex, walk through zeros carrying the accumulated sign; the state
  // (vertex, sign) is visited once per launch.
  std::vector<int> seen(2 * n, -1);
  std::vector<std::pair<Index, int>> stack;
  for (Index u = 0; u < n; ++u) {
    const int su = sign_of(f[u]);
    if (su == 0) continue;
    stack.clear();
    stack.emplace_back(u, su);
    while (!stack.empty()) {
      auto [x, s] = stack.back();
      stack.pop_back();
      for (const auto& nb : g.neighbors(x)) {
        const int t = s * nb.sigma;
        const int fy = sign_of(f[nb.y]);
        if (fy != 0) {
          if (t * fy > 0) uf.unite(u, nb.y);
          continue;
        }
        const Index state = 2 * nb.y + (t > 0 ? 1 : 0);
        if (seen[state] == static_cast<int>(u)) continue;
        seen[state] = static_cast<int>(u);
        stack.emplace_back(nb.y, t);
      }
    }
  }
  WeakDomains out;
  out.classes = groups_of(f, uf);
  out.count = out.classes.size();

  // Zero components (sign-blind, through zeros only) attach to every class they touch.
  UnionFind zc(n);
  for (const auto& e : g.edges())
    if (f[e.u] == 0.0 && f[e.v] == 0.0) zc.unite(e.u, e.v);
  std::vector<Index> class_of(n, SIZE_MAX);
  for (Index c = 0; c < out.classes.size(); ++c)
    for (Index x : out.classes[c]) class_of[x] = c;
  std::vector<std::vector<bool>> touches(out.count, std::vector<bool>(n, false));
  for (const auto& e : g.edges()) {
    const bool zu = f[e.u] == 0.0, zv = f[e.v] == 0.0;
    if (zu && !zv) touches[class_of[e.v]][zc.find(e.u)] = true;
    if (zv && !zu) touches[class_of[e.u]][zc.find(e.v)] = true;
  }
  for (Index c = 0; c < out.count; ++c) {
    std::vector<Index> closure = out.classes[c];
    for (Index z = 0; z < n; ++z)
      if (f[z] == 0.0 && touches[c][zc.find(z)]) closure.push_back(z);
    std::sort(closure.begin(), closure.end());
    out.closures.push_back(std::move(closure));
  }
  return out;
}

DualCounts dual_counts(const SignedGraph& g, const VertexFunction& f) {
  const SignedGraph dual = g.negated();
  return {strong_domains(dual, f).count, weak_domains(dual, f).count};
}

NodalSummary nodal_quantities(const SignedGraph& g, const VertexFunction& f) {
  require_nonzero(g, f);
  NodalSummary s;
  s.strong = strong_domains(g, f);
  s.weak = weak_domains(g, f);
  const SignedGraph dual = g.negated();
  s.dual_strong = strong_domains(dual, f);
  s.dual_weak = weak_domains(dual, f);
  for (Index x = 0; x < g.size(); ++x) s.zeros += f[x] == 0.0;

  UnionFind pos(g.size()), neg(g.size());
  std::size_t pos_classes = g.size(), neg_classes = g.size();
  for (const auto& e : g.edges()) {
    const double prod = f[e.u] * e.sigma * f[e.v];
    if (f[e.u] == 0.0 || f[e.v] == 0.0) {
      ++s.edges_zero;
    } else if (prod > 0) {
      ++s.edges_positive;
      if (pos.find(e.u) != pos.find(e.v)) --pos_classes;
      pos.unite(e.u, e.v);
    } else {
      ++s.edges_negative;
      if (neg.find(e.u) != neg.find(e.v)) --neg_classes;
      neg.unite(e.u, e.v);
    }
  }
  const long n = static_cast<long>(g.size());
  s.surplus_positive = static_cast<long>(s.edges_positive) - n + static_cast<long>(pos_classes);
  s.surplus_negative = static_cast<long>(s.edges_negative) - n + static_cast<long>(neg_classes);
  s.identity_rhs = static_cast<long>(g.edge_count()) - static_cast<long>(s.edges_zero) +
                   static_cast<long>(s.zeros) - n - s.surplus_positive + static_cast<long>(s.strong.count);
  s.identity_holds = s.identity_rhs == static_cast<long>(s.edges_negative);
  return s;
}

bool BoundReport::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const TheoremRecord& r) { return r.skipped || r.pass; });
}

namespace {

TheoremRecord compare(std::string name, double lhs, const char* rel, double rhs,
                      std::vector<std::pair<std::string, double>> inputs) {
  TheoremRecord r;
  r.theorem = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.relation = rel;
  r.inputs = std::move(inputs);
  const std::string op = rel;
  if (op == "<=")
    r.pass = lhs <= rhs;
  else if (op == ">=")
    r.pass = lhs >= rhs;
  else
    r.pass = lhs == rhs;
  return r;
}

TheoremRecord skipped(std::string name, std::string reason) {
  TheoremRecord r;
  r.theorem = std::move(name);
  r.skipped = true;
  r.skip_reason = std::move(reason);
  return r;
}

}  // namespace

BoundReport bound_report(const SignedGraph& g, const VertexFunction& f, const SpectrumContext& ctx) {
  const NodalSummary s = nodal_quantities(g, f);
  const double n = static_cast<double>(g.size());
  const double c = static_cast<double>(components(g).size());
  const double S = static_cast<double>(s.strong.count), W = static_cast<double>(s.weak.count);
  const double Sd = static_cast<double>(s.dual_strong.count), Wd = static_cast<double>(s.dual_weak.count);
  const double z = static_cast<double>(s.zeros);
  const double lplus = static_cast<double>(s.surplus_positive);

  BoundReport rep;
  rep.records.push_back(compare("weak-le-strong", W, "<=", S, {{"weak", W}, {"strong", S}}));
  rep.records.push_back(compare("dual-weak-le-strong", Wd, "<=", Sd, {{"dual_weak", Wd}, {"dual_strong", Sd}}));
  rep.records.push_back(compare("negative-edge-identity", static_cast<double>(s.edges_negative), "==",
                                static_cast<double>(s.identity_rhs),
                                {{"E", static_cast<double>(g.edge_count())},
                                 {"E_z", static_cast<double>(s.edges_zero)},
                                 {"z", z},
                                 {"l_plus", lplus},
                                 {"strong", S}}));

  const bool positional_p = ctx.p == 1.0 || ctx.p == 2.0;
  if (!ctx.position || !positional_p) {
    rep.partial = true;
    const std::string why = !positional_p ? "eigenvalue position uncertified for p = " + std::to_string(ctx.p)
                                          : "no eigenvalue position supplied";
    for (const char* name : {"strong-upper", "dual-strong-upper", "weak-upper", "minimal-support-strong", "forest-strong-count", "strong-lower-gap", "strong-lower-multiplicity"})
      rep.records.push_back(skipped(name, why));
    return rep;
  }
  const int k_int = ctx.position->k, r_int = ctx.position->r;
  if (k_int < 1 || r_int < 1 || k_int + r_int - 1 > static_cast<int>(g.size()))
    throw DomainError("inconsistent eigenvalue position: k + r - 1 exceeds n");
  const double k = k_int, r = r_int;
  const std::vector<std::pair<std::string, double>> pos_inputs = {{"n", n}, {"k", k}, {"r", r}, {"c", c}};
  auto with = [&](std::vector<std::pair<std::string, double>> extra) {
    auto all = pos_inputs;
    all.insert(all.end(), extra.begin(), extra.end());
    return all;
  };

  rep.records.push_back(compare("strong-upper", S, "<=", k + r - 1, with({{"strong", S}})));
  rep.records.push_back(compare("dual-strong-upper", Sd, "<=", n - k + 1, with({{"dual_strong", Sd}})));
  if (ctx.p > 1.0) {
    rep.records.push_back(compare("weak-upper", W, "<=", k + c - 1, with({{"weak", W}})));
    rep.records.push_back(compare("dual-weak-upper", Wd, "<=", n - k - r + c + 1, with({{"dual_weak", Wd}})));
  } else {
    rep.records.push_back(skipped("weak-upper", "stated for p > 1"));
  }
  if (ctx.minimal_support) {
    rep.records.push_back(compare("minimal-support-strong", S, "<=", k, with({{"strong", S}})));
    rep.records.push_back(compare("minimal-support-dual-strong", Sd, "<=", n - k - r + 2, with({{"dual_strong", Sd}})));
    if (ctx.p == 1.0) {
      rep.records.push_back(compare("minimal-support-single-domain", S, "==", 1, with({{"strong", S}})));
      rep.records.push_back(compare("minimal-support-size", n - z, "<=", n - k - r + 2, with({{"support", n - z}})));
    }
  } else {
    rep.records.push_back(skipped("minimal-support-strong", "eigenfunction not known to have minimal support"));
  }

  if (is_forest(g) && s.zeros == 0) {
    rep.records.push_back(compare("forest-strong-count", S, "==", k + c - 1, with({{"strong", S}})));
    rep.records.push_back(compare("forest-multiplicity", r, "==", c, with({})));
  } else {
    rep.records.push_back(skipped("forest-strong-count", "requires a forest and a nowhere-zero eigenfunction"));
  }

  if (c != 1.0) {
    rep.records.push_back(skipped("strong-lower-gap", "requires a connected graph"));
    rep.records.push_back(skipped("strong-lower-multiplicity", "requires a connected graph"));
  } else if (ctx.p == 1.0) {
    rep.records.push_back(skipped("strong-lower-gap", "surgery argument needs p > 1"));
    rep.records.push_back(skipped("strong-lower-multiplicity", "surgery argument needs p > 1"));
  } else {
    std::vector<Index> support;
    for (Index x = 0; x < g.size(); ++x)
      if (f[x] != 0.0) support.push_back(x);
    const SignedGraph sub = g.induced(support);
    const double lsub = static_cast<double>(cycle_surplus(sub));
    const double csub = static_cast<double>(components(sub).size());
    auto lower_inputs = with({{"strong", S}, {"l_sub", lsub}, {"c_sub", csub}, {"l_plus", lplus}, {"z", z}});
    if (k_int >= 2)
      rep.records.push_back(compare("strong-lower-gap", S, ">=", (k - 1) - lsub + lplus - z + csub, lower_inputs));
    else
      rep.records.push_back(skipped("strong-lower-gap", "no variational eigenvalue below lambda_1"));
    rep.records.push_back(compare("strong-lower-multiplicity", S, ">=", k + r - 1 - lsub + lplus - z, lower_inputs));
  }
  return rep;
}

}  // namespace sgspec
