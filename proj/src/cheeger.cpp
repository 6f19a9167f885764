#include "sgspec/cheeger.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "sgspec/error.hpp"
#include "sgspec/parallel.hpp"
#include "sgspec/random.hpp"

namespace sgspec {

namespace {

void require_zero_kappa(const SignedGraph& g) {
  if (!g.kappa_is_zero()) throw UnsupportedError("Cheeger constants are defined for kappa = 0 only");
}

// side[x]: +1 for V1, -1 for V2, 0 outside.
std::vector<int> side_map(const SignedGraph& g, const std::vector<Index>& v1, const std::vector<Index>& v2) {
  std::vector<int> side(g.size(), 0);
  for (Index x : v1) {
    if (x >= g.size()) throw NotFoundError("vertex index out of range");
    if (side[x] != 0) throw DomainError("vertex listed twice");
    side[x] = 1;
  }
  for (Index x : v2) {
    if (x >= g.size()) throw NotFoundError("vertex index out of range");
    if (side[x] != 0) throw DomainError("the two sides of a bipartition must be disjoint");
    side[x] = -1;
  }
  if (v1.empty() && v2.empty()) throw DomainError("a bipartition needs a nonempty union");
  return side;
}

// Numerator = sum of degrees over omega minus twice the weight of satisfied internal edges.
template <class T, class Conv>
std::pair<T, T> beta_parts(const SignedGraph& g, const std::vector<int>& side, Conv conv) {
  T num(0), vol(0);
  for (Index x = 0; x < g.size(); ++x) {
    if (side[x] == 0) continue;
    vol += conv(g.mu(x));
    for (const auto& nb : g.neighbors(x)) num += conv(nb.w);
  }
  for (const auto& e : g.edges()) {
    if (side[e.u] != 0 && side[e.v] != 0 && side[e.u] * e.sigma * side[e.v] == 1) num -= T(2) * conv(e.w);
  }
  return {num, vol};
}

}  // namespace

double beta(const SignedGraph& g, const std::vector<Index>& v1, const std::vector<Index>& v2) {
  require_zero_kappa(g);
  auto side = side_map(g, v1, v2);
  auto [num, vol] = beta_parts<double>(g, side, [](double v) { return v; });
  return num / vol;
}

Rational beta_exact(const SignedGraph& g, const std::vector<Index>& v1, const std::vector<Index>& v2) {
  require_zero_kappa(g);
  auto side = side_map(g, v1, v2);
  auto [num, vol] = beta_parts<Rational>(g, side, [](double v) { return to_rational(v); });
  return num / vol;
}

FrustrationResult frustration_index(const SignedGraph& g, std::vector<Index> omega, std::uint64_t seed) {
  std::sort(omega.begin(), omega.end());
  omega.erase(std::unique(omega.begin(), omega.end()), omega.end());
  if (omega.empty()) throw DomainError("frustration index of an empty set");
  for (Index x : omega)
    if (x >= g.size()) throw NotFoundError("vertex index out of range");
  const std::size_t m = omega.size();
  std::vector<Index> pos(g.size(), m);
  for (Index i = 0; i < m; ++i) pos[omega[i]] = i;
  struct LocalEdge {
    Index a, b;
    double w;
    int sigma;
  };
  std::vector<std::vector<LocalEdge>> inc(m);
  std::vector<LocalEdge> local;
  for (const auto& e : g.edges()) {
    if (pos[e.u] == m || pos[e.v] == m) continue;
    LocalEdge le{pos[e.u], pos[e.v], e.w, e.sigma};
    local.push_back(le);
    inc[le.a].push_back(le);
    inc[le.b].push_back(le);
  }
  auto violated_weight = [&](const std::vector<int>& tau) {
    double s = 0.0;
    for (const auto& le : local)
      if (tau[le.a] * le.sigma * tau[le.b] == -1) s += le.w;
    return s;
  };

  FrustrationResult res;
  res.omega = omega;
  std::vector<int> tau(m, 1);
  if (m <= 24) {
    // Gray-code walk over tau with tau[0] fixed to +1.
    double current = violated_weight(tau);
    double best = current;
    std::vector<int> best_tau = tau;
    const std::uint64_t total = std::uint64_t{1} << (m - 1);
    for (std::uint64_t step = 1; step < total; ++step) {
      const Index flip = 1 + static_cast<Index>(std::countr_zero(step));
      for (const auto& le : inc[flip]) {
        const bool before = tau[le.a] * le.sigma * tau[le.b] == -1;
        current += before ? -le.w : le.w;
      }
      tau[flip] = -tau[flip];
      if (current < best - 1e-12 * (1.0 + best)) {
        best = current;
        best_tau = tau;
      }
    }
    res.tau = best_tau;
    res.value = 2.0 * violated_weight(best_tau);
    return res;
  }

  res.heuristic = true;
  Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < 32; ++restart) {
    for (auto& t : tau) t = rng.sign();
    tau[0] = 1;
    bool improved = true;
    while (improved) {
      improved = false;
      for (Index i = 1; i < m; ++i) {
        double delta = 0.0;
        for (const auto& le : inc[i]) delta += (tau[le.a] * le.sigma * tau[le.b] == -1) ? -le.w : le.w;
        if (delta < -1e-12) {
          tau[i] = -tau[i];
          improved = true;
        }
      }
    }
    const double v = violated_weight(tau);
    if (v < best) {
      best = v;
      res.tau = tau;
    }
  }
  res.value = 2.0 * best;
  return res;
}

std::size_t CheegerCaps::cap_for(int k) const {
  auto it = n_max.find(k);
  return it == n_max.end() ? fallback : it->second;
}

namespace {

struct Search {
  const SignedGraph& g;
  int k;
  std::vector<double> deg;
  // label[x] = -1 unused, else group; side[x] = +-1.
  std::vector<int> label, side;
  std::vector<double> num, vol;
  int opened = 0;

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_label, best_side;
  std::uint64_t evaluated = 0;

  Search(const SignedGraph& graph, int groups)
      : g(graph), k(groups), label(graph.size(), -1), side(graph.size(), 0), num(groups, 0.0), vol(groups, 0.0) {
    for (Index x = 0; x < g.size(); ++x) deg.push_back(g.degree(x));
  }

  double place(Index x, int grp, int s) {
    label[x] = grp;
    side[x] = s;
    double delta = deg[x];
    for (const auto& nb : g.neighbors(x)) {
      if (nb.y < x && label[nb.y] == grp && s * nb.sigma * side[nb.y] == 1) delta -= 2.0 * nb.w;
    }
    num[grp] += delta;
    vol[grp] += g.mu(x);
    return delta;
  }

  void unplace(Index x, double delta) {
    const int grp = label[x];
    num[grp] -= delta;
    vol[grp] -= g.mu(x);
    label[x] = -1;
    side[x] = 0;
  }

  void leaf() {
    ++evaluated;
    double v = 0.0;
    for (int i = 0; i < k; ++i) v = std::max(v, num[i] / vol[i]);
    if (v < best) {
      best = v;
      best_label = label;
      best_side = side;
    }
  }

  // Canonical choices at vertex x, in enumeration order.
  template <class Visit>
  void for_each_choice(Index x, Visit&& visit) {
    const std::size_t remaining = g.size() - x;  // including x
    if (remaining > static_cast<std::size_t>(k - opened)) visit(-1, 0);
    for (int grp = 0; grp < opened; ++grp) {
      if (remaining > static_cast<std::size_t>(k - opened)) {
        visit(grp, 1);
        visit(grp, -1);
      }
    }
    if (opened < k) visit(opened, 1);
  }

  void apply_choice(Index x, int grp, int s, double& delta) {
    if (grp < 0) return;
    if (grp == opened) ++opened;
    delta = place(x, grp, s);
  }

  void undo_choice(Index x, int grp, double delta) {
    if (grp < 0) return;
    unplace(x, delta);
    if (grp == opened - 1) {
      bool still_used = false;
      for (Index y = 0; y < x; ++y) still_used |= label[y] == grp;
      if (!still_used) --opened;
    }
  }

  void dfs(Index x) {
    if (x == g.size()) {
      if (opened == k) leaf();
      return;
    }
    for_each_choice(x, [&](int grp, int s) {
      double delta = 0.0;
      apply_choice(x, grp, s, delta);
      dfs(x + 1);
      undo_choice(x, grp, delta);
    });
  }
};

struct Prefix {
  std::vector<std::pair<int, int>> choices;
};

void collect_prefixes(Search& s, Index x, Index depth, std::vector<std::pair<int, int>>& current,
                      std::vector<Prefix>& out) {
  if (x == depth) {
    out.push_back({current});
    return;
  }
  s.for_each_choice(x, [&](int grp, int sd) {
    double delta = 0.0;
    s.apply_choice(x, grp, sd, delta);
    current.emplace_back(grp, sd);
    collect_prefixes(s, x + 1, depth, current, out);
    current.pop_back();
    s.undo_choice(x, grp, delta);
  });
}

SubBipartition to_sub_bipartition(const std::vector<int>& label, const std::vector<int>& side, int k) {
  SubBipartition sb;
  sb.pairs.resize(k);
  for (Index x = 0; x < label.size(); ++x) {
    if (label[x] < 0) continue;
    auto& pr = sb.pairs[label[x]];
    (side[x] > 0 ? pr.first : pr.second).push_back(x);
  }
  return sb;
}

double objective(const SignedGraph& g, const std::vector<int>& label, const std::vector<int>& side, int k,
                 double* sum_out) {
  std::vector<double> num(k, 0.0), vol(k, 0.0);
  for (Index x = 0; x < g.size(); ++x) {
    if (label[x] < 0) continue;
    vol[label[x]] += g.mu(x);
    num[label[x]] += g.degree(x);
  }
  for (const auto& e : g.edges()) {
    if (label[e.u] >= 0 && label[e.u] == label[e.v] && side[e.u] * e.sigma * side[e.v] == 1)
      num[label[e.u]] -= 2.0 * e.w;
  }
  double worst = 0.0, sum = 0.0;
  for (int i = 0; i < k; ++i) {
    if (vol[i] == 0.0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, num[i] / vol[i]);
    sum += num[i] / vol[i];
  }
  if (sum_out) *sum_out = sum;
  return worst;
}

// Canonical relabeling: groups ordered by smallest vertex, that vertex on side +1.
void canonicalize(std::vector<int>& label, std::vector<int>& side, int k) {
  std::vector<int> remap(k, -1), flip(k, 1);
  int next = 0;
  for (Index x = 0; x < label.size(); ++x) {
    if (label[x] < 0) continue;
    if (remap[label[x]] < 0) {
      remap[label[x]] = next++;
      flip[label[x]] = side[x];
    }
  }
  for (Index x = 0; x < label.size(); ++x) {
    if (label[x] < 0) continue;
    side[x] *= flip[label[x]];
    label[x] = remap[label[x]];
  }
}

CheegerResult heuristic_search(const SignedGraph& g, int k, std::uint64_t seed) {
  const std::size_t n = g.size();
  Rng rng(seed);
  CheegerResult res;
  res.heuristic = true;
  double best = std::numeric_limits<double>::infinity(), best_sum = 0.0;
  std::vector<int> best_label, best_side;
  for (int restart = 0; restart < 24; ++restart) {
    std::vector<int> label(n, -1), side(n, 0);
    std::vector<Index> perm(n);
    for (Index i = 0; i < n; ++i) perm[i] = i;
    for (Index i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
    for (int grp = 0; grp < k; ++grp) {
      label[perm[grp]] = grp;
      side[perm[grp]] = 1;
    }
    for (Index i = k; i < n; ++i) {
      if (rng.bernoulli(0.5)) {
        label[perm[i]] = static_cast<int>(rng.index(k));
        side[perm[i]] = rng.sign();
      }
    }
    double sum = 0.0;
    double cur = objective(g, label, side, k, &sum);
    bool improved = true;
    while (improved) {
      improved = false;
      for (Index x = 0; x < n; ++x) {
        const int old_label = label[x], old_side = side[x];
        for (int grp = -1; grp < k; ++grp) {
          for (int s : {1, -1}) {
            if (grp < 0 && s < 0) continue;
            if (grp == old_label && (grp < 0 || s == old_side)) continue;
            label[x] = grp;
            side[x] = grp < 0 ? 0 : s;
            double cand_sum = 0.0;
            const double cand = objective(g, label, side, k, &cand_sum);
            if (cand < cur - 1e-12 || (cand <= cur + 1e-12 && cand_sum < sum - 1e-12)) {
              cur = cand;
              sum = cand_sum;
              improved = true;
              goto next_vertex;
            }
            label[x] = old_label;
            side[x] = old_side;
          }
        }
      next_vertex:;
      }
      ++res.evaluated;
    }
    if (cur < best || (cur == best && sum < best_sum)) {
      best = cur;
      best_sum = sum;
      best_label = label;
      best_side = side;
    }
  }
  canonicalize(best_label, best_side, k);
  res.value = best;
  res.argmin = to_sub_bipartition(best_label, best_side, k);
  return res;
}

}  // namespace

CheegerResult cheeger_k(const SignedGraph& g, int k, const CheegerCaps& caps, CheegerMode mode,
                        std::uint64_t seed) {
  require_zero_kappa(g);
  const std::size_t n = g.size();
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw DomainError("h_k requires 1 <= k <= n (k = " + std::to_string(k) + ", n = " + std::to_string(n) + ")");

  CheegerResult res;
  if (mode == CheegerMode::Heuristic) {
    res = heuristic_search(g, k, seed);
  } else {
    if (n > caps.cap_for(k))
      throw CapacityError("exact h_" + std::to_string(k) + " is capped at n <= " +
                          std::to_string(caps.cap_for(k)) + " (n = " + std::to_string(n) +
                          "); use heuristic mode");
    Search root(g, k);
    const Index depth = std::min<Index>(n, 5);
    std::vector<Prefix> prefixes;
    std::vector<std::pair<int, int>> current;
    collect_prefixes(root, 0, depth, current, prefixes);

    struct TaskResult {
      double best = std::numeric_limits<double>::infinity();
      std::vector<int> label, side;
      std::uint64_t evaluated = 0;
    };
    std::vector<TaskResult> results(prefixes.size());
    parallel_for(prefixes.size(), [&](std::size_t t) {
      Search s(g, k);
      for (Index x = 0; x < prefixes[t].choices.size(); ++x) {
        double delta = 0.0;
        s.apply_choice(x, prefixes[t].choices[x].first, prefixes[t].choices[x].second, delta);
      }
      s.dfs(prefixes[t].choices.size());
      results[t] = {s.best, std::move(s.best_label), std::move(s.best_side), s.evaluated};
    });
    double best = std::numeric_limits<double>::infinity();
    const TaskResult* winner = nullptr;
    for (const auto& r : results) {
      res.evaluated += r.evaluated;
      if (r.best < best) {
        best = r.best;
        winner = &r;
      }
    }
    if (!winner) throw DomainError("no k-sub-bipartition exists");
    res.value = best;
    res.argmin = to_sub_bipartition(winner->label, winner->side, k);
  }
  res.k = k;
  Rational worst(0);
  for (const auto& pr : res.argmin.pairs) {
    res.betas.push_back(beta(g, pr.first, pr.second));
    Rational b = beta_exact(g, pr.first, pr.second);
    if (b > worst) worst = b;
  }
  res.exact_value = worst;
  res.value = to_double(worst);
  return res;
}

double degree_ratio_constant(const SignedGraph& g) {
  double c = 0.0;
  for (Index x = 0; x < g.size(); ++x) c = std::max(c, g.degree(x) / g.mu(x));
  return c;
}

TwoSidedBoundRecord check_two_sided_bound(const SignedGraph& g, double p, int k, const CertifiedEigenvalue& lambda_k,
                                          int m, const CheegerCaps& caps, double tol) {
  if (lambda_k.source == EigenSource::Uncertified)
    throw UnsupportedError("the two-sided Cheeger bound is only checked for certified eigenvalues");
  if (!(p >= 1.0)) throw UnsupportedError("p must be at least 1");
  require_zero_kappa(g);
  TwoSidedBoundRecord rec;
  rec.p = p;
  rec.k = k;
  rec.m = m;
  rec.lambda = lambda_k.value;
  rec.C = degree_ratio_constant(g);
  rec.h_k = cheeger_k(g, k, caps).value;
  rec.h_m = m == k ? rec.h_k : cheeger_k(g, m, caps).value;
  const double two = std::pow(2.0, p - 1.0);
  rec.upper = two * rec.h_k;
  rec.lower = rec.C == 0.0 ? 0.0 : two / (std::pow(rec.C, p - 1.0) * std::pow(p, p)) * std::pow(rec.h_m, p);
  rec.lower_slack = rec.lambda - rec.lower;
  rec.upper_slack = rec.upper - rec.lambda;
  const double slack = tol * (1.0 + std::abs(rec.lambda));
  rec.pass = rec.lower_slack >= -slack && rec.upper_slack >= -slack;
  return rec;
}

}  // namespace sgspec
