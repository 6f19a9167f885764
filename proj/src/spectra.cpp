#include "sgspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Dense>

#include "sgspec/error.hpp"
#include "sgspec/jacobi.hpp"
#include "sgspec/parallel.hpp"
#include "sgspec/random.hpp"

namespace sgspec {

std::vector<double> form_matrix(const SignedGraph& g) {
  const std::size_t n = g.size();
  std::vector<double> L(n * n, 0.0);
  for (Index x = 0; x < n; ++x) L[x * n + x] = g.degree(x) + g.kappa(x);
  for (const auto& e : g.edges()) {
    L[e.u * n + e.v] = -e.sigma * e.w;
    L[e.v * n + e.u] = -e.sigma * e.w;
  }
  return L;
}

const EigenGroup& SpectrumP2::group_of(Index i) const {
  for (const auto& grp : groups)
    if (i >= grp.first && i < grp.first + grp.count) return grp;
  throw DomainError("eigenvalue index out of range");
}

EigenPosition SpectrumP2::position_of(Index i) const {
  const EigenGroup& grp = group_of(i);
  return {static_cast<int>(grp.first) + 1, static_cast<int>(grp.count)};
}

SpectrumP2 spectrum_p2(const SignedGraph& g, double group_tol) {
  const std::size_t n = g.size();
  std::vector<double> M = form_matrix(g);
  std::vector<double> inv_sqrt(n);
  for (Index x = 0; x < n; ++x) inv_sqrt[x] = 1.0 / std::sqrt(g.mu(x));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) M[i * n + j] *= inv_sqrt[i] * inv_sqrt[j];
  SymmetricEigen eig = jacobi_eigen(std::move(M), n);

  SpectrumP2 spec;
  spec.values = eig.values;
  for (const auto& v : eig.vectors) {
    VertexFunction f(n);
    for (Index x = 0; x < n; ++x) f[x] = v[x] * inv_sqrt[x];
    spec.vectors.push_back(std::move(f));
  }
  for (Index i = 0; i < n; ++i) {
    const double scale = std::max({1.0, std::abs(spec.values[i]),
                                   spec.groups.empty() ? 0.0 : std::abs(spec.groups.back().value)});
    if (!spec.groups.empty() && std::abs(spec.values[i] - spec.values[i - 1]) < group_tol * scale) {
      ++spec.groups.back().count;
    } else {
      spec.groups.push_back({i, 1, spec.values[i]});
    }
  }
  return spec;
}

std::vector<VertexFunction> minimal_support_eigenfunctions(const SpectrumP2& spec, const EigenGroup& group,
                                                           double zero_tol) {
  if (group.count == 0 || spec.vectors.empty()) return {};
  const std::size_t n = spec.vectors.front().size();
  const std::size_t d = group.count;
  Eigen::MatrixXd B(n, d);
  for (std::size_t j = 0; j < d; ++j)
    for (Index x = 0; x < n; ++x) B(x, j) = spec.vectors[group.first + j][x];
  const double scale = B.cwiseAbs().maxCoeff();

  std::vector<VertexFunction> out;
  std::vector<std::vector<bool>> supports;
  for (Index keep = 0; keep < n; ++keep) {
    if (B.row(keep).cwiseAbs().maxCoeff() <= zero_tol * scale) continue;
    // C spans the coefficient subspace of vectors vanishing on the vertices forced so far.
    Eigen::MatrixXd C = Eigen::MatrixXd::Identity(d, d);
    for (Index step = 0; step < n && C.cols() > 1; ++step) {
      const Index x = (keep + 1 + step) % n;  // visit `keep` last
      Eigen::RowVectorXd row = B.row(x) * C;
      if (row.norm() <= zero_tol * scale) continue;
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(row, Eigen::ComputeFullV);
      C = C * svd.matrixV().rightCols(C.cols() - 1);
    }
    Eigen::VectorXd v = B * C.col(0);
    VertexFunction f(n);
    const double vmax = v.cwiseAbs().maxCoeff();
    for (Index x = 0; x < n; ++x) f[x] = std::abs(v[x]) <= zero_tol * vmax ? 0.0 : v[x] / vmax;
    for (Index x = 0; x < n; ++x) {
      if (f[x] != 0.0) {
        if (f[x] < 0)
          for (auto& val : f.values) val = -val;
        break;
      }
    }
    std::vector<bool> supp(n);
    for (Index x = 0; x < n; ++x) supp[x] = f[x] != 0.0;
    if (std::find(supports.begin(), supports.end(), supp) != supports.end()) continue;
    supports.push_back(supp);
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

double lp_norm(const SignedGraph& g, double p, const VertexFunction& f) {
  return std::pow(rayleigh_denominator(g, p, f), 1.0 / p);
}

bool normalize(const SignedGraph& g, double p, VertexFunction& f) {
  const double nrm = lp_norm(g, p, f);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) return false;
  for (auto& v : f.values) v /= nrm;
  return true;
}

double residual_at(const SignedGraph& g, double p, const VertexFunction& f) {
  return check_eigenpair(g, {rayleigh(g, p, f), f, p}, 0.0).max_residual;
}

// (p-1)|t|^{p-2}, with |t| floored so the derivative stays finite for p < 2.
double dphi(double p, double t, double floor) {
  if (p == 2.0) return 1.0;
  const double a = std::max(std::abs(t), floor);
  return (p - 1.0) * std::pow(a, p - 2.0);
}

int newton_polish(const SignedGraph& g, double p, VertexFunction& f, double tol) {
  const std::size_t n = g.size();
  int steps = 0;
  for (; steps < 60; ++steps) {
    const double lambda = rayleigh(g, p, f);
    const double res = residual_at(g, p, f);
    if (res <= 0.01 * tol) break;
    const double floor = 1e-10 * std::max(1e-300, f.max_abs());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n + 1, n + 1);
    Eigen::VectorXd F = Eigen::VectorXd::Zero(n + 1);
    VertexFunction lap = apply_p_laplacian(g, p, f);
    for (Index x = 0; x < n; ++x) {
      F[x] = -(lap[x] - lambda * g.mu(x) * phi(p, f[x]));
      J(x, x) += (g.kappa(x) - lambda * g.mu(x)) * dphi(p, f[x], floor);
      for (const auto& nb : g.neighbors(x)) {
        const double d = dphi(p, f[x] - nb.sigma * f[nb.y], floor) * nb.w;
        J(x, x) += d;
        J(x, nb.y) -= nb.sigma * d;
      }
      J(x, n) = -g.mu(x) * phi(p, f[x]);
      J(n, x) = g.mu(x) * phi(p, f[x]);
    }
    Eigen::VectorXd delta = J.colPivHouseholderQr().solve(F);
    if (!delta.allFinite()) break;
    bool accepted = false;
    for (double alpha = 1.0; alpha > 1e-4; alpha *= 0.5) {
      VertexFunction cand = f;
      for (Index x = 0; x < n; ++x) cand[x] += alpha * delta[x];
      if (!normalize(g, p, cand)) continue;
      if (residual_at(g, p, cand) < res) {
        f = std::move(cand);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return steps;
}

struct RunOutcome {
  VertexFunction f;
  double lambda = 0.0;
  double residual = 0.0;
  int gradient_steps = 0;
  int newton_steps = 0;
};

RunOutcome run_once(const SignedGraph& g, double p, bool ascent, Rng rng, const ExtremalOptions& opts) {
  const std::size_t n = g.size();
  RunOutcome out;
  VertexFunction f(n);
  do {
    for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);
  } while (!normalize(g, p, f));
  const double dir = ascent ? 1.0 : -1.0;
  double R = rayleigh(g, p, f);
  double eta = opts.step;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    VertexFunction lap = apply_p_laplacian(g, p, f);
    VertexFunction grad(n);
    double gmax = 0.0;
    for (Index x = 0; x < n; ++x) {
      grad[x] = p * (lap[x] - R * g.mu(x) * phi(p, f[x]));
      gmax = std::max(gmax, std::abs(grad[x]));
    }
    if (gmax <= 1e-13 * (1.0 + std::abs(R))) break;
    VertexFunction cand(n);
    for (Index x = 0; x < n; ++x) cand[x] = f[x] + dir * eta * grad[x] / gmax;
    if (normalize(g, p, cand)) {
      const double Rc = rayleigh(g, p, cand);
      if (dir * (Rc - R) > 0.0) {
        f = std::move(cand);
        R = Rc;
        eta = std::min(1.0, eta * 1.5);
        continue;
      }
    }
    eta *= 0.5;
    if (eta < 1e-15) break;
  }
  out.gradient_steps = it;
  out.newton_steps = newton_polish(g, p, f, opts.tol);
  out.lambda = rayleigh(g, p, f);
  out.residual = residual_at(g, p, f);
  out.f = std::move(f);
  return out;
}

ExtremalCandidate pick(const std::vector<RunOutcome>& runs, const std::vector<int>& restart_of, bool ascent,
                       double tol) {
  ExtremalCandidate best;
  bool have = false;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    const bool conv = r.residual <= tol;
    bool better = false;
    if (!have) {
      better = true;
    } else if (conv != best.converged) {
      better = conv;
    } else if (conv) {
      better = ascent ? r.lambda > best.lambda : r.lambda < best.lambda;
    } else {
      better = r.residual < best.residual;
    }
    if (better) {
      best = {r.lambda, r.f, r.residual, conv, restart_of[i]};
      have = true;
    }
  }
  return best;
}

}  // namespace

ExtremalResult extremal_p(const SignedGraph& g, double p, const ExtremalOptions& opts) {
  if (!(p > 1.0)) throw UnsupportedError("the extremal solver needs p > 1");
  if (g.size() == 0) throw DomainError("empty graph");
  if (opts.restarts < 1) throw ConfigError("at least one restart is required");
  const std::size_t runs = 2 * static_cast<std::size_t>(opts.restarts);
  std::vector<RunOutcome> outcomes(runs);
  parallel_for(runs, [&](std::size_t i) {
    outcomes[i] = run_once(g, p, i % 2 == 1, Rng::derive(opts.seed, i), opts);
  });

  ExtremalResult res;
  res.p = p;
  std::vector<RunOutcome> down, up;
  std::vector<int> down_idx, up_idx;
  for (std::size_t i = 0; i < runs; ++i) {
    const int restart = static_cast<int>(i / 2);
    const bool ascent = i % 2 == 1;
    res.trace.push_back({restart, ascent, outcomes[i].gradient_steps, outcomes[i].newton_steps,
                         outcomes[i].lambda, outcomes[i].residual});
    (ascent ? up : down).push_back(outcomes[i]);
    (ascent ? up_idx : down_idx).push_back(restart);
  }
  res.min = pick(down, down_idx, false, opts.tol);
  res.max = pick(up, up_idx, true, opts.tol);
  res.unconverged = !res.min.converged || !res.max.converged;

  Rng probe_rng = Rng::derive(opts.seed, 0xfeedULL << 32);
  VertexFunction f(g.size());
  for (int i = 0; i < opts.probes; ++i) {
    do {
      for (auto& v : f.values) v = probe_rng.uniform(-1.0, 1.0);
    } while (f.is_zero());
    const double R = rayleigh(g, p, f);
    if (R < res.min.lambda - 1e-9 * (1.0 + std::abs(res.min.lambda)) ||
        R > res.max.lambda + 1e-9 * (1.0 + std::abs(res.max.lambda)))
      ++res.probe_violations;
  }
  return res;
}

double upper_bound_lambda_k(const SignedGraph& g, double p, int k, const CheegerCaps& caps) {
  if (!g.kappa_is_zero()) throw UnsupportedError("the Cheeger upper bound assumes kappa = 0");
  if (k < 1 || static_cast<std::size_t>(k) > g.size()) throw DomainError("k out of range");
  const double bound = std::pow(2.0, p - 1.0) * cheeger_k(g, k, caps).value;
  if (p == 2.0) {
    const double lambda = spectrum_p2(g).values[k - 1];
    if (lambda > bound + 1e-9)
      throw DomainError("lambda_" + std::to_string(k) + " = " + std::to_string(lambda) +
                        " exceeds the Cheeger upper bound " + std::to_string(bound));
  }
  return bound;
}

OneLapEigenSet one_lap_enumerate(const SignedGraph& g, std::size_t cap) {
  const std::size_t n = g.size();
  if (n > cap)
    throw CapacityError("1-Laplacian enumeration is capped at n <= " + std::to_string(cap) +
                        " (n = " + std::to_string(n) + ")");
  OneLapEigenSet out;
  if (n == 0) return out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;

  const std::uint64_t blocks = std::min<std::uint64_t>(total, 256);
  std::vector<std::vector<OneLapPair>> found(blocks);
  std::vector<std::uint64_t> counted(blocks, 0);
  parallel_for(blocks, [&](std::size_t b) {
    const std::uint64_t lo = total * b / blocks, hi = total * (b + 1) / blocks;
    VertexFunction f(n);
    for (std::uint64_t idx = std::max<std::uint64_t>(lo, 1); idx < hi; ++idx) {
      std::uint64_t rest = idx;
      int first = 0;
      for (Index x = 0; x < n; ++x) {
        const int digit = static_cast<int>(rest % 3);
        rest /= 3;
        f[x] = digit == 0 ? 0.0 : (digit == 1 ? 1.0 : -1.0);
        if (first == 0) first = digit;
      }
      if (first != 1) continue;  // canonical: first nonzero entry is +1
      ++counted[b];
      const double lambda = rayleigh(g, 1.0, f);
      if (!check_eigenpair_1lap(g, lambda, f, Arithmetic::Floating, 1e-9).verdict) continue;
      Rational exact = rayleigh1_exact(g, f);
      ResidualCertificate cert = check_eigenpair_1lap(g, exact, f);
      if (!cert.verdict) continue;
      found[b].push_back({exact, to_double(exact), f, std::move(cert)});
    }
  });
  for (std::size_t b = 0; b < blocks; ++b) {
    out.patterns += counted[b];
    for (auto& pr : found[b]) out.pairs.push_back(std::move(pr));
  }
  std::stable_sort(out.pairs.begin(), out.pairs.end(),
                   [](const OneLapPair& a, const OneLapPair& b) { return a.lambda < b.lambda; });
  for (const auto& pr : out.pairs)
    if (out.eigenvalues.empty() || out.eigenvalues.back() != pr.lambda) out.eigenvalues.push_back(pr.lambda);
  if (!out.eigenvalues.empty()) out.lambda1 = out.eigenvalues.front();
  for (const auto& v : out.eigenvalues) {
    if (v > 0) {
      out.smallest_positive = v;
      break;
    }
  }
  if (components(g).size() == 1 && balance_state(g).balanced() && n >= 2) out.lambda2 = out.smallest_positive;
  return out;
}

std::optional<Rational> smallest_positive_1lap(const SignedGraph& g, const CheegerCaps& caps) {
  if (!g.kappa_is_zero()) throw UnsupportedError("the smallest positive 1-Laplacian eigenvalue formula assumes kappa = 0");
  std::optional<Rational> best;
  for (const auto& comp : components(g)) {
    const SignedGraph sub = g.induced(comp);
    std::optional<Rational> value;
    if (balance_state(sub).balanced()) {
      if (comp.size() >= 2) value = cheeger_k(sub, 2, caps).exact_value;
    } else {
      value = cheeger_k(sub, 1, caps).exact_value;
    }
    if (value && (!best || *value < *best)) best = value;
  }
  return best;
}

}  // namespace sgspec
