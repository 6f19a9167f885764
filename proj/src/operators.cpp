#include "sgspec/operators.hpp"

#include <cmath>

#include "sgspec/error.hpp"
#include "sgspec/lp.hpp"

namespace sgspec {

double phi(double p, double t) {
  if (p == 2.0) return t;
  const double a = std::abs(t);
  if (a < 1e-300) return 0.0;
  if (p == 1.0) return t > 0 ? 1.0 : -1.0;
  if (p == 3.0) return a * t;
  return std::copysign(std::pow(a, p - 1.0), t);
}

namespace {

double abs_pow(double t, double p) {
  const double a = std::abs(t);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

void require_size(const SignedGraph& g, const VertexFunction& f) {
  if (f.size() != g.size()) throw DomainError("function is not defined on the vertex set");
}

int sign_of(double v) { return (v > 0) - (v < 0); }

}  // namespace

VertexFunction apply_p_laplacian(const SignedGraph& g, double p, const VertexFunction& f) {
  if (!(p > 1.0)) throw UnsupportedError("the p-Laplacian is single-valued only for p > 1");
  require_size(g, f);
  VertexFunction out(g.size());
  for (Index x = 0; x < g.size(); ++x) {
    double s = g.kappa(x) * phi(p, f[x]);
    for (const auto& nb : g.neighbors(x)) s += nb.w * phi(p, f[x] - nb.sigma * f[nb.y]);
    out[x] = s;
  }
  return out;
}

double rayleigh_numerator(const SignedGraph& g, double p, const VertexFunction& f) {
  require_size(g, f);
  double num = 0.0;
  for (const auto& e : g.edges()) num += e.w * abs_pow(f[e.u] - e.sigma * f[e.v], p);
  for (Index x = 0; x < g.size(); ++x) num += g.kappa(x) * abs_pow(f[x], p);
  return num;
}

double rayleigh_denominator(const SignedGraph& g, double p, const VertexFunction& f) {
  require_size(g, f);
  double den = 0.0;
  for (Index x = 0; x < g.size(); ++x) den += g.mu(x) * abs_pow(f[x], p);
  return den;
}

double rayleigh(const SignedGraph& g, double p, const VertexFunction& f) {
  if (!(p >= 1.0)) throw UnsupportedError("p must be at least 1");
  require_size(g, f);
  if (f.is_zero()) throw DomainError("Rayleigh quotient of the zero function");
  return rayleigh_numerator(g, p, f) / rayleigh_denominator(g, p, f);
}

Rational rayleigh1_exact(const SignedGraph& g, const VertexFunction& f) {
  require_size(g, f);
  if (f.is_zero()) throw DomainError("Rayleigh quotient of the zero function");
  Rational num = 0, den = 0;
  for (const auto& e : g.edges()) {
    Rational d = to_rational(f[e.u]) - e.sigma * to_rational(f[e.v]);
    num += to_rational(e.w) * abs(d);
  }
  for (Index x = 0; x < g.size(); ++x) {
    Rational a = abs(to_rational(f[x]));
    num += to_rational(g.kappa(x)) * a;
    den += to_rational(g.mu(x)) * a;
  }
  return num / den;
}

ResidualCertificate check_eigenpair(const SignedGraph& g, const EigenPair& pair, double tol) {
  if (pair.f.is_zero()) throw DomainError("eigenfunction must be nonzero");
  const double p = pair.p;
  VertexFunction lap = apply_p_laplacian(g, p, pair.f);
  ResidualCertificate cert;
  for (Index x = 0; x < g.size(); ++x) {
    const double rhs = pair.lambda * g.mu(x) * phi(p, pair.f[x]);
    const double scale = 1.0 + std::abs(pair.lambda) * g.mu(x) * std::abs(phi(p, pair.f[x]));
    cert.max_residual = std::max(cert.max_residual, std::abs(lap[x] - rhs) / scale);
  }
  cert.verdict = cert.max_residual <= tol;
  return cert;
}

namespace {

// Builds and solves the feasibility problem. `conv` maps input doubles into T.
template <class T, class Conv>
std::optional<OneLapWitness> solve_one_lap(const SignedGraph& g, const T& lambda,
                                           const std::vector<int>& vsign, const std::vector<int>& esign,
                                           const T& tol, Conv conv) {
  using Problem = FeasibilityProblem<T>;
  const std::size_t n = g.size();
  Problem lp(tol);
  std::vector<std::size_t> edge_var(g.edge_count(), SIZE_MAX), vertex_var(n, SIZE_MAX);
  for (Index e = 0; e < g.edge_count(); ++e)
    if (esign[e] == 0) edge_var[e] = lp.add_variable(T(-1), T(1));
  for (Index x = 0; x < n; ++x)
    if (vsign[x] == 0 && g.kappa(x) != 0.0) vertex_var[x] = lp.add_variable(T(-1), T(1));

  const T abs_lambda = lambda < T(0) ? T(-lambda) : lambda;
  for (Index x = 0; x < n; ++x) {
    T fixed(0);
    std::vector<typename Problem::Term> terms;
    T free_range(0);
    for (const auto& nb : g.neighbors(x)) {
      const Edge& ed = g.edge(nb.edge);
      // Orientation factor: z_xy = z_uv when x == u, else -sigma z_uv.
      const int orient = ed.u == x ? 1 : -ed.sigma;
      const T w = conv(nb.w);
      if (esign[nb.edge] != 0) {
        fixed += w * T(orient * esign[nb.edge]);
      } else {
        terms.push_back({edge_var[nb.edge], w * T(orient)});
        free_range += w;
      }
    }
    const T kappa = conv(g.kappa(x));
    if (vsign[x] != 0) {
      fixed += kappa * T(vsign[x]);
    } else if (vertex_var[x] != SIZE_MAX) {
      terms.push_back({vertex_var[x], kappa});
      free_range += kappa < T(0) ? T(-kappa) : kappa;
    }
    const T mu = conv(g.mu(x));
    T lo, hi;
    if (vsign[x] != 0) {
      lo = hi = lambda * mu * T(vsign[x]) - fixed;
    } else {
      lo = -abs_lambda * mu - fixed;
      hi = abs_lambda * mu - fixed;
    }
    // Quick rejection from the range of the free part.
    const T slack = tol * (T(1) + free_range + (fixed < T(0) ? T(-fixed) : fixed));
    if (hi < -free_range - slack || lo > free_range + slack) return std::nullopt;
    if (terms.empty()) continue;
    if (vsign[x] != 0) {
      lp.add_constraint(std::move(terms), Problem::Relation::Equal, lo);
    } else {
      lp.add_constraint(terms, Problem::Relation::GreaterEqual, lo);
      lp.add_constraint(std::move(terms), Problem::Relation::LessEqual, hi);
    }
  }
  auto sol = lp.solve();
  if (!sol) return std::nullopt;
  OneLapWitness wit;
  wit.edge_z.resize(g.edge_count());
  wit.vertex_z.resize(n);
  for (Index e = 0; e < g.edge_count(); ++e) {
    if (esign[e] != 0)
      wit.edge_z[e] = esign[e];
    else
      wit.edge_z[e] = static_cast<double>((*sol)[edge_var[e]]);
  }
  for (Index x = 0; x < n; ++x) {
    if (vsign[x] != 0)
      wit.vertex_z[x] = vsign[x];
    else if (vertex_var[x] != SIZE_MAX)
      wit.vertex_z[x] = static_cast<double>((*sol)[vertex_var[x]]);
    else
      wit.vertex_z[x] = 0.0;
  }
  return wit;
}

}  // namespace

ResidualCertificate check_eigenpair_1lap(const SignedGraph& g, const Rational& lambda,
                                         const VertexFunction& f) {
  require_size(g, f);
  if (f.is_zero()) throw DomainError("eigenfunction must be nonzero");
  std::vector<int> vsign(g.size()), esign(g.edge_count());
  for (Index x = 0; x < g.size(); ++x) vsign[x] = sign_of(f[x]);
  for (Index e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    // f(u) - sigma f(v) compared exactly: negation of a double is exact.
    const double a = f[ed.u], b = ed.sigma * f[ed.v];
    esign[e] = (a > b) - (a < b);
  }
  ResidualCertificate cert;
  cert.exact = true;
  auto wit = solve_one_lap<Rational>(g, lambda, vsign, esign, Rational(0),
                                     [](double v) { return to_rational(v); });
  cert.verdict = wit.has_value();
  cert.max_residual = cert.verdict ? 0.0 : 1.0;
  cert.witness = std::move(wit);
  return cert;
}

ResidualCertificate check_eigenpair_1lap(const SignedGraph& g, double lambda, const VertexFunction& f,
                                         Arithmetic arithmetic, double tol) {
  if (arithmetic == Arithmetic::Exact) return check_eigenpair_1lap(g, to_rational(lambda), f);
  require_size(g, f);
  if (f.is_zero()) throw DomainError("eigenfunction must be nonzero");
  const double zero = tol * std::max(1.0, f.max_abs());
  std::vector<int> vsign(g.size()), esign(g.edge_count());
  for (Index x = 0; x < g.size(); ++x) vsign[x] = std::abs(f[x]) <= zero ? 0 : sign_of(f[x]);
  for (Index e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const double d = f[ed.u] - ed.sigma * f[ed.v];
    esign[e] = std::abs(d) <= zero ? 0 : sign_of(d);
  }
  ResidualCertificate cert;
  auto wit = solve_one_lap<double>(g, lambda, vsign, esign, tol, [](double v) { return v; });
  cert.verdict = wit.has_value();
  cert.max_residual = cert.verdict ? 0.0 : 1.0;
  cert.witness = std::move(wit);
  return cert;
}

bool witness_satisfies(const SignedGraph& g, double lambda, const VertexFunction& f,
                       const OneLapWitness& wit, double tol) {
  if (wit.edge_z.size() != g.edge_count() || wit.vertex_z.size() != g.size()) return false;
  auto in_sgn = [tol](double z, double t) {
    if (t > 0) return std::abs(z - 1.0) <= tol;
    if (t < 0) return std::abs(z + 1.0) <= tol;
    return z >= -1.0 - tol && z <= 1.0 + tol;
  };
  for (Index e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (!in_sgn(wit.edge_z[e], f[ed.u] - ed.sigma * f[ed.v])) return false;
    // The reverse orientation -sigma z must lie in Sgn(f(v) - sigma f(u)); this is implied.
  }
  for (Index x = 0; x < g.size(); ++x) {
    if (!in_sgn(wit.vertex_z[x], f[x])) return false;
    double s = g.kappa(x) * wit.vertex_z[x];
    for (const auto& nb : g.neighbors(x)) {
      const Edge& ed = g.edge(nb.edge);
      s += nb.w * (ed.u == x ? wit.edge_z[nb.edge] : -ed.sigma * wit.edge_z[nb.edge]);
    }
    const double target = lambda * g.mu(x);
    const double scale = tol * (1.0 + std::abs(target) + std::abs(s));
    if (f[x] > 0 && std::abs(s - target) > scale) return false;
    if (f[x] < 0 && std::abs(s + target) > scale) return false;
    if (f[x] == 0 && std::abs(s) > std::abs(target) + scale) return false;
  }
  return true;
}

}  // namespace sgspec
