#include <doctest.h>

#include "oracles.hpp"
#include "sgspec/lp.hpp"
#include "sgspec/random.hpp"

using sgspec::FeasibilityProblem;
using sgspec::Rational;
using sgspec::Rng;

namespace {

template <class T>
using Rel = typename FeasibilityProblem<T>::Relation;

struct RandomSystem {
  std::size_t vars;
  std::vector<std::vector<int>> a;
  std::vector<int> rel;  // -1 <=, 0 ==, 1 >=
  std::vector<int> b;
};

template <class T>
FeasibilityProblem<T> build(const RandomSystem& s, T tol) {
  FeasibilityProblem<T> lp(tol);
  for (std::size_t j = 0; j < s.vars; ++j) lp.add_variable(T(-1), T(1));
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    std::vector<typename FeasibilityProblem<T>::Term> terms;
    for (std::size_t j = 0; j < s.vars; ++j)
      if (s.a[i][j] != 0) terms.push_back({j, T(s.a[i][j])});
    const auto rel = s.rel[i] < 0 ? Rel<T>::LessEqual : s.rel[i] == 0 ? Rel<T>::Equal : Rel<T>::GreaterEqual;
    lp.add_constraint(terms, rel, T(s.b[i]));
  }
  return lp;
}

template <class T>
bool satisfied(const RandomSystem& s, const std::vector<T>& x, T tol) {
  for (const auto& v : x)
    if (v < T(-1) - tol || v > T(1) + tol) return false;
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    T lhs(0);
    for (std::size_t j = 0; j < s.vars; ++j) lhs += T(s.a[i][j]) * x[j];
    const T d = lhs - T(s.b[i]);
    if (s.rel[i] < 0 && d > tol) return false;
    if (s.rel[i] > 0 && d < -tol) return false;
    if (s.rel[i] == 0 && (d > tol || d < -tol)) return false;
  }
  return true;
}

// Vertex enumeration over the box and constraint hyperplanes (exact).
bool feasible_by_vertices(const RandomSystem& s) {
  const std::size_t d = s.vars;
  std::vector<std::pair<std::vector<Rational>, Rational>> planes;
  for (std::size_t j = 0; j < d; ++j)
    for (int sgn : {-1, 1}) {
      std::vector<Rational> a(d, Rational(0));
      a[j] = 1;
      planes.emplace_back(a, Rational(sgn));
    }
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    std::vector<Rational> a;
    for (int c : s.a[i]) a.emplace_back(c);
    planes.emplace_back(a, Rational(s.b[i]));
  }
  std::vector<std::size_t> pick(d);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == d) {
      std::vector<std::vector<Rational>> M;
      std::vector<Rational> b;
      for (auto i : pick) {
        M.push_back(planes[i].first);
        b.push_back(planes[i].second);
      }
      const auto z = oracle::solve_exact(M, b);
      return z && satisfied<Rational>(s, *z, Rational(0));
    }
    for (std::size_t i = start; i < planes.size(); ++i) {
      pick[depth] = i;
      if (rec(depth + 1, i + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

}  // namespace

TEST_CASE("simple feasibility problems") {
  FeasibilityProblem<Rational> lp;
  const auto x = lp.add_variable(-1, 1), y = lp.add_variable(-1, 1);
  lp.add_constraint({{x, 1}, {y, 1}}, Rel<Rational>::Equal, Rational(3, 2));
  const auto sol = lp.solve();
  REQUIRE(sol);
  CHECK((*sol)[0] + (*sol)[1] == Rational(3, 2));

  FeasibilityProblem<Rational> bad;
  const auto z = bad.add_variable(-1, 1);
  bad.add_constraint({{z, 2}}, Rel<Rational>::GreaterEqual, Rational(3));
  CHECK_FALSE(bad.solve());

  FeasibilityProblem<double> none(1e-9);
  CHECK(none.solve());
}

TEST_CASE("phase one agrees with vertex enumeration") {
  Rng rng(23);
  int feasible = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    RandomSystem s;
    s.vars = 1 + rng.index(3);
    const std::size_t rows = rng.index(4);
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<int> row(s.vars);
      for (auto& c : row) c = static_cast<int>(rng.index(7)) - 3;
      s.a.push_back(row);
      s.rel.push_back(static_cast<int>(rng.index(3)) - 1);
      s.b.push_back(static_cast<int>(rng.index(9)) - 4);
    }
    const bool expect = feasible_by_vertices(s);
    feasible += expect;
    const auto exact = build<Rational>(s, Rational(0)).solve();
    CHECK(exact.has_value() == expect);
    if (exact) CHECK(satisfied<Rational>(s, *exact, Rational(0)));
    const auto approx = build<double>(s, 1e-9).solve();
    CHECK(approx.has_value() == expect);
    if (approx) CHECK(satisfied<double>(s, *approx, 1e-7));
  }
  CHECK(feasible > 300);
}
