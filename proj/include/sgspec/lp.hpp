#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sgspec {

// Feasibility of {lower <= x <= upper, a_i . x (<=|=|>=) b_i} by phase-one simplex with Bland's rule.
// T is double (pivots and the final infeasibility compared against `tolerance`) or an exact
// rational type (tolerance 0).
template <class T>
class FeasibilityProblem {
 public:
  enum class Relation { LessEqual, Equal, GreaterEqual };
  struct Term {
    std::size_t var;
    T coef;
  };

  explicit FeasibilityProblem(T tolerance = T(0)) : tol_(tolerance) {}

  std::size_t add_variable(T lower, T upper) {
    if (upper < lower) throw std::invalid_argument("variable with empty range");
    lower_.push_back(lower);
    upper_.push_back(upper);
    return lower_.size() - 1;
  }

  void add_constraint(std::vector<Term> terms, Relation rel, T rhs) {
    for (const auto& t : terms)
      if (t.var >= lower_.size()) throw std::out_of_range("constraint references unknown variable");
    rows_.push_back({std::move(terms), rel, rhs});
  }

  std::size_t variables() const { return lower_.size(); }
  std::size_t constraints() const { return rows_.size(); }

  std::optional<std::vector<T>> solve() const;

 private:
  struct Row {
    std::vector<Term> terms;
    Relation rel;
    T rhs;
  };

  bool positive(const T& v) const { return v > tol_; }

  T tol_;
  std::vector<T> lower_, upper_;
  std::vector<Row> rows_;
};

template <class T>
std::optional<std::vector<T>> FeasibilityProblem<T>::solve() const {
  const std::size_t nv = lower_.size();
  // Shifted variables y = x - lower >= 0. Each user row and each upper-bound row becomes an equality
  // row over [y | slacks | artificials].
  struct Dense {
    std::vector<std::pair<std::size_t, T>> coefs;  // structural part
    int slack = 0;                                 // +1, -1 or 0
    T rhs;
  };
  std::vector<Dense> dense;
  dense.reserve(rows_.size() + nv);
  for (const auto& r : rows_) {
    Dense d;
    d.rhs = r.rhs;
    for (const auto& t : r.terms) {
      d.coefs.emplace_back(t.var, t.coef);
      d.rhs -= t.coef * lower_[t.var];
    }
    d.slack = r.rel == Relation::LessEqual ? 1 : (r.rel == Relation::GreaterEqual ? -1 : 0);
    dense.push_back(std::move(d));
  }
  for (std::size_t j = 0; j < nv; ++j) {
    Dense d;
    d.coefs.emplace_back(j, T(1));
    d.slack = 1;
    d.rhs = upper_[j] - lower_[j];
    dense.push_back(std::move(d));
  }

  const std::size_t m = dense.size();
  std::size_t nslack = 0;
  for (const auto& d : dense) nslack += d.slack != 0;
  // Artificial columns only where a slack cannot start in the basis.
  std::vector<int> sign(m, 1);
  std::size_t nart = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (dense[i].rhs < T(0)) sign[i] = -1;
    if (!(dense[i].slack * sign[i] == 1)) ++nart;
  }
  const std::size_t ncols = nv + nslack + nart;
  const std::size_t rhs_col = ncols;
  std::vector<std::vector<T>> tab(m, std::vector<T>(ncols + 1, T(0)));
  std::vector<std::size_t> basis(m);
  std::vector<bool> is_art(ncols, false);
  std::size_t next_slack = nv, next_art = nv + nslack;
  for (std::size_t i = 0; i < m; ++i) {
    const T s = T(sign[i]);
    for (const auto& [j, c] : dense[i].coefs) tab[i][j] += s * c;
    tab[i][rhs_col] = s * dense[i].rhs;
    if (dense[i].slack != 0) {
      tab[i][next_slack] = T(dense[i].slack * sign[i]);
      if (dense[i].slack * sign[i] == 1) basis[i] = next_slack;
      ++next_slack;
    }
    if (!(dense[i].slack * sign[i] == 1)) {
      tab[i][next_art] = T(1);
      is_art[next_art] = true;
      basis[i] = next_art++;
    }
  }

  // Objective row: reduced costs of "minimize sum of artificials".
  std::vector<T> obj(ncols + 1, T(0));
  for (std::size_t j = 0; j < ncols; ++j)
    if (is_art[j]) obj[j] = T(1);
  for (std::size_t i = 0; i < m; ++i) {
    if (!is_art[basis[i]]) continue;
    for (std::size_t j = 0; j <= ncols; ++j) obj[j] -= tab[i][j];
  }

  const std::size_t max_iter = 200 * (m + ncols) + 1000;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    std::size_t enter = ncols;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (-obj[j] > tol_) {
        enter = j;
        break;
      }
    }
    if (enter == ncols) break;
    std::size_t leave = m;
    T best_ratio{};
    for (std::size_t i = 0; i < m; ++i) {
      if (!positive(tab[i][enter])) continue;
      T ratio = tab[i][rhs_col] / tab[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) break;  // cannot happen for a phase-one objective bounded below
    const T piv = tab[leave][enter];
    for (auto& v : tab[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || tab[i][enter] == T(0)) continue;
      const T factor = tab[i][enter];
      for (std::size_t j = 0; j <= ncols; ++j)
        if (tab[leave][j] != T(0)) tab[i][j] -= factor * tab[leave][j];
    }
    if (obj[enter] != T(0)) {
      const T factor = obj[enter];
      for (std::size_t j = 0; j <= ncols; ++j)
        if (tab[leave][j] != T(0)) obj[j] -= factor * tab[leave][j];
    }
    basis[leave] = enter;
  }

  // obj[rhs] holds minus the sum of artificials.
  T scale(1);
  for (std::size_t i = 0; i < m; ++i) {
    T a = dense[i].rhs < T(0) ? T(-dense[i].rhs) : dense[i].rhs;
    if (a > scale) scale = a;
  }
  if (-obj[rhs_col] > tol_ * scale) return std::nullopt;

  std::vector<T> x(lower_);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < nv) x[basis[i]] += tab[i][rhs_col];
  for (std::size_t j = 0; j < nv; ++j) x[j] = std::clamp(x[j], lower_[j], upper_[j]);
  return x;
}

}  // namespace sgspec
