#include "sgspec/inequalities.hpp"

#include <cmath>

#include "sgspec/error.hpp"
#include "sgspec/operators.hpp"

namespace sgspec {

namespace {

double abs_pow(double x, double p) { return std::pow(std::abs(x), p); }

int sgn(double x) { return (x > 0) - (x < 0); }

// Rounding allowance for values built from a handful of pow() calls.
double rounding(double a, double b) { return 1e-12 * (1.0 + std::abs(a) + std::abs(b)); }

}  // namespace

InequalitySample product_split_inequality(double p, double t, double s, double a, double b) {
  if (!(p >= 1.0)) throw DomainError("p must be at least 1");
  InequalitySample out;
  out.lhs = abs_pow(t * a + s * b, p);
  out.rhs = (abs_pow(t, p) * a + abs_pow(s, p) * b) * phi(p, a + b);
  const double tol = 1e-9 * (1.0 + std::abs(out.lhs) + std::abs(out.rhs));
  const double ab = a * b;
  out.holds = true;
  if (ab <= 0) out.holds = out.holds && out.lhs >= out.rhs - tol;
  if (ab >= 0) out.holds = out.holds && out.lhs <= out.rhs + tol;
  out.equality_expected = p > 1.0 && (ab == 0.0 || t == s);
  out.equality_observed = std::abs(out.lhs - out.rhs) <= rounding(out.lhs, out.rhs);
  return out;
}

InequalitySample product_split_inequality_p1(double t, double s, double a, double b, double z) {
  const double sum = a + b;
  if ((sum > 0 && z != 1.0) || (sum < 0 && z != -1.0) || z < -1.0 || z > 1.0)
    throw DomainError("z must lie in Sgn(a + b)");
  InequalitySample out;
  out.lhs = std::abs(t * a + s * b);
  out.rhs = (std::abs(t) * a + std::abs(s) * b) * z;
  const double tol = rounding(out.lhs, out.rhs);
  const double ab = a * b;
  out.holds = true;
  if (ab <= 0) out.holds = out.holds && out.lhs >= out.rhs - tol;
  if (ab >= 0) out.holds = out.holds && out.lhs <= out.rhs + tol;
  out.equality_expected = ab == 0.0 || t == s;
  out.equality_observed = std::abs(out.lhs - out.rhs) <= tol;
  return out;
}

InequalitySample power_difference_inequality(double p, double a, double b, int sigma) {
  if (!(p >= 1.0)) throw DomainError("p must be at least 1");
  if (sigma != 1 && sigma != -1) throw DomainError("signature must be ±1");
  InequalitySample out;
  out.lhs = abs_pow(a - sigma * b, p);
  out.rhs = std::pow(2.0, p - 1.0) * std::abs(abs_pow(a, p) * sgn(a) - sigma * abs_pow(b, p) * sgn(b));
  out.holds = out.lhs <= out.rhs + 1e-9 * (1.0 + out.lhs + out.rhs);
  out.equality_expected = b == -sigma * a;
  out.equality_observed = std::abs(out.lhs - out.rhs) <= rounding(out.lhs, out.rhs);
  return out;
}

AuxiliarySample ratio_weighted_power_sign(double p, double a1, double a2, double b1, double b2) {
  if (!(p > 1.0)) throw DomainError("p must exceed 1");
  if (a1 == 0.0 || a2 == 0.0) throw DomainError("a1 and a2 must be nonzero");
  AuxiliarySample out;
  const double t1 = abs_pow(b1, p) / phi(p, a1) * phi(p, a1 + a2);
  const double t2 = abs_pow(b2, p) / phi(p, a2) * phi(p, a1 + a2);
  const double t3 = abs_pow(b1 + b2, p);
  out.value = t1 + t2 - t3;
  const double scale = 1e-9 * (1.0 + std::abs(t1) + std::abs(t2) + t3);
  out.expected_sign = (a2 / a1) > 0 ? 1 : -1;
  out.holds = out.expected_sign > 0 ? out.value >= -scale : out.value <= scale;
  out.equality_expected = b2 != 0.0 && b1 / b2 == a1 / a2;
  out.equality_observed = std::abs(out.value) <= scale;
  return out;
}

}  // namespace sgspec
