#pragma once

namespace sgspec {

struct InequalitySample {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool equality_expected = false;  // the inequality is known to be tight for these arguments
  bool equality_observed = false;  // |lhs - rhs| within rounding
};

// |ta + sb|^p against (|t|^p a + |s|^p b) Phi_p(a + b): ">=" when ab <= 0, "<=" when ab >= 0;
// tight iff ab = 0 or t = s (p > 1).
InequalitySample product_split_inequality(double p, double t, double s, double a, double b);

// p = 1 form with z in Sgn(a + b); tight iff ab = 0 or t = s.
InequalitySample product_split_inequality_p1(double t, double s, double a, double b, double z);

// |a - sigma b|^p <= 2^{p-1} | |a|^p sgn a - sigma |b|^p sgn b |, tight when b = -sigma a.
InequalitySample power_difference_inequality(double p, double a, double b, int sigma);

struct AuxiliarySample {
  double value = 0.0;
  int expected_sign = 0;  // +1: value >= 0, -1: value <= 0
  bool holds = false;
  bool equality_expected = false;  // b1 / b2 == a1 / a2
  bool equality_observed = false;
};

// (|b1|^p / Phi_p(a1) + |b2|^p / Phi_p(a2)) Phi_p(a1 + a2) - |b1 + b2|^p, whose sign follows a2 / a1.
AuxiliarySample ratio_weighted_power_sign(double p, double a1, double a2, double b1, double b2);

}  // namespace sgspec
