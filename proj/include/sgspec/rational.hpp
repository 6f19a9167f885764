#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sgspec {

using Rational = boost::multiprecision::cpp_rational;

// Exact: every finite double is a dyadic rational.
inline Rational to_rational(double x) { return Rational(x); }
inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace sgspec
