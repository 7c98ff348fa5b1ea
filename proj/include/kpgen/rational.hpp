#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace kpgen {

/// Exact score arithmetic for aggregation and metric averaging.
using Rational = boost::multiprecision::cpp_rational;

/// "num/den", or just "num" for integers.
std::string to_fraction_string(const Rational& r);
double to_double(const Rational& r);
/// Accepts "num/den" or an integer.
Rational parse_fraction(const std::string& s);

}  // namespace kpgen
