#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ifsaddr {

using Rational = mpq_class;
using RationalPoint = std::vector<Rational>;

/// Exact value of a double (every finite double is a dyadic rational).
Rational exact_rational(double v);

/// The rational a user most plausibly meant by `v`: the shortest round-trip
/// decimal of `v`, provided it has at most `max_significant` digits.
/// 0.7 -> 7/10, but lambda0() or 1/sqrt(2) -> nullopt.
std::optional<Rational> decimal_rational(double v, int max_significant = 12);

/// Parses "3/5", "-0.125", "1e-3", "7". Throws Error(InvalidArgument).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

RationalPoint exact_point(std::span<const double> x);
std::vector<double> to_doubles(std::span<const Rational> x);

}  // namespace ifsaddr
