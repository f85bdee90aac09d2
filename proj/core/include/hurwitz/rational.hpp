#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace hurwitz {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "a", "a/b", "-a/b"; throws Error(ParseError).
Rational parse_rational(std::string_view text);

// Canonical "num/den" text; integers print as "n/1" only when force_fraction is set.
std::string to_string(const Rational& r, bool force_fraction = true);

}  // namespace hurwitz
