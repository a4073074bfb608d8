#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace csp {

using Rational = boost::multiprecision::cpp_rational;

/// Canonical "p/q" text (q >= 1, always present).
std::string to_string(const Rational& value);

/// Accepts "p/q" or a bare integer "p"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

int sign(const Rational& value);

} // namespace csp
