#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace gpal {

// Arbitrary-precision rational, always in lowest terms.
using Rational = boost::multiprecision::cpp_rational;

// Accepts "3", "-1/2", "+7/14". Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
// "1", "-1/3".
std::string format_rational(const Rational& r);

}  // namespace gpal
