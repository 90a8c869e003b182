#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cubecx {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p/q" or "p".
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);
std::string to_string(const Int& i);

}  // namespace cubecx
