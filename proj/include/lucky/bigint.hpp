#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <string>

namespace lucky {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(int n);

/// C(a, b); zero when b < 0 or b > a.
BigInt binomial(int a, int b);

/// total! / prod(parts!); zero when a part is negative or the parts do not sum
/// to total.
BigInt multinomial(int total, std::span<const int> parts);

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace lucky
