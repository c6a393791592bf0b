#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace schurweyl {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Base-2 logarithm of a positive big integer, accurate to double precision.
double log2_big(const BigInt& x);

// n! with a shared thread-safe cache.
BigInt factorial(unsigned n);

}  // namespace schurweyl
