#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace subseries {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline BigRat rat(i64 num, i64 den = 1) { return BigRat(num, den); }

// "p/q" with no spaces; integers render without the "/1".
inline std::string to_string(const BigRat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline int sign_of(const BigRat& q) {
    if (q > 0) return 1;
    if (q < 0) return -1;
    return 0;
}

inline BigInt ceil_to_even(const BigInt& x) {
    return (x % 2 == 0) ? x : x + 1;
}

}  // namespace subseries
