#pragma once

#include "subseries/rational.hpp"

#include <utility>

namespace subseries::harmonic {

// Rigorous arithmetic for sums  coeff * sum 1/n  over n ≡ r (mod q) in a
// half-open range (k0, k1], at index magnitudes far beyond iteration. Small
// ranges are summed exactly; large ranges go through the digamma identity
//   sum_{j=0}^{J-1} 1/(n1 + j q) = (psi(n1/q + J) - psi(n1/q)) / q
// evaluated in MPFR with directed rounding, escalating precision until the
// comparison is decided.

// number of indices n ≡ r (mod q) with 0 < n <= k
BigInt terms_up_to(const BigInt& k, u64 q, u64 r);

// Does coeff * sum over (k0, k1] strictly exceed target? Exact decision.
bool block_exceeds(u64 q, u64 r, const BigRat& coeff, const BigInt& k0, const BigInt& k1,
                   const BigRat& target);

// Least k > k0 with coeff * sum over (k0, k] strictly above target. The
// result is always an index in the residue class.
BigInt least_cutpoint(u64 q, u64 r, const BigRat& coeff, const BigInt& k0,
                      const BigRat& target);

// (lower, upper) bounds of coeff * sum over (k0, k1], as doubles
std::pair<double, double> block_sum_bounds(u64 q, u64 r, const BigRat& coeff,
                                           const BigInt& k0, const BigInt& k1);

}  // namespace subseries::harmonic
