#include "subseries/harmonic.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace subseries::harmonic {

namespace {

constexpr unsigned kExactTermLimit = 4096;
constexpr mpfr_prec_t kStartPrec = 160;
constexpr mpfr_prec_t kMaxPrec = 4096;

struct Mpfr {
    mpfr_t v;
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    ~Mpfr() { mpfr_clear(v); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
};

// first index > k0 congruent to r mod q
BigInt first_in_class_after(const BigInt& k0, u64 q, u64 r) {
    BigInt base = k0 + 1;
    BigInt rem = base % q;
    BigInt shift = (BigInt(r) - rem + q) % q;
    return base + shift;
}

// exact sum of the first `terms` entries 1/(n1 + j q)
BigRat exact_partial(const BigInt& n1, u64 q, const BigInt& terms) {
    BigRat acc = 0;
    BigInt n = n1;
    for (BigInt j = 0; j < terms; ++j) {
        acc += BigRat(BigInt(1), n);
        n += q;
    }
    return acc;
}

// directed-rounded psi(n1/q + J); monotonicity of psi on (0, inf) makes the
// endpoint rounding an enclosure
void psi_at(mpfr_t out, const BigInt& n1, u64 q, const BigInt& terms, mpfr_rnd_t rnd) {
    mpfr_prec_t prec = mpfr_get_prec(out);
    Mpfr x(prec);
    BigInt numer = n1 + BigInt(q) * terms;
    mpfr_set_z(x.v, numer.backend().data(), rnd);
    mpfr_div_ui(x.v, x.v, static_cast<unsigned long>(q), rnd);
    mpfr_digamma(out, x.v, rnd);
}

// [lo, hi] enclosure of sum_{j=0}^{J-1} 1/(n1 + j q)
void raw_block_enclosure(mpfr_t lo, mpfr_t hi, const BigInt& n1, u64 q, const BigInt& terms) {
    mpfr_prec_t prec = mpfr_get_prec(lo);
    Mpfr psi_hi_lo(prec), psi_hi_hi(prec), psi_lo_lo(prec), psi_lo_hi(prec);
    psi_at(psi_hi_lo.v, n1, q, terms, MPFR_RNDD);
    psi_at(psi_hi_hi.v, n1, q, terms, MPFR_RNDU);
    psi_at(psi_lo_lo.v, n1, q, 0, MPFR_RNDD);
    psi_at(psi_lo_hi.v, n1, q, 0, MPFR_RNDU);
    mpfr_sub(lo, psi_hi_lo.v, psi_lo_hi.v, MPFR_RNDD);
    mpfr_div_ui(lo, lo, static_cast<unsigned long>(q), MPFR_RNDD);
    mpfr_sub(hi, psi_hi_hi.v, psi_lo_lo.v, MPFR_RNDU);
    mpfr_div_ui(hi, hi, static_cast<unsigned long>(q), MPFR_RNDU);
}

void scale_enclosure(mpfr_t lo, mpfr_t hi, const BigRat& coeff) {
    // coeff > 0 and the block sums are nonnegative, so order is preserved
    mpfr_prec_t prec = mpfr_get_prec(lo);
    Mpfr c_lo(prec), c_hi(prec);
    mpfr_set_q(c_lo.v, coeff.backend().data(), MPFR_RNDD);
    mpfr_set_q(c_hi.v, coeff.backend().data(), MPFR_RNDU);
    mpfr_mul(lo, lo, c_lo.v, MPFR_RNDD);
    mpfr_mul(hi, hi, c_hi.v, MPFR_RNDU);
}

// tri-state comparison of the block sum against target: +1 above, -1 not
// above, 0 undecided at this precision
int compare_once(u64 q, const BigInt& n1, const BigInt& terms, const BigRat& coeff,
                 const BigRat& target, mpfr_prec_t prec) {
    Mpfr lo(prec), hi(prec), t_lo(prec), t_hi(prec);
    raw_block_enclosure(lo.v, hi.v, n1, q, terms);
    scale_enclosure(lo.v, hi.v, coeff);
    mpfr_set_q(t_lo.v, target.backend().data(), MPFR_RNDD);
    mpfr_set_q(t_hi.v, target.backend().data(), MPFR_RNDU);
    if (mpfr_cmp(lo.v, t_hi.v) > 0) return 1;
    if (mpfr_cmp(hi.v, t_lo.v) <= 0) return -1;
    return 0;
}

bool partial_exceeds(u64 q, const BigInt& n1, const BigInt& terms, const BigRat& coeff,
                     const BigRat& target) {
    if (terms <= 0) return false;
    if (terms <= kExactTermLimit) return coeff * exact_partial(n1, q, terms) > target;
    for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
        int cmp = compare_once(q, n1, terms, coeff, target, prec);
        if (cmp != 0) return cmp > 0;
    }
    throw std::runtime_error("harmonic comparison undecided at maximum precision");
}

}  // namespace

BigInt terms_up_to(const BigInt& k, u64 q, u64 r) {
    if (r == 0) return k < q ? BigInt(0) : BigInt(k / q);
    if (k < r) return 0;
    return (k - r) / q + 1;
}

bool block_exceeds(u64 q, u64 r, const BigRat& coeff, const BigInt& k0, const BigInt& k1,
                   const BigRat& target) {
    if (coeff <= 0) throw std::invalid_argument("coefficient must be positive");
    if (k1 <= k0) return false;
    BigInt n1 = first_in_class_after(k0, q, r);
    BigInt terms = terms_up_to(k1, q, r) - terms_up_to(k0, q, r);
    return partial_exceeds(q, n1, terms, coeff, target);
}

BigInt least_cutpoint(u64 q, u64 r, const BigRat& coeff, const BigInt& k0,
                      const BigRat& target) {
    if (coeff <= 0) throw std::invalid_argument("coefficient must be positive");
    BigInt n1 = first_in_class_after(k0, q, r);
    // bracket the least term count whose partial sum tips over the target;
    // blocks grow geometrically, so seed near the previous block's size
    BigInt lo = 0, hi = terms_up_to(k0, q, r) * 7 + 1;
    if (partial_exceeds(q, n1, hi, coeff, target)) {
        BigInt probe = hi / 2;
        while (probe > 0 && partial_exceeds(q, n1, probe, coeff, target)) {
            hi = probe;
            probe /= 2;
        }
        lo = probe;
    } else {
        while (!partial_exceeds(q, n1, hi, coeff, target)) {
            lo = hi;
            hi *= 2;
        }
    }
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        if (partial_exceeds(q, n1, mid, coeff, target))
            hi = mid;
        else
            lo = mid;
    }
    // the sum only moves at class members, so the least natural is the hi-th
    return n1 + (hi - 1) * q;
}

std::pair<double, double> block_sum_bounds(u64 q, u64 r, const BigRat& coeff,
                                           const BigInt& k0, const BigInt& k1) {
    if (k1 <= k0) return {0.0, 0.0};
    BigInt n1 = first_in_class_after(k0, q, r);
    BigInt terms = terms_up_to(k1, q, r) - terms_up_to(k0, q, r);
    if (terms <= 0) return {0.0, 0.0};
    if (terms <= kExactTermLimit) {
        BigRat exact = coeff * exact_partial(n1, q, terms);
        double d = static_cast<double>(exact);
        return {d, d};
    }
    Mpfr lo(kStartPrec), hi(kStartPrec);
    raw_block_enclosure(lo.v, hi.v, n1, q, terms);
    scale_enclosure(lo.v, hi.v, coeff);
    return {mpfr_get_d(lo.v, MPFR_RNDD), mpfr_get_d(hi.v, MPFR_RNDU)};
}

}  // namespace subseries::harmonic
