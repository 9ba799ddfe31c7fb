#include "subseries/balance.hpp"

#include "subseries/errors.hpp"
#include "subseries/harmonic.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace subseries {

namespace {

struct Mpfr {
    mpfr_t v;
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    ~Mpfr() { mpfr_clear(v); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
};

constexpr double kSignMargin = 1e-30;

}  // namespace

int BalanceSchedule::block_of(const BigInt& n) const {
    if (n <= 0) throw std::invalid_argument("indices are 1-based");
    auto it = std::lower_bound(cutpoints.begin(), cutpoints.end(), n);
    auto idx = static_cast<int>(it - cutpoints.begin());  // cutpoints[idx] >= n
    if (it == cutpoints.end()) {
        bool beyond = analytic || (valid_to != 0 && n > BigInt(valid_to));
        if (beyond)
            throw DepthExhausted("block schedule decided only up to its last cutpoint");
    }
    return idx + 1;
}

namespace {

// generic engine: walk A's members accumulating |a_n| in MPFR until the block
// sum strictly exceeds 1, with an escalation retry when a comparison lands
// inside the safety margin
std::vector<BigInt> scan_cutpoints(const IndexSet& A, const TermStream& stream,
                                   u64 depth_cap, mpfr_prec_t prec, bool& ambiguous) {
    std::vector<BigInt> cuts;
    Mpfr acc(prec), term(prec), margin_lo(prec), margin_hi(prec);
    mpfr_set_d(margin_lo.v, 1.0 - kSignMargin, MPFR_RNDD);
    mpfr_set_d(margin_hi.v, 1.0 + kSignMargin, MPFR_RNDU);
    mpfr_set_zero(acc.v, 1);
    ambiguous = false;
    for (u64 n = 1; n <= depth_cap; ++n) {
        if (!A.contains(n)) continue;
        BigRat t = stream.term(n);
        if (t == 0) continue;
        mpfr_set_q(term.v, BigRat(abs(t)).backend().data(), MPFR_RNDN);
        mpfr_add(acc.v, acc.v, term.v, MPFR_RNDN);
        if (mpfr_cmp(acc.v, margin_hi.v) > 0) {
            cuts.emplace_back(n);
            mpfr_set_zero(acc.v, 1);
        } else if (mpfr_cmp(acc.v, margin_lo.v) > 0) {
            // too close to the boundary to decide "> 1" at this precision
            ambiguous = true;
            return cuts;
        }
    }
    return cuts;
}

}  // namespace

BalanceSplit balance_split(const IndexSet& A, const TermStream& stream, unsigned blocks,
                           u64 depth_cap, VerdictOracle& oracle) {
    if (blocks < 2) throw std::invalid_argument("a split needs at least 2 blocks");
    Verdict vA = oracle.resolve(stream, A);
    if (!is_infinite(vA))
        throw PreconditionViolated("balance split needs a divergent set, got " + to_string(vA));
    if (!is_tame(A, stream, oracle))
        throw PreconditionViolated("balance split needs a tame set");

    auto schedule = std::make_shared<BalanceSchedule>();
    schedule->stream_label = stream.label;
    schedule->set_description = A.describe();

    auto residue = A.as_residue_class();
    if (stream.closed_form && residue) {
        // |a_n| = coeff / n on every index, so cutpoints follow analytically
        schedule->analytic = true;
        BigInt k = 0;
        for (unsigned m = 0; m < blocks; ++m) {
            k = harmonic::least_cutpoint(residue->first, residue->second,
                                         stream.closed_form->coeff, k, BigRat(1));
            schedule->cutpoints.push_back(k);
        }
    } else {
        schedule->analytic = false;
        schedule->valid_to = depth_cap;
        bool ambiguous = true;
        for (mpfr_prec_t prec = 160; ambiguous && prec <= 1024; prec *= 2)
            schedule->cutpoints = scan_cutpoints(A, stream, depth_cap, prec, ambiguous);
        if (ambiguous)
            throw std::runtime_error("block boundary undecidable at maximum precision");
        if (schedule->cutpoints.size() < blocks)
            throw DepthExhausted("only " + std::to_string(schedule->cutpoints.size()) +
                                 " cutpoints below the depth cap of " +
                                 std::to_string(depth_cap));
    }

    u64 pred_cap = schedule->analytic ? 0 : depth_cap;
    std::shared_ptr<const BalanceSchedule> sched = schedule;
    auto in_even_block = [sched](u64 n) { return sched->block_of(BigInt(n)) % 2 == 0; };
    auto [even_pred, odd_pred] = IndexSet::complementary_pair(
        "balance-even-blocks(" + stream.label + ":" + A.describe() + ")",
        "balance-odd-blocks(" + stream.label + ":" + A.describe() + ")", in_even_block,
        pred_cap);

    BalanceSplit split;
    split.schedule = sched;
    split.b = A.intersect(even_pred);
    split.rest = A.intersect(odd_pred);
    split.propagated = vA;
    oracle.install(stream, split.b, vA, Provenance::Propagated, "balance-split");
    oracle.install(stream, split.rest, vA, Provenance::Propagated, "balance-split");
    return split;
}

namespace {

GreedyResult run_greedy(const IndexSet& C, const IndexSet& A, const IndexSet& complement,
                        const TermStream& stream, u64 depth, bool mirrored,
                        mpfr_prec_t prec, u64& flagged) {
    Mpfr acc(prec), term(prec);
    mpfr_set_zero(acc.v, 1);
    auto b_bits = std::make_shared<std::vector<bool>>(depth, false);
    auto cb_bits = std::make_shared<std::vector<bool>>(depth, false);
    std::vector<double> sums(depth, 0.0);
    double cur = 0.0;
    flagged = 0;

    for (u64 j = 1; j <= depth; ++j) {
        bool in_c = C.contains(j);
        bool in_a = A.contains(j);
        if (in_c && !in_a)
            throw PreconditionViolated("C escapes A at index " + std::to_string(j));
        bool take = in_c;
        if (!in_c && !in_a) {
            int sgn = mpfr_sgn(acc.v);
            double mag = std::fabs(mpfr_get_d(acc.v, MPFR_RNDN));
            if (mag != 0.0 && mag < kSignMargin) ++flagged;
            bool positive_prefix = mirrored ? sgn < 0 : sgn > 0;
            if (positive_prefix) {
                take = true;
                (*b_bits)[j - 1] = true;
            }
        }
        if (take) {
            (*cb_bits)[j - 1] = true;
            mpfr_set_q(term.v, stream.term(j).backend().data(), MPFR_RNDN);
            mpfr_add(acc.v, acc.v, term.v, MPFR_RNDN);
            cur = mpfr_get_d(acc.v, MPFR_RNDN);
        }
        sums[j - 1] = cur;
    }

    std::string b_label = "greedy-B(" + stream.label + ";C=" + C.describe() +
                          ";A=" + A.describe() + ";depth=" + std::to_string(depth) + ")";
    IndexSet b_expr = IndexSet::materialized(b_label, b_bits, depth).intersect(complement);
    IndexSet cb_expr = C.union_with(b_expr);
    GreedyResult out{
        b_expr,
        cb_expr,
        PartialSumTrace::from_precomputed(stream.label, cb_expr.describe(), std::move(sums),
                                          cb_bits),
        flagged,
        mirrored,
        static_cast<unsigned>(prec),
    };
    return out;
}

}  // namespace

GreedyResult greedy_balance_with_complement(const IndexSet& C, const IndexSet& A,
                                            const IndexSet& complement,
                                            const TermStream& stream, u64 depth,
                                            VerdictOracle& oracle) {
    Verdict vA = oracle.resolve(stream, A);
    Verdict vComp = oracle.resolve(stream, complement);
    if (!is_infinite(vA) || vComp != verdict_negate(vA))
        throw PreconditionViolated("greedy balance needs opposite infinite verdicts, got " +
                                   to_string(vA) + " and " + to_string(vComp));
    if (!is_tame(A, stream, oracle) || !is_tame(complement, stream, oracle))
        throw PreconditionViolated("greedy balance needs both sides tame");

    bool mirrored = (vA == Verdict::MinusInfinity);
    u64 flagged = 0;
    GreedyResult result = run_greedy(C, A, complement, stream, depth, mirrored, 192, flagged);
    if (flagged > 0) {
        // one escalation pass; the flag count is diagnostic, not an error
        result = run_greedy(C, A, complement, stream, depth, mirrored, 416, flagged);
    }

    Verdict vCB = Verdict::ConditionallyConvergent;
    try {
        Verdict vC = oracle.resolve(stream, C);
        if (is_finite(vC)) vCB = vC;  // trivial case: the rule never fires
    } catch (const UnresolvableVerdict&) {
    }
    oracle.install(stream, result.c_union_b, vCB, Provenance::Propagated, "greedy-balance");
    return result;
}

GreedyResult greedy_balance(const IndexSet& C, const IndexSet& A, const TermStream& stream,
                            u64 depth, VerdictOracle& oracle) {
    return greedy_balance_with_complement(C, A, A.complement(), stream, depth, oracle);
}

u64 verify_greedy_pointwise(const GreedyResult& result, const IndexSet& C, const IndexSet& A,
                            const TermStream& stream) {
    const u64 depth = result.trace.depth();
    const auto prec = static_cast<mpfr_prec_t>(result.precision_bits);
    Mpfr acc(prec), term(prec);
    mpfr_set_zero(acc.v, 1);
    u64 mismatches = 0;
    for (u64 j = 1; j <= depth; ++j) {
        bool in_c = C.contains(j);
        bool in_a = A.contains(j);
        int sgn = mpfr_sgn(acc.v);
        bool positive_prefix = result.mirrored ? sgn < 0 : sgn > 0;
        bool should_take_b = !in_c && !in_a && positive_prefix;
        bool recorded_b = !in_c && result.trace.in_set(j);
        if (should_take_b != recorded_b) ++mismatches;
        if (in_c || recorded_b) {
            mpfr_set_q(term.v, stream.term(j).backend().data(), MPFR_RNDN);
            mpfr_add(acc.v, acc.v, term.v, MPFR_RNDN);
        }
    }
    return mismatches;
}

u64 envelope_start(const PartialSumTrace& trace, double eps) {
    const double lo = -2 * eps, hi = 3 * eps;
    u64 depth = trace.depth();
    double last = trace.sum_at(depth);
    if (!(last > lo && last < hi)) return 0;
    u64 start = depth;
    for (u64 j = depth; j >= 1; --j) {
        double s = trace.sum_at(j);
        if (s > lo && s < hi)
            start = j;
        else
            break;
        if (j == 1) break;
    }
    return start;
}

}  // namespace subseries
