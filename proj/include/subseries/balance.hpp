#pragma once

#include "subseries/index_set.hpp"
#include "subseries/oracle.hpp"
#include "subseries/stream.hpp"
#include "subseries/trace.hpp"

#include <memory>
#include <string>
#include <vector>

namespace subseries {

// Increasing cutpoints k_1 < k_2 < ...; block m is (k_{m-1}, k_m] with k_0 = 0,
// and each block's absolute-value sum over A strictly exceeds 1 with k_m
// minimal. The split keeps the even-indexed blocks.
struct BalanceSchedule {
    std::vector<BigInt> cutpoints;
    bool analytic = false;  // computed by the closed-form engine, valid to the last cutpoint
    u64 valid_to = 0;       // membership horizon for the generic engine
    std::string stream_label;
    std::string set_description;

    // 1-based block index of n; requires n within the decided horizon
    int block_of(const BigInt& n) const;
};

struct BalanceSplit {
    IndexSet b;     // A restricted to even-indexed blocks
    IndexSet rest;  // A restricted to odd-indexed blocks
    std::shared_ptr<const BalanceSchedule> schedule;
    Verdict propagated;  // the verdict installed on both halves
};

// Split a tame divergent set into two divergent halves by alternating blocks
// of absolute sum > 1. Requires A's verdict to resolve to an infinity (the
// mirror sign is accepted; block sums only see |a_n|). Throws DepthExhausted
// when fewer than `blocks` cutpoints exist below `depth_cap` and no
// closed-form engine applies.
BalanceSplit balance_split(const IndexSet& A, const TermStream& stream, unsigned blocks,
                           u64 depth_cap, VerdictOracle& oracle);

struct GreedyResult {
    IndexSet b;          // selected subset of the complement of A
    IndexSet c_union_b;
    PartialSumTrace trace;  // running sums of C ∪ B under the original stream
    u64 flagged_decisions;  // sign decisions closer to zero than the safety margin
    bool mirrored;          // ran on the negated stream (A summed to -inf)
    unsigned precision_bits = 192;
};

// The pointwise balancing rule: after all indices below j are settled,
//   j ∈ B  iff  j ∉ A and the strict prefix sum over C ∪ B is positive
// (with both signs flipped when A sums to -inf). Requires C ⊆ A, A and its
// complement tame, and opposite infinite verdicts on A and its complement.
GreedyResult greedy_balance(const IndexSet& C, const IndexSet& A, const TermStream& stream,
                            u64 depth, VerdictOracle& oracle);

// Same, with the complement supplied as an explicit expression whose verdict
// and tameness are resolvable (used when A arrived as a cell union).
GreedyResult greedy_balance_with_complement(const IndexSet& C, const IndexSet& A,
                                            const IndexSet& complement,
                                            const TermStream& stream, u64 depth,
                                            VerdictOracle& oracle);

// Re-walk the greedy rule against the recorded membership; returns the number
// of indices where the rule and the recording disagree (0 on a faithful run).
u64 verify_greedy_pointwise(const GreedyResult& result, const IndexSet& C, const IndexSet& A,
                            const TermStream& stream);

// Envelope scan: the least N <= depth such that S(j) stays inside
// (-2*eps, 3*eps) for every N <= j <= depth, or 0 when even the final sum
// escapes the band.
u64 envelope_start(const PartialSumTrace& trace, double eps);

}  // namespace subseries
