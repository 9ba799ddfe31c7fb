#pragma once

#include "subseries/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace subseries::cx {

// How block lengths grow. Paper mode takes the least even value at or above
// m^3 (1 + b_1 + ... + b_m); Strict mode uses (m+1)^3 in its place, which is
// the growth rate the downstream inequality chain needs without index shift.
enum class RecurrenceMode : std::uint8_t { Paper, Strict };

std::string to_string(RecurrenceMode m);

// Adjacent intervals I_1, I_2, ... partitioning an initial segment of the
// naturals. Every length is even, so each I_m starts at an odd index.
struct BlockTable {
    RecurrenceMode mode = RecurrenceMode::Paper;
    std::vector<BigInt> lengths;  // b_1..b_M
    std::vector<BigInt> starts;   // first index of I_m

    int block_count() const { return static_cast<int>(lengths.size()); }
    BigInt total_length() const;
    BigInt block_end(int m) const;  // last index of I_m
    bool covers(const BigInt& n) const;
    int block_of(const BigInt& n) const;  // throws std::out_of_range beyond the table
};

// b_1 = 2; minimal even values satisfying the chosen recurrence.
BlockTable b_sequence(int blocks, RecurrenceMode mode);

// Exact term of series i (1..4) at index n.
//   odd blocks:  a1 = a2 = ±1/m,  a3 = ±1/b_m,  a4 = 0
//   even blocks: a1 = -a2 = ±1/m, a3 = 0,       a4 = ±1/b_m
// with + at odd n and - at even n.
BigRat cx_term(int series, const BigInt& n, const BlockTable& table);

// A selection described per block by how many odd-position and how many
// even-position indices it takes; within-block layout never affects block
// sums because terms have constant magnitude inside a block. Small blocks
// may carry explicit index lists for term-by-term cross-checks.
struct BlockSelection {
    std::vector<std::pair<BigInt, BigInt>> counts;  // (odd picks, even picks) per block
    std::map<int, std::vector<u64>> explicit_indices;

    int block_count() const { return static_cast<int>(counts.size()); }
};

void validate_selection(const BlockSelection& sel, const BlockTable& table);

// Imbalance of positive over negative terms contributed by block m.
BigInt delta(int m, const BlockSelection& sel);

// All odd positions of every block: delta(m) = b_m / 2. Explicit index lists
// are attached for blocks whose end stays below 200000.
BlockSelection witness_odds(int blocks, const BlockTable& table);

// Closed-form block sum of series i over the selection, from delta(m) alone.
BigRat block_sum(int series, int m, const BlockSelection& sel, const BlockTable& table);

struct CrossingEvent {
    int block;
    BigRat boundary_sum;  // cumulative sum after this block
    BigRat threshold;     // signed threshold that was crossed
    bool upward;
};

struct OscillationReport {
    int series = 0;
    BigRat threshold;
    std::vector<BigRat> boundary_sums;  // cumulative after block m, m = 1..M
    std::vector<CrossingEvent> crossings;
};

// Exact cumulative block-boundary sums of series i under the selection, with
// every block-level crossing of +threshold and -threshold recorded.
OscillationReport oscillation_report(const BlockSelection& sel, int series, int blocks,
                                     const BigRat& threshold, const BlockTable& table);

// Odd blocks m <= blocks with delta(m) > b_m / m^2, the per-block divergence
// requirement for the third series.
std::vector<int> divergence_witness_blocks(const BlockSelection& sel, int blocks,
                                           const BlockTable& table);

}  // namespace subseries::cx
