#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subseries/counterexample.hpp"

#include <random>

using namespace subseries;
using namespace subseries::cx;

TEST_CASE("block lengths under the stated recurrence, minimal and even") {
    BlockTable paper = b_sequence(5, RecurrenceMode::Paper);
    REQUIRE(paper.lengths.size() == 5);
    CHECK(paper.lengths[0] == 2);
    CHECK(paper.lengths[1] == 4);
    CHECK(paper.lengths[2] == 56);
    CHECK(paper.lengths[3] == 1702);
    CHECK(paper.lengths[4] == 112960);
    // minimality: one step of the recurrence recomputed in place
    CHECK(paper.lengths[2] == ceil_to_even(BigInt(8) * (1 + 2 + 4)));
    CHECK(paper.lengths[3] == ceil_to_even(BigInt(27) * (1 + 2 + 4 + 56)));

    BlockTable one = b_sequence(1, RecurrenceMode::Paper);
    CHECK(one.lengths == std::vector<BigInt>{BigInt(2)});

    BlockTable strict = b_sequence(4, RecurrenceMode::Strict);
    CHECK(strict.lengths[0] == 2);
    CHECK(strict.lengths[1] == 24);
    CHECK(strict.lengths[2] == 730);
    CHECK(strict.lengths[3] == 48448);
    CHECK(strict.lengths[2] == ceil_to_even(BigInt(27) * (1 + 2 + 24)));

    for (const BigInt& b : paper.lengths) CHECK(b % 2 == 0);
    // every interval starts at an odd index
    for (int m = 1; m <= paper.block_count(); ++m)
        CHECK(paper.starts[static_cast<std::size_t>(m - 1)] % 2 == 1);
}

TEST_CASE("terms follow the block rules exactly") {
    BlockTable t = b_sequence(4, RecurrenceMode::Paper);
    // block 1 (odd): third series sees 1/b_1 = 1/2 at the odd opening index
    CHECK(cx_term(3, 1, t) == BigRat(1, 2));
    CHECK(cx_term(4, 1, t) == 0);
    CHECK(cx_term(1, 1, t) == BigRat(1, 1));
    CHECK(cx_term(2, 2, t) == BigRat(-1, 1));
    // first odd index of block 2 (even block): second series flips sign
    BigInt n = t.starts[1];
    CHECK(n == 3);
    CHECK(cx_term(2, n, t) == BigRat(-1, 2));
    CHECK(cx_term(1, n, t) == BigRat(1, 2));
    CHECK(cx_term(3, n, t) == 0);
    CHECK(cx_term(4, n, t) == BigRat(1, 4));
    CHECK_THROWS_AS(cx_term(1, t.total_length() + 1, t), std::out_of_range);
}

TEST_CASE("deltas and block sums from selection counts") {
    BlockTable t = b_sequence(5, RecurrenceMode::Paper);
    BlockSelection odds = witness_odds(5, t);
    CHECK(delta(1, odds) == 1);
    CHECK(delta(2, odds) == 2);
    CHECK(delta(5, odds) == 56480);

    CHECK(block_sum(3, 1, odds, t) == BigRat(1, 2));
    CHECK(block_sum(2, 2, odds, t) == BigRat(-1, 1));
    CHECK(block_sum(1, 3, odds, t) == BigRat(28, 3));
    CHECK(block_sum(4, 2, odds, t) == BigRat(1, 2));
    CHECK(block_sum(3, 2, odds, t) == 0);

    BlockSelection empty;
    for (int m = 1; m <= 5; ++m) empty.counts.emplace_back(BigInt(0), BigInt(0));
    for (int i = 1; i <= 4; ++i)
        for (int m = 1; m <= 5; ++m) CHECK(block_sum(i, m, empty, t) == 0);

    BlockSelection balanced;
    balanced.counts.emplace_back(BigInt(1), BigInt(1));
    CHECK(delta(1, balanced) == 0);
    CHECK(block_sum(1, 1, balanced, t) == 0);
}

TEST_CASE("closed-form block sums match term-by-term summation on small blocks") {
    BlockTable t = b_sequence(3, RecurrenceMode::Paper);
    BlockSelection odds = witness_odds(3, t);
    for (int i = 1; i <= 4; ++i) {
        for (int m = 1; m <= 3; ++m) {
            BigRat direct = 0;
            for (u64 n : odds.explicit_indices.at(m)) direct += cx_term(i, BigInt(n), t);
            CHECK(direct == block_sum(i, m, odds, t));
        }
    }

    // randomized selections over the first three blocks
    std::mt19937_64 rng(20260810);
    for (int trial = 0; trial < 50; ++trial) {
        BlockSelection sel;
        for (int m = 1; m <= 3; ++m) {
            u64 start = t.starts[static_cast<std::size_t>(m - 1)].convert_to<u64>();
            u64 half = (t.lengths[static_cast<std::size_t>(m - 1)] / 2).convert_to<u64>();
            std::vector<u64> chosen;
            BigInt odd_picks = 0, even_picks = 0;
            for (u64 k = 0; k < 2 * half; ++k) {
                if (rng() & 1) continue;
                u64 n = start + k;
                chosen.push_back(n);
                if (n % 2 == 1)
                    ++odd_picks;
                else
                    ++even_picks;
            }
            sel.counts.emplace_back(odd_picks, even_picks);
            sel.explicit_indices[m] = chosen;
        }
        validate_selection(sel, t);
        for (int i = 1; i <= 4; ++i)
            for (int m = 1; m <= 3; ++m) {
                BigRat direct = 0;
                for (u64 n : sel.explicit_indices.at(m)) direct += cx_term(i, BigInt(n), t);
                CHECK(direct == block_sum(i, m, sel, t));
            }
    }
}

TEST_CASE("with nothing removed, every prefix sum stays within one term of zero") {
    BlockTable t = b_sequence(3, RecurrenceMode::Paper);
    for (int i = 1; i <= 4; ++i) {
        BigRat acc = 0;
        for (BigInt n = 1; n <= t.total_length(); ++n) {
            acc += cx_term(i, n, t);
            int m = t.block_of(n);
            BigRat bound = (i <= 2) ? BigRat(1, m)
                                    : BigRat(BigInt(1), t.lengths[static_cast<std::size_t>(m - 1)]);
            CHECK(abs(acc) <= bound);
        }
        CHECK(acc == 0);
    }
}

TEST_CASE("oscillation certificate for the all-odds selection") {
    BlockTable t = b_sequence(5, RecurrenceMode::Paper);
    BlockSelection odds = witness_odds(5, t);

    OscillationReport r2 = oscillation_report(odds, 2, 4, BigRat(1), t);
    REQUIRE(r2.boundary_sums.size() == 4);
    CHECK(r2.boundary_sums[0] == 1);
    CHECK(r2.boundary_sums[1] == 0);
    CHECK(r2.boundary_sums[2] == BigRat(28, 3));
    CHECK(r2.boundary_sums[3] == BigRat(-2441, 12));

    bool plus_crossed = false, minus_crossed = false;
    for (const auto& c : r2.crossings) {
        if (c.threshold == BigRat(1)) plus_crossed = true;
        if (c.threshold == BigRat(-1)) minus_crossed = true;
        if (c.block == 3) CHECK(c.upward);
    }
    CHECK(plus_crossed);
    CHECK(minus_crossed);

    // at five blocks each threshold is crossed at least twice
    OscillationReport r5 = oscillation_report(odds, 2, 5, BigRat(1), t);
    int plus = 0, minus = 0;
    for (const auto& c : r5.crossings) {
        if (c.threshold == BigRat(1)) ++plus;
        if (c.threshold == BigRat(-1)) ++minus;
    }
    CHECK(plus >= 2);
    CHECK(minus >= 2);

    // the first series only climbs under the all-odds selection
    OscillationReport r1 = oscillation_report(odds, 1, 4, BigRat(1), t);
    for (std::size_t m = 1; m < r1.boundary_sums.size(); ++m)
        CHECK(r1.boundary_sums[m] > r1.boundary_sums[m - 1]);

    // series 3 reaches +1 after two odd blocks, series 4 after two even ones
    OscillationReport r3 = oscillation_report(odds, 3, 5, BigRat(1), t);
    CHECK(r3.boundary_sums[2] == 1);           // blocks 1 and 3 contribute 1/2 each
    CHECK(r3.boundary_sums[4] == BigRat(3, 2));
    OscillationReport r4 = oscillation_report(odds, 4, 4, BigRat(1), t);
    CHECK(r4.boundary_sums[3] == 1);           // blocks 2 and 4

    // an empty selection crosses nothing
    BlockSelection empty;
    for (int m = 1; m <= 5; ++m) empty.counts.emplace_back(BigInt(0), BigInt(0));
    CHECK(oscillation_report(empty, 2, 5, BigRat(1), t).crossings.empty());
}

TEST_CASE("the divergence requirement singles out the heavy odd blocks") {
    BlockTable t = b_sequence(5, RecurrenceMode::Paper);
    BlockSelection odds = witness_odds(5, t);
    // delta(m) = b_m/2 > b_m/m^2 exactly when m^2 > 2
    CHECK(divergence_witness_blocks(odds, 5, t) == std::vector<int>{3, 5});
}

TEST_CASE("under the strict recurrence the dominance chain holds verbatim") {
    BlockTable t = b_sequence(5, RecurrenceMode::Strict);
    // b_m / m^2 >= m (1 + b_1 + ... + b_{m-1}) for m >= 2
    BigInt prefix = 2;  // b_1
    for (int m = 2; m <= 5; ++m) {
        BigRat lhs(t.lengths[static_cast<std::size_t>(m - 1)], BigInt(m) * m);
        BigRat rhs(BigInt(m) * (1 + prefix));
        CHECK(lhs >= rhs);
        prefix += t.lengths[static_cast<std::size_t>(m - 1)];
    }

    // a maximal selection at an odd block therefore swamps all earlier blocks
    BlockSelection odds = witness_odds(5, t);
    for (int m : {3, 5}) {
        BigRat sum_m = block_sum(2, m, odds, t);
        BigInt earlier = 0;
        for (int j = 1; j < m; ++j) earlier += t.lengths[static_cast<std::size_t>(j - 1)];
        CHECK(abs(sum_m) > BigRat(1) + BigRat(earlier));
        // and the boundary after block m flips past the threshold
        OscillationReport r = oscillation_report(odds, 2, m, BigRat(1), t);
        CHECK(abs(r.boundary_sums[static_cast<std::size_t>(m - 1)]) > 1);
    }
}

TEST_CASE("selection validation") {
    BlockTable t = b_sequence(3, RecurrenceMode::Paper);
    BlockSelection bad;
    bad.counts.emplace_back(BigInt(2), BigInt(0));  // block 1 has only one odd slot
    CHECK_THROWS_AS(validate_selection(bad, t), std::invalid_argument);
}
