#include "subseries/counterexample.hpp"

#include <algorithm>
#include <stdexcept>

namespace subseries::cx {

std::string to_string(RecurrenceMode m) {
    return m == RecurrenceMode::Paper ? "paper" : "strict";
}

BigInt BlockTable::total_length() const {
    BigInt total = 0;
    for (const auto& b : lengths) total += b;
    return total;
}

BigInt BlockTable::block_end(int m) const {
    return starts.at(static_cast<std::size_t>(m - 1)) +
           lengths.at(static_cast<std::size_t>(m - 1)) - 1;
}

bool BlockTable::covers(const BigInt& n) const {
    return n >= 1 && n <= total_length();
}

int BlockTable::block_of(const BigInt& n) const {
    if (!covers(n)) throw std::out_of_range("index beyond the block table");
    auto it = std::upper_bound(starts.begin(), starts.end(), n);
    return static_cast<int>(it - starts.begin());
}

BlockTable b_sequence(int blocks, RecurrenceMode mode) {
    if (blocks < 1) throw std::invalid_argument("need at least one block");
    BlockTable table;
    table.mode = mode;
    table.lengths.push_back(2);
    table.starts.push_back(1);
    BigInt one_plus = 1 + BigInt(2);
    for (int m = 1; m < blocks; ++m) {
        BigInt factor = (mode == RecurrenceMode::Paper) ? BigInt(m) : BigInt(m + 1);
        BigInt next = ceil_to_even(factor * factor * factor * one_plus);
        table.starts.push_back(table.starts.back() + table.lengths.back());
        table.lengths.push_back(next);
        one_plus += next;
    }
    return table;
}

BigRat cx_term(int series, const BigInt& n, const BlockTable& table) {
    if (series < 1 || series > 4) throw std::invalid_argument("series index must be 1..4");
    int m = table.block_of(n);
    bool odd_index = (n % 2 == 1);
    bool odd_block = (m % 2 == 1);
    int sgn = odd_index ? 1 : -1;
    const BigInt& bm = table.lengths[static_cast<std::size_t>(m - 1)];
    switch (series) {
        case 1: return BigRat(sgn, m);
        case 2: return odd_block ? BigRat(sgn, m) : BigRat(-sgn, m);
        case 3: return odd_block ? BigRat(BigInt(sgn), bm) : BigRat(0);
        case 4: return odd_block ? BigRat(0) : BigRat(BigInt(sgn), bm);
    }
    return BigRat(0);
}

void validate_selection(const BlockSelection& sel, const BlockTable& table) {
    if (sel.block_count() > table.block_count())
        throw std::invalid_argument("selection has more blocks than the table");
    for (int m = 1; m <= sel.block_count(); ++m) {
        const auto& [odd, even] = sel.counts[static_cast<std::size_t>(m - 1)];
        BigInt half = table.lengths[static_cast<std::size_t>(m - 1)] / 2;
        if (odd < 0 || even < 0 || odd > half || even > half)
            throw std::invalid_argument("block " + std::to_string(m) +
                                        " picks exceed the available positions");
    }
}

BigInt delta(int m, const BlockSelection& sel) {
    if (m < 1 || m > sel.block_count()) return 0;
    const auto& [odd, even] = sel.counts[static_cast<std::size_t>(m - 1)];
    return odd - even;
}

BlockSelection witness_odds(int blocks, const BlockTable& table) {
    if (blocks > table.block_count())
        throw std::invalid_argument("selection needs a block table at least as long");
    BlockSelection sel;
    for (int m = 1; m <= blocks; ++m) {
        BigInt half = table.lengths[static_cast<std::size_t>(m - 1)] / 2;
        sel.counts.emplace_back(half, BigInt(0));
        if (table.block_end(m) <= 200000) {
            std::vector<u64> idx;
            u64 start = table.starts[static_cast<std::size_t>(m - 1)].convert_to<u64>();
            u64 end = table.block_end(m).convert_to<u64>();
            for (u64 n = start; n <= end; n += 2) idx.push_back(n);  // block starts odd
            sel.explicit_indices[m] = std::move(idx);
        }
    }
    return sel;
}

BigRat block_sum(int series, int m, const BlockSelection& sel, const BlockTable& table) {
    if (series < 1 || series > 4) throw std::invalid_argument("series index must be 1..4");
    if (m < 1 || m > table.block_count())
        throw std::out_of_range("block index beyond the table");
    BigInt d = delta(m, sel);
    bool odd_block = (m % 2 == 1);
    const BigInt& bm = table.lengths[static_cast<std::size_t>(m - 1)];
    switch (series) {
        case 1: return BigRat(d, BigInt(m));
        case 2: return odd_block ? BigRat(d, BigInt(m)) : BigRat(-d, BigInt(m));
        case 3: return odd_block ? BigRat(d, bm) : BigRat(0);
        case 4: return odd_block ? BigRat(0) : BigRat(d, bm);
    }
    return BigRat(0);
}

OscillationReport oscillation_report(const BlockSelection& sel, int series, int blocks,
                                     const BigRat& threshold, const BlockTable& table) {
    if (threshold <= 0) throw std::invalid_argument("threshold must be positive");
    validate_selection(sel, table);
    if (blocks > table.block_count())
        throw std::invalid_argument("report needs a block table at least as long");

    OscillationReport report;
    report.series = series;
    report.threshold = threshold;
    BigRat cumulative = 0;
    BigRat prev = 0;
    for (int m = 1; m <= blocks; ++m) {
        cumulative += block_sum(series, m, sel, table);
        report.boundary_sums.push_back(cumulative);
        for (int dir : {+1, -1}) {
            BigRat thr = dir > 0 ? threshold : BigRat(-threshold);
            if (prev <= thr && cumulative > thr)
                report.crossings.push_back({m, cumulative, thr, true});
            if (prev > thr && cumulative <= thr)
                report.crossings.push_back({m, cumulative, thr, false});
        }
        prev = cumulative;
    }
    return report;
}

std::vector<int> divergence_witness_blocks(const BlockSelection& sel, int blocks,
                                           const BlockTable& table) {
    std::vector<int> out;
    for (int m = 1; m <= std::min(blocks, sel.block_count()); m += 2) {
        BigRat bound(table.lengths[static_cast<std::size_t>(m - 1)], BigInt(m) * m);
        if (BigRat(delta(m, sel)) > bound) out.push_back(m);
    }
    return out;
}

}  // namespace subseries::cx
