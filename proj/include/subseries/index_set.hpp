#pragma once

#include "subseries/rational.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace subseries {

// Half-open interval (lo, hi] of 1-based indices.
struct Interval {
    u64 lo = 0;
    u64 hi = 0;
    bool contains(u64 n) const { return lo < n && n <= hi; }
};

enum class Sign : std::uint8_t { Positive, NonPositive };

// Per-series sign tuple; bit i set means series i is Positive. Zero terms
// count as NonPositive.
class SignPattern {
public:
    SignPattern(int arity, unsigned bits) : arity_(arity), bits_(bits) {}
    int arity() const { return arity_; }
    unsigned bits() const { return bits_; }
    Sign at(int i) const {
        return ((bits_ >> i) & 1u) ? Sign::Positive : Sign::NonPositive;
    }
    bool operator==(const SignPattern&) const = default;
    std::string to_string() const {
        std::string out;
        for (int i = 0; i < arity_; ++i) out += at(i) == Sign::Positive ? '+' : '-';
        return out;
    }

private:
    int arity_;
    unsigned bits_;
};

using SignFn = std::function<int(u64)>;  // -1, 0, +1 at index n

// A symbolic, lazily evaluable subset of the naturals. Values are immutable
// and cheap to copy (shared tree). Membership for every primitive used here
// is decidable in time independent of the index magnitude, except that
// materialized prefixes and capped predicates answer only up to their
// recorded horizon and throw DepthExhausted beyond it.
class IndexSet {
public:
    enum class Kind {
        All,
        Empty,
        Residue,
        Blocks,
        Cell,
        Predicate,
        Materialized,
        Union,
        Intersection,
        Difference,
    };

    IndexSet();  // empty

    static IndexSet all();
    static IndexSet empty();
    static IndexSet residue(u64 mod, u64 rem);
    static IndexSet odds() { return residue(2, 1); }
    static IndexSet evens() { return residue(2, 0); }
    static IndexSet explicit_blocks(std::vector<Interval> intervals);
    // sign cell of an instance: indices where sign_fns[i](n) matches pattern[i]
    static IndexSet sign_cell(std::string instance, SignPattern pattern,
                              std::shared_ptr<const std::vector<SignFn>> sign_fns);
    // membership by the i-th stream's sign within an instance
    static IndexSet sign_predicate(std::string stream_label, bool positive, SignFn sign);
    static IndexSet predicate(std::string name, std::function<bool(u64)> fn,
                              u64 valid_to = 0);
    // two predicates guaranteed complementary (fn and its negation); the
    // library records the pairing so disjointness is provable
    static std::pair<IndexSet, IndexSet> complementary_pair(std::string name_true,
                                                            std::string name_false,
                                                            std::function<bool(u64)> fn,
                                                            u64 valid_to = 0);
    // finite prefix recorded as a bitmap over 1..depth
    static IndexSet materialized(std::string label,
                                 std::shared_ptr<const std::vector<bool>> bits, u64 depth);

    IndexSet union_with(const IndexSet& other) const;
    IndexSet intersect(const IndexSet& other) const;
    IndexSet minus(const IndexSet& other) const;
    // set complement; rewrites residue classes, otherwise All minus this
    IndexSet complement() const;

    Kind kind() const;
    bool is_empty_expr() const { return kind() == Kind::Empty; }

    bool contains(u64 n) const;  // n >= 1; may throw DepthExhausted
    std::vector<u64> materialize(u64 depth) const;
    u64 count_to(u64 depth) const;

    std::string describe() const;
    u64 fingerprint() const;

    // (mod, rem) when this set is exactly a residue class (or All as (1,0))
    std::optional<std::pair<u64, u64>> as_residue_class() const;

    // For a sign cell: this stream's sign within the cell, if the stream is
    // one of the cell's instance streams (labels are comma-joined).
    std::optional<Sign> cell_sign_for(const std::string& stream_label) const;

    // Conservative structural checks: true means provable from the shape of
    // the expressions, false means "not provable here" rather than "false".
    static bool provably_subset(const IndexSet& a, const IndexSet& b);
    static bool provably_disjoint(const IndexSet& a, const IndexSet& b);

    IndexSet left() const;   // Union/Intersection/Difference
    IndexSet right() const;

    bool operator==(const IndexSet& other) const { return fingerprint() == other.fingerprint(); }

    struct Node;  // opaque; defined in the implementation file

private:
    explicit IndexSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

}  // namespace subseries
