#include "subseries/index_set.hpp"

#include "subseries/errors.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>

namespace subseries {

namespace {

u64 fnv1a(const std::string& s) {
    u64 h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

u64 bitmap_hash(const std::vector<bool>& bits) {
    u64 h = 1469598103934665603ull;
    u64 word = 0;
    int fill = 0;
    for (bool b : bits) {
        word = (word << 1) | (b ? 1u : 0u);
        if (++fill == 64) {
            h ^= word;
            h *= 1099511628211ull;
            word = 0;
            fill = 0;
        }
    }
    h ^= word;
    h *= 1099511628211ull;
    h ^= bits.size();
    h *= 1099511628211ull;
    return h;
}

std::atomic<u64> next_pair_id{1};

}  // namespace

struct IndexSet::Node {
    Kind kind;

    // Residue
    u64 mod = 0, rem = 0;

    // Blocks
    std::vector<Interval> intervals;  // sorted, disjoint

    // Cell
    std::string instance;
    SignPattern pattern{0, 0};
    std::shared_ptr<const std::vector<SignFn>> sign_fns;

    // Predicate / sign predicate
    std::string name;
    std::function<bool(u64)> fn;
    u64 valid_to = 0;   // 0 = unbounded
    u64 pair_id = 0;    // complementary-pair marker
    bool pair_polarity = false;

    // Materialized
    std::shared_ptr<const std::vector<bool>> bits;  // index n at position n-1
    u64 depth = 0;
    u64 content_hash = 0;

    // Union / Intersection / Difference
    std::shared_ptr<const Node> lhs, rhs;

    mutable std::string describe_cache;
    mutable u64 fingerprint_cache = 0;
};

namespace {

using Node = IndexSet::Node;

std::shared_ptr<Node> make_node(IndexSet::Kind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
}

const std::string& describe_node(const Node& n);

std::string describe_fresh(const Node& n) {
    using K = IndexSet::Kind;
    switch (n.kind) {
        case K::All: return "all";
        case K::Empty: return "empty";
        case K::Residue: return "mod(" + std::to_string(n.mod) + "," + std::to_string(n.rem) + ")";
        case K::Blocks: {
            std::string out = "blocks[";
            for (std::size_t i = 0; i < n.intervals.size(); ++i) {
                if (i) out += ",";
                out += "(" + std::to_string(n.intervals[i].lo) + "," +
                       std::to_string(n.intervals[i].hi) + "]";
            }
            out += "]";
            return out;
        }
        case K::Cell:
            return "cell(" + n.instance + ":" + n.pattern.to_string() + ")";
        case K::Predicate:
            return "pred(" + n.name + ")";
        case K::Materialized:
            return "mat(" + n.name + "#" + std::to_string(n.content_hash) + "@" +
                   std::to_string(n.depth) + ")";
        case K::Union:
            return "(" + describe_node(*n.lhs) + " u " + describe_node(*n.rhs) + ")";
        case K::Intersection:
            return "(" + describe_node(*n.lhs) + " n " + describe_node(*n.rhs) + ")";
        case K::Difference:
            return "(" + describe_node(*n.lhs) + " \\ " + describe_node(*n.rhs) + ")";
    }
    return "?";
}

const std::string& describe_node(const Node& n) {
    if (n.describe_cache.empty()) n.describe_cache = describe_fresh(n);
    return n.describe_cache;
}

bool node_contains(const Node& n, u64 idx) {
    using K = IndexSet::Kind;
    switch (n.kind) {
        case K::All: return true;
        case K::Empty: return false;
        case K::Residue: return idx % n.mod == n.rem;
        case K::Blocks: {
            auto it = std::upper_bound(n.intervals.begin(), n.intervals.end(), idx,
                                       [](u64 v, const Interval& iv) { return v <= iv.hi; });
            return it != n.intervals.end() && it->contains(idx);
        }
        case K::Cell: {
            for (int i = 0; i < n.pattern.arity(); ++i) {
                bool positive = (*n.sign_fns)[static_cast<std::size_t>(i)](idx) > 0;
                if (positive != (n.pattern.at(i) == Sign::Positive)) return false;
            }
            return true;
        }
        case K::Predicate:
            if (n.valid_to != 0 && idx > n.valid_to)
                throw DepthExhausted("predicate " + n.name + " is only decided up to " +
                                     std::to_string(n.valid_to));
            return n.fn(idx);
        case K::Materialized:
            if (idx > n.depth)
                throw DepthExhausted("materialized set " + n.name + " covers only 1.." +
                                     std::to_string(n.depth));
            return (*n.bits)[idx - 1];
        case K::Union: return node_contains(*n.lhs, idx) || node_contains(*n.rhs, idx);
        case K::Intersection: return node_contains(*n.lhs, idx) && node_contains(*n.rhs, idx);
        case K::Difference: return node_contains(*n.lhs, idx) && !node_contains(*n.rhs, idx);
    }
    return false;
}

}  // namespace

IndexSet::IndexSet() : node_(make_node(Kind::Empty)) {}

IndexSet IndexSet::all() { return IndexSet(make_node(Kind::All)); }

IndexSet IndexSet::empty() { return IndexSet(make_node(Kind::Empty)); }

IndexSet IndexSet::residue(u64 mod, u64 rem) {
    if (mod == 0 || rem >= mod) throw std::invalid_argument("residue class needs 0 <= rem < mod");
    if (mod == 1) return all();
    auto n = make_node(Kind::Residue);
    n->mod = mod;
    n->rem = rem;
    return IndexSet(n);
}

IndexSet IndexSet::explicit_blocks(std::vector<Interval> intervals) {
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (intervals[i].lo >= intervals[i].hi)
            throw std::invalid_argument("interval (lo,hi] needs lo < hi");
        if (i && intervals[i].lo < intervals[i - 1].hi)
            throw std::invalid_argument("intervals must be disjoint");
    }
    auto n = make_node(Kind::Blocks);
    n->intervals = std::move(intervals);
    return IndexSet(n);
}

IndexSet IndexSet::sign_cell(std::string instance, SignPattern pattern,
                             std::shared_ptr<const std::vector<SignFn>> sign_fns) {
    if (!sign_fns || static_cast<int>(sign_fns->size()) != pattern.arity())
        throw std::invalid_argument("sign cell arity mismatch");
    auto n = make_node(Kind::Cell);
    n->instance = std::move(instance);
    n->pattern = pattern;
    n->sign_fns = std::move(sign_fns);
    return IndexSet(n);
}

IndexSet IndexSet::sign_predicate(std::string stream_label, bool positive, SignFn sign) {
    auto n = make_node(Kind::Predicate);
    n->name = std::string("sgn") + (positive ? "+" : "-") + "(" + stream_label + ")";
    n->fn = [sign = std::move(sign), positive](u64 idx) { return (sign(idx) > 0) == positive; };
    n->pair_id = fnv1a("sgnpair:" + stream_label);
    n->pair_polarity = positive;
    return IndexSet(n);
}

IndexSet IndexSet::predicate(std::string name, std::function<bool(u64)> fn, u64 valid_to) {
    auto n = make_node(Kind::Predicate);
    n->name = std::move(name);
    n->fn = std::move(fn);
    n->valid_to = valid_to;
    return IndexSet(n);
}

std::pair<IndexSet, IndexSet> IndexSet::complementary_pair(std::string name_true,
                                                           std::string name_false,
                                                           std::function<bool(u64)> fn,
                                                           u64 valid_to) {
    u64 id = next_pair_id.fetch_add(1);
    auto t = make_node(Kind::Predicate);
    t->name = std::move(name_true);
    t->fn = fn;
    t->valid_to = valid_to;
    t->pair_id = id;
    t->pair_polarity = true;
    auto f = make_node(Kind::Predicate);
    f->name = std::move(name_false);
    f->fn = [fn = std::move(fn)](u64 idx) { return !fn(idx); };
    f->valid_to = valid_to;
    f->pair_id = id;
    f->pair_polarity = false;
    return {IndexSet(t), IndexSet(f)};
}

IndexSet IndexSet::materialized(std::string label, std::shared_ptr<const std::vector<bool>> bits,
                                u64 depth) {
    if (!bits || bits->size() < depth) throw std::invalid_argument("bitmap shorter than depth");
    auto n = make_node(Kind::Materialized);
    n->name = std::move(label);
    n->bits = std::move(bits);
    n->depth = depth;
    n->content_hash = bitmap_hash(*n->bits);
    return IndexSet(n);
}

IndexSet IndexSet::union_with(const IndexSet& other) const {
    if (kind() == Kind::Empty) return other;
    if (other.kind() == Kind::Empty) return *this;
    auto n = make_node(Kind::Union);
    n->lhs = node_;
    n->rhs = other.node_;
    return IndexSet(n);
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
    if (kind() == Kind::All) return other;
    if (other.kind() == Kind::All) return *this;
    if (kind() == Kind::Empty || other.kind() == Kind::Empty) return empty();
    auto n = make_node(Kind::Intersection);
    n->lhs = node_;
    n->rhs = other.node_;
    return IndexSet(n);
}

IndexSet IndexSet::minus(const IndexSet& other) const {
    if (other.kind() == Kind::Empty) return *this;
    if (kind() == Kind::Empty) return empty();
    auto n = make_node(Kind::Difference);
    n->lhs = node_;
    n->rhs = other.node_;
    return IndexSet(n);
}

IndexSet IndexSet::complement() const {
    switch (kind()) {
        case Kind::All: return empty();
        case Kind::Empty: return all();
        case Kind::Residue: {
            if (node_->mod == 2) return residue(2, 1 - node_->rem);
            IndexSet acc = empty();
            for (u64 r = 0; r < node_->mod; ++r)
                if (r != node_->rem) acc = acc.union_with(residue(node_->mod, r));
            return acc;
        }
        default: return all().minus(*this);
    }
}

IndexSet::Kind IndexSet::kind() const { return node_->kind; }

bool IndexSet::contains(u64 n) const {
    if (n == 0) throw std::invalid_argument("indices are 1-based");
    return node_contains(*node_, n);
}

std::vector<u64> IndexSet::materialize(u64 depth) const {
    std::vector<u64> out;
    for (u64 n = 1; n <= depth; ++n)
        if (contains(n)) out.push_back(n);
    return out;
}

u64 IndexSet::count_to(u64 depth) const {
    u64 count = 0;
    for (u64 n = 1; n <= depth; ++n)
        if (contains(n)) ++count;
    return count;
}

std::string IndexSet::describe() const { return describe_node(*node_); }

u64 IndexSet::fingerprint() const {
    if (node_->fingerprint_cache == 0) node_->fingerprint_cache = fnv1a(describe_node(*node_));
    return node_->fingerprint_cache;
}

std::optional<std::pair<u64, u64>> IndexSet::as_residue_class() const {
    if (kind() == Kind::All) return std::make_pair(u64{1}, u64{0});
    if (kind() == Kind::Residue) return std::make_pair(node_->mod, node_->rem);
    return std::nullopt;
}

std::optional<Sign> IndexSet::cell_sign_for(const std::string& stream_label) const {
    if (kind() != Kind::Cell) return std::nullopt;
    const std::string& joined = node_->instance;
    int coord = 0;
    std::size_t pos = 0;
    while (pos <= joined.size()) {
        std::size_t end = joined.find(',', pos);
        if (end == std::string::npos) end = joined.size();
        if (joined.compare(pos, end - pos, stream_label) == 0)
            return node_->pattern.at(coord);
        ++coord;
        pos = end + 1;
    }
    return std::nullopt;
}

IndexSet IndexSet::left() const {
    if (!node_->lhs) throw std::logic_error("leaf expression has no left child");
    return IndexSet(node_->lhs);
}

IndexSet IndexSet::right() const {
    if (!node_->rhs) throw std::logic_error("leaf expression has no right child");
    return IndexSet(node_->rhs);
}

bool IndexSet::provably_subset(const IndexSet& a, const IndexSet& b) {
    using K = Kind;
    if (a.kind() == K::Empty || b.kind() == K::All) return true;
    if (a.fingerprint() == b.fingerprint()) return true;
    // residue refinement: mod(q,r) ⊆ mod(q',r') when q' | q and r ≡ r' (mod q')
    if (a.kind() == K::Residue && b.kind() == K::Residue) {
        if (b.node_->mod != 0 && a.node_->mod % b.node_->mod == 0 &&
            a.node_->rem % b.node_->mod == b.node_->rem)
            return true;
    }
    // a ⊆ l ∪ r when a is inside either side
    if (b.kind() == K::Union)
        if (provably_subset(a, IndexSet(b.node_->lhs)) ||
            provably_subset(a, IndexSet(b.node_->rhs)))
            return true;
    // a ⊆ l ∩ r exactly when a is inside both sides
    if (b.kind() == K::Intersection)
        if (provably_subset(a, IndexSet(b.node_->lhs)) &&
            provably_subset(a, IndexSet(b.node_->rhs)))
            return true;
    // a ⊆ l ∖ r when a is inside l and provably misses r
    if (b.kind() == K::Difference)
        if (provably_subset(a, IndexSet(b.node_->lhs)) &&
            provably_disjoint(a, IndexSet(b.node_->rhs)))
            return true;
    // l ∩ r ⊆ b when either side is
    if (a.kind() == K::Intersection)
        if (provably_subset(IndexSet(a.node_->lhs), b) ||
            provably_subset(IndexSet(a.node_->rhs), b))
            return true;
    // l ∖ r ⊆ b when l is
    if (a.kind() == K::Difference)
        if (provably_subset(IndexSet(a.node_->lhs), b)) return true;
    // l ∪ r ⊆ b when both sides are
    if (a.kind() == K::Union)
        return provably_subset(IndexSet(a.node_->lhs), b) &&
               provably_subset(IndexSet(a.node_->rhs), b);
    return false;
}

bool IndexSet::provably_disjoint(const IndexSet& a, const IndexSet& b) {
    using K = Kind;
    if (a.kind() == K::Empty || b.kind() == K::Empty) return true;
    // distinct sign cells of the same instance partition the naturals
    if (a.kind() == K::Cell && b.kind() == K::Cell && a.node_->instance == b.node_->instance &&
        !(a.node_->pattern == b.node_->pattern))
        return true;
    // residue classes: disjoint unless compatible mod the gcd
    if (a.kind() == K::Residue && b.kind() == K::Residue) {
        u64 g = std::gcd(a.node_->mod, b.node_->mod);
        if (a.node_->rem % g != b.node_->rem % g) return true;
        if (a.node_->mod == b.node_->mod && a.node_->rem != b.node_->rem) return true;
    }
    // complementary predicates
    if (a.kind() == K::Predicate && b.kind() == K::Predicate && a.node_->pair_id != 0 &&
        a.node_->pair_id == b.node_->pair_id && a.node_->pair_polarity != b.node_->pair_polarity)
        return true;
    // blocks vs blocks: interval overlap scan
    if (a.kind() == K::Blocks && b.kind() == K::Blocks) {
        for (const auto& x : a.node_->intervals)
            for (const auto& y : b.node_->intervals)
                if (x.lo < y.hi && y.lo < x.hi) return false;
        return true;
    }
    // x ∖ y is disjoint from y, and from anything inside y
    if (a.kind() == K::Difference && provably_subset(b, IndexSet(a.node_->rhs))) return true;
    if (b.kind() == K::Difference && provably_subset(a, IndexSet(b.node_->rhs))) return true;
    // unions: both halves must be disjoint from the other side
    if (a.kind() == K::Union)
        return provably_disjoint(IndexSet(a.node_->lhs), b) &&
               provably_disjoint(IndexSet(a.node_->rhs), b);
    if (b.kind() == K::Union)
        return provably_disjoint(a, IndexSet(b.node_->lhs)) &&
               provably_disjoint(a, IndexSet(b.node_->rhs));
    // intersections: one half disjoint suffices
    if (a.kind() == K::Intersection)
        if (provably_disjoint(IndexSet(a.node_->lhs), b) ||
            provably_disjoint(IndexSet(a.node_->rhs), b))
            return true;
    if (b.kind() == K::Intersection)
        if (provably_disjoint(a, IndexSet(b.node_->lhs)) ||
            provably_disjoint(a, IndexSet(b.node_->rhs)))
            return true;
    // differences: the kept side decides
    if (a.kind() == K::Difference)
        if (provably_disjoint(IndexSet(a.node_->lhs), b)) return true;
    if (b.kind() == K::Difference)
        if (provably_disjoint(a, IndexSet(b.node_->lhs))) return true;
    return false;
}

}  // namespace subseries
