#include "subseries/oracle.hpp"

#include "subseries/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <memory>

namespace subseries {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Declared: return "declared";
        case Provenance::Propagated: return "propagated";
        case Provenance::Empirical: return "empirical";
    }
    return "empirical";
}

void VerdictOracle::declare(const TermStream& stream, const IndexSet& set, Verdict v) {
    entries_.insert_or_assign({stream.label, set.fingerprint()},
                              Stored{set, OracleEntry{v, Provenance::Declared, ""}});
}

void VerdictOracle::install(const TermStream& stream, const IndexSet& set, Verdict v,
                            Provenance prov, const std::string& rule) {
    entries_.insert_or_assign({stream.label, set.fingerprint()},
                              Stored{set, OracleEntry{v, prov, rule}});
}

std::optional<OracleEntry> VerdictOracle::lookup(const TermStream& stream,
                                                 const IndexSet& set) const {
    auto it = entries_.find({stream.label, set.fingerprint()});
    if (it == entries_.end()) return std::nullopt;
    return it->second.entry;
}

std::vector<IndexSet> VerdictOracle::entries_with(const TermStream& stream, Verdict v) const {
    std::vector<IndexSet> out;
    for (const auto& [key, stored] : entries_)
        if (key.first == stream.label && stored.entry.verdict == v) out.push_back(stored.set);
    return out;
}

std::vector<std::pair<IndexSet, OracleEntry>> VerdictOracle::entries_for(
    const std::string& label) const {
    std::vector<std::pair<IndexSet, OracleEntry>> out;
    for (const auto& [key, stored] : entries_)
        if (key.first == label) out.emplace_back(stored.set, stored.entry);
    return out;
}

void VerdictOracle::declare_tame(const TermStream& stream, const IndexSet& set,
                                 Provenance prov, const std::string& rule) {
    tame_entries_.insert_or_assign({stream.label, set.fingerprint()},
                                   TameStored{set, prov, rule});
}

bool VerdictOracle::lookup_tame(const TermStream& stream, const IndexSet& set) const {
    return tame_entries_.contains({stream.label, set.fingerprint()});
}

std::vector<std::pair<IndexSet, std::pair<Provenance, std::string>>>
VerdictOracle::tame_entries_for(const std::string& label) const {
    std::vector<std::pair<IndexSet, std::pair<Provenance, std::string>>> out;
    for (const auto& [key, stored] : tame_entries_)
        if (key.first == label) out.emplace_back(stored.set, std::make_pair(stored.prov, stored.rule));
    return out;
}

Verdict VerdictOracle::resolve(const TermStream& stream, const IndexSet& set) {
    return resolve_impl(stream, set, 32);
}

Verdict VerdictOracle::resolve_impl(const TermStream& stream, const IndexSet& set, int budget) {
    if (budget <= 0)
        throw UnresolvableVerdict("resolution budget exhausted at " + set.describe());
    if (auto hit = lookup(stream, set)) return hit->verdict;
    if (set.kind() == IndexSet::Kind::Empty) return Verdict::AbsolutelyConvergent;
    if (set.kind() == IndexSet::Kind::All && stream.declared_global) {
        declare(stream, set, *stream.declared_global);
        return *stream.declared_global;
    }

    // subset of an absolutely convergent set
    for (const auto& super : entries_with(stream, Verdict::AbsolutelyConvergent)) {
        if (IndexSet::provably_subset(set, super)) {
            install(stream, set, Verdict::AbsolutelyConvergent, Provenance::Propagated,
                    "subset of abs-conv " + super.describe());
            return Verdict::AbsolutelyConvergent;
        }
    }

    if (set.kind() == IndexSet::Kind::Union) {
        IndexSet a = set.left(), b = set.right();
        if (IndexSet::provably_disjoint(a, b)) {
            Verdict va = resolve_impl(stream, a, budget - 1);
            Verdict vb = resolve_impl(stream, b, budget - 1);
            Verdict v = verdict_union(va, vb);
            if (v != Verdict::Unknown) {
                install(stream, set, v, Provenance::Propagated, "disjoint union");
                return v;
            }
            throw UnresolvableVerdict("union of " + to_string(va) + " and " + to_string(vb) +
                                      " is not well-defined over " + set.describe());
        }
        // overlapping but both absolutely convergent
        try {
            Verdict va = resolve_impl(stream, a, budget - 1);
            Verdict vb = resolve_impl(stream, b, budget - 1);
            if (va == Verdict::AbsolutelyConvergent && vb == Verdict::AbsolutelyConvergent) {
                install(stream, set, Verdict::AbsolutelyConvergent, Provenance::Propagated,
                        "union of abs-conv sets");
                return Verdict::AbsolutelyConvergent;
            }
        } catch (const UnresolvableVerdict&) {
        }
    }

    if (set.kind() == IndexSet::Kind::Difference) {
        IndexSet whole = set.left(), part = set.right();
        if (IndexSet::provably_subset(part, whole)) {
            Verdict vw = resolve_impl(stream, whole, budget - 1);
            Verdict vp = resolve_impl(stream, part, budget - 1);
            Verdict v = verdict_difference(vw, vp);
            if (v != Verdict::Unknown) {
                install(stream, set, v, Provenance::Propagated, "difference");
                return v;
            }
        }
    }

    if (set.kind() == IndexSet::Kind::Intersection) {
        // A ∩ B ⊆ A: nothing more to do here unless one side is abs-conv,
        // which the subset scan above already covers via structural rules.
    }

    throw UnresolvableVerdict("no declared or derivable verdict for " + stream.label +
                              " over " + set.describe());
}

std::vector<unsigned> SignPartition::nonempty_patterns() const {
    std::vector<unsigned> out;
    for (unsigned bits = 0; bits < cells.size(); ++bits)
        if (nonempty[bits]) out.push_back(bits);
    return out;
}

SignPartition sign_partition(const std::vector<TermStream>& streams, u64 probe_depth) {
    int k = static_cast<int>(streams.size());
    if (k < 1 || k > 4) throw std::invalid_argument("sign partition takes 1..4 streams");

    std::string instance;
    for (const auto& s : streams) {
        if (!instance.empty()) instance += ",";
        instance += s.label;
    }

    auto sign_fns = std::make_shared<std::vector<SignFn>>();
    for (const auto& s : streams) sign_fns->push_back(s.sign_fn());

    SignPartition part;
    part.instance = instance;
    part.arity = k;
    part.probe_depth = probe_depth;
    unsigned count = 1u << k;
    part.nonempty.assign(count, false);
    for (unsigned bits = 0; bits < count; ++bits)
        part.cells.push_back(IndexSet::sign_cell(instance, SignPattern(k, bits), sign_fns));

    for (u64 n = 1; n <= probe_depth; ++n) {
        unsigned bits = 0;
        for (int i = 0; i < k; ++i)
            if ((*sign_fns)[static_cast<std::size_t>(i)](n) > 0) bits |= 1u << i;
        part.nonempty[bits] = true;
    }
    return part;
}

void declare_instance(VerdictOracle& oracle, const Instance& instance,
                      const SignPartition& cells) {
    for (std::size_t i = 0; i < instance.streams.size(); ++i) {
        const TermStream& s = instance.streams[i];
        if (s.declared_global) oracle.declare(s, IndexSet::all(), *s.declared_global);
        for (unsigned bits = 0; bits < cells.cells.size(); ++bits) {
            auto it = instance.cell_verdicts.find(bits);
            if (it != instance.cell_verdicts.end()) {
                oracle.declare(s, cells.cells[bits], it->second.at(i));
            } else if (!cells.nonempty[bits]) {
                // uninhabited cell: all subseries vanish
                oracle.declare(s, cells.cells[bits], Verdict::AbsolutelyConvergent);
            }
            // every term of a cell has one sign for each stream
            oracle.declare_tame(s, cells.cells[bits], Provenance::Declared,
                                "single-sign cell");
        }
    }
}

std::pair<IndexSet, IndexSet> sign_split(const IndexSet& set, const TermStream& stream) {
    using K = IndexSet::Kind;
    if (set.kind() == K::Empty) return {IndexSet::empty(), IndexSet::empty()};
    // a sign cell of this stream's instance lies entirely in one part
    if (auto sg = set.cell_sign_for(stream.label)) {
        if (*sg == Sign::Positive) return {set, IndexSet::empty()};
        return {IndexSet::empty(), set};
    }
    // a residue class on which the stream's sign is constant
    if (stream.sign_regions) {
        if (auto rc = set.as_residue_class()) {
            auto [mod, rem] = *rc;
            auto [smod, signs] = *stream.sign_regions;
            if (smod != 0 && mod % smod == 0) {
                Sign sg = signs[static_cast<std::size_t>(rem % smod)];
                if (sg == Sign::Positive) return {set, IndexSet::empty()};
                return {IndexSet::empty(), set};
            }
        }
    }
    if (set.kind() == K::Union) {
        auto [lp, ln] = sign_split(set.left(), stream);
        auto [rp, rn] = sign_split(set.right(), stream);
        return {lp.union_with(rp), ln.union_with(rn)};
    }
    IndexSet pos = IndexSet::sign_predicate(stream.label, true, stream.sign_fn());
    IndexSet nonpos = IndexSet::sign_predicate(stream.label, false, stream.sign_fn());
    return {set.intersect(pos), set.intersect(nonpos)};
}

namespace {

// Resolve one sign part, treating "cell whose declared verdict already has a
// single sign" as its own positive or non-positive part.
std::optional<Verdict> try_resolve(VerdictOracle& oracle, const TermStream& stream,
                                   const IndexSet& set) {
    try {
        return oracle.resolve(stream, set);
    } catch (const UnresolvableVerdict&) {
        return std::nullopt;
    }
}

}  // namespace

bool is_tame(const IndexSet& set, const TermStream& stream, VerdictOracle& oracle) {
    // recorded tameness facts, and subsets of recorded tame sets
    if (oracle.lookup_tame(stream, set)) return true;
    for (const auto& [key, stored] : oracle.tame_entries_) {
        if (key.first != stream.label) continue;
        if (IndexSet::provably_subset(set, stored.set)) {
            oracle.declare_tame(stream, set, Provenance::Propagated,
                                "subset of tame " + stored.set.describe());
            return true;
        }
    }

    // a set whose own verdict is absolutely convergent is tame outright
    if (auto direct = try_resolve(oracle, stream, set))
        if (*direct == Verdict::AbsolutelyConvergent) return true;

    auto [pos, nonpos] = sign_split(set, stream);
    auto vp = try_resolve(oracle, stream, pos);
    auto vn = try_resolve(oracle, stream, nonpos);
    if ((vp && *vp == Verdict::AbsolutelyConvergent) ||
        (vn && *vn == Verdict::AbsolutelyConvergent)) {
        oracle.declare_tame(stream, set, Provenance::Propagated, "one sign part abs-conv");
        return true;
    }
    if (vp && vn) return false;  // both resolved, neither absolutely convergent
    throw UnresolvableVerdict("cannot resolve either sign part of " + set.describe() +
                              " under " + stream.label);
}

bool is_tame_all(const IndexSet& set, const std::vector<TermStream>& streams,
                 VerdictOracle& oracle) {
    for (const auto& s : streams)
        if (!is_tame(set, s, oracle)) return false;
    return true;
}

fn32::PartialFunction phi(const IndexSet& set, const std::vector<TermStream>& streams,
                          VerdictOracle& oracle) {
    if (streams.size() != 3) throw std::invalid_argument("phi expects exactly 3 streams");
    fn32::PartialFunction f;
    for (int i = 0; i < 3; ++i) {
        Verdict v = oracle.resolve(streams[static_cast<std::size_t>(i)], set);
        if (v == Verdict::PlusInfinity) f = f.with(i + 1, fn32::Value::P);
        if (v == Verdict::MinusInfinity) f = f.with(i + 1, fn32::Value::N);
    }
    return f;
}

TamePhiFamily tame_phi_family(const SignPartition& cells,
                              const std::vector<TermStream>& streams, VerdictOracle& oracle) {
    if (streams.size() != 3)
        throw std::invalid_argument("tame phi family expects exactly 3 streams");

    unsigned cell_count = static_cast<unsigned>(cells.cells.size());
    // per-cell verdicts, resolved once
    std::vector<std::array<Verdict, 3>> cell_verdicts(cell_count);
    for (unsigned c = 0; c < cell_count; ++c)
        for (int i = 0; i < 3; ++i)
            cell_verdicts[c][static_cast<std::size_t>(i)] =
                oracle.resolve(streams[static_cast<std::size_t>(i)], cells.cells[c]);

    TamePhiFamily out;
    std::map<std::uint8_t, ProfiledUnion> first_witness;

    for (unsigned bits = 1; bits < (1u << cell_count); ++bits) {
        std::array<Verdict, 3> folded{Verdict::AbsolutelyConvergent,
                                      Verdict::AbsolutelyConvergent,
                                      Verdict::AbsolutelyConvergent};
        bool clash = false;
        for (int i = 0; i < 3 && !clash; ++i) {
            for (unsigned c = 0; c < cell_count; ++c) {
                if (!((bits >> c) & 1u)) continue;
                folded[static_cast<std::size_t>(i)] = verdict_union(
                    folded[static_cast<std::size_t>(i)],
                    cell_verdicts[c][static_cast<std::size_t>(i)]);
            }
            if (folded[static_cast<std::size_t>(i)] == Verdict::Unknown) clash = true;
        }
        if (clash) continue;  // not a tame union; no profile contributed

        fn32::PartialFunction profile;
        for (int i = 0; i < 3; ++i) {
            Verdict v = folded[static_cast<std::size_t>(i)];
            if (v == Verdict::PlusInfinity) profile = profile.with(i + 1, fn32::Value::P);
            if (v == Verdict::MinusInfinity) profile = profile.with(i + 1, fn32::Value::N);
        }
        if (profile.is_empty()) continue;

        IndexSet expr = IndexSet::empty();
        for (unsigned c = 0; c < cell_count; ++c)
            if ((bits >> c) & 1u) expr = expr.union_with(cells.cells[c]);
        ProfiledUnion pu{bits, expr, profile};
        out.all_unions.push_back(pu);
        auto [it, inserted] = first_witness.try_emplace(profile.code(), pu);
        if (!inserted && std::popcount(bits) < std::popcount(it->second.cell_bits))
            it->second = pu;
    }

    for (const auto& [code, witness] : first_witness) {
        out.family.add(witness.profile);
        out.witnesses.push_back(witness);
    }

    if (!fn32::is_full(out.family) || !fn32::is_union_closed(out.family))
        throw InstanceContradiction(
            "declared cell verdicts do not generate a full union-closed family");
    return out;
}

}  // namespace subseries
