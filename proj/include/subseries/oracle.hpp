#pragma once

#include "subseries/fn32.hpp"
#include "subseries/index_set.hpp"
#include "subseries/stream.hpp"
#include "subseries/verdict.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace subseries {

enum class Provenance : std::uint8_t { Declared, Propagated, Empirical };

std::string to_string(Provenance p);

struct OracleEntry {
    Verdict verdict;
    Provenance provenance;
    std::string rule;  // empty for Declared
};

// Records which subseries verdicts are assumed (Declared, the axioms of the
// instance) and which were derived (Propagated, with the rule used). Keys are
// (stream label, expression fingerprint); stream labels must be unique within
// one oracle.
class VerdictOracle {
public:
    void declare(const TermStream& stream, const IndexSet& set, Verdict v);
    void install(const TermStream& stream, const IndexSet& set, Verdict v, Provenance prov,
                 const std::string& rule);

    std::optional<OracleEntry> lookup(const TermStream& stream, const IndexSet& set) const;

    // Resolve a verdict from declarations plus the propagation rules
    // (empty set, disjoint unions, subsets of absolutely convergent sets,
    // differences below a resolvable superset). Throws UnresolvableVerdict.
    Verdict resolve(const TermStream& stream, const IndexSet& set);

    // every entry with the given verdict for this stream, for subset scans
    std::vector<IndexSet> entries_with(const TermStream& stream, Verdict v) const;

    // all verdict entries for one stream (for relabeled-view transfers)
    std::vector<std::pair<IndexSet, OracleEntry>> entries_for(const std::string& label) const;

    // tameness facts: declared (single-sign cells, instance axioms) or
    // propagated (subsets, clash-free unions)
    void declare_tame(const TermStream& stream, const IndexSet& set, Provenance prov,
                      const std::string& rule);
    bool lookup_tame(const TermStream& stream, const IndexSet& set) const;
    std::vector<std::pair<IndexSet, std::pair<Provenance, std::string>>> tame_entries_for(
        const std::string& label) const;

    std::size_t size() const { return entries_.size(); }

private:
    struct Stored {
        IndexSet set;
        OracleEntry entry;
    };
    std::map<std::pair<std::string, u64>, Stored> entries_;
    struct TameStored {
        IndexSet set;
        Provenance prov;
        std::string rule;
    };
    std::map<std::pair<std::string, u64>, TameStored> tame_entries_;

    Verdict resolve_impl(const TermStream& stream, const IndexSet& set, int budget);

    friend bool is_tame(const IndexSet&, const TermStream&, VerdictOracle&);
};

// The 2^k sign cells of an instance, pattern bits -> cell expression, plus
// which cells are inhabited below the probe depth.
struct SignPartition {
    std::string instance;
    int arity = 0;
    std::vector<IndexSet> cells;        // indexed by pattern bits
    std::vector<bool> nonempty;         // probed to probe_depth
    u64 probe_depth = 0;

    SignPattern pattern_of(unsigned bits) const { return SignPattern(arity, bits); }
    std::vector<unsigned> nonempty_patterns() const;
};

// Partition the naturals by the positive / non-positive pattern of each
// stream's terms; zero counts as non-positive. Cells are disjoint and cover
// every index. Probing only marks emptiness; membership stays lazy.
SignPartition sign_partition(const std::vector<TermStream>& streams, u64 probe_depth = 10000);

// Install an instance's declared cell verdicts into an oracle.
void declare_instance(VerdictOracle& oracle, const Instance& instance,
                      const SignPartition& cells);

// The positive-part / non-positive-part split of a set under one stream,
// simplified through cells and unions so declared verdicts stay reachable.
std::pair<IndexSet, IndexSet> sign_split(const IndexSet& set, const TermStream& stream);

// True iff at least one of the two sign parts of `set` is absolutely
// convergent under `stream`. Throws UnresolvableVerdict when neither part's
// verdict can be resolved.
bool is_tame(const IndexSet& set, const TermStream& stream, VerdictOracle& oracle);

// Tame with respect to every stream.
bool is_tame_all(const IndexSet& set, const std::vector<TermStream>& streams,
                 VerdictOracle& oracle);

// The divergence profile of a set: coordinate i (1-based) maps to p when the
// i-th subseries resolves to +inf, n when -inf, absent otherwise. Returns the
// empty sentinel when no coordinate qualifies.
fn32::PartialFunction phi(const IndexSet& set, const std::vector<TermStream>& streams,
                          VerdictOracle& oracle);

// One clash-free union of sign cells together with its profile.
struct ProfiledUnion {
    unsigned cell_bits;  // subset of cells by pattern index
    IndexSet set;
    fn32::PartialFunction profile;
};

struct TamePhiFamily {
    fn32::Family family;
    std::vector<ProfiledUnion> witnesses;  // one minimal witness per member
    std::vector<ProfiledUnion> all_unions; // every clash-free nonempty-profile union
};

// The family of profiles of tame sets generated by the sign cells: profiles
// of the cells plus all unions of compatible members realized by disjoint
// tame unions. The result is full and union-closed for any valid instance.
TamePhiFamily tame_phi_family(const SignPartition& cells,
                              const std::vector<TermStream>& streams, VerdictOracle& oracle);

}  // namespace subseries
