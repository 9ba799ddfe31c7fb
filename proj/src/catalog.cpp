#include "subseries/catalog.hpp"

#include "subseries/errors.hpp"

#include <map>
#include <stdexcept>

namespace subseries::catalog {

namespace {

// term = sgn / n^pow on indices congruent to r (mod q); sgn = 0 encodes a
// zero term, pow is 1 or 2
struct ResidueRule {
    int sgn = 0;
    int pow = 1;
};

struct ResidueSpec {
    u64 mod = 0;
    std::vector<ResidueRule> rules;  // indexed by n % mod
};

std::map<std::string, ResidueSpec>& residue_registry() {
    static std::map<std::string, ResidueSpec> reg;
    return reg;
}

TermStream residue_stream(const std::string& label, ResidueSpec spec) {
    u64 q = spec.mod;
    auto rules = spec.rules;
    TermStream s;
    s.label = label;
    s.term = [q, rules](u64 n) -> BigRat {
        const ResidueRule& r = rules[static_cast<std::size_t>(n % q)];
        if (r.sgn == 0) return BigRat(0);
        BigInt den = n;
        if (r.pow == 2) den *= n;
        return BigRat(BigInt(r.sgn), den);
    };
    s.term_d = [q, rules](u64 n) -> double {
        const ResidueRule& r = rules[static_cast<std::size_t>(n % q)];
        if (r.sgn == 0) return 0.0;
        double den = static_cast<double>(n);
        if (r.pow == 2) den *= static_cast<double>(n);
        return static_cast<double>(r.sgn) / den;
    };
    s.declared_global = Verdict::ConditionallyConvergent;
    std::vector<Sign> signs;
    for (const auto& r : rules)
        signs.push_back(r.sgn > 0 ? Sign::Positive : Sign::NonPositive);
    s.sign_regions = std::make_pair(q, signs);
    residue_registry()[label] = std::move(spec);
    return s;
}

Verdict class_verdict(const ResidueRule& r) {
    if (r.sgn == 0 || r.pow >= 2) return Verdict::AbsolutelyConvergent;
    return r.sgn > 0 ? Verdict::PlusInfinity : Verdict::MinusInfinity;
}

TermStream make_altharm(const std::string& label, bool positive_on_odd) {
    // rules[0] covers even indices, rules[1] odd indices
    ResidueSpec spec{2, {ResidueRule{positive_on_odd ? -1 : 1, 1},
                         ResidueRule{positive_on_odd ? 1 : -1, 1}}};
    TermStream s = residue_stream(label, spec);
    s.closed_form = AltOverN{1, positive_on_odd};
    return s;
}

std::shared_ptr<const cx::BlockTable> cx_table_for_depth(cx::RecurrenceMode mode, u64 depth) {
    int blocks = 1;
    while (true) {
        cx::BlockTable t = cx::b_sequence(blocks, mode);
        if (t.total_length() >= depth)
            return std::make_shared<const cx::BlockTable>(std::move(t));
        ++blocks;
    }
}

TermStream cx_stream(int series, std::shared_ptr<const cx::BlockTable> table) {
    TermStream s;
    s.label = "cx" + std::to_string(series);
    s.term = [series, table](u64 n) { return cx::cx_term(series, BigInt(n), *table); };
    auto t = s.term;
    s.term_d = [t](u64 n) { return static_cast<double>(t(n)); };
    s.declared_global = Verdict::ConditionallyConvergent;
    return s;
}

using VV = std::vector<Verdict>;
constexpr Verdict P = Verdict::PlusInfinity;
constexpr Verdict M = Verdict::MinusInfinity;
constexpr Verdict A = Verdict::AbsolutelyConvergent;

}  // namespace

TermStream stream_by_name(const std::string& name, u64 depth_hint) {
    if (name == "altharm") return make_altharm("altharm", true);
    if (name == "negaltharm") return make_altharm("negaltharm", false);
    if (name == "intro1") return make_altharm("intro1", true);
    if (name == "intro2")
        return residue_stream("intro2", {4, {{0, 1}, {1, 1}, {0, 1}, {-1, 1}}});
    if (name == "intro3")
        return residue_stream("intro3", {4, {{-1, 1}, {0, 1}, {1, 1}, {0, 1}}});
    if (name == "type1a")
        return residue_stream("type1a", {3, {{0, 1}, {1, 1}, {-1, 1}}});
    if (name == "type1b")
        return residue_stream("type1b", {3, {{1, 1}, {-1, 1}, {0, 1}}});
    if (name == "type1c")
        return residue_stream("type1c", {3, {{-1, 1}, {0, 1}, {1, 1}}});
    if (name == "type2a")
        return residue_stream("type2a", {6, {{-1, 1}, {1, 1}, {1, 1}, {-1, 1}, {-1, 1}, {1, 1}}});
    if (name == "type2b")
        return residue_stream("type2b", {6, {{1, 2}, {1, 1}, {-1, 1}, {0, 1}, {0, 1}, {1, 2}}});
    if (name == "type2c")
        return residue_stream("type2c", {6, {{1, 2}, {0, 1}, {0, 1}, {1, 1}, {-1, 1}, {1, 2}}});
    if (name == "tableau1")
        return residue_stream("tableau1", {4, {{-1, 1}, {1, 1}, {-1, 2}, {1, 2}}});
    if (name == "tableau2")
        return residue_stream("tableau2", {4, {{-1, 2}, {1, 2}, {1, 1}, {-1, 1}}});
    if (name == "mirror1") return make_altharm("mirror1", true);
    if (name == "mirror2") return make_altharm("mirror2", false);
    if (name.rfind("cx", 0) == 0 && name.size() == 3 && name[2] >= '1' && name[2] <= '4') {
        auto table = cx_table_for_depth(cx::RecurrenceMode::Paper, depth_hint);
        return cx_stream(name[2] - '0', table);
    }
    throw std::invalid_argument("unknown stream: " + name);
}

std::vector<std::string> stream_names() {
    return {"altharm", "negaltharm", "intro1", "intro2", "intro3", "type1a", "type1b",
            "type1c", "type2a", "type2b", "type2c", "cx1", "cx2", "cx3", "cx4"};
}

std::vector<std::string> instance_names() {
    return {"intro", "type1", "type2", "mirror", "tableau", "cx"};
}

Instance cx_instance(cx::RecurrenceMode mode, int blocks) {
    auto table = std::make_shared<const cx::BlockTable>(cx::b_sequence(blocks, mode));
    Instance inst;
    inst.name = "cx";
    for (int i = 1; i <= 4; ++i) inst.streams.push_back(cx_stream(i, table));
    return inst;
}

Instance cx_instance_for_depth(cx::RecurrenceMode mode, u64 depth) {
    auto table = cx_table_for_depth(mode, depth);
    Instance inst;
    inst.name = "cx";
    for (int i = 1; i <= 4; ++i) inst.streams.push_back(cx_stream(i, table));
    return inst;
}

Instance instance_by_name(const std::string& name, u64 depth_hint) {
    Instance inst;
    inst.name = name;
    if (name == "intro") {
        inst.streams = {stream_by_name("intro1"), stream_by_name("intro2"),
                        stream_by_name("intro3")};
        // pattern bits: bit i set = stream i positive
        inst.cell_verdicts[0b011] = VV{P, P, A};  // n = 1 mod 4
        inst.cell_verdicts[0b100] = VV{M, A, P};  // n = 2 mod 4
        inst.cell_verdicts[0b001] = VV{P, M, A};  // n = 3 mod 4
        inst.cell_verdicts[0b000] = VV{M, A, M};  // n = 0 mod 4
        return inst;
    }
    if (name == "type1") {
        inst.streams = {stream_by_name("type1a"), stream_by_name("type1b"),
                        stream_by_name("type1c")};
        inst.cell_verdicts[0b001] = VV{P, M, A};  // n = 1 mod 3
        inst.cell_verdicts[0b100] = VV{M, A, P};  // n = 2 mod 3
        inst.cell_verdicts[0b010] = VV{A, P, M};  // n = 0 mod 3
        return inst;
    }
    if (name == "type2") {
        inst.streams = {stream_by_name("type2a"), stream_by_name("type2b"),
                        stream_by_name("type2c")};
        inst.cell_verdicts[0b011] = VV{P, P, A};  // n = 1 mod 6: profile e
        inst.cell_verdicts[0b001] = VV{P, M, A};  // n = 2 mod 6: profile f
        inst.cell_verdicts[0b100] = VV{M, A, P};  // n = 3 mod 6: profile g
        inst.cell_verdicts[0b000] = VV{M, A, M};  // n = 4 mod 6: profile h
        inst.cell_verdicts[0b111] = VV{P, A, A};  // n = 5 mod 6: singleton profile
        inst.cell_verdicts[0b110] = VV{M, A, A};  // n = 0 mod 6: singleton profile
        return inst;
    }
    if (name == "mirror") {
        inst.streams = {stream_by_name("mirror1"), stream_by_name("mirror2")};
        inst.cell_verdicts[0b01] = VV{P, M};  // odds
        inst.cell_verdicts[0b10] = VV{M, P};  // evens
        return inst;
    }
    if (name == "tableau") {
        inst.streams = {stream_by_name("tableau1"), stream_by_name("tableau2")};
        inst.cell_verdicts[0b11] = VV{P, A};  // n = 1 mod 4
        inst.cell_verdicts[0b01] = VV{A, M};  // n = 3 mod 4
        inst.cell_verdicts[0b10] = VV{A, P};  // n = 2 mod 4
        inst.cell_verdicts[0b00] = VV{M, A};  // n = 0 mod 4
        return inst;
    }
    if (name == "cx") return cx_instance_for_depth(cx::RecurrenceMode::Paper, depth_hint);
    throw std::invalid_argument("unknown instance: " + name);
}

void declare_standalone(VerdictOracle& oracle, const TermStream& stream) {
    if (stream.declared_global) oracle.declare(stream, IndexSet::all(), *stream.declared_global);
    auto it = residue_registry().find(stream.label);
    if (it == residue_registry().end()) return;
    const ResidueSpec& spec = it->second;
    Verdict pos_fold = Verdict::AbsolutelyConvergent;
    Verdict neg_fold = Verdict::AbsolutelyConvergent;
    for (u64 r = 0; r < spec.mod; ++r) {
        const ResidueRule& rule = spec.rules[static_cast<std::size_t>(r)];
        Verdict v = class_verdict(rule);
        IndexSet cls = IndexSet::residue(spec.mod, r);
        oracle.declare(stream, cls, v);
        oracle.declare_tame(stream, cls, Provenance::Declared, "single-sign class");
        if (rule.sgn > 0)
            pos_fold = verdict_union(pos_fold, v);
        else
            neg_fold = verdict_union(neg_fold, v);
    }
    auto sign = stream.sign_fn();
    IndexSet pos_pred = IndexSet::sign_predicate(stream.label, true, sign);
    IndexSet neg_pred = IndexSet::sign_predicate(stream.label, false, sign);
    oracle.declare(stream, pos_pred, pos_fold);
    oracle.declare(stream, neg_pred, neg_fold);
    oracle.declare_tame(stream, pos_pred, Provenance::Declared, "single-sign part");
    oracle.declare_tame(stream, neg_pred, Provenance::Declared, "single-sign part");
}

void declare_all(VerdictOracle& oracle, const Instance& instance, const SignPartition& cells) {
    declare_instance(oracle, instance, cells);
    for (const auto& s : instance.streams) declare_standalone(oracle, s);
}

}  // namespace subseries::catalog
