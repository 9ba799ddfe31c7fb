#include "subseries/selector.hpp"

#include "subseries/errors.hpp"

#include <algorithm>
#include <bit>

namespace subseries {

std::string to_string(CaseTag t) {
    switch (t) {
        case CaseTag::TotalFunction: return "TotalFunction";
        case CaseTag::Case1: return "Case1";
        case CaseTag::Case2A: return "Case2A";
        case CaseTag::Case2B: return "Case2B";
        case CaseTag::Case2C: return "Case2C";
    }
    return "TotalFunction";
}

namespace {

struct CertBuilder {
    std::vector<CertStep> steps;

    int add(std::string claim, int coord, const IndexSet& set, Verdict v, std::string rule,
            std::vector<int> operands = {}, bool numeric = false,
            std::optional<std::pair<std::uint8_t, int>> member = std::nullopt) {
        CertStep step;
        step.claim = std::move(claim);
        step.coordinate = coord;
        step.set_desc = set.describe();
        step.set_fp = set.fingerprint();
        step.verdict = v;
        step.rule = std::move(rule);
        step.operands = std::move(operands);
        step.numeric = numeric;
        step.member = member;
        steps.push_back(std::move(step));
        return static_cast<int>(steps.size()) - 1;
    }
};

std::string coord_name(int coord) { return "series " + std::to_string(coord); }

}  // namespace

bool validate_certificate(const std::vector<CertStep>& steps, std::string* why) {
    auto fail = [&](std::size_t i, const std::string& msg) {
        if (why) *why = "step " + std::to_string(i) + " (" + steps[i].rule + "): " + msg;
        return false;
    };
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const CertStep& s = steps[i];
        for (int op : s.operands)
            if (op < 0 || static_cast<std::size_t>(op) >= i)
                return fail(i, "operand out of order");
        auto operand = [&](std::size_t k) { return steps[static_cast<std::size_t>(s.operands[k])]; };

        if (s.rule == "declared" || s.rule == "declared-global" || s.rule == "cell-union") {
            continue;  // leaf facts, axioms of the instance
        } else if (s.rule == "empirical-trend") {
            if (!s.numeric) return fail(i, "empirical step not marked numeric");
            if (!is_infinite(s.verdict)) return fail(i, "trend evidence must claim an infinity");
        } else if (s.rule == "empirical-assumption") {
            if (!s.numeric) return fail(i, "empirical step not marked numeric");
            if (s.verdict != Verdict::AbsolutelyConvergent)
                return fail(i, "prefix evidence can only assume absolute convergence");
        } else if (s.rule == "disjoint-union") {
            if (s.operands.size() != 2) return fail(i, "needs two operands");
            if (verdict_union(operand(0).verdict, operand(1).verdict) != s.verdict)
                return fail(i, "verdict_union mismatch");
        } else if (s.rule == "union-absconv") {
            if (s.operands.size() != 2) return fail(i, "needs two operands");
            if (operand(0).verdict != Verdict::AbsolutelyConvergent ||
                operand(1).verdict != Verdict::AbsolutelyConvergent ||
                s.verdict != Verdict::AbsolutelyConvergent)
                return fail(i, "all three verdicts must be abs-conv");
        } else if (s.rule == "difference") {
            if (s.operands.size() != 2) return fail(i, "needs two operands");
            if (verdict_difference(operand(0).verdict, operand(1).verdict) != s.verdict)
                return fail(i, "verdict_difference mismatch");
        } else if (s.rule == "subset-absconv") {
            if (s.operands.size() != 1) return fail(i, "needs one operand");
            if (operand(0).verdict != Verdict::AbsolutelyConvergent ||
                s.verdict != Verdict::AbsolutelyConvergent)
                return fail(i, "subset rule preserves abs-conv only");
        } else if (s.rule == "balance-split") {
            if (s.operands.size() != 1) return fail(i, "needs the parent verdict");
            if (!is_infinite(operand(0).verdict) || s.verdict != operand(0).verdict)
                return fail(i, "split halves inherit the parent's infinity");
        } else if (s.rule == "greedy-balance") {
            if (s.operands.size() != 2) return fail(i, "needs both side verdicts");
            Verdict a = operand(0).verdict, b = operand(1).verdict;
            if (!is_infinite(a) || b != verdict_negate(a))
                return fail(i, "greedy balance needs opposite infinities");
            if (s.verdict != Verdict::ConditionallyConvergent)
                return fail(i, "greedy balance yields a convergent union");
        } else if (s.rule == "family-membership") {
            if (s.operands.size() != 1 || !s.member) return fail(i, "needs evidence and a member");
            if (!is_infinite(operand(0).verdict)) return fail(i, "membership evidence not infinite");
            auto fn = fn32::PartialFunction::from_code(s.member->first);
            int coord = s.member->second;
            if (!fn.defined(coord)) return fail(i, "member undefined at the coordinate");
            Verdict expect = fn.at(coord) == fn32::Value::P ? Verdict::PlusInfinity
                                                            : Verdict::MinusInfinity;
            if (s.verdict != expect) return fail(i, "member value disagrees with the verdict");
        } else {
            return fail(i, "unknown rule");
        }
    }
    return true;
}

TwoSeriesResult two_series_select(const SignPartition& cells,
                                  const std::vector<TermStream>& streams,
                                  VerdictOracle& oracle) {
    if (streams.size() != 2 || cells.arity != 2)
        throw std::invalid_argument("two-series selection needs exactly 2 streams");

    std::array<std::array<Verdict, 2>, 4> v{};
    for (unsigned p = 0; p < 4; ++p)
        for (int i = 0; i < 2; ++i)
            v[p][static_cast<std::size_t>(i)] =
                oracle.resolve(streams[static_cast<std::size_t>(i)], cells.cells[p]);

    // each stream must go to +inf on one of its positive cells and to -inf on
    // one of its non-positive cells
    for (int i = 0; i < 2; ++i) {
        unsigned bit = 1u << i;
        bool plus = false, minus = false;
        for (unsigned p = 0; p < 4; ++p) {
            if ((p & bit) && v[p][static_cast<std::size_t>(i)] == Verdict::PlusInfinity)
                plus = true;
            if (!(p & bit) && v[p][static_cast<std::size_t>(i)] == Verdict::MinusInfinity)
                minus = true;
        }
        if (!plus || !minus)
            throw InstanceContradiction(
                "declared cell verdicts starve stream " + std::to_string(i + 1) +
                " of a divergent single-sign cell");
    }

    TwoSeriesResult out;
    CertBuilder cert;

    // a single cell already sending both series to infinity
    for (unsigned p = 0; p < 4; ++p) {
        if (is_infinite(v[p][0]) && is_infinite(v[p][1])) {
            int s0 = cert.add("sum over cell " + cells.pattern_of(p).to_string() + " of " +
                                  coord_name(1),
                              1, cells.cells[p], v[p][0], "declared");
            int s1 = cert.add("sum over cell " + cells.pattern_of(p).to_string() + " of " +
                                  coord_name(2),
                              2, cells.cells[p], v[p][1], "declared");
            (void)s0;
            (void)s1;
            out.chosen = cells.cells[p];
            out.verdicts = {v[p][0], v[p][1]};
            out.certificate = std::move(cert.steps);
            return out;
        }
    }

    // otherwise one of the four same-sign pairs works: the two cells where a
    // fixed stream keeps a fixed sign
    const std::array<std::pair<unsigned, unsigned>, 4> pair_masks = {
        std::make_pair(1u, 1u),  // stream 1 positive
        std::make_pair(1u, 0u),  // stream 1 non-positive
        std::make_pair(2u, 2u),  // stream 2 positive
        std::make_pair(2u, 0u),  // stream 2 non-positive
    };
    for (auto [bit, want] : pair_masks) {
        unsigned p1 = 0, p2 = 0;
        bool first = true;
        for (unsigned p = 0; p < 4; ++p) {
            if ((p & bit) != want) continue;
            (first ? p1 : p2) = p;
            first = false;
        }
        Verdict u0 = verdict_union(v[p1][0], v[p2][0]);
        Verdict u1 = verdict_union(v[p1][1], v[p2][1]);
        if (is_infinite(u0) && is_infinite(u1)) {
            int a0 = cert.add("cell " + cells.pattern_of(p1).to_string() + ", " + coord_name(1),
                              1, cells.cells[p1], v[p1][0], "declared");
            int b0 = cert.add("cell " + cells.pattern_of(p2).to_string() + ", " + coord_name(1),
                              1, cells.cells[p2], v[p2][0], "declared");
            int a1 = cert.add("cell " + cells.pattern_of(p1).to_string() + ", " + coord_name(2),
                              2, cells.cells[p1], v[p1][1], "declared");
            int b1 = cert.add("cell " + cells.pattern_of(p2).to_string() + ", " + coord_name(2),
                              2, cells.cells[p2], v[p2][1], "declared");
            IndexSet chosen = cells.cells[p1].union_with(cells.cells[p2]);
            cert.add("union sends " + coord_name(1), 1, chosen, u0, "disjoint-union", {a0, b0});
            cert.add("union sends " + coord_name(2), 2, chosen, u1, "disjoint-union", {a1, b1});
            oracle.install(streams[0], chosen, u0, Provenance::Propagated, "disjoint union");
            oracle.install(streams[1], chosen, u1, Provenance::Propagated, "disjoint union");
            out.chosen = chosen;
            out.verdicts = {u0, u1};
            out.certificate = std::move(cert.steps);
            return out;
        }
    }
    throw InstanceContradiction(
        "no cell or same-sign cell pair sends both series to infinity; the declared "
        "verdicts cannot describe two conditionally convergent series");
}

namespace {

// Streams reindexed to the picture's coordinates, with signs flipped so that
// every verdict reads exactly as the picture's labels say.
struct PictureContext {
    fn32::Symmetry relabeling;
    std::vector<TermStream> vstreams;
    VerdictOracle voracle;
};

PictureContext make_picture_context(const std::vector<TermStream>& streams,
                                    const VerdictOracle& oracle, const fn32::Symmetry& s) {
    PictureContext ctx;
    ctx.relabeling = s;
    for (int x = 0; x < 3; ++x) {
        const TermStream& base = streams[static_cast<std::size_t>(s.perm[x])];
        TermStream vs = s.flip[x] ? base.negated() : base;
        vs.label = "pic" + std::to_string(x + 1) + "(" + base.label +
                   (s.flip[x] ? ",neg" : "") + ")";
        for (const auto& [set, entry] : oracle.entries_for(base.label)) {
            Verdict v = s.flip[x] ? verdict_negate(entry.verdict) : entry.verdict;
            ctx.voracle.install(vs, set, v, entry.provenance, entry.rule);
        }
        for (const auto& [set, meta] : oracle.tame_entries_for(base.label))
            ctx.voracle.declare_tame(vs, set, meta.first, meta.second);
        ctx.vstreams.push_back(std::move(vs));
    }
    return ctx;
}

struct PartsBuild {
    LabeledPartition partition;
    std::string roles;  // which roles exist, e.g. "FGH" or "EFGH"
};

PartsBuild build_parts(const SignPartition& cells, PictureContext& ctx,
                       fn32::FamilyType type) {
    bool type2 = type != fn32::FamilyType::Type1;
    std::string roles = type2 ? "EFGH" : "FGH";

    std::map<char, std::vector<unsigned>> members;
    std::vector<unsigned> junk_cells;

    for (unsigned bits = 0; bits < cells.cells.size(); ++bits) {
        const IndexSet& cell = cells.cells[bits];
        fn32::PartialFunction profile = phi(cell, ctx.vstreams, ctx.voracle);
        if (profile.is_empty()) {
            junk_cells.push_back(bits);
            continue;
        }
        char role = 0;
        if (type2) {
            if (profile == fn32::type2_role('e') || profile == fn32::type2_role('1'))
                role = 'E';
            else if (profile == fn32::type2_role('f'))
                role = 'F';
            else if (profile == fn32::type2_role('g') || profile == fn32::type2_role('2'))
                role = 'G';
            else if (profile == fn32::type2_role('h'))
                role = 'H';
        } else {
            if (profile == fn32::type1_role('f'))
                role = 'F';
            else if (profile == fn32::type1_role('g'))
                role = 'G';
            else if (profile == fn32::type1_role('h'))
                role = 'H';
        }
        if (!role)
            throw InstanceContradiction("cell profile " + profile.to_string() +
                                        " lies outside the relabeled family");
        members[role].push_back(bits);
    }

    PartsBuild out;
    out.roles = roles;
    out.partition.junk_into = type2 ? 'E' : 'F';

    for (unsigned bits : junk_cells)
        out.partition.junk = out.partition.junk.union_with(cells.cells[bits]);

    for (char role : roles) {
        auto it = members.find(role);
        if (it == members.end() || it->second.empty())
            throw InstanceContradiction(std::string("no cell realizes role ") + role);
        IndexSet part = IndexSet::empty();
        std::array<Verdict, 3> folded{Verdict::AbsolutelyConvergent,
                                      Verdict::AbsolutelyConvergent,
                                      Verdict::AbsolutelyConvergent};
        auto absorb = [&](unsigned bits) {
            part = part.union_with(cells.cells[bits]);
            for (int x = 0; x < 3; ++x)
                folded[static_cast<std::size_t>(x)] = verdict_union(
                    folded[static_cast<std::size_t>(x)],
                    ctx.voracle.resolve(ctx.vstreams[static_cast<std::size_t>(x)],
                                        cells.cells[bits]));
        };
        for (unsigned bits : it->second) absorb(bits);
        if (role == out.partition.junk_into)
            for (unsigned bits : junk_cells) absorb(bits);

        out.partition.parts.emplace(role, part);
        out.partition.part_verdicts.emplace(role, folded);
        for (int x = 0; x < 3; ++x) {
            const TermStream& vs = ctx.vstreams[static_cast<std::size_t>(x)];
            ctx.voracle.install(vs, part, folded[static_cast<std::size_t>(x)],
                                Provenance::Propagated, "disjoint cell union");
            ctx.voracle.declare_tame(vs, part, Provenance::Propagated,
                                     "disjoint union of tame cells, sum well-defined");
        }
    }
    return out;
}

}  // namespace

LabeledPartition build_labeled_partition(const SignPartition& cells,
                                         const std::vector<TermStream>& streams,
                                         VerdictOracle& oracle, fn32::FamilyType type,
                                         const fn32::Symmetry& relabeling) {
    if (type != fn32::FamilyType::Type1 && type != fn32::FamilyType::Type2_0 &&
        type != fn32::FamilyType::Type2_1 && type != fn32::FamilyType::Type2_2)
        throw std::invalid_argument("partition labels exist only for Type 1 / Type 2 families");
    PictureContext ctx = make_picture_context(streams, oracle, relabeling);
    return build_parts(cells, ctx, type).partition;
}

namespace {

struct CaseOutcome {
    CaseTag tag;
    IndexSet chosen;
    std::array<Verdict, 3> picture_verdicts;
    std::vector<std::string> notes;
};

CaseOutcome run_case1(PictureContext& ctx, const LabeledPartition& parts, CertBuilder& cert,
                      const SelectorParams& params) {
    const IndexSet &F = parts.parts.at('F'), &G = parts.parts.at('G'),
                   &H = parts.parts.at('H');
    const TermStream& v1 = ctx.vstreams[0];
    const TermStream& v2 = ctx.vstreams[1];
    const TermStream& v3 = ctx.vstreams[2];

    int sH1 = cert.add("sum over H, " + coord_name(1), 1, H,
                       parts.part_verdicts.at('H')[0], "cell-union");
    int sAll1 = cert.add("full series 1 converges conditionally", 1, IndexSet::all(),
                         ctx.voracle.resolve(ctx.vstreams[0], IndexSet::all()),
                         "declared-global");
    IndexSet FG = IndexSet::all().minus(H);
    int sFG1 = cert.add("sum over F∪G = N∖H, " + coord_name(1), 1, FG,
                        verdict_difference(cert.steps[static_cast<std::size_t>(sAll1)].verdict,
                                           cert.steps[static_cast<std::size_t>(sH1)].verdict),
                        "difference", {sAll1, sH1});
    ctx.voracle.install(v1, FG, cert.steps.back().verdict, Provenance::Propagated,
                        "difference below the full series");

    int sF1 = cert.add("sum over F, " + coord_name(1), 1, F, parts.part_verdicts.at('F')[0],
                       "cell-union");
    BalanceSplit split = balance_split(F, v1, params.split_blocks, params.depth, ctx.voracle);
    int sRest1 = cert.add("sum over F∖B, " + coord_name(1), 1, split.rest, split.propagated,
                          "balance-split", {sF1});
    int sB1 = cert.add("sum over B, " + coord_name(1), 1, split.b, split.propagated,
                       "balance-split", {sF1});

    IndexSet chosen = split.b.union_with(G);
    Verdict a1 = verdict_difference(cert.steps[static_cast<std::size_t>(sFG1)].verdict,
                                    cert.steps[static_cast<std::size_t>(sRest1)].verdict);
    cert.add("sum over B∪G = (F∪G)∖(F∖B), " + coord_name(1), 1, chosen, a1, "difference",
             {sFG1, sRest1});
    ctx.voracle.install(v1, chosen, a1, Provenance::Propagated, "difference");

    auto role_f = fn32::type1_role('f');
    int sB2 = cert.add("B is tame with profile f, so " + coord_name(2) + " over B", 2,
                       split.b,
                       role_f.at(2) == fn32::Value::P ? Verdict::PlusInfinity
                                                      : Verdict::MinusInfinity,
                       "family-membership", {sB1}, false,
                       std::make_pair(role_f.code(), 2));
    ctx.voracle.install(v2, split.b, cert.steps.back().verdict, Provenance::Propagated,
                        "family membership");
    int sG2 = cert.add("sum over G, " + coord_name(2), 2, G, parts.part_verdicts.at('G')[1],
                       "cell-union");
    Verdict a2 = verdict_union(cert.steps[static_cast<std::size_t>(sB2)].verdict,
                               cert.steps[static_cast<std::size_t>(sG2)].verdict);
    cert.add("sum over B∪G, " + coord_name(2), 2, chosen, a2, "disjoint-union", {sB2, sG2});
    ctx.voracle.install(v2, chosen, a2, Provenance::Propagated, "disjoint union");

    int sF3 = cert.add("sum over F, " + coord_name(3), 3, F, parts.part_verdicts.at('F')[2],
                       "cell-union");
    int sB3 = cert.add("sum over B ⊆ F, " + coord_name(3), 3, split.b,
                       Verdict::AbsolutelyConvergent, "subset-absconv", {sF3});
    ctx.voracle.install(v3, split.b, Verdict::AbsolutelyConvergent, Provenance::Propagated,
                        "subset of abs-conv");
    int sG3 = cert.add("sum over G, " + coord_name(3), 3, G, parts.part_verdicts.at('G')[2],
                       "cell-union");
    Verdict a3 = verdict_union(cert.steps[static_cast<std::size_t>(sB3)].verdict,
                               cert.steps[static_cast<std::size_t>(sG3)].verdict);
    cert.add("sum over B∪G, " + coord_name(3), 3, chosen, a3, "disjoint-union", {sB3, sG3});
    ctx.voracle.install(v3, chosen, a3, Provenance::Propagated, "disjoint union");

    return CaseOutcome{CaseTag::Case1, chosen, {a1, a2, a3}, {}};
}

CaseOutcome run_case2(PictureContext& ctx, const LabeledPartition& parts, CertBuilder& cert,
                      const SelectorParams& params) {
    const IndexSet &E = parts.parts.at('E'), &F = parts.parts.at('F'),
                   &G = parts.parts.at('G'), &H = parts.parts.at('H');
    const TermStream& v1 = ctx.vstreams[0];
    const TermStream& v2 = ctx.vstreams[1];
    const TermStream& v3 = ctx.vstreams[2];

    int sE1 = cert.add("sum over E, " + coord_name(1), 1, E, parts.part_verdicts.at('E')[0],
                       "cell-union");
    int sF1 = cert.add("sum over F, " + coord_name(1), 1, F, parts.part_verdicts.at('F')[0],
                       "cell-union");
    IndexSet EF = E.union_with(F);
    Verdict vEF1 = verdict_union(parts.part_verdicts.at('E')[0], parts.part_verdicts.at('F')[0]);
    int sEF1 = cert.add("sum over E∪F, " + coord_name(1), 1, EF, vEF1, "disjoint-union",
                        {sE1, sF1});
    ctx.voracle.install(v1, EF, vEF1, Provenance::Propagated, "disjoint union");
    ctx.voracle.declare_tame(v1, EF, Provenance::Propagated, "union of tame parts");

    int sG1 = cert.add("sum over G, " + coord_name(1), 1, G, parts.part_verdicts.at('G')[0],
                       "cell-union");
    int sH1 = cert.add("sum over H, " + coord_name(1), 1, H, parts.part_verdicts.at('H')[0],
                       "cell-union");
    IndexSet GH = G.union_with(H);
    Verdict vGH1 = verdict_union(parts.part_verdicts.at('G')[0], parts.part_verdicts.at('H')[0]);
    int sGH1 = cert.add("sum over G∪H, " + coord_name(1), 1, GH, vGH1, "disjoint-union",
                        {sG1, sH1});
    ctx.voracle.install(v1, GH, vGH1, Provenance::Propagated, "disjoint union");
    ctx.voracle.declare_tame(v1, GH, Provenance::Propagated, "union of tame parts");
    // G∪H is absolutely convergent for series 2 (both parts are)
    Verdict vGH2 = verdict_union(parts.part_verdicts.at('G')[1], parts.part_verdicts.at('H')[1]);
    int sGH2 = cert.add("sum over G∪H, " + coord_name(2), 2, GH, vGH2, "cell-union");
    ctx.voracle.install(v2, GH, vGH2, Provenance::Propagated, "disjoint cell union");

    GreedyResult greedy =
        greedy_balance_with_complement(E, EF, GH, v1, params.depth, ctx.voracle);
    IndexSet C = greedy.b;
    IndexSet EC = greedy.c_union_b;
    int sEC1 = cert.add("greedy balance picks C ⊆ G∪H with E∪C convergent, " + coord_name(1),
                        1, EC, Verdict::ConditionallyConvergent, "greedy-balance",
                        {sEF1, sGH1});
    ctx.voracle.declare_tame(v2, C, Provenance::Propagated, "subset of G∪H");

    // dispatch: how does series 3 behave on C?
    IndexSet pos3 = C.intersect(IndexSet::sign_predicate(v3.label, true, v3.sign_fn()));
    IndexSet neg3 = C.intersect(IndexSet::sign_predicate(v3.label, false, v3.sign_fn()));
    PartialSumTrace pos_trace = PartialSumTrace::compute(v3, pos3, params.depth);
    PartialSumTrace neg_trace = PartialSumTrace::compute(v3, neg3, params.depth);
    Verdict vp = empirical_verdict(pos_trace, params.dispatch_policy);
    Verdict vn = empirical_verdict(neg_trace, params.dispatch_policy);
    bool pos_diverges = vp == Verdict::PlusInfinity;
    bool neg_diverges = vn == Verdict::MinusInfinity;

    std::vector<std::string> notes;
    notes.push_back("dispatch: positive part of series 3 over C reaches " +
                    std::to_string(pos_trace.final_sum()) + ", negative part " +
                    std::to_string(neg_trace.final_sum()) + " at depth " +
                    std::to_string(params.depth));

    if (pos_diverges && neg_diverges) {
        // both sign parts diverge: C is not tame for series 3; its G-part
        // must carry the positive divergence and its H-part the negative one
        IndexSet CG = C.intersect(G), CH = C.intersect(H);
        Verdict vCG3 = empirical_verdict(PartialSumTrace::compute(v3, CG, params.depth),
                                         params.dispatch_policy);
        Verdict vCH3 = empirical_verdict(PartialSumTrace::compute(v3, CH, params.depth),
                                         params.dispatch_policy);
        if (vCG3 != Verdict::PlusInfinity || vCH3 != Verdict::MinusInfinity)
            throw InstanceContradiction(
                "series 3 diverges on both sign parts of C but not along the G/H split");
        int sCG3 = cert.add("sum over C∩G, " + coord_name(3), 3, CG, Verdict::PlusInfinity,
                            "empirical-trend", {}, true);
        ctx.voracle.install(v3, CG, Verdict::PlusInfinity, Provenance::Empirical, "trend");
        int sCH3 = cert.add("sum over C∩H, " + coord_name(3), 3, CH, Verdict::MinusInfinity,
                            "empirical-trend", {}, true);
        ctx.voracle.install(v3, CH, Verdict::MinusInfinity, Provenance::Empirical, "trend");

        auto role_h = fn32::type2_role('h');
        int sCH1 = cert.add("C∩H is tame with profile h, " + coord_name(1), 1, CH,
                            Verdict::MinusInfinity, "family-membership", {sCH3}, false,
                            std::make_pair(role_h.code(), 1));
        ctx.voracle.install(v1, CH, Verdict::MinusInfinity, Provenance::Propagated,
                            "family membership");

        IndexSet chosen = E.union_with(CG);
        Verdict a1 = verdict_difference(Verdict::ConditionallyConvergent,
                                        Verdict::MinusInfinity);
        cert.add("sum over E∪(C∩G) = (E∪C)∖(C∩H), " + coord_name(1), 1, chosen, a1,
                 "difference", {sEC1, sCH1});
        ctx.voracle.install(v1, chosen, a1, Provenance::Propagated, "difference");

        int sE2 = cert.add("sum over E, " + coord_name(2), 2, E,
                           parts.part_verdicts.at('E')[1], "cell-union");
        int sCG2 = cert.add("sum over C∩G ⊆ G∪H, " + coord_name(2), 2, CG,
                            Verdict::AbsolutelyConvergent, "subset-absconv", {sGH2});
        Verdict a2 = verdict_union(parts.part_verdicts.at('E')[1],
                                   Verdict::AbsolutelyConvergent);
        cert.add("sum over E∪(C∩G), " + coord_name(2), 2, chosen, a2, "disjoint-union",
                 {sE2, sCG2});

        int sE3 = cert.add("sum over E, " + coord_name(3), 3, E,
                           parts.part_verdicts.at('E')[2], "cell-union");
        Verdict a3 = verdict_union(parts.part_verdicts.at('E')[2], Verdict::PlusInfinity);
        cert.add("sum over E∪(C∩G), " + coord_name(3), 3, chosen, a3, "disjoint-union",
                 {sE3, sCG3});

        return CaseOutcome{CaseTag::Case2C, chosen, {a1, a2, a3}, std::move(notes)};
    }

    if (pos_diverges || neg_diverges) {
        // exactly one sign part diverges: C is tame for series 3 and its
        // profile matches g (positive) or h (negative)
        char role = pos_diverges ? 'g' : 'h';
        auto member = fn32::type2_role(role);
        Verdict c3 = pos_diverges ? Verdict::PlusInfinity : Verdict::MinusInfinity;

        int sPart3 = cert.add(std::string("divergent sign part of series 3 over C (profile ") +
                                  role + ")",
                              3, pos_diverges ? pos3 : neg3, c3, "empirical-trend", {}, true);
        int sOther3 = cert.add("bounded sign part of series 3 over C", 3,
                               pos_diverges ? neg3 : pos3, Verdict::AbsolutelyConvergent,
                               "empirical-assumption", {}, true);
        int sC3 = cert.add("sum over C, " + coord_name(3), 3, C, c3, "disjoint-union",
                           {sPart3, sOther3});
        ctx.voracle.install(v3, C, c3, Provenance::Empirical, "trend dispatch");
        ctx.voracle.declare_tame(v3, C, Provenance::Empirical, "one sign part assumed abs-conv");

        notes.push_back("hypothesis for this branch is evaluated on the greedy-selected set "
                        "itself, before it is split");

        BalanceSplit split = balance_split(C, v3, params.split_blocks, params.depth,
                                           ctx.voracle);
        int sB3 = cert.add("sum over B, " + coord_name(3), 3, split.b, c3, "balance-split",
                           {sC3});
        int sRest3 = cert.add("sum over C∖B, " + coord_name(3), 3, split.rest, c3,
                              "balance-split", {sC3});
        int sRest1 = cert.add(std::string("C∖B is tame with profile ") + role + ", " +
                                  coord_name(1),
                              1, split.rest, Verdict::MinusInfinity, "family-membership",
                              {sRest3}, false, std::make_pair(member.code(), 1));
        ctx.voracle.install(v1, split.rest, Verdict::MinusInfinity, Provenance::Propagated,
                            "family membership");

        IndexSet chosen = E.union_with(split.b);
        Verdict a1 =
            verdict_difference(Verdict::ConditionallyConvergent, Verdict::MinusInfinity);
        cert.add("sum over E∪B = (E∪C)∖(C∖B), " + coord_name(1), 1, chosen, a1, "difference",
                 {sEC1, sRest1});
        ctx.voracle.install(v1, chosen, a1, Provenance::Propagated, "difference");

        int sE2 = cert.add("sum over E, " + coord_name(2), 2, E,
                           parts.part_verdicts.at('E')[1], "cell-union");
        int sB2 = cert.add("sum over B ⊆ G∪H, " + coord_name(2), 2, split.b,
                           Verdict::AbsolutelyConvergent, "subset-absconv", {sGH2});
        Verdict a2 = verdict_union(parts.part_verdicts.at('E')[1],
                                   Verdict::AbsolutelyConvergent);
        cert.add("sum over E∪B, " + coord_name(2), 2, chosen, a2, "disjoint-union",
                 {sE2, sB2});

        int sE3 = cert.add("sum over E, " + coord_name(3), 3, E,
                           parts.part_verdicts.at('E')[2], "cell-union");
        Verdict a3 = verdict_union(parts.part_verdicts.at('E')[2], c3);
        cert.add("sum over E∪B, " + coord_name(3), 3, chosen, a3, "disjoint-union",
                 {sE3, sB3});

        return CaseOutcome{CaseTag::Case2B, chosen, {a1, a2, a3}, std::move(notes)};
    }

    // neither sign part shows divergence: treat series 3 over C as absolutely
    // convergent and keep all of G
    int sC3 = cert.add("sum over C, " + coord_name(3), 3, C, Verdict::AbsolutelyConvergent,
                       "empirical-assumption", {}, true);
    ctx.voracle.install(v3, C, Verdict::AbsolutelyConvergent, Provenance::Empirical,
                        "bounded prefix");
    ctx.voracle.declare_tame(v3, C, Provenance::Empirical, "assumed abs-conv");

    int sG3 = cert.add("sum over G, " + coord_name(3), 3, G, parts.part_verdicts.at('G')[2],
                       "cell-union");
    IndexSet GC = G.intersect(C);
    int sGC3 = cert.add("sum over G∩C, " + coord_name(3), 3, GC,
                        Verdict::AbsolutelyConvergent, "subset-absconv", {sC3});
    ctx.voracle.install(v3, GC, Verdict::AbsolutelyConvergent, Provenance::Propagated,
                        "subset of abs-conv");
    IndexSet GmC = G.minus(C);
    Verdict vGmC3 = verdict_difference(parts.part_verdicts.at('G')[2],
                                       Verdict::AbsolutelyConvergent);
    int sGmC3 = cert.add("sum over G∖C, " + coord_name(3), 3, GmC, vGmC3, "difference",
                         {sG3, sGC3});
    ctx.voracle.install(v3, GmC, vGmC3, Provenance::Propagated, "difference");

    auto role_g = fn32::type2_role('g');
    int sGmC1 = cert.add("G∖C is tame with profile g, " + coord_name(1), 1, GmC,
                         Verdict::MinusInfinity, "family-membership", {sGmC3}, false,
                         std::make_pair(role_g.code(), 1));
    ctx.voracle.install(v1, GmC, Verdict::MinusInfinity, Provenance::Propagated,
                        "family membership");

    IndexSet chosen = E.union_with(C).union_with(G);
    Verdict a1 = verdict_union(Verdict::ConditionallyConvergent, Verdict::MinusInfinity);
    cert.add("sum over E∪C∪G = (E∪C)∪(G∖C), " + coord_name(1), 1, chosen, a1,
             "disjoint-union", {sEC1, sGmC1});
    ctx.voracle.install(v1, chosen, a1, Provenance::Propagated, "disjoint union");

    int sE2 = cert.add("sum over E, " + coord_name(2), 2, E, parts.part_verdicts.at('E')[1],
                       "cell-union");
    int sC2 = cert.add("sum over C ⊆ G∪H, " + coord_name(2), 2, C,
                       Verdict::AbsolutelyConvergent, "subset-absconv", {sGH2});
    int sG2 = cert.add("sum over G, " + coord_name(2), 2, G, parts.part_verdicts.at('G')[1],
                       "cell-union");
    int sCG2 = cert.add("sum over C∪G, " + coord_name(2), 2, C.union_with(G),
                        Verdict::AbsolutelyConvergent, "union-absconv", {sC2, sG2});
    Verdict a2 = verdict_union(parts.part_verdicts.at('E')[1], Verdict::AbsolutelyConvergent);
    cert.add("sum over E∪C∪G, " + coord_name(2), 2, chosen, a2, "disjoint-union",
             {sE2, sCG2});

    int sE3 = cert.add("sum over E, " + coord_name(3), 3, E, parts.part_verdicts.at('E')[2],
                       "cell-union");
    int sEC3 = cert.add("sum over E∪C, " + coord_name(3), 3, E.union_with(C),
                        Verdict::AbsolutelyConvergent, "disjoint-union", {sE3, sC3});
    Verdict a3 = verdict_union(Verdict::AbsolutelyConvergent, vGmC3);
    cert.add("sum over E∪C∪G, " + coord_name(3), 3, chosen, a3, "disjoint-union",
             {sEC3, sGmC3});

    return CaseOutcome{CaseTag::Case2A, chosen, {a1, a2, a3}, std::move(notes)};
}

}  // namespace

CaseReport three_series_select(const Instance& instance, VerdictOracle& oracle,
                               const SelectorParams& params) {
    if (instance.streams.size() != 3)
        throw std::invalid_argument("three-series selection needs exactly 3 streams");

    SignPartition cells = sign_partition(instance.streams);
    TamePhiFamily fam = tame_phi_family(cells, instance.streams, oracle);

    CaseReport report;
    report.instance = instance.name;
    report.depth = params.depth;
    report.policy = params.policy;
    report.family_type = fn32::classify(fam.family);

    CertBuilder cert;

    if (report.family_type == fn32::FamilyType::HasTotal) {
        // some tame union of cells already sends all three series to infinity
        const ProfiledUnion* best = nullptr;
        for (const auto& pu : fam.all_unions) {
            if (!pu.profile.is_total()) continue;
            if (!best || std::popcount(pu.cell_bits) < std::popcount(best->cell_bits))
                best = &pu;
        }
        if (!best) throw std::logic_error("total profile vanished between scans");
        report.tag = CaseTag::TotalFunction;
        report.relabeling = fn32::Symmetry::identity();
        report.chosen = best->set;
        for (int i = 0; i < 3; ++i) {
            Verdict v = best->profile.at(i + 1) == fn32::Value::P ? Verdict::PlusInfinity
                                                                  : Verdict::MinusInfinity;
            cert.add("sum over the chosen cell union, " + coord_name(i + 1), i + 1, best->set,
                     v, "cell-union");
            report.picture_verdicts[static_cast<std::size_t>(i)] = v;
            report.instance_verdicts[static_cast<std::size_t>(i)] = v;
            oracle.install(instance.streams[static_cast<std::size_t>(i)], best->set, v,
                           Provenance::Propagated, "disjoint cell union");
        }
    } else {
        fn32::Family target;
        switch (report.family_type) {
            case fn32::FamilyType::Type1: target = fn32::type1_picture(); break;
            case fn32::FamilyType::Type2_0: target = fn32::type2_picture(0); break;
            case fn32::FamilyType::Type2_1: target = fn32::type2_picture(1); break;
            case fn32::FamilyType::Type2_2: target = fn32::type2_picture(2); break;
            default:
                throw InstanceContradiction("profile family is not full and union-closed");
        }
        auto relabel = fn32::find_relabeling(fam.family, target);
        if (!relabel)
            throw std::logic_error("classified family admits no relabeling onto its picture");
        report.relabeling = *relabel;

        PictureContext ctx = make_picture_context(instance.streams, oracle, *relabel);
        PartsBuild parts = build_parts(cells, ctx, report.family_type);

        CaseOutcome outcome =
            report.family_type == fn32::FamilyType::Type1
                ? run_case1(ctx, parts.partition, cert, params)
                : run_case2(ctx, parts.partition, cert, params);
        report.tag = outcome.tag;
        report.chosen = outcome.chosen;
        report.picture_verdicts = outcome.picture_verdicts;
        report.notes = std::move(outcome.notes);

        // map picture verdicts back onto the instance's own streams
        for (int x = 0; x < 3; ++x) {
            Verdict v = report.picture_verdicts[static_cast<std::size_t>(x)];
            if (report.relabeling.flip[x]) v = verdict_negate(v);
            report.instance_verdicts[static_cast<std::size_t>(report.relabeling.perm[x])] = v;
        }
    }

    report.certificate = std::move(cert.steps);

    if (params.compute_traces) {
        report.traces_computed = true;
        for (int i = 0; i < 3; ++i) {
            PartialSumTrace tr = PartialSumTrace::compute(
                instance.streams[static_cast<std::size_t>(i)], report.chosen, params.depth);
            report.final_sums[static_cast<std::size_t>(i)] = tr.final_sum();
            report.empirical_tags[static_cast<std::size_t>(i)] =
                empirical_verdict(tr, params.policy);
        }
    }
    return report;
}

}  // namespace subseries
