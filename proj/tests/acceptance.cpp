// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exit status is the number of failed criteria.

#include "subseries/balance.hpp"
#include "subseries/catalog.hpp"
#include "subseries/counterexample.hpp"
#include "subseries/harmonic.hpp"
#include "subseries/selector.hpp"

#include "closure_oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace subseries;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++failures;
}

struct PreparedInstance {
    Instance instance;
    SignPartition cells;
    VerdictOracle oracle;
};

PreparedInstance prepare(const std::string& name, u64 depth_hint = 2000000) {
    PreparedInstance p{catalog::instance_by_name(name, depth_hint), {}, {}};
    p.cells = sign_partition(p.instance.streams);
    catalog::declare_all(p.oracle, p.instance, p.cells);
    return p;
}

// ------------------------------------------------------------------------

void criterion_1_fn32_classification() {
    auto t0 = std::chrono::steady_clock::now();
    auto classes = fn32::enumerate_classes();
    double sweep_seconds = seconds_since(t0);

    std::vector<int> sizes;
    for (const auto& c : classes) sizes.push_back(c.representative.size());
    bool ok = classes.size() == 4 && sizes == std::vector<int>{3, 4, 5, 6};
    ok = ok && sweep_seconds < 10.0;

    std::mt19937_64 rng(20260810);
    int invariant_failures = 0;
    for (int i = 0; i < 1000; ++i) {
        auto fam = fn32::Family::from_mask(static_cast<std::uint32_t>(rng() & ((1u << 26) - 1)));
        fn32::FamilyType t = fn32::classify(fam);
        for (const auto& s : fn32::Symmetry::all())
            if (fn32::classify(fn32::apply_symmetry(s, fam)) != t) ++invariant_failures;
    }
    ok = ok && invariant_failures == 0;

    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "Fn(3,2): %zu classes, member counts {%d,%d,%d,%d}, sweep %.2fs, "
                  "%d symmetry-invariance failures over 1000 random families",
                  classes.size(), sizes[0], sizes[1], sizes[2], sizes[3], sweep_seconds,
                  invariant_failures);
    report(1, ok, buf);
}

void criterion_2_mod4_example() {
    auto t0 = std::chrono::steady_clock::now();
    PreparedInstance p = prepare("intro");

    auto inhabited = p.cells.nonempty_patterns();
    int total_profiles = 0;
    int unions_checked = 0;
    for (unsigned mask = 1; mask < (1u << inhabited.size()); ++mask) {
        ++unions_checked;
        fn32::PartialFunction profile;
        bool clash = false;
        for (std::size_t coord = 0; coord < 3 && !clash; ++coord) {
            Verdict folded = Verdict::AbsolutelyConvergent;
            for (std::size_t i = 0; i < inhabited.size(); ++i)
                if ((mask >> i) & 1u)
                    folded = verdict_union(folded,
                                           p.oracle.resolve(p.instance.streams[coord],
                                                            p.cells.cells[inhabited[i]]));
            if (folded == Verdict::Unknown)
                clash = true;
            else if (folded == Verdict::PlusInfinity)
                profile = profile.with(static_cast<int>(coord) + 1, fn32::Value::P);
            else if (folded == Verdict::MinusInfinity)
                profile = profile.with(static_cast<int>(coord) + 1, fn32::Value::N);
        }
        if (!clash && profile.is_total()) ++total_profiles;
    }

    TamePhiFamily fam = tame_phi_family(p.cells, p.instance.streams, p.oracle);
    bool shape_ok = fam.family.size() == 4 &&
                    fn32::classify(fam.family) == fn32::FamilyType::Type2_0;
    for (auto f : fam.family.members()) shape_ok = shape_ok && f.defined(1);
    double elapsed = seconds_since(t0);

    bool ok = unions_checked == 15 && total_profiles == 0 && shape_ok && elapsed < 1.0;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "mod-4 instance: %d cell-unions checked, %d with total profile, family "
                  "is the 4-member shape sharing coordinate 1: %s, %.3fs",
                  unions_checked, total_profiles, shape_ok ? "yes" : "no", elapsed);
    report(2, ok, buf);
}

void criterion_3_greedy_balance() {
    auto t0 = std::chrono::steady_clock::now();
    TermStream s = catalog::stream_by_name("negaltharm");
    VerdictOracle oracle;
    catalog::declare_standalone(oracle, s);
    IndexSet A = IndexSet::evens();
    IndexSet C = IndexSet::residue(4, 0);  // the evens of A: every second member

    GreedyResult res = greedy_balance(C, A, s, 1000000, oracle);
    u64 mismatches = verify_greedy_pointwise(res, C, A, s);
    double final_sum = res.trace.final_sum();
    u64 env = envelope_start(res.trace, 0.01);
    double elapsed = seconds_since(t0);

    bool ok = mismatches == 0 && env > 0 && std::fabs(final_sum) < 0.05 && elapsed < 30.0 &&
              res.flagged_decisions == 0;
    char buf[240];
    std::snprintf(buf, sizeof(buf),
                  "greedy balance at depth 1e6: replay mismatches %llu, envelope (-0.02,0.03) "
                  "holds from N=%llu, |final|=%.6f, %.2fs",
                  static_cast<unsigned long long>(mismatches),
                  static_cast<unsigned long long>(env), std::fabs(final_sum), elapsed);
    report(3, ok, buf);
}

void criterion_4_balance_split() {
    TermStream s = catalog::stream_by_name("altharm");
    VerdictOracle oracle;
    catalog::declare_standalone(oracle, s);
    BalanceSplit split = balance_split(IndexSet::odds(), s, 40, 1000000, oracle);

    bool ok = split.schedule->cutpoints.size() >= 40;
    double b_sum_lo = 0, rest_sum_lo = 0;
    BigInt prev = 0;
    int minimality_failures = 0;
    for (std::size_t m = 0; m < 40 && ok; ++m) {
        const BigInt& k = split.schedule->cutpoints[m];
        if (!harmonic::block_exceeds(2, 1, BigRat(1), prev, k, BigRat(1)))
            ++minimality_failures;  // the block itself must pass 1
        if (harmonic::block_exceeds(2, 1, BigRat(1), prev, k - 1, BigRat(1)))
            ++minimality_failures;  // one index earlier must not
        auto [lo, hi] = harmonic::block_sum_bounds(2, 1, BigRat(1), prev, k);
        (void)hi;
        if (m % 2 == 1)
            b_sum_lo += lo;  // blocks 2, 4, ... belong to B
        else
            rest_sum_lo += lo;
        prev = k;
    }
    ok = ok && minimality_failures == 0 && b_sum_lo > 10.0 && rest_sum_lo > 10.0;
    char buf[240];
    std::snprintf(buf, sizeof(buf),
                  "balance split, 40 blocks to k_40=%s: %d minimality failures, partial sums "
                  "B > %.2f, rest > %.2f",
                  split.schedule->cutpoints.size() >= 40
                      ? split.schedule->cutpoints[39].str().c_str()
                      : "?",
                  minimality_failures, b_sum_lo, rest_sum_lo);
    report(4, ok, buf);
}

void criterion_5_three_series_selector() {
    // the mod-4 instance at the stated policy
    PreparedInstance intro = prepare("intro");
    SelectorParams params;
    params.depth = 1000000;
    params.policy.threshold = 1.5;
    params.policy.checkpoints = {10000, 100000, 1000000};
    CaseReport r1 = three_series_select(intro.instance, intro.oracle, params);

    std::string why;
    bool cert_ok = validate_certificate(r1.certificate, &why);
    int infinite_tags = 0;
    for (Verdict v : r1.empirical_tags)
        if (is_infinite(v)) ++infinite_tags;

    // the synthetic Type-1 instance: symbolic case with zero numeric steps
    PreparedInstance t1 = prepare("type1");
    SelectorParams params1;
    params1.depth = 1000000;
    params1.policy.threshold = 1.5;
    CaseReport r2 = three_series_select(t1.instance, t1.oracle, params1);
    std::string why2;
    bool t1_ok = r2.tag == CaseTag::Case1 && validate_certificate(r2.certificate, &why2);
    int numeric_steps = 0;
    for (const auto& step : r2.certificate)
        if (step.numeric) ++numeric_steps;
    t1_ok = t1_ok && numeric_steps == 0;

    bool ok = cert_ok && infinite_tags == 3 && t1_ok;
    char buf[320];
    std::snprintf(
        buf, sizeof(buf),
        "selector: mod-4 instance -> %s, certificate %s, %d/3 traces tagged infinite at "
        "T=1.5/1e6 (finals %.4f, %.4f, %.4f); Type-1 instance -> %s with %d numeric steps",
        to_string(r1.tag).c_str(), cert_ok ? "re-validates" : why.c_str(), infinite_tags,
        r1.final_sums[0], r1.final_sums[1], r1.final_sums[2], to_string(r2.tag).c_str(),
        numeric_steps);
    report(5, ok, buf);
    if (infinite_tags != 3)
        std::printf(
            "        note: the weak trace is the smaller even-class pile of the greedy "
            "selection; it reaches 1.5 only near depth 1.02e6 (measured %.6f at 1e6)\n",
            r1.final_sums[0]);
}

void criterion_6_block_lengths() {
    cx::BlockTable paper = cx::b_sequence(5, cx::RecurrenceMode::Paper);
    cx::BlockTable strict = cx::b_sequence(4, cx::RecurrenceMode::Strict);
    bool ok = paper.lengths == std::vector<BigInt>{2, 4, 56, 1702, 112960} &&
              strict.lengths == std::vector<BigInt>{2, 24, 730, 48448};
    std::string detail = "block lengths: paper(5) =";
    for (const auto& b : paper.lengths) detail += " " + b.str();
    detail += ", strict(4) =";
    for (const auto& b : strict.lengths) detail += " " + b.str();
    report(6, ok, detail);
}

void criterion_7_oscillation_certificate() {
    auto t0 = std::chrono::steady_clock::now();
    cx::BlockTable t = cx::b_sequence(5, cx::RecurrenceMode::Paper);
    cx::BlockSelection odds = cx::witness_odds(5, t);

    auto r2 = cx::oscillation_report(odds, 2, 4, BigRat(1), t);
    bool sums_ok = r2.boundary_sums == std::vector<BigRat>{BigRat(1), BigRat(0), BigRat(28, 3),
                                                           BigRat(-2441, 12)};
    bool plus = false, minus = false;
    for (const auto& c : r2.crossings) {
        if (c.threshold == BigRat(1)) plus = true;
        if (c.threshold == BigRat(-1)) minus = true;
    }
    // at desk scale one more block witnesses each side a second time
    auto r2_5 = cx::oscillation_report(odds, 2, 5, BigRat(1), t);
    int plus_count = 0, minus_count = 0;
    for (const auto& c : r2_5.crossings) {
        if (c.threshold == BigRat(1)) ++plus_count;
        if (c.threshold == BigRat(-1)) ++minus_count;
    }

    auto r3 = cx::oscillation_report(odds, 3, 3, BigRat(1), t);
    auto r4 = cx::oscillation_report(odds, 4, 4, BigRat(1), t);
    bool reach_ok = r3.boundary_sums[2] == 1 && r4.boundary_sums[3] == 1;
    double elapsed = seconds_since(t0);

    bool ok = sums_ok && plus && minus && plus_count >= 2 && minus_count >= 2 && reach_ok &&
              elapsed < 1.0;
    char buf[240];
    std::snprintf(buf, sizeof(buf),
                  "oscillation: boundaries (1, 0, 28/3, -2441/12) %s; +1 crossed %dx and -1 "
                  "%dx within 5 blocks; series 3/4 reach +1 after two same-parity blocks: %s; "
                  "%.3fs",
                  sums_ok ? "exact" : "WRONG", plus_count, minus_count,
                  reach_ok ? "yes" : "no", elapsed);
    report(7, ok, buf);
}

void criterion_8_trace_additivity() {
    std::vector<std::string> names = {"altharm", "intro1", "intro2", "intro3", "type1a",
                                      "type1b", "type1c", "type2a", "type2b", "type2c",
                                      "cx1",     "cx2",    "cx3",    "cx4"};
    std::mt19937_64 rng(424242);
    int float_failures = 0, exact_failures = 0;
    for (int pair = 0; pair < 200; ++pair) {
        TermStream s = catalog::stream_by_name(names[pair % names.size()], 20000);
        // two random residue-built disjoint sets
        u64 mod = 3 + rng() % 6;
        u64 r1 = rng() % mod;
        u64 r2 = (r1 + 1 + rng() % (mod - 1)) % mod;
        IndexSet a = IndexSet::residue(mod, r1);
        IndexSet b = IndexSet::residue(mod, r2);
        if (rng() & 1) a = a.intersect(IndexSet::odds()).union_with(
            a.intersect(IndexSet::evens()));  // same set, bushier expression
        auto ta = PartialSumTrace::compute(s, a, 10000);
        auto tb = PartialSumTrace::compute(s, b, 10000);
        auto tu = PartialSumTrace::compute(s, a.union_with(b), 10000);
        for (u64 j = 1; j <= 10000; ++j)
            if (std::fabs(ta.sum_at(j) + tb.sum_at(j) - tu.sum_at(j)) > 1e-12) {
                ++float_failures;
                break;
            }
        if (pair < 5) {
            auto ea = PartialSumTrace::compute(s, a, 10000, NumericMode::ExactRational);
            auto eb = PartialSumTrace::compute(s, b, 10000, NumericMode::ExactRational);
            auto eu = PartialSumTrace::compute(s, a.union_with(b), 10000,
                                               NumericMode::ExactRational);
            if (ea.exact_final() + eb.exact_final() != eu.exact_final()) ++exact_failures;
        }
    }
    bool ok = float_failures == 0 && exact_failures == 0;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "finite-prefix additivity: %d/200 random disjoint pairs beyond 1e-12 at "
                  "depth 1e4, %d/5 exact-rational mismatches",
                  float_failures, exact_failures);
    report(8, ok, buf);
}

void criterion_9_brute_force_oracles() {
    // counterexample block sums vs term-by-term summation on the first three blocks
    cx::BlockTable t = cx::b_sequence(3, cx::RecurrenceMode::Paper);
    std::mt19937_64 rng(99);
    int cx_failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        cx::BlockSelection sel;
        for (int m = 1; m <= 3; ++m) {
            u64 start = t.starts[static_cast<std::size_t>(m - 1)].convert_to<u64>();
            u64 len = t.lengths[static_cast<std::size_t>(m - 1)].convert_to<u64>();
            std::vector<u64> chosen;
            BigInt odd_picks = 0, even_picks = 0;
            for (u64 k = 0; k < len; ++k) {
                if (rng() & 1) continue;
                u64 n = start + k;
                chosen.push_back(n);
                (n % 2 == 1 ? odd_picks : even_picks) += 1;
            }
            sel.counts.emplace_back(odd_picks, even_picks);
            sel.explicit_indices[m] = chosen;
        }
        for (int i = 1; i <= 4; ++i)
            for (int m = 1; m <= 3; ++m) {
                BigRat direct = 0;
                for (u64 n : sel.explicit_indices.at(m)) direct += cx::cx_term(i, BigInt(n), t);
                if (direct != cx::block_sum(i, m, sel, t)) ++cx_failures;
            }
    }

    // union-closedness against the materialized-closure oracle on every candidate
    auto t0 = std::chrono::steady_clock::now();
    u64 uc_mismatches = 0;
    for (std::uint32_t mask = 0; mask < (1u << 18); ++mask) {
        auto fam = fn32::Family::from_mask(mask);
        if (fn32::is_union_closed(fam) != testing::union_closed_reference(fam))
            ++uc_mismatches;
    }
    double sweep = seconds_since(t0);

    bool ok = cx_failures == 0 && uc_mismatches == 0;
    char buf[240];
    std::snprintf(buf, sizeof(buf),
                  "oracles: %d counterexample block-sum mismatches over 100 random "
                  "selections, %llu union-closure mismatches over all 2^18 families (%.1fs)",
                  cx_failures, static_cast<unsigned long long>(uc_mismatches), sweep);
    report(9, ok, buf);
}

}  // namespace

int main() {
    criterion_1_fn32_classification();
    criterion_2_mod4_example();
    criterion_3_greedy_balance();
    criterion_4_balance_split();
    criterion_5_three_series_selector();
    criterion_6_block_lengths();
    criterion_7_oscillation_certificate();
    criterion_8_trace_additivity();
    criterion_9_brute_force_oracles();
    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures;
}
