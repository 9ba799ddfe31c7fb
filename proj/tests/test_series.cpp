#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subseries/catalog.hpp"
#include "subseries/errors.hpp"
#include "subseries/oracle.hpp"

#include <cmath>
#include <set>

using namespace subseries;

namespace {

// divergence oracle on a declared-+inf cell: partial sums over the cell must
// grow by about (density) * ln 16 between N and 16N, while an absolutely
// convergent coordinate barely moves
double growth_between(const TermStream& s, const IndexSet& set, u64 n0, u64 n1) {
    double acc = 0;
    for (u64 n = 1; n <= n1; ++n)
        if (set.contains(n)) {
            if (n > n0) acc += s.term_d(n);
        }
    return acc;
}

}  // namespace

TEST_CASE("sign partition of the mod-4 instance recovers the residue classes") {
    Instance inst = catalog::instance_by_name("intro");
    SignPartition cells = sign_partition(inst.streams, 2000);
    REQUIRE(cells.cells.size() == 8);
    CHECK(cells.nonempty_patterns().size() == 4);

    struct Expect {
        unsigned bits;
        u64 residue;
    };
    for (auto [bits, residue] : {Expect{0b011, 1}, Expect{0b100, 2}, Expect{0b001, 3},
                                 Expect{0b000, 0}}) {
        CHECK(cells.nonempty[bits]);
        CHECK(cells.cells[bits].materialize(200) ==
              IndexSet::residue(4, residue).materialize(200));
    }

    // cells are disjoint and cover every index
    std::set<u64> seen;
    for (const auto& cell : cells.cells)
        for (u64 n : cell.materialize(500)) {
            CHECK(!seen.count(n));
            seen.insert(n);
        }
    CHECK(seen.size() == 500);
}

TEST_CASE("a single everywhere-positive stream has one nonempty cell equal to everything") {
    TermStream s = make_stream(
        "pos", [](u64 n) { return BigRat(1, BigInt(n) * n); },
        [](u64 n) { return 1.0 / (static_cast<double>(n) * static_cast<double>(n)); });
    SignPartition cells = sign_partition({s}, 500);
    CHECK(cells.nonempty_patterns() == std::vector<unsigned>{1u});
    CHECK(cells.cells[1].materialize(100) == IndexSet::all().materialize(100));
}

TEST_CASE("the mirror pair fills exactly the two mixed cells") {
    Instance inst = catalog::instance_by_name("mirror");
    SignPartition cells = sign_partition(inst.streams, 200);
    CHECK(cells.nonempty_patterns() == std::vector<unsigned>{0b01, 0b10});
    CHECK(cells.cells[0b01].materialize(10) == IndexSet::odds().materialize(10));
    CHECK(cells.cells[0b10].materialize(10) == IndexSet::evens().materialize(10));
}

TEST_CASE("verdict resolution through declarations and rules") {
    Instance inst = catalog::instance_by_name("intro");
    SignPartition cells = sign_partition(inst.streams);
    VerdictOracle oracle;
    catalog::declare_all(oracle, inst, cells);

    const TermStream& s1 = inst.streams[0];
    CHECK(oracle.resolve(s1, cells.cells[0b011]) == Verdict::PlusInfinity);
    CHECK(oracle.resolve(s1, IndexSet::all()) == Verdict::ConditionallyConvergent);

    // disjoint union of declared cells
    IndexSet u = cells.cells[0b011].union_with(cells.cells[0b001]);
    CHECK(oracle.resolve(s1, u) == Verdict::PlusInfinity);

    // subset of an absolutely convergent cell
    const TermStream& s2 = inst.streams[1];
    IndexSet sub = cells.cells[0b100].intersect(IndexSet::residue(8, 2));
    CHECK(oracle.resolve(s2, sub) == Verdict::AbsolutelyConvergent);

    // difference below the full series
    IndexSet rest = IndexSet::all().minus(cells.cells[0b100]);
    CHECK(oracle.resolve(s2, rest) == Verdict::ConditionallyConvergent);

    // nothing declared for an alien predicate
    IndexSet alien = IndexSet::predicate("alien", [](u64 n) { return n % 7 == 0; });
    CHECK_THROWS_AS(oracle.resolve(s1, alien), UnresolvableVerdict);
}

TEST_CASE("declared cell divergence agrees with a direct-summation growth oracle") {
    Instance inst = catalog::instance_by_name("intro");
    SignPartition cells = sign_partition(inst.streams);
    // cell n = 1 mod 4: streams 1 and 2 grow like (1/4) ln, stream 3 is flat
    const IndexSet& cell = cells.cells[0b011];
    double expected = std::log(16.0) / 4.0;
    CHECK(growth_between(inst.streams[0], cell, 2000, 32000) ==
          doctest::Approx(expected).epsilon(0.05));
    CHECK(growth_between(inst.streams[1], cell, 2000, 32000) ==
          doctest::Approx(expected).epsilon(0.05));
    CHECK(std::fabs(growth_between(inst.streams[2], cell, 2000, 32000)) < 1e-12);
    // cell n = 2 mod 4: stream 1 falls, stream 3 grows
    const IndexSet& cell2 = cells.cells[0b100];
    CHECK(growth_between(inst.streams[0], cell2, 2000, 32000) ==
          doctest::Approx(-expected).epsilon(0.05));
    CHECK(growth_between(inst.streams[2], cell2, 2000, 32000) ==
          doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("tameness") {
    Instance inst = catalog::instance_by_name("intro");
    SignPartition cells = sign_partition(inst.streams);
    VerdictOracle oracle;
    catalog::declare_all(oracle, inst, cells);

    const TermStream& s1 = inst.streams[0];
    // every sign cell is tame
    for (const auto& cell : cells.cells) CHECK(is_tame(cell, s1, oracle));
    // the whole index set is not: both parity parts diverge
    CHECK_FALSE(is_tame(IndexSet::all(), s1, oracle));
    // subsets of tame sets propagate
    IndexSet sub = cells.cells[0b011].intersect(IndexSet::residue(8, 1));
    CHECK(is_tame(sub, s1, oracle));
    CHECK(is_tame_all(cells.cells[0b011], inst.streams, oracle));
}

TEST_CASE("the profile map phi") {
    using fn32::PartialFunction;
    using fn32::Value;
    Instance inst = catalog::instance_by_name("intro");
    SignPartition cells = sign_partition(inst.streams);
    VerdictOracle oracle;
    catalog::declare_all(oracle, inst, cells);

    CHECK(phi(cells.cells[0b011], inst.streams, oracle) ==
          PartialFunction::of({{1, Value::P}, {2, Value::P}}));
    CHECK(phi(cells.cells[0b100], inst.streams, oracle) ==
          PartialFunction::of({{1, Value::N}, {3, Value::P}}));
    CHECK(phi(IndexSet::empty(), inst.streams, oracle).is_empty());
}

TEST_CASE("the profile family of the mod-4 instance is the four-member shape sharing coordinate 1") {
    using fn32::Value;
    Instance inst = catalog::instance_by_name("intro");
    SignPartition cells = sign_partition(inst.streams);
    VerdictOracle oracle;
    catalog::declare_all(oracle, inst, cells);

    TamePhiFamily fam = tame_phi_family(cells, inst.streams, oracle);
    CHECK(fam.family.size() == 4);
    CHECK(fn32::is_full(fam.family));
    CHECK(fn32::is_union_closed(fam.family));
    CHECK(fn32::classify(fam.family) == fn32::FamilyType::Type2_0);
    for (auto f : fam.family.members()) CHECK(f.defined(1));

    // none of the 15 nonempty unions of the four inhabited cells has a total
    // profile
    auto inhabited = cells.nonempty_patterns();
    REQUIRE(inhabited.size() == 4);
    int nonempty_profiles = 0;
    for (unsigned mask = 1; mask < 16; ++mask) {
        IndexSet u = IndexSet::empty();
        for (int i = 0; i < 4; ++i)
            if ((mask >> i) & 1u) u = u.union_with(cells.cells[inhabited[i]]);
        fn32::PartialFunction profile;
        bool clash = false;
        for (int coord = 0; coord < 3 && !clash; ++coord) {
            Verdict folded = Verdict::AbsolutelyConvergent;
            for (int i = 0; i < 4; ++i)
                if ((mask >> i) & 1u)
                    folded = verdict_union(
                        folded, oracle.resolve(inst.streams[coord], cells.cells[inhabited[i]]));
            if (folded == Verdict::Unknown)
                clash = true;
            else if (folded == Verdict::PlusInfinity)
                profile = profile.with(coord + 1, Value::P);
            else if (folded == Verdict::MinusInfinity)
                profile = profile.with(coord + 1, Value::N);
        }
        if (!clash && !profile.is_empty()) ++nonempty_profiles;
        CHECK_FALSE((!clash && profile.is_total()));
    }
    CHECK(nonempty_profiles > 0);
}

TEST_CASE("profile families of the synthetic instances") {
    for (auto [name, want] :
         {std::pair<const char*, fn32::FamilyType>{"type1", fn32::FamilyType::Type1},
          {"type2", fn32::FamilyType::Type2_2}}) {
        Instance inst = catalog::instance_by_name(name);
        SignPartition cells = sign_partition(inst.streams);
        VerdictOracle oracle;
        catalog::declare_all(oracle, inst, cells);
        TamePhiFamily fam = tame_phi_family(cells, inst.streams, oracle);
        CHECK(fn32::classify(fam.family) == want);
        CHECK(fn32::is_full(fam.family));
        CHECK(fn32::is_union_closed(fam.family));
    }
    CHECK(catalog::instance_by_name("type1").streams.size() == 3);
}

TEST_CASE("profiles distribute over disjoint tame unions") {
    Instance inst = catalog::instance_by_name("type1");
    SignPartition cells = sign_partition(inst.streams);
    VerdictOracle oracle;
    catalog::declare_all(oracle, inst, cells);

    auto inhabited = cells.nonempty_patterns();
    for (unsigned a : inhabited) {
        for (unsigned b : inhabited) {
            if (a >= b) continue;
            auto fa = phi(cells.cells[a], inst.streams, oracle);
            auto fb = phi(cells.cells[b], inst.streams, oracle);
            if (!fn32::are_compatible(fa, fb)) continue;
            IndexSet u = cells.cells[a].union_with(cells.cells[b]);
            CHECK(phi(u, inst.streams, oracle) == fn32::union_of(fa, fb));
        }
    }
}
