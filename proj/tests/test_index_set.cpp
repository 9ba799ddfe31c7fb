#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subseries/errors.hpp"
#include "subseries/index_set.hpp"

#include <memory>
#include <vector>

using namespace subseries;

TEST_CASE("residue classes and set algebra evaluate membership") {
    IndexSet odds = IndexSet::odds();
    IndexSet evens = IndexSet::evens();
    CHECK(odds.contains(1));
    CHECK_FALSE(odds.contains(2));
    CHECK(evens.contains(2));

    IndexSet mod41 = IndexSet::residue(4, 1);
    CHECK(mod41.contains(1));
    CHECK(mod41.contains(5));
    CHECK_FALSE(mod41.contains(3));

    IndexSet u = mod41.union_with(IndexSet::residue(4, 3));
    CHECK(u.materialize(10) == std::vector<u64>{1, 3, 5, 7, 9});
    CHECK(odds.minus(mod41).materialize(12) == std::vector<u64>{3, 7, 11});
    CHECK(odds.intersect(IndexSet::residue(3, 0)).materialize(20) ==
          std::vector<u64>{3, 9, 15});
    CHECK(IndexSet::all().count_to(17) == 17);
    CHECK(IndexSet::empty().count_to(17) == 0);
}

TEST_CASE("explicit blocks are half-open on the left") {
    IndexSet blocks = IndexSet::explicit_blocks({{0, 3}, {9, 12}});
    CHECK(blocks.materialize(14) == std::vector<u64>{1, 2, 3, 10, 11, 12});
    CHECK_THROWS_AS(IndexSet::explicit_blocks({{3, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(IndexSet::explicit_blocks({{0, 5}, {4, 8}}), std::invalid_argument);
}

TEST_CASE("materialized prefixes answer only up to their horizon") {
    auto bits = std::make_shared<std::vector<bool>>(std::vector<bool>{true, false, true});
    IndexSet m = IndexSet::materialized("probe", bits, 3);
    CHECK(m.contains(1));
    CHECK_FALSE(m.contains(2));
    CHECK(m.contains(3));
    CHECK_THROWS_AS(m.contains(4), DepthExhausted);
}

TEST_CASE("complements rewrite residue classes") {
    CHECK(IndexSet::odds().complement().materialize(8) == std::vector<u64>{2, 4, 6, 8});
    CHECK(IndexSet::residue(3, 1).complement().materialize(9) ==
          std::vector<u64>{2, 3, 5, 6, 8, 9});
    CHECK(IndexSet::all().complement().is_empty_expr());
}

TEST_CASE("fingerprints are structural") {
    CHECK(IndexSet::odds() == IndexSet::residue(2, 1));
    CHECK(IndexSet::odds().fingerprint() != IndexSet::evens().fingerprint());
    IndexSet a = IndexSet::odds().union_with(IndexSet::residue(4, 2));
    IndexSet b = IndexSet::odds().union_with(IndexSet::residue(4, 2));
    CHECK(a.fingerprint() == b.fingerprint());
}

TEST_CASE("provable subset relations") {
    IndexSet odds = IndexSet::odds();
    IndexSet mod41 = IndexSet::residue(4, 1);
    CHECK(IndexSet::provably_subset(mod41, odds));
    CHECK_FALSE(IndexSet::provably_subset(odds, mod41));
    CHECK(IndexSet::provably_subset(IndexSet::empty(), mod41));
    CHECK(IndexSet::provably_subset(odds, IndexSet::all()));
    CHECK(IndexSet::provably_subset(odds.intersect(mod41), odds));
    CHECK(IndexSet::provably_subset(odds.minus(mod41), odds));
    CHECK(IndexSet::provably_subset(mod41, mod41.union_with(odds)));
    // a ∩ x ⊆ b ∩ x whenever a ⊆ b
    IndexSet x = IndexSet::residue(3, 0);
    CHECK(IndexSet::provably_subset(mod41.intersect(x), odds.intersect(x)));
    // a ⊆ l ∖ r needs a inside l and away from r
    CHECK(IndexSet::provably_subset(mod41, IndexSet::all().minus(IndexSet::residue(4, 2))));
}

TEST_CASE("provable disjointness") {
    CHECK(IndexSet::provably_disjoint(IndexSet::odds(), IndexSet::evens()));
    CHECK(IndexSet::provably_disjoint(IndexSet::residue(4, 1), IndexSet::residue(4, 3)));
    CHECK(IndexSet::provably_disjoint(IndexSet::residue(4, 1), IndexSet::residue(2, 0)));
    CHECK_FALSE(IndexSet::provably_disjoint(IndexSet::residue(4, 1), IndexSet::odds()));
    IndexSet a = IndexSet::odds();
    IndexSet diff = IndexSet::all().minus(a);
    CHECK(IndexSet::provably_disjoint(a, diff));
    CHECK(IndexSet::provably_disjoint(diff, a));
    auto [t, f] = IndexSet::complementary_pair("p", "notp", [](u64 n) { return n % 3 == 0; });
    CHECK(IndexSet::provably_disjoint(t, f));
    CHECK(IndexSet::provably_disjoint(a.intersect(t), a.intersect(f)));
    // unions recurse
    CHECK(IndexSet::provably_disjoint(IndexSet::residue(4, 1).union_with(IndexSet::residue(4, 3)),
                                      IndexSet::residue(4, 2).union_with(IndexSet::residue(4, 0))));
}

TEST_CASE("sign cells partition by pattern") {
    auto fns = std::make_shared<std::vector<SignFn>>();
    fns->push_back([](u64 n) { return n % 2 == 1 ? 1 : -1; });
    fns->push_back([](u64 n) { return n % 4 == 2 ? 1 : 0; });
    IndexSet c0 = IndexSet::sign_cell("a,b", SignPattern(2, 0b01), fns);  // first positive only
    IndexSet c1 = IndexSet::sign_cell("a,b", SignPattern(2, 0b10), fns);
    CHECK(c0.contains(1));
    CHECK_FALSE(c0.contains(2));
    CHECK(c1.contains(2));
    CHECK(c1.contains(6));  // 6 = 2 mod 4
    CHECK(IndexSet::provably_disjoint(c0, c1));
    REQUIRE(c0.cell_sign_for("a").has_value());
    CHECK(*c0.cell_sign_for("a") == Sign::Positive);
    CHECK(*c0.cell_sign_for("b") == Sign::NonPositive);
    CHECK_FALSE(c0.cell_sign_for("zz").has_value());
}
