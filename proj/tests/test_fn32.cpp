#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subseries/fn32.hpp"

#include "closure_oracle.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

using namespace subseries::fn32;

namespace {

PartialFunction pf(std::initializer_list<std::pair<int, Value>> pairs) {
    return PartialFunction::of(pairs);
}

Family random_family(std::mt19937_64& rng) {
    return Family::from_mask(static_cast<std::uint32_t>(rng() & ((1u << 26) - 1)));
}

}  // namespace

TEST_CASE("enumeration covers all 26 partial functions") {
    const auto& all = all_partial_functions();
    CHECK(all.size() == 26);
    std::set<std::uint8_t> codes;
    int singles = 0, doubles = 0, totals = 0;
    for (auto f : all) {
        codes.insert(f.code());
        CHECK(!f.is_empty());
        if (f.domain_size() == 1) ++singles;
        if (f.domain_size() == 2) ++doubles;
        if (f.domain_size() == 3) ++totals;
    }
    CHECK(codes.size() == 26);
    CHECK(singles == 6);
    CHECK(doubles == 12);
    CHECK(totals == 8);
    // the first 18 in enumeration order are exactly the non-total functions
    for (int i = 0; i < 18; ++i) CHECK(!PartialFunction::from_index(i).is_total());
    for (int i = 18; i < 26; ++i) CHECK(PartialFunction::from_index(i).is_total());

    bool has_single = false, has_total_fn = false;
    for (auto f : all) {
        if (f == pf({{1, Value::P}})) has_single = true;
        if (f == pf({{1, Value::P}, {2, Value::P}, {3, Value::P}})) has_total_fn = true;
    }
    CHECK(has_single);
    CHECK(has_total_fn);
}

TEST_CASE("compatibility agrees on shared domain points") {
    CHECK(are_compatible(pf({{1, Value::P}}), pf({{2, Value::N}})));
    CHECK_FALSE(are_compatible(pf({{1, Value::P}, {2, Value::P}}),
                               pf({{2, Value::N}, {3, Value::N}})));
    for (auto f : all_partial_functions()) CHECK(are_compatible(f, f));
}

TEST_CASE("round trip through the text syntax") {
    for (auto f : all_partial_functions()) {
        auto parsed = PartialFunction::parse(f.to_string());
        REQUIRE(parsed.has_value());
        CHECK(*parsed == f);
    }
    CHECK_FALSE(PartialFunction::parse("{4:p}").has_value());
    CHECK_FALSE(PartialFunction::parse("{1:x}").has_value());
}

TEST_CASE("fullness") {
    Family singles;
    for (int x = 1; x <= 3; ++x)
        for (Value y : {Value::P, Value::N}) singles.add(PartialFunction::singleton(x, y));
    CHECK(is_full(singles));
    CHECK_FALSE(is_full(Family{}));

    Family cycle = Family::of({pf({{1, Value::P}, {2, Value::N}}),
                               pf({{2, Value::P}, {3, Value::N}}),
                               pf({{3, Value::P}, {1, Value::N}})});
    CHECK(is_full(cycle));
    CHECK(is_union_closed(cycle));  // members pairwise incompatible
    CHECK_FALSE(has_total(cycle));
}

TEST_CASE("union-closedness") {
    Family missing = Family::of({pf({{1, Value::P}}), pf({{2, Value::P}})});
    CHECK_FALSE(is_union_closed(missing));
    Family closed = Family::of(
        {pf({{1, Value::P}}), pf({{2, Value::P}}), pf({{1, Value::P}, {2, Value::P}})});
    CHECK(is_union_closed(closed));
}

TEST_CASE("has_total") {
    CHECK(has_total(Family::of({pf({{1, Value::P}, {2, Value::P}, {3, Value::P}})})));
    CHECK_FALSE(has_total(Family{}));
}

TEST_CASE("union-closedness matches the materialized-closure oracle on random families") {
    std::mt19937_64 rng(20260810);
    for (int i = 0; i < 3000; ++i) {
        Family fam = random_family(rng);
        CHECK(is_union_closed(fam) == subseries::testing::union_closed_reference(fam));
    }
}

TEST_CASE("the 48 symmetries form a group acting on families") {
    const auto& all = Symmetry::all();
    REQUIRE(all.size() == 48);

    Family probe = Family::of({pf({{1, Value::P}, {2, Value::N}}), pf({{3, Value::P}})});
    std::set<std::uint32_t> images;
    for (const auto& s : all) images.insert(apply_symmetry(s, probe).mask());
    CHECK(images.size() > 1);

    // identity behaves
    CHECK(apply_symmetry(Symmetry::identity(), probe) == probe);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        Family fam = random_family(rng);
        const Symmetry& s1 = all[rng() % all.size()];
        const Symmetry& s2 = all[rng() % all.size()];
        // composition law
        CHECK(apply_symmetry(s2, apply_symmetry(s1, fam)) ==
              apply_symmetry(s1.then(s2), fam));
        // inverse undoes
        CHECK(apply_symmetry(s1.inverse(), apply_symmetry(s1, fam)) == fam);
        // predicates are invariant
        CHECK(is_full(fam) == is_full(apply_symmetry(s1, fam)));
        CHECK(is_union_closed(fam) == is_union_closed(apply_symmetry(s1, fam)));
        CHECK(has_total(fam) == has_total(apply_symmetry(s1, fam)));
    }
}

TEST_CASE("canonical form is idempotent and constant on orbits") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        Family fam = random_family(rng);
        Family canon = canonical_form(fam);
        CHECK(canonical_form(canon) == canon);
        for (const auto& s : Symmetry::all())
            CHECK(canonical_form(apply_symmetry(s, fam)) == canon);
    }
}

TEST_CASE("the two three-function families related by relabeling coincide canonically") {
    // two different concrete drawings of the same shape
    Family a = Family::of({pf({{2, Value::N}, {3, Value::P}}),
                           pf({{1, Value::N}, {2, Value::P}}),
                           pf({{1, Value::P}, {3, Value::N}})});
    Family b = type1_picture();
    CHECK(a != b);
    CHECK(canonical_form(a) == canonical_form(b));
    CHECK(find_relabeling(a, b).has_value());
    // and an inequivalent family differs
    CHECK(canonical_form(type2_picture(0)) != canonical_form(b));
}

TEST_CASE("classification of the reference families") {
    Family spec_type1 = Family::of({pf({{1, Value::P}, {2, Value::N}}),
                                    pf({{2, Value::P}, {3, Value::N}}),
                                    pf({{3, Value::P}, {1, Value::N}})});
    CHECK(classify(spec_type1) == FamilyType::Type1);

    Family t20 = Family::of({pf({{2, Value::P}, {1, Value::P}}),
                             pf({{2, Value::N}, {1, Value::P}}),
                             pf({{3, Value::P}, {1, Value::N}}),
                             pf({{3, Value::N}, {1, Value::N}})});
    CHECK(classify(t20) == FamilyType::Type2_0);
    CHECK(classify(type2_picture(1)) == FamilyType::Type2_1);
    CHECK(classify(type2_picture(2)) == FamilyType::Type2_2);

    Family singles;
    for (int x = 1; x <= 3; ++x)
        for (Value y : {Value::P, Value::N}) singles.add(PartialFunction::singleton(x, y));
    CHECK(classify(singles) == FamilyType::NotFullUnionClosed);

    Family with_total = spec_type1;
    with_total.add(pf({{1, Value::P}, {2, Value::P}, {3, Value::P}}));
    CHECK(classify(with_total) == FamilyType::HasTotal);
}

TEST_CASE("classify is invariant under every symmetry") {
    std::mt19937_64 rng(20260810);
    for (int i = 0; i < 200; ++i) {
        Family fam = random_family(rng);
        FamilyType t = classify(fam);
        for (const auto& s : Symmetry::all()) CHECK(classify(apply_symmetry(s, fam)) == t);
    }
}

TEST_CASE("exhaustive enumeration finds the four classes") {
    auto classes = enumerate_classes();
    REQUIRE(classes.size() == 4);
    std::vector<int> sizes;
    for (const auto& c : classes) sizes.push_back(c.representative.size());
    CHECK(sizes == std::vector<int>{3, 4, 5, 6});

    CHECK(classes[0].type == FamilyType::Type1);
    CHECK(classes[1].type == FamilyType::Type2_0);
    CHECK(classes[2].type == FamilyType::Type2_1);
    CHECK(classes[3].type == FamilyType::Type2_2);

    std::uint64_t total = 0;
    for (const auto& c : classes) {
        CHECK(is_full(c.representative));
        CHECK(is_union_closed(c.representative));
        CHECK_FALSE(has_total(c.representative));
        // orbit size counts distinct images under the 48 symmetries
        std::set<std::uint32_t> orbit;
        for (const auto& s : Symmetry::all())
            orbit.insert(apply_symmetry(s, c.representative).mask());
        CHECK(orbit.size() == c.orbit_size);
        total += c.orbit_size;

        // adding any total function breaks the no-total hypothesis
        Family extended = c.representative;
        extended.add(PartialFunction::from_index(20));
        CHECK(classify(extended) == FamilyType::HasTotal);
    }
    CHECK(total > 0);

    // the Type 1 representative: all members binary-domain, pairwise incompatible
    auto members = classes[0].representative.members();
    for (auto f : members) CHECK(f.domain_size() == 2);
    for (auto f : members)
        for (auto g : members)
            if (!(f == g)) CHECK_FALSE(are_compatible(f, g));
}
