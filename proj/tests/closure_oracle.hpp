#pragma once

// Test-only reference oracle for union-closedness: materialize every union of
// compatible members as plain ordered-pair sets and test inclusion. Kept free
// of the bitmask tables the library uses.

#include "subseries/fn32.hpp"

#include <set>
#include <utility>

namespace subseries::testing {

inline bool union_closed_reference(const fn32::Family& fam) {
    using fn32::PartialFunction;
    using fn32::Value;
    auto as_pairs = [](PartialFunction f) {
        std::set<std::pair<int, char>> out;
        for (int x = 1; x <= 3; ++x)
            if (f.defined(x)) out.insert({x, f.at(x) == Value::P ? 'p' : 'n'});
        return out;
    };
    auto members = fam.members();
    std::set<std::set<std::pair<int, char>>> present;
    for (auto f : members) present.insert(as_pairs(f));
    for (auto f : members) {
        for (auto g : members) {
            bool compatible = true;
            for (int x = 1; x <= 3; ++x)
                if (f.defined(x) && g.defined(x) && f.at(x) != g.at(x)) compatible = false;
            if (!compatible) continue;
            auto u = as_pairs(f);
            for (auto p : as_pairs(g)) u.insert(p);
            if (!present.count(u)) return false;
        }
    }
    return true;
}

}  // namespace subseries::testing
