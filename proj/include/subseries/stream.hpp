#pragma once

#include "subseries/index_set.hpp"
#include "subseries/rational.hpp"
#include "subseries/verdict.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace subseries {

// Closed-form marker for terms with |a_n| = coeff/n at every index, sign
// alternating with parity. Enables analytic block arithmetic at indices far
// beyond anything iterable.
struct AltOverN {
    BigRat coeff = 1;      // positive
    bool positive_on_odd = true;
};

// An indexed real-valued sequence with exact rational terms. `term_d` is a
// double view used by long traces; it must round `term` and preserve signs.
struct TermStream {
    std::string label;
    std::function<BigRat(u64)> term;
    std::function<double(u64)> term_d;
    std::optional<Verdict> declared_global;  // verdict of the full series, if declared
    std::optional<AltOverN> closed_form;
    // term sign depends only on n mod `first`; entry r gives the sign of
    // indices congruent to r. Lets sign splits of residue sets stay symbolic.
    std::optional<std::pair<u64, std::vector<Sign>>> sign_regions;

    int sign(u64 n) const {
        double d = term_d(n);
        if (d > 0) return 1;
        if (d < 0) return -1;
        return 0;
    }

    SignFn sign_fn() const {
        auto td = term_d;
        return [td](u64 n) {
            double d = td(n);
            return d > 0 ? 1 : (d < 0 ? -1 : 0);
        };
    }

    TermStream negated() const;
};

TermStream make_stream(std::string label, std::function<BigRat(u64)> term,
                       std::function<double(u64)> term_d,
                       std::optional<Verdict> global = Verdict::ConditionallyConvergent);

// A named bundle of streams plus the declared sign-cell verdicts that serve
// as the axioms of the instance.
struct Instance {
    std::string name;
    std::vector<TermStream> streams;
    // pattern bits -> verdict per stream, for each of the 2^k sign cells
    std::map<unsigned, std::vector<Verdict>> cell_verdicts;
};

}  // namespace subseries
