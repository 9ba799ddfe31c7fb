#include "subseries/stream.hpp"

namespace subseries {

TermStream make_stream(std::string label, std::function<BigRat(u64)> term,
                       std::function<double(u64)> term_d, std::optional<Verdict> global) {
    TermStream s;
    s.label = std::move(label);
    s.term = std::move(term);
    if (term_d) {
        s.term_d = std::move(term_d);
    } else {
        auto t = s.term;
        s.term_d = [t](u64 n) { return static_cast<double>(t(n)); };
    }
    s.declared_global = global;
    return s;
}

TermStream TermStream::negated() const {
    TermStream s;
    s.label = "neg(" + label + ")";
    auto t = term;
    s.term = [t](u64 n) { return BigRat(-t(n)); };
    auto td = term_d;
    s.term_d = [td](u64 n) { return -td(n); };
    if (declared_global) s.declared_global = verdict_negate(*declared_global);
    if (closed_form) {
        AltOverN cf = *closed_form;
        cf.positive_on_odd = !cf.positive_on_odd;
        s.closed_form = cf;
    }
    return s;
}

}  // namespace subseries
