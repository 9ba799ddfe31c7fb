#include "subseries/verdict.hpp"

#include <stdexcept>

namespace subseries {

Verdict verdict_union(Verdict a, Verdict b) {
    using V = Verdict;
    if (a == V::Unknown || b == V::Unknown || a == V::Oscillates || b == V::Oscillates)
        return V::Unknown;
    if (a == V::PlusInfinity) return b == V::MinusInfinity ? V::Unknown : V::PlusInfinity;
    if (a == V::MinusInfinity) return b == V::PlusInfinity ? V::Unknown : V::MinusInfinity;
    if (b == V::PlusInfinity || b == V::MinusInfinity) return b;
    // both finite
    if (a == V::AbsolutelyConvergent && b == V::AbsolutelyConvergent)
        return V::AbsolutelyConvergent;
    return V::ConditionallyConvergent;
}

Verdict verdict_negate(Verdict v) {
    switch (v) {
        case Verdict::PlusInfinity: return Verdict::MinusInfinity;
        case Verdict::MinusInfinity: return Verdict::PlusInfinity;
        default: return v;
    }
}

Verdict verdict_difference(Verdict whole, Verdict part) {
    using V = Verdict;
    if (whole == V::Unknown || part == V::Unknown || whole == V::Oscillates ||
        part == V::Oscillates)
        return V::Unknown;
    switch (part) {
        case V::AbsolutelyConvergent:
            return whole;  // removing an absolutely convergent part keeps the tag
        case V::ConditionallyConvergent:
            if (whole == V::PlusInfinity || whole == V::MinusInfinity) return whole;
            // whole finite: AbsConv whole contradicts a CondConv subset, and
            // CondConv minus CondConv is finite but unclassifiable by tag.
            return V::Unknown;
        case V::PlusInfinity:
            if (whole == V::PlusInfinity) return V::Unknown;  // inf - inf
            if (whole == V::AbsolutelyConvergent) return V::Unknown;  // inconsistent subset
            return V::MinusInfinity;  // finite - inf, or -inf - inf
        case V::MinusInfinity:
            if (whole == V::MinusInfinity) return V::Unknown;
            if (whole == V::AbsolutelyConvergent) return V::Unknown;
            return V::PlusInfinity;
        default:
            return V::Unknown;
    }
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::PlusInfinity: return "+inf";
        case Verdict::MinusInfinity: return "-inf";
        case Verdict::AbsolutelyConvergent: return "abs-conv";
        case Verdict::ConditionallyConvergent: return "cond-conv";
        case Verdict::Oscillates: return "oscillates";
        case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "+inf") return Verdict::PlusInfinity;
    if (s == "-inf") return Verdict::MinusInfinity;
    if (s == "abs-conv") return Verdict::AbsolutelyConvergent;
    if (s == "cond-conv") return Verdict::ConditionallyConvergent;
    if (s == "oscillates") return Verdict::Oscillates;
    if (s == "unknown") return Verdict::Unknown;
    throw std::invalid_argument("not a verdict: " + s);
}

}  // namespace subseries
