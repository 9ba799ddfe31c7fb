#pragma once

#include <cstdint>
#include <string>

namespace subseries {

// Classification of a subseries sum.
enum class Verdict : std::uint8_t {
    PlusInfinity,
    MinusInfinity,
    AbsolutelyConvergent,
    ConditionallyConvergent,
    Oscillates,
    Unknown,
};

inline bool is_infinite(Verdict v) {
    return v == Verdict::PlusInfinity || v == Verdict::MinusInfinity;
}

inline bool is_finite(Verdict v) {
    return v == Verdict::AbsolutelyConvergent || v == Verdict::ConditionallyConvergent;
}

// Extended-real addition on verdict tags, for the sum over a disjoint union
// (also valid for a union of two tame sets when the addition is well-defined).
// +-inf plus finite keeps the infinity; finite plus finite is absolutely
// convergent only when both parts are; inf plus -inf is not well-defined.
// Oscillates carries no usable sum, so it poisons the result like Unknown.
Verdict verdict_union(Verdict a, Verdict b);

// Verdict of the term-wise negated series.
Verdict verdict_negate(Verdict v);

// Verdict of C \ D given the verdicts of C ∪ D ("whole") and of D ("part"),
// with D contained in C ∪ D. Unknown when the subtraction is not well-defined,
// when the inputs are inconsistent with the subset relation, or when the
// finite result cannot be classified as absolutely vs conditionally
// convergent from the tags alone.
Verdict verdict_difference(Verdict whole, Verdict part);

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

}  // namespace subseries
