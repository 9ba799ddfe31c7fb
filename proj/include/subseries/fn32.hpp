#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace subseries::fn32 {

// Values a partial function can take at a coordinate.
enum class Value : std::uint8_t { P, N };

inline Value flip_value(Value v) { return v == Value::P ? Value::N : Value::P; }

// A partial function from a subset of {1,2,3} into {p,n}, packed into six
// bits: two bits per coordinate, 0 = absent, 1 = p, 2 = n. The all-absent
// code doubles as the empty-function sentinel; families refuse to store it.
class PartialFunction {
public:
    constexpr PartialFunction() = default;

    static PartialFunction empty() { return PartialFunction{}; }
    static PartialFunction singleton(int x, Value y);
    static PartialFunction of(std::initializer_list<std::pair<int, Value>> pairs);

    bool defined(int x) const;       // x in 1..3
    Value at(int x) const;           // requires defined(x)
    PartialFunction with(int x, Value y) const;

    int domain_size() const;
    bool is_empty() const { return code_ == 0; }
    bool is_total() const { return domain_size() == 3; }

    std::uint8_t code() const { return code_; }
    static PartialFunction from_code(std::uint8_t code);

    // Position in the fixed enumeration order (0..25); requires !is_empty().
    int index() const;
    static PartialFunction from_index(int idx);

    auto operator<=>(const PartialFunction&) const = default;

    std::string to_string() const;  // "{1:p,2:n}", "{}" for the sentinel
    static std::optional<PartialFunction> parse(const std::string& text);

private:
    std::uint8_t code_ = 0;
};

// True iff f and g agree on every shared domain point.
bool are_compatible(PartialFunction f, PartialFunction g);

// The union of two compatible functions, as sets of ordered pairs.
PartialFunction union_of(PartialFunction f, PartialFunction g);

// All 26 members of Fn(3,2) in the fixed enumeration order: domains sorted
// by (size, coordinates), value tuples with p before n. The first 18 entries
// are exactly the non-total functions.
const std::array<PartialFunction, 26>& all_partial_functions();

// A finite set of partial functions, stored as a 26-bit membership mask over
// the enumeration order.
class Family {
public:
    Family() = default;
    static Family from_mask(std::uint32_t mask) {
        Family f;
        f.mask_ = mask;
        return f;
    }
    static Family of(std::initializer_list<PartialFunction> fns);

    std::uint32_t mask() const { return mask_; }
    bool contains(PartialFunction f) const;
    void add(PartialFunction f);  // throws std::invalid_argument on the empty sentinel
    int size() const;
    bool empty() const { return mask_ == 0; }
    std::vector<PartialFunction> members() const;

    auto operator<=>(const Family&) const = default;

    std::string to_string() const;  // "{{1:p},{2:n,3:p}}" in enumeration order

private:
    std::uint32_t mask_ = 0;
};

bool is_full(const Family& fam);
bool is_union_closed(const Family& fam);
bool has_total(const Family& fam);

// A coordinate permutation plus per-coordinate value swaps; there are
// exactly 6 * 8 = 48 of these.
struct Symmetry {
    std::array<int, 3> perm{0, 1, 2};      // target coord x reads source coord perm[x] (0-based)
    std::array<bool, 3> flip{false, false, false};  // value swap applied at target coord x

    static Symmetry identity() { return Symmetry{}; }
    static const std::vector<Symmetry>& all();

    Symmetry inverse() const;
    // The symmetry equal to "apply *this first, then next".
    Symmetry then(const Symmetry& next) const;
    bool is_identity() const;
    bool operator==(const Symmetry&) const = default;

    std::string to_string() const;
};

// g(x) = tau_x(f(perm(x))).
PartialFunction apply_symmetry(const Symmetry& s, PartialFunction f);
Family apply_symmetry(const Symmetry& s, const Family& fam);

// Minimum image mask over all 48 symmetries; equal canonical forms
// characterize equivalent families.
Family canonical_form(const Family& fam);

// A symmetry s with apply_symmetry(s, from) == to, if one exists.
std::optional<Symmetry> find_relabeling(const Family& from, const Family& to);

enum class FamilyType : std::uint8_t {
    Type1,
    Type2_0,
    Type2_1,
    Type2_2,
    HasTotal,
    NotFullUnionClosed,
};

std::string to_string(FamilyType t);

FamilyType classify(const Family& fam);

struct ClassInfo {
    Family representative;  // canonical form
    FamilyType type;
    std::uint64_t orbit_size;  // qualifying families equivalent to it
};

// Exhaustive sweep of all 2^18 subsets of the non-total functions, filtered
// to full, union-closed families; one representative per equivalence class,
// sorted by member count.
std::vector<ClassInfo> enumerate_classes();

// The fixed reference families the case analysis is phrased against.
// Type 1: {(1,p),(2,n)}, {(1,n),(3,p)}, {(2,p),(3,n)}.
Family type1_picture();
// Type 2 with `singletons` in {0,1,2}: e={(1,p),(2,p)}, f={(1,p),(2,n)},
// g={(1,n),(3,p)}, h={(1,n),(3,n)}, plus c1={(1,p)} and/or c2={(1,n)}.
Family type2_picture(int singletons);

// Named members of the reference pictures: roles 'f','g','h' for Type 1;
// 'e','f','g','h' plus '1' (c1) and '2' (c2) for Type 2.
PartialFunction type1_role(char role);
PartialFunction type2_role(char role);

}  // namespace subseries::fn32
