#include "subseries/fn32.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace subseries::fn32 {

namespace {

constexpr std::uint8_t slot_shift(int x) { return static_cast<std::uint8_t>(2 * (x - 1)); }

int slot(std::uint8_t code, int x) { return (code >> slot_shift(x)) & 0x3; }

}  // namespace

PartialFunction PartialFunction::singleton(int x, Value y) {
    return PartialFunction{}.with(x, y);
}

PartialFunction PartialFunction::of(std::initializer_list<std::pair<int, Value>> pairs) {
    PartialFunction f;
    for (auto [x, y] : pairs) f = f.with(x, y);
    return f;
}

bool PartialFunction::defined(int x) const { return slot(code_, x) != 0; }

Value PartialFunction::at(int x) const {
    int s = slot(code_, x);
    if (s == 0) throw std::out_of_range("coordinate not in domain");
    return s == 1 ? Value::P : Value::N;
}

PartialFunction PartialFunction::with(int x, Value y) const {
    if (x < 1 || x > 3) throw std::out_of_range("coordinate must be 1..3");
    PartialFunction f = *this;
    f.code_ &= static_cast<std::uint8_t>(~(0x3 << slot_shift(x)));
    f.code_ |= static_cast<std::uint8_t>((y == Value::P ? 1 : 2) << slot_shift(x));
    return f;
}

int PartialFunction::domain_size() const {
    int n = 0;
    for (int x = 1; x <= 3; ++x)
        if (defined(x)) ++n;
    return n;
}

PartialFunction PartialFunction::from_code(std::uint8_t code) {
    for (int x = 1; x <= 3; ++x)
        if (slot(code, x) == 3) throw std::invalid_argument("bad partial function code");
    PartialFunction f;
    f.code_ = code;
    return f;
}

namespace {

std::array<PartialFunction, 26> build_enumeration() {
    std::array<PartialFunction, 26> out;
    int k = 0;
    // domains ordered by (size, sorted coordinates); 7 nonempty subsets of {1,2,3}
    const std::vector<std::vector<int>> domains = {
        {1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
    for (const auto& dom : domains) {
        int m = static_cast<int>(dom.size());
        for (int bits = 0; bits < (1 << m); ++bits) {
            PartialFunction f;
            for (int i = 0; i < m; ++i) {
                // bit 0 means p at the i-th (most significant first) coordinate
                bool n_value = (bits >> (m - 1 - i)) & 1;
                f = f.with(dom[i], n_value ? Value::N : Value::P);
            }
            out[k++] = f;
        }
    }
    return out;
}

const std::array<PartialFunction, 26>& enumeration() {
    static const std::array<PartialFunction, 26> table = build_enumeration();
    return table;
}

const std::array<int, 64>& code_to_index() {
    static const std::array<int, 64> table = [] {
        std::array<int, 64> t{};
        t.fill(-1);
        for (int i = 0; i < 26; ++i) t[enumeration()[i].code()] = i;
        return t;
    }();
    return table;
}

}  // namespace

const std::array<PartialFunction, 26>& all_partial_functions() { return enumeration(); }

int PartialFunction::index() const {
    if (is_empty()) throw std::invalid_argument("empty function has no enumeration index");
    return code_to_index()[code_];
}

PartialFunction PartialFunction::from_index(int idx) {
    if (idx < 0 || idx >= 26) throw std::out_of_range("enumeration index must be 0..25");
    return enumeration()[static_cast<std::size_t>(idx)];
}

std::string PartialFunction::to_string() const {
    std::string out = "{";
    bool first = true;
    for (int x = 1; x <= 3; ++x) {
        if (!defined(x)) continue;
        if (!first) out += ",";
        first = false;
        out += std::to_string(x);
        out += ":";
        out += at(x) == Value::P ? "p" : "n";
    }
    out += "}";
    return out;
}

std::optional<PartialFunction> PartialFunction::parse(const std::string& text) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}') return std::nullopt;
    PartialFunction f;
    std::string body = text.substr(1, text.size() - 2);
    if (body.empty()) return f;
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t end = body.find(',', pos);
        if (end == std::string::npos) end = body.size();
        std::string item = body.substr(pos, end - pos);
        if (item.size() != 3 || item[1] != ':') return std::nullopt;
        int x = item[0] - '0';
        if (x < 1 || x > 3) return std::nullopt;
        if (item[2] != 'p' && item[2] != 'n') return std::nullopt;
        if (f.defined(x)) return std::nullopt;
        f = f.with(x, item[2] == 'p' ? Value::P : Value::N);
        pos = end + 1;
    }
    return f;
}

bool are_compatible(PartialFunction f, PartialFunction g) {
    for (int x = 1; x <= 3; ++x)
        if (f.defined(x) && g.defined(x) && f.at(x) != g.at(x)) return false;
    return true;
}

PartialFunction union_of(PartialFunction f, PartialFunction g) {
    if (!are_compatible(f, g)) throw std::invalid_argument("union of incompatible functions");
    PartialFunction u = f;
    for (int x = 1; x <= 3; ++x)
        if (g.defined(x)) u = u.with(x, g.at(x));
    return u;
}

Family Family::of(std::initializer_list<PartialFunction> fns) {
    Family fam;
    for (auto f : fns) fam.add(f);
    return fam;
}

bool Family::contains(PartialFunction f) const {
    if (f.is_empty()) return false;
    return (mask_ >> f.index()) & 1u;
}

void Family::add(PartialFunction f) {
    if (f.is_empty()) throw std::invalid_argument("families never store the empty function");
    mask_ |= 1u << f.index();
}

int Family::size() const { return std::popcount(mask_); }

std::vector<PartialFunction> Family::members() const {
    std::vector<PartialFunction> out;
    for (int i = 0; i < 26; ++i)
        if ((mask_ >> i) & 1u) out.push_back(PartialFunction::from_index(i));
    return out;
}

std::string Family::to_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& f : members()) {
        if (!first) out += ",";
        first = false;
        out += f.to_string();
    }
    out += "}";
    return out;
}

namespace {

// Precomputed tables over the enumeration order.
struct Tables {
    // cover[x-1][y]: mask of functions f with f(x) = y
    std::array<std::array<std::uint32_t, 2>, 3> cover{};
    // for compatible pairs (i, j): index of their union, else -1
    std::array<std::array<int, 26>, 26> union_idx{};
    std::uint32_t total_mask = 0;  // functions with domain {1,2,3}

    Tables() {
        const auto& fns = all_partial_functions();
        for (int i = 0; i < 26; ++i) {
            for (int x = 1; x <= 3; ++x)
                if (fns[i].defined(x))
                    cover[x - 1][fns[i].at(x) == Value::P ? 0 : 1] |= 1u << i;
            if (fns[i].is_total()) total_mask |= 1u << i;
            for (int j = 0; j < 26; ++j) {
                if (are_compatible(fns[i], fns[j]))
                    union_idx[i][j] = union_of(fns[i], fns[j]).index();
                else
                    union_idx[i][j] = -1;
            }
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

bool mask_is_full(std::uint32_t mask) {
    const auto& t = tables();
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 2; ++y)
            if ((mask & t.cover[x][y]) == 0) return false;
    return true;
}

bool mask_is_union_closed(std::uint32_t mask) {
    const auto& t = tables();
    std::uint32_t rest = mask;
    while (rest) {
        int i = std::countr_zero(rest);
        rest &= rest - 1;
        std::uint32_t rest2 = rest | (1u << i);
        while (rest2) {
            int j = std::countr_zero(rest2);
            rest2 &= rest2 - 1;
            int u = t.union_idx[i][j];
            if (u >= 0 && !((mask >> u) & 1u)) return false;
        }
    }
    return true;
}

}  // namespace

bool is_full(const Family& fam) { return mask_is_full(fam.mask()); }

bool is_union_closed(const Family& fam) { return mask_is_union_closed(fam.mask()); }

bool has_total(const Family& fam) { return (fam.mask() & tables().total_mask) != 0; }

const std::vector<Symmetry>& Symmetry::all() {
    static const std::vector<Symmetry> table = [] {
        std::vector<Symmetry> out;
        std::array<int, 3> p{0, 1, 2};
        std::sort(p.begin(), p.end());
        do {
            for (int bits = 0; bits < 8; ++bits) {
                Symmetry s;
                s.perm = p;
                for (int x = 0; x < 3; ++x) s.flip[x] = (bits >> x) & 1;
                out.push_back(s);
            }
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }();
    return table;
}

Symmetry Symmetry::inverse() const {
    Symmetry inv;
    for (int x = 0; x < 3; ++x) {
        inv.perm[perm[x]] = x;
        inv.flip[perm[x]] = flip[x];
    }
    return inv;
}

Symmetry Symmetry::then(const Symmetry& next) const {
    // (next∘this)(x) reads this at next.perm[x], which reads the source at
    // perm[next.perm[x]]; flips compose along the same path.
    Symmetry out;
    for (int x = 0; x < 3; ++x) {
        out.perm[x] = perm[next.perm[x]];
        out.flip[x] = next.flip[x] ^ flip[next.perm[x]];
    }
    return out;
}

bool Symmetry::is_identity() const {
    return perm == std::array<int, 3>{0, 1, 2} && !flip[0] && !flip[1] && !flip[2];
}

std::string Symmetry::to_string() const {
    std::string out = "pi=(";
    for (int x = 0; x < 3; ++x) {
        if (x) out += ",";
        out += std::to_string(perm[x] + 1);
    }
    out += ") tau=(";
    for (int x = 0; x < 3; ++x) {
        if (x) out += ",";
        out += flip[x] ? "swap" : "id";
    }
    out += ")";
    return out;
}

PartialFunction apply_symmetry(const Symmetry& s, PartialFunction f) {
    PartialFunction g;
    for (int x = 1; x <= 3; ++x) {
        int src = s.perm[x - 1] + 1;
        if (!f.defined(src)) continue;
        Value y = f.at(src);
        if (s.flip[x - 1]) y = flip_value(y);
        g = g.with(x, y);
    }
    return g;
}

namespace {

// function-index permutation induced by each of the 48 symmetries
const std::vector<std::array<int, 26>>& symmetry_index_maps() {
    static const std::vector<std::array<int, 26>> maps = [] {
        std::vector<std::array<int, 26>> out;
        out.reserve(48);
        for (const auto& s : Symmetry::all()) {
            std::array<int, 26> m{};
            for (int i = 0; i < 26; ++i)
                m[i] = apply_symmetry(s, PartialFunction::from_index(i)).index();
            out.push_back(m);
        }
        return out;
    }();
    return maps;
}

std::uint32_t apply_index_map(const std::array<int, 26>& m, std::uint32_t mask) {
    std::uint32_t out = 0;
    while (mask) {
        int i = std::countr_zero(mask);
        mask &= mask - 1;
        out |= 1u << m[i];
    }
    return out;
}

std::uint32_t canonical_mask(std::uint32_t mask) {
    std::uint32_t best = ~0u;
    for (const auto& m : symmetry_index_maps()) best = std::min(best, apply_index_map(m, mask));
    return best;
}

}  // namespace

Family apply_symmetry(const Symmetry& s, const Family& fam) {
    std::uint32_t out = 0;
    std::uint32_t mask = fam.mask();
    while (mask) {
        int i = std::countr_zero(mask);
        mask &= mask - 1;
        out |= 1u << apply_symmetry(s, PartialFunction::from_index(i)).index();
    }
    return Family::from_mask(out);
}

Family canonical_form(const Family& fam) { return Family::from_mask(canonical_mask(fam.mask())); }

std::optional<Symmetry> find_relabeling(const Family& from, const Family& to) {
    for (const auto& s : Symmetry::all())
        if (apply_symmetry(s, from) == to) return s;
    return std::nullopt;
}

PartialFunction type1_role(char role) {
    using V = Value;
    switch (role) {
        case 'f': return PartialFunction::of({{1, V::P}, {2, V::N}});
        case 'g': return PartialFunction::of({{1, V::N}, {3, V::P}});
        case 'h': return PartialFunction::of({{2, V::P}, {3, V::N}});
        default: throw std::invalid_argument("type 1 roles are f, g, h");
    }
}

PartialFunction type2_role(char role) {
    using V = Value;
    switch (role) {
        case 'e': return PartialFunction::of({{1, V::P}, {2, V::P}});
        case 'f': return PartialFunction::of({{1, V::P}, {2, V::N}});
        case 'g': return PartialFunction::of({{1, V::N}, {3, V::P}});
        case 'h': return PartialFunction::of({{1, V::N}, {3, V::N}});
        case '1': return PartialFunction::singleton(1, V::P);
        case '2': return PartialFunction::singleton(1, V::N);
        default: throw std::invalid_argument("type 2 roles are e, f, g, h, 1, 2");
    }
}

Family type1_picture() {
    return Family::of({type1_role('f'), type1_role('g'), type1_role('h')});
}

Family type2_picture(int singletons) {
    if (singletons < 0 || singletons > 2)
        throw std::out_of_range("singleton count must be 0..2");
    Family fam =
        Family::of({type2_role('e'), type2_role('f'), type2_role('g'), type2_role('h')});
    if (singletons >= 1) fam.add(type2_role('1'));
    if (singletons >= 2) fam.add(type2_role('2'));
    return fam;
}

std::string to_string(FamilyType t) {
    switch (t) {
        case FamilyType::Type1: return "Type1";
        case FamilyType::Type2_0: return "Type2_0";
        case FamilyType::Type2_1: return "Type2_1";
        case FamilyType::Type2_2: return "Type2_2";
        case FamilyType::HasTotal: return "HasTotal";
        case FamilyType::NotFullUnionClosed: return "NotFullUnionClosed";
    }
    return "NotFullUnionClosed";
}

namespace {

const std::map<std::uint32_t, FamilyType>& reference_canonical_forms() {
    static const std::map<std::uint32_t, FamilyType> refs = [] {
        std::map<std::uint32_t, FamilyType> out;
        out[canonical_form(type1_picture()).mask()] = FamilyType::Type1;
        out[canonical_form(type2_picture(0)).mask()] = FamilyType::Type2_0;
        out[canonical_form(type2_picture(1)).mask()] = FamilyType::Type2_1;
        out[canonical_form(type2_picture(2)).mask()] = FamilyType::Type2_2;
        return out;
    }();
    return refs;
}

}  // namespace

FamilyType classify(const Family& fam) {
    if (has_total(fam)) return FamilyType::HasTotal;
    if (!is_full(fam) || !is_union_closed(fam)) return FamilyType::NotFullUnionClosed;
    auto canon = canonical_form(fam).mask();
    const auto& refs = reference_canonical_forms();
    auto it = refs.find(canon);
    if (it == refs.end())
        throw std::logic_error("full union-closed total-free family outside the four classes");
    return it->second;
}

std::vector<ClassInfo> enumerate_classes() {
    std::map<std::uint32_t, std::uint64_t> orbit_counts;  // canonical mask -> count
    for (std::uint32_t mask = 1; mask < (1u << 18); ++mask) {
        if (!mask_is_full(mask)) continue;
        if (!mask_is_union_closed(mask)) continue;
        orbit_counts[canonical_mask(mask)] += 1;
    }
    std::vector<ClassInfo> out;
    for (const auto& [canon, count] : orbit_counts) {
        Family rep = Family::from_mask(canon);
        out.push_back(ClassInfo{rep, classify(rep), count});
    }
    std::sort(out.begin(), out.end(), [](const ClassInfo& a, const ClassInfo& b) {
        if (a.representative.size() != b.representative.size())
            return a.representative.size() < b.representative.size();
        return a.representative.mask() < b.representative.mask();
    });
    return out;
}

}  // namespace subseries::fn32
