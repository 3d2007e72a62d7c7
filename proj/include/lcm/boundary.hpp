#ifndef LCM_BOUNDARY_HPP
#define LCM_BOUNDARY_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hull.hpp"

namespace lcm {

enum class Verdict { True, False, Unknown };

inline std::string format_verdict(Verdict v)
{
    switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    default: return "unknown";
    }
}

struct PrincipalChar {
    Word s;
};
struct IdealChar {
    Ideal a;
};
struct WordChar {
    InfiniteWord w;
};

using Character = std::variant<PrincipalChar, IdealChar, WordChar>;

// <wS> is chi_w; infinite words keep their shortest form.
inline Character normalize(const Presentation &p, const Character &c)
{
    if (auto *pc = std::get_if<PrincipalChar>(&c))
        return PrincipalChar{normal_form(p, pc->s)};
    if (auto *ic = std::get_if<IdealChar>(&c)) {
        if (ic->a.empty)
            throw std::invalid_argument("<A> needs a nonempty ideal");
        if (ic->a.mask == shape::R)
            return PrincipalChar{ic->a.prefix};
        return c;
    }
    const auto &w = std::get<WordChar>(c).w;
    if (!is_reduced(w))
        throw std::invalid_argument("chi_w needs a reduced infinite word");
    return WordChar{w.canonical()};
}

inline bool same_character(const Presentation &p, const Character &a, const Character &b)
{
    auto x = normalize(p, a), y = normalize(p, b);
    if (x.index() != y.index())
        return false;
    if (auto *pc = std::get_if<PrincipalChar>(&x))
        return pc->s == std::get<PrincipalChar>(y).s;
    if (auto *ic = std::get_if<IdealChar>(&x))
        return ic->a == std::get<IdealChar>(y).a;
    return std::get<WordChar>(x).w == std::get<WordChar>(y).w;
}

inline std::string format_character(const Character &c)
{
    if (auto *pc = std::get_if<PrincipalChar>(&c))
        return "chi " + format_word(pc->s);
    if (auto *ic = std::get_if<IdealChar>(&c))
        return "ideal " + format_ideal(ic->a);
    return format_infinite(std::get<WordChar>(c).w);
}

inline Character parse_character(const Presentation &p, const std::string &s)
{
    auto toks = split_ws(s);
    if (toks.empty())
        throw parse_error(0, "empty character");
    std::vector<std::string> rest(toks.begin() + 1, toks.end());
    Character c;
    if (toks[0] == "chi") {
        Word w = parse_word_tokens(rest, 1);
        p.validate(w);
        c = PrincipalChar{w};
    } else if (toks[0] == "ideal") {
        c = IdealChar{parse_ideal_tokens(p, rest, 1)};
    } else if (toks[0] == "inf") {
        auto w = parse_infinite(s);
        p.validate(w.prefix);
        p.validate(w.period);
        c = WordChar{w};
    } else {
        throw parse_error(0, "a character starts with chi, ideal or inf");
    }
    return normalize(p, c);
}

inline std::size_t truncation_depth(const InfiniteWord &w, const Ideal &a)
{
    return w.prefix.size() + 2 * w.period.size() + (a.empty ? 0 : a.prefix.size()) + 3;
}

inline bool evaluate(const Presentation &p, const Character &c, const Ideal &a)
{
    if (a.empty)
        return false;
    if (auto *pc = std::get_if<PrincipalChar>(&c))
        return contains(p, a, pc->s);
    if (auto *ic = std::get_if<IdealChar>(&c))
        return subset(p, ic->a, a);
    const auto &w = std::get<WordChar>(c).w;
    return contains(p, a, w.truncate(truncation_depth(w, a)));
}

inline bool evaluate_generalized(const Presentation &p, const Character &c, const GeneralizedIdeal &d)
{
    if (!evaluate(p, c, d.base))
        return false;
    for (const auto &m : d.minus)
        if (evaluate(p, c, m))
            return false;
    return true;
}

inline Verdict in_omega(const Presentation &p, const Character &c0)
{
    auto c = normalize(p, c0);
    auto *ic = std::get_if<IdealChar>(&c);
    if (!ic)
        return Verdict::True;
    bool has_z = std::find(p.shapes.begin(), p.shapes.end(), shape::Z) != p.shapes.end();
    // wP is the union of the wzS (z a plain letter) and wZ, none of which holds wP
    if (ic->a.mask == shape::P && (has_z || !p.indexed))
        return Verdict::False;
    return p.classified ? Verdict::True : Verdict::Unknown;
}

inline Verdict is_maximal(const Presentation &p, const Character &c0)
{
    auto c = normalize(p, c0);
    // chi_s misses szS although every ideal holding s contains it; <B> likewise
    // misses a proper subideal of B
    if (!std::holds_alternative<WordChar>(c))
        return Verdict::False;
    if (!p.classified)
        return Verdict::Unknown;
    return word_type(std::get<WordChar>(c).w) == WordType::Type1 ? Verdict::True : Verdict::False;
}

enum class BoundaryClass { MaxType1, IdealX, IdealY, WordType2, NotBoundary };

inline std::string format_class(BoundaryClass b)
{
    switch (b) {
    case BoundaryClass::MaxType1: return "MaxType1";
    case BoundaryClass::IdealX: return "IdealX";
    case BoundaryClass::IdealY: return "IdealY";
    case BoundaryClass::WordType2: return "WordType2";
    default: return "NotBoundary";
    }
}

inline BoundaryClass classify_boundary(const Presentation &p, const Character &c0)
{
    if (!p.classified)
        throw std::invalid_argument("boundary classification is only available for R");
    auto c = normalize(p, c0);
    if (auto *ic = std::get_if<IdealChar>(&c)) {
        if (ic->a.mask == shape::X)
            return BoundaryClass::IdealX;
        if (ic->a.mask == shape::Y)
            return BoundaryClass::IdealY;
        return BoundaryClass::NotBoundary;
    }
    if (auto *wc = std::get_if<WordChar>(&c))
        return word_type(wc->w) == WordType::Type1 ? BoundaryClass::MaxType1 : BoundaryClass::WordType2;
    return BoundaryClass::NotBoundary;
}

inline bool in_boundary(const Presentation &p, const Character &c)
{
    return classify_boundary(p, c) != BoundaryClass::NotBoundary;
}

inline bool clopen_disjoint_from_boundary(const Presentation &p, const Ideal &x, const std::vector<Ideal> &f)
{
    return is_foundation(p, x, f).foundation;
}

inline bool clopen_disjoint_from_boundary(const Presentation &p, const GeneralizedIdeal &x,
                                          const std::vector<GeneralizedIdeal> &f)
{
    return is_foundation_generalized(p, x, f).foundation;
}

struct Neighbourhood {
    Ideal one;               // must be charged
    std::vector<Ideal> zero; // must not be charged
};

inline std::string format_neighbourhood(const Neighbourhood &u)
{
    std::string s = "1: " + format_ideal(u.one);
    for (const auto &z : u.zero)
        s += "; 0: " + format_ideal(z);
    return s;
}

inline Neighbourhood separating_neighbourhood(const Presentation &p, const InfiniteWord &w, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("neighbourhood depth must be positive");
    Neighbourhood u;
    Word t = w.truncate(n);
    u.one = principal(p, t);
    auto eater = [](const Letter &l) {
        return l.kind == Kind::A || l.kind == Kind::C || l.kind == Kind::D || l.kind == Kind::F;
    };
    auto push = [&](std::size_t keep) {
        Word v = subword(t, 0, keep);
        v.push_back(Letter(Kind::B));
        Ideal z = canonical(p, v, shape::Z);
        if (std::find(u.zero.begin(), u.zero.end(), z) == u.zero.end())
            u.zero.push_back(z);
    };
    if (eater(t[n - 1]))
        push(n - 1);
    if (n >= 2 && eater(t[n - 2]))
        push(n - 2);
    return u;
}

inline bool matches(const Presentation &p, const Character &c, const Neighbourhood &u)
{
    if (!evaluate(p, c, u.one))
        return false;
    for (const auto &z : u.zero)
        if (evaluate(p, c, z))
            return false;
    return true;
}

// Minimal members of the filter of c, smallest first.
inline std::vector<Ideal> filter_base(const Presentation &p, const Character &c0, std::size_t depth)
{
    auto c = normalize(p, c0);
    if (auto *pc = std::get_if<PrincipalChar>(&c))
        return {principal(p, pc->s)};
    if (auto *ic = std::get_if<IdealChar>(&c))
        return {ic->a};
    const auto &w = std::get<WordChar>(c).w;
    std::vector<Ideal> out;
    for (std::size_t n = 0; n <= depth; ++n)
        out.push_back(principal(p, w.truncate(n)));
    return out;
}

// Y charged by c with A and Y disjoint.
inline std::optional<Ideal> maximality_witness(const Presentation &p, const Character &c, const Ideal &a,
                                               std::size_t depth)
{
    for (const auto &y : filter_base(p, c, depth))
        if (intersect(p, a, y).empty)
            return y;
    return std::nullopt;
}

} // namespace lcm

#endif
