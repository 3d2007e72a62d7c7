#ifndef LCM_HULL_HPP
#define LCM_HULL_HPP

#include <optional>
#include <string>
#include <vector>

#include "ideals.hpp"

namespace lcm {

struct Move {
    bool divide = false; // false: w -> s.w, true: w -> s^{-1} w
    Word s;
};

// Moves are stored in application order.
struct HullElement {
    std::vector<Move> moves;
    bool zero = false;

    static HullElement identity() { return {}; }
    static HullElement null() { return {{}, true}; }
    static HullElement mul(Word s) { return {{Move{false, std::move(s)}}, false}; }
    static HullElement div(Word s) { return {{Move{true, std::move(s)}}, false}; }
};

inline HullElement compose(const HullElement &h1, const HullElement &h2)
{
    HullElement r;
    r.zero = h1.zero || h2.zero;
    r.moves = h2.moves;
    r.moves.insert(r.moves.end(), h1.moves.begin(), h1.moves.end());
    return r;
}

inline HullElement invert(const HullElement &h)
{
    HullElement r;
    r.zero = h.zero;
    for (auto it = h.moves.rbegin(); it != h.moves.rend(); ++it)
        r.moves.push_back(Move{!it->divide, it->s});
    return r;
}

inline std::optional<Word> apply(const Presentation &p, const HullElement &h, const Word &w)
{
    if (h.zero)
        return std::nullopt;
    Word cur = normal_form(p, w);
    for (const auto &m : h.moves) {
        if (m.divide) {
            auto q = left_divide(p, m.s, cur);
            if (!q)
                return std::nullopt;
            cur = std::move(*q);
        } else {
            cur = normal_form(p, concat(m.s, cur));
        }
    }
    return cur;
}

inline Ideal domain(const Presentation &p, const HullElement &h)
{
    if (h.zero)
        return empty_ideal();
    Ideal d = full_ideal();
    for (auto it = h.moves.rbegin(); it != h.moves.rend(); ++it)
        d = it->divide ? translate(p, it->s, d) : pullback_word(p, it->s, d);
    return d;
}

// h(A \cap dom h)
inline Ideal image(const Presentation &p, const HullElement &h, Ideal a)
{
    if (h.zero)
        return empty_ideal();
    for (const auto &m : h.moves)
        a = m.divide ? pullback_word(p, m.s, a) : translate(p, m.s, a);
    return a;
}

inline Ideal pullback_hull(const Presentation &p, const HullElement &h, Ideal a)
{
    return image(p, invert(h), std::move(a));
}

inline bool is_zero(const Presentation &p, const HullElement &h) { return h.zero || domain(p, h).empty; }

inline std::string format_hull(const HullElement &h)
{
    if (h.zero)
        return "0";
    if (h.moves.empty())
        return "id";
    std::string s;
    for (auto it = h.moves.rbegin(); it != h.moves.rend(); ++it) {
        for (std::size_t i = 0; i < it->s.size(); ++i) {
            if (!s.empty())
                s += ' ';
            // a divided word s1..sk reads sk^-1 .. s1^-1
            const Letter &l = it->divide ? it->s[it->s.size() - 1 - i] : it->s[i];
            s += format_letter(l);
            if (it->divide)
                s += "^-1";
        }
    }
    return s.empty() ? "id" : s;
}

// "b^-1 c b", "c^-2 b", "id", "0".
inline HullElement parse_hull(const Presentation &p, const std::string &text)
{
    auto toks = split_ws(text);
    if (toks.size() == 1 && toks[0] == "0")
        return HullElement::null();
    if (toks.size() == 1 && (toks[0] == "id" || toks[0] == "1"))
        return HullElement::identity();
    HullElement h;
    for (std::size_t i = toks.size(); i-- > 0;) {
        std::string t = toks[i];
        long power = 1;
        auto caret = t.find('^');
        if (caret != std::string::npos) {
            try {
                std::size_t used = 0;
                power = std::stol(t.substr(caret + 1), &used);
                if (used != t.size() - caret - 1)
                    throw std::invalid_argument("");
            } catch (const std::exception &) {
                throw parse_error(i, "bad exponent in '" + t + "'");
            }
            t = t.substr(0, caret);
        }
        Letter l = parse_letter(t, i);
        p.validate(Word{l});
        for (long k = 0; k < (power < 0 ? -power : power); ++k)
            h.moves.push_back(Move{power < 0, {l}});
    }
    return h;
}

namespace detail {
inline std::vector<Word> probe_tails(const Presentation &p)
{
    std::vector<Word> out;
    for (Kind k : p.plain_letters())
        out.push_back({Letter(k)});
    if (p.indexed) {
        out.push_back({Letter(Kind::X, 0)});
        out.push_back({Letter(Kind::Y, 1)});
    }
    return out;
}
} // namespace detail

inline bool fixes_word(const Presentation &p, const HullElement &h, const Word &w)
{
    auto r = apply(p, h, w);
    return r && *r == normal_form(p, w);
}

// h is the identity on A. Fixing s fixes sS; on the x_n families one x_n
// witness suffices once the domain holds several of them, the extra probes
// guard monoids without that property.
inline bool fixes_ideal(const Presentation &p, const HullElement &h, const Ideal &a)
{
    if (a.empty)
        return true;
    if (!subset(p, a, domain(p, h)))
        return false;
    const Word &w = a.prefix;
    if (a.mask & cat::E)
        return fixes_word(p, h, w);
    std::vector<Word> probes;
    if (a.mask & cat::O)
        for (Kind k : p.plain_letters())
            probes.push_back(concat(w, Word{Letter(k)}));
    const auto tails = detail::probe_tails(p);
    for (Kind t : {Kind::X, Kind::Y}) {
        for (long n = -2; n <= 2; ++n) {
            Word base = concat(w, Word{Letter(t, n)});
            if (a.mask & cat_one(t)) {
                probes.push_back(base);
            } else if (a.mask & cat_two(t)) {
                for (const auto &z : tails)
                    probes.push_back(concat(base, z));
            }
        }
    }
    for (const auto &q : probes)
        if (!fixes_word(p, h, q))
            return false;
    return true;
}

} // namespace lcm

#endif
