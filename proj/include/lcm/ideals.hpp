#ifndef LCM_IDEALS_HPP
#define LCM_IDEALS_HPP

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rewrite.hpp"

namespace lcm {

// An ideal is W.T where T is a union of the six base categories below.
using Mask = std::uint8_t;

namespace cat {
inline constexpr Mask E = 1;  // the identity
inline constexpr Mask O = 2;  // first letter among a b c d f
inline constexpr Mask X1 = 4; // x_n alone
inline constexpr Mask X2 = 8; // x_n w', w' != e
inline constexpr Mask Y1 = 16;
inline constexpr Mask Y2 = 32;
inline constexpr Mask Zall = X1 | X2 | Y1 | Y2;
} // namespace cat

namespace shape {
inline constexpr Mask R = 63;
inline constexpr Mask P = 62;
inline constexpr Mask Z = 60;
inline constexpr Mask X = 8;
inline constexpr Mask Y = 32;
inline constexpr Mask U = 12; // all of x_n S
inline constexpr Mask V = 48; // all of y_n S
} // namespace shape

inline Mask close_mask(Mask m)
{
    if (m & cat::E)
        return shape::R;
    if (m & cat::X1)
        m |= cat::X2;
    if (m & cat::Y1)
        m |= cat::Y2;
    return m;
}

inline Mask cat_one(Kind t) { return t == Kind::X ? cat::X1 : cat::Y1; }
inline Mask cat_two(Kind t) { return t == Kind::X ? cat::X2 : cat::Y2; }

struct Ideal {
    bool empty = true;
    Word prefix;
    Mask mask = 0;

    friend bool operator==(const Ideal &a, const Ideal &b)
    {
        if (a.empty || b.empty)
            return a.empty == b.empty;
        return a.mask == b.mask && a.prefix == b.prefix;
    }
    friend bool operator!=(const Ideal &a, const Ideal &b) { return !(a == b); }
};

inline Ideal empty_ideal() { return {}; }

inline char shape_char(Mask m)
{
    switch (m) {
    case shape::R: return 'R';
    case shape::P: return 'P';
    case shape::Z: return 'Z';
    case shape::X: return 'X';
    case shape::Y: return 'Y';
    case shape::U: return 'U';
    case shape::V: return 'V';
    default: return '?';
    }
}

inline std::optional<Mask> shape_from_char(const std::string &s)
{
    if (s.size() != 1)
        return std::nullopt;
    switch (s[0]) {
    case 'R': return shape::R;
    case 'P': return shape::P;
    case 'Z': return shape::Z;
    case 'X': return shape::X;
    case 'Y': return shape::Y;
    case 'U': return shape::U;
    case 'V': return shape::V;
    default: return std::nullopt;
    }
}

inline std::string tag_name(const Ideal &a)
{
    if (a.empty)
        return "Empty";
    switch (a.mask) {
    case shape::R: return "Principal";
    case shape::P: return "Punctured";
    case shape::Z: return "TailZ";
    case shape::X: return "TailX";
    case shape::Y: return "TailY";
    case shape::U: return "TailXAll";
    case shape::V: return "TailYAll";
    default: return "Mask" + std::to_string(a.mask);
    }
}

inline std::string format_ideal(const Ideal &a)
{
    if (a.empty)
        return "0";
    char c = shape_char(a.mask);
    std::string sh = c == '?' ? "M" + std::to_string(a.mask) : std::string(1, c);
    return a.prefix.empty() ? sh : format_word(a.prefix) + " " + sh;
}

inline Mask category(const Word &q)
{
    if (q.empty())
        return cat::E;
    if (!q[0].indexed())
        return cat::O;
    bool alone = q.size() == 1;
    if (q[0].kind == Kind::X)
        return alone ? cat::X1 : cat::X2;
    return alone ? cat::Y1 : cat::Y2;
}

struct EatInfo {
    bool ok = true;
    bool needs_tail = false;
    int shift = 0;
};

inline EatInfo eat_info(const Presentation &p, const Word &s, std::size_t from, std::size_t to, Kind t)
{
    EatInfo e;
    for (std::size_t i = from; i < to; ++i) {
        const RuleSchema *r = p.rule(s[i].kind, t);
        if (!r)
            return {false, false, 0};
        e.needs_tail |= r->needs_tail;
        e.shift += r->shift;
    }
    return e;
}

inline Ideal canonical(const Presentation &p, Word w, Mask m)
{
    m = close_mask(m);
    if (m == 0)
        return empty_ideal();
    w = normal_form(p, w);
    if (!(m & cat::E)) {
        bool tail_rules = false;
        for (const auto &r : p.rules)
            tail_rules |= r.needs_tail;
        if (tail_rules && !w.empty()) {
            // every element w.q has q != e, so a tail-needing eater may fire
            Word probe = w;
            probe.push_back(Letter(p.plain_letters().empty() ? Kind::X : p.plain_letters().front()));
            probe = normal_form(p, probe);
            probe.pop_back();
            w = std::move(probe);
        }
        if ((m & ~cat::Zall) == 0 && !w.empty() && w.back().kind == Kind::B) {
            std::size_t j = w.size() - 1, k = j;
            while (k > 0 && !w[k - 1].indexed() && w[k - 1].kind != Kind::B) {
                bool ok = true;
                for (Kind t : {Kind::X, Kind::Y}) {
                    if (!(m & (cat_one(t) | cat_two(t))))
                        continue;
                    const RuleSchema *r = p.rule(w[k - 1].kind, t);
                    ok = ok && r && (!r->needs_tail || !(m & cat_one(t)));
                }
                if (!ok)
                    break;
                --k;
            }
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(k), w.begin() + static_cast<std::ptrdiff_t>(j));
        }
    }
    return Ideal{false, std::move(w), m};
}

inline Ideal full_ideal() { return Ideal{false, {}, shape::R}; }
inline Ideal principal(const Presentation &p, const Word &w) { return canonical(p, w, shape::R); }
inline Ideal make_ideal(const Presentation &p, const Word &w, Mask m) { return canonical(p, w, m); }

inline Ideal translate(const Presentation &p, const Word &w, const Ideal &a)
{
    if (a.empty)
        return a;
    return canonical(p, concat(w, a.prefix), a.mask);
}

inline bool contains(const Presentation &p, const Ideal &a, const Word &u)
{
    if (a.empty)
        return false;
    auto q = left_divide(p, a.prefix, u);
    return q && (category(*q) & a.mask);
}

namespace detail {

// pullback of a base shape by one letter
inline Mask base_pullback(Kind x, Mask m)
{
    if (m & cat::E)
        return shape::R;
    if (!is_indexed(x))
        return (m & cat::O) ? shape::R : 0;
    if (m & cat_one(x))
        return shape::R;
    if (m & cat_two(x))
        return shape::P;
    return 0;
}

// Elements of w.T whose normal form starts with b x_n or b y_n.
inline Ideal meet_bz(const Presentation &p, const Word &w, Mask m)
{
    std::size_t k = 0;
    while (k < w.size() && !w[k].indexed() && w[k].kind != Kind::B)
        ++k;
    if (k == w.size()) {
        if (!(m & cat::O))
            return empty_ideal();
        Word sb = w;
        sb.push_back(Letter(Kind::B));
        return meet_bz(p, sb, cat::Zall);
    }
    if (w[k].kind != Kind::B)
        return empty_ideal();
    if (k + 1 == w.size()) {
        Mask part = 0;
        for (Kind t : {Kind::X, Kind::Y}) {
            EatInfo e = eat_info(p, w, 0, k, t);
            if (e.ok)
                part |= e.needs_tail ? cat_two(t) : (cat_one(t) | cat_two(t));
        }
        return canonical(p, {Letter(Kind::B)}, m & part);
    }
    if (!w[k + 1].indexed())
        return empty_ideal();
    if (k == 0)
        return canonical(p, w, m);
    Kind t = w[k + 1].kind;
    EatInfo e = eat_info(p, w, 0, k, t);
    if (!e.ok)
        return empty_ideal();
    Word rest = subword(w, k);
    rest[1].n += e.shift;
    Mask mm = m;
    if (e.needs_tail && rest.size() == 2)
        mm &= shape::P;
    return canonical(p, rest, mm);
}

} // namespace detail

inline Ideal pullback(const Presentation &p, const Letter &x, const Ideal &a)
{
    if (a.empty)
        return a;
    const Word &w = a.prefix;
    if (w.empty())
        return canonical(p, {}, detail::base_pullback(x.kind, a.mask));
    if (w[0] == x)
        return canonical(p, subword(w, 1), a.mask);
    if (x.indexed())
        return empty_ideal();
    Ideal c = detail::meet_bz(p, w, a.mask);
    if (c.empty)
        return c;
    Word d = subword(c.prefix, 1);
    if (x.kind == Kind::B)
        return canonical(p, d, c.mask);
    if (d.empty()) {
        Mask mm = 0;
        for (Kind t : {Kind::X, Kind::Y})
            if (const RuleSchema *r = p.rule(x.kind, t))
                mm |= c.mask & (r->needs_tail ? cat_two(t) : (cat_one(t) | cat_two(t)));
        return canonical(p, {Letter(Kind::B)}, mm);
    }
    const RuleSchema *r = p.rule(x.kind, d[0].kind);
    if (!r)
        return empty_ideal();
    d[0].n -= r->shift;
    Mask mm = c.mask;
    if (r->needs_tail && d.size() == 1)
        mm &= shape::P;
    Word v{Letter(Kind::B)};
    v.insert(v.end(), d.begin(), d.end());
    return canonical(p, v, mm);
}

inline Ideal pullback_word(const Presentation &p, const Word &w, Ideal a)
{
    for (const auto &l : w) {
        if (a.empty)
            break;
        a = pullback(p, l, a);
    }
    return a;
}

inline Ideal intersect(const Presentation &p, const Ideal &a, const Ideal &b)
{
    if (a.empty || b.empty)
        return empty_ideal();
    Ideal c = pullback_word(p, b.prefix, a);
    if (c.empty)
        return c;
    Ideal k = pullback_word(p, c.prefix, Ideal{false, {}, b.mask});
    if (k.empty)
        return k;
    Ideal inner = canonical(p, {}, c.mask & k.mask);
    return translate(p, b.prefix, translate(p, c.prefix, inner));
}

inline bool subset(const Presentation &p, const Ideal &a, const Ideal &b)
{
    if (a.empty)
        return true;
    if (b.empty)
        return false;
    Ideal c = pullback_word(p, a.prefix, b);
    if (c.empty || !c.prefix.empty())
        return false;
    return (a.mask & ~c.mask) == 0;
}

// A short element of a nonempty ideal.
inline Word representative(const Presentation &p, const Ideal &a)
{
    if (a.empty)
        throw std::invalid_argument("empty ideal has no elements");
    Word q;
    Kind tail = p.plain_letters().empty() ? Kind::X : p.plain_letters().front();
    auto tail_letter = [&] { return tail == Kind::X ? Letter(Kind::X, 0) : Letter(tail); };
    if (a.mask & cat::E) {
    } else if (a.mask & cat::O) {
        q = {tail_letter()};
    } else if (a.mask & cat::X1) {
        q = {Letter(Kind::X, 0)};
    } else if (a.mask & cat::X2) {
        q = {Letter(Kind::X, 0), tail_letter()};
    } else if (a.mask & cat::Y1) {
        q = {Letter(Kind::Y, 0)};
    } else {
        q = {Letter(Kind::Y, 0), tail_letter()};
    }
    return normal_form(p, concat(a.prefix, q));
}

inline Ideal parse_ideal_tokens(const Presentation &p, const std::vector<std::string> &toks, std::size_t offset = 0)
{
    if (toks.size() == 1 && toks[0] == "0")
        return empty_ideal();
    if (toks.empty())
        throw parse_error(offset, "empty ideal");
    auto m = shape_from_char(toks.back());
    if (!m)
        throw parse_error(offset + toks.size() - 1, "expected a shape letter R P Z X Y U V, got '" + toks.back() + "'");
    std::vector<std::string> wt(toks.begin(), toks.end() - 1);
    Word w = wt.empty() ? Word{} : parse_word_tokens(wt, offset);
    p.validate(w);
    if (!p.shapes.empty() && std::find(p.shapes.begin(), p.shapes.end(), *m) == p.shapes.end())
        throw parse_error(offset + toks.size() - 1, "shape " + toks.back() + " is not listed for " + p.name);
    return canonical(p, w, *m);
}

inline Ideal parse_ideal(const Presentation &p, const std::string &s) { return parse_ideal_tokens(p, split_ws(s)); }

struct GeneralizedIdeal {
    Ideal base;
    std::vector<Ideal> minus;
};

inline std::string format_generalized(const GeneralizedIdeal &g)
{
    std::string s = format_ideal(g.base);
    for (const auto &m : g.minus)
        s += " \\ " + format_ideal(m);
    return s;
}

inline GeneralizedIdeal parse_generalized(const Presentation &p, const std::string &s)
{
    auto toks = split_ws(s);
    GeneralizedIdeal g;
    std::vector<std::string> cur;
    std::size_t start = 0;
    bool first = true;
    auto flush = [&](std::size_t at) {
        Ideal a = parse_ideal_tokens(p, cur, start);
        if (first)
            g.base = a;
        else
            g.minus.push_back(a);
        first = false;
        cur.clear();
        start = at + 1;
    };
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (toks[i] == "\\")
            flush(i);
        else
            cur.push_back(toks[i]);
    }
    flush(toks.size());
    return g;
}

inline bool contains(const Presentation &p, const GeneralizedIdeal &g, const Word &u)
{
    if (!contains(p, g.base, u))
        return false;
    for (const auto &m : g.minus)
        if (contains(p, m, u))
            return false;
    return true;
}

// ---- element search -------------------------------------------------------

enum class Visit { Accept, Continue, Prune };

inline std::size_t max_prefix(const std::vector<Ideal> &v)
{
    std::size_t m = 0;
    for (const auto &a : v)
        if (!a.empty)
            m = std::max(m, a.prefix.size());
    return m;
}

inline Index fresh_index(const std::set<Index> &used)
{
    for (long k = 0;; ++k) {
        for (long s : {k, -k}) {
            if (!used.count(Index(s)))
                return Index(s);
        }
    }
}

// Letters whose pullbacks can differ from one another on these states.
inline std::vector<Letter> letter_pool(const Presentation &p, const std::vector<Ideal> &states,
                                       const std::set<Index> &extra = {})
{
    std::vector<Letter> out;
    for (Kind k : p.plain_letters())
        out.push_back(Letter(k));
    if (!p.indexed)
        return out;
    std::set<Index> used = extra;
    for (const auto &a : states)
        if (!a.empty)
            for (const auto &l : a.prefix)
                if (l.indexed())
                    used.insert(l.n);
    Index f = fresh_index(used);
    for (Kind t : {Kind::X, Kind::Y}) {
        std::set<Index> firsts = extra;
        for (const auto &a : states)
            if (!a.empty && !a.prefix.empty() && a.prefix[0].kind == t)
                firsts.insert(a.prefix[0].n);
        firsts.insert(f);
        for (const auto &n : firsts)
            out.push_back(Letter(t, n));
    }
    return out;
}

inline std::string state_key(const std::vector<Ideal> &st)
{
    std::string k;
    for (const auto &a : st) {
        k += format_ideal(a);
        k += ';';
    }
    return k;
}

// Breadth-first walk over q -> (q^{-1} C_i); states determine the future, so
// repeated states are skipped.
template <class VisitFn>
std::optional<std::pair<Word, std::vector<Ideal>>> state_search(const Presentation &p, const std::vector<Ideal> &comps,
                                                                 VisitFn &&visit, std::size_t depth,
                                                                 const std::set<Index> &extra = {})
{
    struct Node {
        Word q;
        std::vector<Ideal> st;
    };
    std::set<std::string> seen{state_key(comps)};
    std::vector<Node> level{{{}, comps}};
    for (std::size_t d = 0; !level.empty(); ++d) {
        std::vector<Node> next;
        for (auto &nd : level) {
            Visit v = visit(nd.st, nd.q);
            if (v == Visit::Accept)
                return std::make_pair(nd.q, nd.st);
            if (v == Visit::Prune || d == depth)
                continue;
            for (const auto &z : letter_pool(p, nd.st, extra)) {
                std::vector<Ideal> st2;
                st2.reserve(nd.st.size());
                for (const auto &a : nd.st)
                    st2.push_back(pullback(p, z, a));
                if (!seen.insert(state_key(st2)).second)
                    continue;
                Word q2 = nd.q;
                q2.push_back(z);
                next.push_back({std::move(q2), std::move(st2)});
            }
        }
        level = std::move(next);
    }
    return std::nullopt;
}

inline bool holds_identity(const Ideal &a) { return !a.empty && a.prefix.empty() && (a.mask & cat::E); }
inline bool is_everything(const Ideal &a) { return !a.empty && a.prefix.empty() && a.mask == shape::R; }

inline std::size_t search_depth(const std::vector<Ideal> &v) { return max_prefix(v) + 3; }

// Some element of base minus the union of `minus`, if one exists within the bound.
inline std::optional<Word> find_outside(const Presentation &p, const Ideal &base, const std::vector<Ideal> &minus)
{
    if (base.empty)
        return std::nullopt;
    std::vector<Ideal> comps{base};
    comps.insert(comps.end(), minus.begin(), minus.end());
    auto hit = state_search(
        p, comps,
        [&](const std::vector<Ideal> &st, const Word &) {
            if (st[0].empty)
                return Visit::Prune;
            for (std::size_t i = 1; i < st.size(); ++i)
                if (is_everything(st[i]))
                    return Visit::Prune;
            if (!holds_identity(st[0]))
                return Visit::Continue;
            for (std::size_t i = 1; i < st.size(); ++i)
                if (holds_identity(st[i]))
                    return Visit::Continue;
            return Visit::Accept;
        },
        search_depth(comps));
    if (!hit)
        return std::nullopt;
    return normal_form(p, hit->first);
}

inline bool covered(const Presentation &p, const Ideal &base, const std::vector<Ideal> &minus)
{
    return !find_outside(p, base, minus);
}

inline bool subset(const Presentation &p, const GeneralizedIdeal &a, const GeneralizedIdeal &b)
{
    // a.base \ U a.minus inside b.base, and disjoint from each b.minus
    std::vector<Ideal> cut = a.minus;
    if (!covered(p, a.base, [&] {
            auto v = cut;
            v.push_back(b.base);
            return v;
        }()))
        return false;
    for (const auto &m : b.minus)
        if (!covered(p, intersect(p, a.base, m), cut))
            return false;
    return true;
}

inline bool is_nonempty(const Presentation &p, const GeneralizedIdeal &g) { return !covered(p, g.base, g.minus); }

// ---- foundation sets ------------------------------------------------------

struct FoundationResult {
    bool foundation = true;
    std::optional<Ideal> witness; // a nonempty ideal inside X missing every member
};

inline FoundationResult is_foundation(const Presentation &p, const Ideal &x, const std::vector<Ideal> &family)
{
    for (const auto &f : family)
        if (!subset(p, f, x))
            throw std::invalid_argument("family member " + format_ideal(f) + " is not inside " + format_ideal(x));
    if (x.empty)
        return {};
    std::vector<Ideal> comps{x};
    comps.insert(comps.end(), family.begin(), family.end());
    auto hit = state_search(
        p, comps,
        [](const std::vector<Ideal> &st, const Word &) {
            if (st[0].empty)
                return Visit::Prune;
            for (std::size_t i = 1; i < st.size(); ++i)
                if (!st[i].empty)
                    return Visit::Continue;
            return Visit::Accept;
        },
        search_depth(comps));
    if (!hit)
        return {};
    Word w = representative(p, translate(p, hit->first, hit->second[0]));
    return {false, principal(p, w)};
}

inline FoundationResult is_foundation_generalized(const Presentation &p, const GeneralizedIdeal &x,
                                                  const std::vector<GeneralizedIdeal> &family)
{
    for (const auto &f : family)
        if (!subset(p, f, x))
            throw std::invalid_argument("family member " + format_generalized(f) + " is not inside " +
                                        format_generalized(x));
    std::vector<Ideal> comps{x.base};
    comps.insert(comps.end(), x.minus.begin(), x.minus.end());
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (const auto &f : family) {
        spans.emplace_back(comps.size(), f.minus.size());
        comps.push_back(f.base);
        comps.insert(comps.end(), f.minus.begin(), f.minus.end());
    }
    const std::size_t nx = 1 + x.minus.size();
    auto hit = state_search(
        p, comps,
        [&](const std::vector<Ideal> &st, const Word &) {
            if (st[0].empty)
                return Visit::Prune;
            if (!holds_identity(st[0]))
                return Visit::Continue;
            for (std::size_t i = 1; i < nx; ++i)
                if (!st[i].empty)
                    return Visit::Continue;
            for (auto [at, cnt] : spans) {
                std::vector<Ideal> cut(st.begin() + static_cast<std::ptrdiff_t>(at + 1),
                                       st.begin() + static_cast<std::ptrdiff_t>(at + 1 + cnt));
                if (!covered(p, st[at], cut))
                    return Visit::Continue;
            }
            return Visit::Accept;
        },
        search_depth(comps));
    if (!hit)
        return {};
    return {false, principal(p, hit->first)};
}

// An element of x outside every difference X' \ U F' (each F' a foundation set for X').
inline Word noncover_check(const Presentation &p, const Ideal &x,
                           const std::vector<std::pair<Ideal, std::vector<Ideal>>> &diffs)
{
    if (x.empty)
        throw std::invalid_argument("noncover_check needs a nonempty ideal");
    std::size_t best = 0;
    Ideal best_set = x;
    std::vector<int> choice(diffs.size(), -1);
    std::function<void(std::size_t, std::size_t, const Ideal &)> go = [&](std::size_t j, std::size_t used,
                                                                            const Ideal &cur) {
        if (cur.empty)
            return;
        if (j == diffs.size()) {
            if (used > best || (used == best && best_set == x && used == 0)) {
                best = used;
                best_set = cur;
            }
            return;
        }
        go(j + 1, used, cur);
        for (const auto &f : diffs[j].second)
            go(j + 1, used + 1, intersect(p, cur, f));
    };
    go(0, 0, x);
    return representative(p, best_set);
}

} // namespace lcm

#endif
