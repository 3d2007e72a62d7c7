#ifndef LCM_CATALOG_HPP
#define LCM_CATALOG_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hull.hpp"

namespace lcm {

namespace detail {
inline Presentation certified(Presentation p)
{
    auto rep = confluence_certificate(p, -3, 3);
    if (!rep.pass)
        throw std::logic_error("presentation " + p.name + " failed its confluence certificate: " + rep.failures.front());
    return p;
}
} // namespace detail

inline Presentation monoid_R()
{
    Presentation p;
    p.name = "R";
    p.plain = {true, true, true, true, true};
    p.rules = {{Kind::A, Kind::X, 0, false}, {Kind::A, Kind::Y, 1, false}, {Kind::C, Kind::X, 1, false},
               {Kind::C, Kind::Y, 0, false}, {Kind::D, Kind::X, 0, true},  {Kind::F, Kind::Y, 0, true}};
    p.shapes = {shape::R, shape::P, shape::Z, shape::X, shape::Y};
    p.classified = true;
    p.lemma_multiple_x = true;
    return detail::certified(p);
}

// Shape lists as given; closure() recomputes them.
inline Presentation monoid_S4()
{
    Presentation p;
    p.name = "S4";
    p.plain = {true, true, true, true, false};
    p.rules = {{Kind::A, Kind::X, 0, false}, {Kind::A, Kind::Y, 1, false}, {Kind::C, Kind::Y, 0, false},
               {Kind::D, Kind::X, 0, true}};
    p.shapes = {shape::R, shape::V, shape::X, shape::Z};
    return detail::certified(p);
}

inline Presentation monoid_S5()
{
    Presentation p;
    p.name = "S5";
    p.plain = {true, true, true, false, false};
    p.rules = {{Kind::A, Kind::X, 0, false}, {Kind::A, Kind::Y, 1, false}, {Kind::C, Kind::Y, 0, false}};
    p.shapes = {shape::R, shape::V, shape::Z};
    p.x_ideal_absent = true;
    return detail::certified(p);
}

// Free monoid on the first k of a b c d f.
inline Presentation free_monoid(int k)
{
    if (k < 1 || k > 5)
        throw std::invalid_argument("free monoids are offered on 1 to 5 generators");
    Presentation p;
    p.name = "free:" + std::to_string(k);
    for (int i = 0; i < k; ++i)
        p.plain[i] = true;
    p.indexed = false;
    p.shapes = {shape::R};
    return detail::certified(p);
}

// ---- closure of {S} under translation, pullback and intersection -----------

struct ClosureReport {
    std::size_t ideals = 0;
    std::set<Mask> shapes;
    std::vector<Ideal> sample; // one ideal per shape met
};

inline std::vector<Letter> window_letters(const Presentation &p, long lo, long hi)
{
    std::vector<Letter> out;
    for (Kind k : p.plain_letters())
        out.push_back(Letter(k));
    if (p.indexed)
        for (Kind t : {Kind::X, Kind::Y})
            for (long n = lo; n <= hi; ++n)
                out.push_back(Letter(t, n));
    return out;
}

// Each round applies every unary move to the previous round's new ideals and
// intersects them with everything seen; `cap` bounds the new ideals per round.
inline ClosureReport closure(const Presentation &p, const std::vector<Letter> &pull, const std::vector<Letter> &push,
                             int depth, std::size_t cap = 400)
{
    std::map<std::string, Ideal> seen;
    std::vector<Ideal> all, fresh{full_ideal()};
    ClosureReport rep;
    auto add = [&](const Ideal &a, std::vector<Ideal> &out) {
        if (a.empty) {
            rep.shapes.insert(0);
            return;
        }
        auto [it, ok] = seen.emplace(format_ideal(a), a);
        if (!ok)
            return;
        if (rep.shapes.insert(a.mask).second)
            rep.sample.push_back(a);
        out.push_back(a);
    };
    add(full_ideal(), all);
    for (int d = 0; d < depth; ++d) {
        std::vector<Ideal> next;
        for (const auto &a : fresh) {
            for (const auto &z : pull)
                add(pullback(p, z, a), next);
            for (const auto &z : push)
                add(translate(p, Word{z}, a), next);
            for (const auto &b : all)
                add(intersect(p, a, b), next);
        }
        if (next.size() > cap)
            next.resize(cap);
        all.insert(all.end(), next.begin(), next.end());
        fresh = std::move(next);
    }
    rep.ideals = all.size();
    return rep;
}

// ---- direct products ------------------------------------------------------

struct Product {
    Presentation left, right;
};

struct ProductIdeal {
    Ideal a, b;
    bool empty() const { return a.empty || b.empty; }
};

struct ProductHull {
    HullElement f, g;
};

inline bool contains(const Product &m, const ProductIdeal &i, const std::pair<Word, Word> &w)
{
    return contains(m.left, i.a, w.first) && contains(m.right, i.b, w.second);
}

inline ProductIdeal intersect(const Product &m, const ProductIdeal &i, const ProductIdeal &j)
{
    ProductIdeal r{intersect(m.left, i.a, j.a), intersect(m.right, i.b, j.b)};
    if (r.empty())
        return {};
    return r;
}

inline ProductIdeal pullback_hull(const Product &m, const ProductHull &h, const ProductIdeal &i)
{
    ProductIdeal r{pullback_hull(m.left, h.f, i.a), pullback_hull(m.right, h.g, i.b)};
    if (r.empty())
        return {};
    return r;
}

inline bool subset(const Product &m, const ProductIdeal &i, const ProductIdeal &j)
{
    if (i.empty())
        return true;
    return subset(m.left, i.a, j.a) && subset(m.right, i.b, j.b);
}

namespace detail {
// Principal ideals yS inside x with y^{-1} F_i empty for every i in the subset.
inline std::optional<Word> missing_all(const Presentation &p, const Ideal &x, const std::vector<Ideal> &fs)
{
    std::vector<Ideal> comps{x};
    comps.insert(comps.end(), fs.begin(), fs.end());
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
        return std::nullopt;
    return representative(p, translate(p, hit->first, hit->second[0]));
}
} // namespace detail

struct ProductFoundation {
    bool foundation = true;
    std::optional<std::pair<Word, Word>> witness;
};

// A witness y1 x y2 must kill each member in one coordinate; the achievable
// kill sets of each side are computed separately.
inline ProductFoundation is_foundation(const Product &m, const ProductIdeal &x, const std::vector<ProductIdeal> &fam)
{
    for (const auto &f : fam)
        if (!subset(m, f, x))
            throw std::invalid_argument("family member is not inside the target");
    if (x.empty())
        return {};
    const std::size_t n = fam.size();
    if (n > 20)
        throw std::invalid_argument("product foundation check limited to 20 members");
    std::map<unsigned long, Word> left, right;
    for (unsigned long s = 0; s < (1ul << n); ++s) {
        std::vector<Ideal> fa, fb;
        for (std::size_t i = 0; i < n; ++i)
            if (s >> i & 1) {
                fa.push_back(fam[i].a);
                fb.push_back(fam[i].b);
            }
        if (auto w = detail::missing_all(m.left, x.a, fa))
            left.emplace(s, *w);
        if (auto w = detail::missing_all(m.right, x.b, fb))
            right.emplace(s, *w);
    }
    const unsigned long all = (1ul << n) - 1;
    for (const auto &[s, w1] : left)
        if (auto it = right.find(all & ~s); it != right.end())
            return {false, std::make_pair(w1, it->second)};
    return {};
}

// ---- free products --------------------------------------------------------

struct Block {
    int side; // 0 or 1
    Word w;
    bool operator==(const Block &) const = default;
};

using FPWord = std::vector<Block>;

struct FreeProduct {
    Presentation left, right;
    const Presentation &side(int s) const { return s == 0 ? left : right; }
};

inline FPWord fp_normal(const FreeProduct &m, const FPWord &u)
{
    FPWord out;
    for (const auto &b : u) {
        if (b.w.empty())
            continue;
        if (!out.empty() && out.back().side == b.side)
            out.back().w = concat(out.back().w, b.w);
        else
            out.push_back(b);
    }
    for (auto &b : out)
        b.w = normal_form(m.side(b.side), b.w);
    return out;
}

inline FPWord fp_concat(const FreeProduct &m, const FPWord &u, const FPWord &v)
{
    FPWord r = u;
    r.insert(r.end(), v.begin(), v.end());
    return fp_normal(m, r);
}

// Tokens of the right factor carry a trailing prime: "a b' a".
inline FPWord parse_fp_word(const FreeProduct &m, const std::string &s)
{
    FPWord u;
    auto toks = split_ws(s);
    if (toks.size() == 1 && toks[0] == "e")
        return u;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        std::string t = toks[i];
        int side = 0;
        if (!t.empty() && t.back() == '\'') {
            side = 1;
            t.pop_back();
        }
        Letter l = parse_letter(t, i);
        m.side(side).validate(Word{l});
        u.push_back({side, {l}});
    }
    return fp_normal(m, u);
}

inline std::string format_fp_word(const FPWord &u)
{
    if (u.empty())
        return "e";
    std::string s;
    for (const auto &b : u)
        for (const auto &l : b.w) {
            if (!s.empty())
                s += ' ';
            s += format_letter(l) + (b.side ? "'" : "");
        }
    return s;
}

inline std::optional<FPWord> fp_left_divide(const FreeProduct &m, const FPWord &x, const FPWord &u0)
{
    FPWord xs = fp_normal(m, x), u = fp_normal(m, u0);
    if (xs.empty())
        return u;
    if (xs.size() > u.size())
        return std::nullopt;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (!(xs[i] == u[i]))
            return std::nullopt;
    const Block &last = xs.back();
    const Block &cand = u[xs.size() - 1];
    if (cand.side != last.side)
        return std::nullopt;
    auto q = left_divide(m.side(last.side), last.w, cand.w);
    if (!q)
        return std::nullopt;
    FPWord r{{last.side, *q}};
    r.insert(r.end(), u.begin() + static_cast<std::ptrdiff_t>(xs.size()), u.end());
    return fp_normal(m, r);
}

// prefix . A(S*T), A an ideal of the factor `side`.
struct FPIdeal {
    bool empty = true;
    FPWord prefix;
    int side = 0;
    Ideal a;
};

inline FPIdeal fp_make(const FreeProduct &m, FPWord prefix, int side, Ideal a)
{
    if (a.empty)
        return {};
    prefix = fp_normal(m, prefix);
    if (!prefix.empty() && prefix.back().side == side) {
        a = translate(m.side(side), prefix.back().w, a);
        prefix.pop_back();
    }
    if (is_everything(a) && !prefix.empty()) {
        side = prefix.back().side;
        a = principal(m.side(side), prefix.back().w);
        prefix.pop_back();
    } else if (is_everything(a)) {
        side = 0;
    }
    return {false, prefix, side, a};
}

inline bool contains(const FreeProduct &m, const FPIdeal &i, const FPWord &u)
{
    if (i.empty)
        return false;
    auto q = fp_left_divide(m, i.prefix, u);
    if (!q)
        return false;
    if (q->empty() || q->front().side != i.side)
        return contains(m.side(i.side), i.a, Word{});
    return contains(m.side(i.side), i.a, q->front().w);
}

inline FPIdeal fp_pullback(const FreeProduct &m, int side, const Letter &l, const FPIdeal &i)
{
    if (i.empty)
        return i;
    const Presentation &ps = m.side(side);
    if (i.prefix.empty()) {
        if (i.side == side)
            return fp_make(m, {}, side, pullback(ps, l, i.a));
        return is_everything(i.a) ? i : FPIdeal{};
    }
    const Block &first = i.prefix.front();
    if (first.side != side)
        return {};
    auto q = left_divide_letter(ps, l, normal_form(ps, first.w));
    if (!q)
        return {};
    FPWord rest{{side, *q}};
    rest.insert(rest.end(), i.prefix.begin() + 1, i.prefix.end());
    return fp_make(m, rest, i.side, i.a);
}

struct FPHull {
    struct FPMove {
        bool divide;
        FPWord s;
    };
    std::vector<FPMove> moves;
};

inline std::optional<FPWord> apply(const FreeProduct &m, const FPHull &h, const FPWord &u)
{
    FPWord cur = fp_normal(m, u);
    for (const auto &mv : h.moves) {
        if (mv.divide) {
            auto q = fp_left_divide(m, mv.s, cur);
            if (!q)
                return std::nullopt;
            cur = *q;
        } else {
            cur = fp_concat(m, mv.s, cur);
        }
    }
    return cur;
}

inline FPIdeal fp_translate(const FreeProduct &m, const FPWord &w, const FPIdeal &i)
{
    if (i.empty)
        return i;
    return fp_make(m, fp_concat(m, w, i.prefix), i.side, i.a);
}

inline FPIdeal fp_pullback_word(const FreeProduct &m, const FPWord &w, FPIdeal i)
{
    for (const auto &b : fp_normal(m, w))
        for (const auto &l : b.w)
            i = fp_pullback(m, b.side, l, i);
    return i;
}

inline FPIdeal domain(const FreeProduct &m, const FPHull &h)
{
    FPIdeal d = fp_make(m, {}, 0, full_ideal());
    for (auto it = h.moves.rbegin(); it != h.moves.rend(); ++it)
        d = it->divide ? fp_translate(m, it->s, d) : fp_pullback_word(m, it->s, d);
    return d;
}

// Restriction rule: a composite whose moves all live in one factor acts as
// the corresponding element of that factor's hull.
inline std::optional<std::pair<int, HullElement>> factor_restriction(const FPHull &h)
{
    int side = -1;
    HullElement r;
    for (const auto &mv : h.moves) {
        for (const auto &b : mv.s) {
            if (side >= 0 && b.side != side)
                return std::nullopt;
            side = b.side;
        }
        Word w;
        for (const auto &b : mv.s)
            w = concat(w, b.w);
        r.moves.push_back(Move{mv.divide, w});
    }
    return std::make_pair(side < 0 ? 0 : side, r);
}

// ---- monoid specs ---------------------------------------------------------

inline Presentation catalog_monoid(const std::string &name)
{
    if (name == "R")
        return monoid_R();
    if (name == "S4")
        return monoid_S4();
    if (name == "S5")
        return monoid_S5();
    if (name.rfind("free:", 0) == 0)
        return free_monoid(std::stoi(name.substr(5)));
    if (name == "S1" || name == "S7" || name == "S8" || name == "S9")
        throw std::invalid_argument(name + " is unavailable: its presentation is not part of this catalog");
    throw std::invalid_argument("unknown monoid '" + name + "'");
}

struct MonoidSpec {
    enum class Kind { Single, Product, FreeProduct } kind = Kind::Single;
    std::string left, right;
};

// "R", "free:2", "prod:R:S5", "freeprod:free:1:free:1"
inline MonoidSpec parse_monoid_spec(const std::string &s)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(':', start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }
    auto take = [&](std::size_t &i) {
        if (i >= parts.size())
            throw std::invalid_argument("incomplete monoid spec '" + s + "'");
        std::string r = parts[i++];
        if (r == "free") {
            if (i >= parts.size())
                throw std::invalid_argument("free needs a generator count");
            r += ":" + parts[i++];
        }
        return r;
    };
    std::size_t i = 0;
    MonoidSpec spec;
    if (parts[0] == "prod" || parts[0] == "freeprod") {
        spec.kind = parts[0] == "prod" ? MonoidSpec::Kind::Product : MonoidSpec::Kind::FreeProduct;
        i = 1;
        spec.left = take(i);
        spec.right = take(i);
    } else if (parts[0] == "S3" || parts[0] == "S6") {
        spec.kind = MonoidSpec::Kind::Product;
        spec.left = "R";
        spec.right = parts[0] == "S3" ? "S4" : "S5";
        i = 1;
    } else {
        spec.left = take(i);
    }
    if (i != parts.size())
        throw std::invalid_argument("trailing text in monoid spec '" + s + "'");
    return spec;
}

} // namespace lcm

#endif
