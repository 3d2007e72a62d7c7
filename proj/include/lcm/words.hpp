#ifndef LCM_WORDS_HPP
#define LCM_WORDS_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lcm {

using Index = boost::multiprecision::cpp_int;

enum class Kind : std::uint8_t { A, B, C, D, F, X, Y };

inline constexpr bool is_indexed(Kind k) { return k == Kind::X || k == Kind::Y; }

inline char kind_char(Kind k)
{
    constexpr char names[] = {'a', 'b', 'c', 'd', 'f', 'x', 'y'};
    return names[static_cast<int>(k)];
}

struct parse_error : std::runtime_error {
    std::size_t token;
    parse_error(std::size_t tok, const std::string &msg)
        : std::runtime_error("parse error at token " + std::to_string(tok) + ": " + msg), token(tok)
    {
    }
};

template <class Int>
struct basic_letter {
    Kind kind = Kind::A;
    Int n{}; // only meaningful for x and y

    basic_letter() = default;
    explicit basic_letter(Kind k) : kind(k) {}
    basic_letter(Kind k, Int idx) : kind(k), n(is_indexed(k) ? std::move(idx) : Int{}) {}

    bool indexed() const { return is_indexed(kind); }

    friend bool operator==(const basic_letter &l, const basic_letter &r)
    {
        return l.kind == r.kind && (!l.indexed() || l.n == r.n);
    }
    friend bool operator!=(const basic_letter &l, const basic_letter &r) { return !(l == r); }
    friend bool operator<(const basic_letter &l, const basic_letter &r)
    {
        if (l.kind != r.kind)
            return l.kind < r.kind;
        return l.indexed() && l.n < r.n;
    }
};

template <class Int>
using basic_word = std::vector<basic_letter<Int>>;

using Letter = basic_letter<Index>;
using Word = basic_word<Index>;

inline Letter L(Kind k) { return Letter(k); }
inline Letter xl(Index n) { return Letter(Kind::X, std::move(n)); }
inline Letter yl(Index n) { return Letter(Kind::Y, std::move(n)); }

template <class Int>
basic_word<Int> concat(const basic_word<Int> &u, const basic_word<Int> &v)
{
    basic_word<Int> r;
    r.reserve(u.size() + v.size());
    r.insert(r.end(), u.begin(), u.end());
    r.insert(r.end(), v.begin(), v.end());
    return r;
}

template <class Int>
basic_word<Int> subword(const basic_word<Int> &w, std::size_t from, std::size_t to = std::size_t(-1))
{
    to = std::min(to, w.size());
    if (from >= to)
        return {};
    return basic_word<Int>(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

template <class Int>
std::string format_letter(const basic_letter<Int> &l)
{
    std::string s(1, kind_char(l.kind));
    if (l.indexed()) {
        std::ostringstream os;
        os << l.n;
        s += "_" + os.str();
    }
    return s;
}

template <class Int>
std::string format_word(const basic_word<Int> &w)
{
    if (w.empty())
        return "e";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += ' ';
        s += format_letter(w[i]);
    }
    return s;
}

inline std::vector<std::string> split_ws(const std::string &s)
{
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t)
        out.push_back(t);
    return out;
}

// Accepts "a", "x3", "x_3", "x-3", "x_-3".
inline Letter parse_letter(const std::string &tok, std::size_t pos = 0)
{
    if (tok.empty())
        throw parse_error(pos, "empty token");
    Kind k;
    switch (tok[0]) {
    case 'a': k = Kind::A; break;
    case 'b': k = Kind::B; break;
    case 'c': k = Kind::C; break;
    case 'd': k = Kind::D; break;
    case 'f': k = Kind::F; break;
    case 'x': k = Kind::X; break;
    case 'y': k = Kind::Y; break;
    default: throw parse_error(pos, "unknown letter '" + tok + "'");
    }
    if (!is_indexed(k)) {
        if (tok.size() != 1)
            throw parse_error(pos, "unexpected text in '" + tok + "'");
        return Letter(k);
    }
    std::string num = tok.substr(1);
    if (!num.empty() && num[0] == '_')
        num = num.substr(1);
    bool ok = !num.empty();
    for (std::size_t i = 0; i < num.size(); ++i)
        if (!(std::isdigit(static_cast<unsigned char>(num[i])) || (i == 0 && num[i] == '-' && num.size() > 1)))
            ok = false;
    if (!ok)
        throw parse_error(pos, "bad index in '" + tok + "'");
    return Letter(k, Index(num));
}

inline Word parse_word_tokens(const std::vector<std::string> &toks, std::size_t offset = 0)
{
    Word w;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (toks[i] == "e" || toks[i] == "ε") {
            if (toks.size() != 1)
                throw parse_error(offset + i, "'e' must stand alone");
            return {};
        }
        w.push_back(parse_letter(toks[i], offset + i));
    }
    return w;
}

inline Word parse_word(const std::string &s) { return parse_word_tokens(split_ws(s)); }

template <class To, class From>
basic_word<To> convert_word(const basic_word<From> &w)
{
    basic_word<To> r;
    r.reserve(w.size());
    for (const auto &l : w)
        r.emplace_back(l.kind, static_cast<To>(l.n));
    return r;
}

struct CountVector {
    std::size_t m_b = 0, m_x = 0, m_y = 0;
    std::size_t raw_a = 0, raw_c = 0, raw_d = 0, raw_f = 0;
    bool operator==(const CountVector &) const = default;
};

template <class Int>
CountVector raw_counts(const basic_word<Int> &w)
{
    CountVector c;
    for (const auto &l : w) {
        switch (l.kind) {
        case Kind::A: ++c.raw_a; break;
        case Kind::B: ++c.m_b; break;
        case Kind::C: ++c.raw_c; break;
        case Kind::D: ++c.raw_d; break;
        case Kind::F: ++c.raw_f; break;
        case Kind::X: ++c.m_x; break;
        case Kind::Y: ++c.m_y; break;
        }
    }
    return c;
}

// Reducedness for R. A finite word may end in d b x_n or f b y_n.
template <class Int>
bool is_reduced(const basic_word<Int> &w)
{
    for (std::size_t i = 0; i + 2 < w.size(); ++i) {
        if (w[i + 1].kind != Kind::B || !w[i + 2].indexed())
            continue;
        Kind e = w[i].kind, t = w[i + 2].kind;
        if (e == Kind::A || e == Kind::C)
            return false;
        bool tail = i + 3 < w.size();
        if (tail && ((e == Kind::D && t == Kind::X) || (e == Kind::F && t == Kind::Y)))
            return false;
    }
    return true;
}

namespace detail {
// Length of the tau-word starting at i inside w, for every length that matches.
template <class Int>
std::vector<std::size_t> tau_lengths_at(const basic_word<Int> &w, std::size_t i)
{
    std::vector<std::size_t> out;
    auto at = [&](std::size_t j) -> const basic_letter<Int> * { return j < w.size() ? &w[j] : nullptr; };
    const auto *l0 = at(i), *l1 = at(i + 1), *l2 = at(i + 2), *l3 = at(i + 3);
    if (!l0)
        return out;
    if (l0->kind == Kind::B && l1 && l1->indexed()) {
        out.push_back(2);
        if (l2)
            out.push_back(3);
    }
    if (l1 && l2 && l1->kind == Kind::B && l2->indexed()) {
        Kind e = l0->kind, t = l2->kind;
        if (e == Kind::A || e == Kind::C)
            out.push_back(3);
        if (l3 && ((e == Kind::D && t == Kind::X) || (e == Kind::F && t == Kind::Y)))
            out.push_back(4);
    }
    return out;
}
} // namespace detail

template <class Int>
bool perp0(const basic_word<Int> &s, const basic_word<Int> &t)
{
    auto st = concat(s, t);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (auto len : detail::tau_lengths_at(st, i))
            if (i + len > s.size())
                return false;
    return true;
}

struct InfiniteWord {
    Word prefix;
    Word period;

    Letter at(std::size_t i) const
    {
        if (i < prefix.size())
            return prefix[i];
        return period[(i - prefix.size()) % period.size()];
    }
    Word truncate(std::size_t n) const
    {
        Word w;
        w.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            w.push_back(at(i));
        return w;
    }
    // shortest prefix and primitive period
    InfiniteWord canonical() const
    {
        if (period.empty())
            throw std::invalid_argument("infinite word needs a nonempty period");
        InfiniteWord r{prefix, period};
        const std::size_t p = r.period.size();
        for (std::size_t d = 1; d <= p; ++d) {
            if (p % d)
                continue;
            bool ok = true;
            for (std::size_t i = d; i < p && ok; ++i)
                ok = r.period[i] == r.period[i - d];
            if (ok) {
                r.period.resize(d);
                break;
            }
        }
        while (!r.prefix.empty() && r.prefix.back() == r.period.back()) {
            r.prefix.pop_back();
            std::rotate(r.period.rbegin(), r.period.rbegin() + 1, r.period.rend());
        }
        return r;
    }
    friend bool operator==(const InfiniteWord &u, const InfiniteWord &v)
    {
        auto a = u.canonical(), b = v.canonical();
        return a.prefix == b.prefix && a.period == b.period;
    }
};

inline std::string format_infinite(const InfiniteWord &w)
{
    return "inf " + (w.prefix.empty() ? std::string("e") : format_word(w.prefix)) + " | " + format_word(w.period);
}

// "<prefix> | <period>", an optional leading "inf" is skipped.
inline InfiniteWord parse_infinite(const std::string &s)
{
    auto toks = split_ws(s);
    std::size_t start = (!toks.empty() && toks[0] == "inf") ? 1 : 0;
    auto bar = std::find(toks.begin() + static_cast<std::ptrdiff_t>(start), toks.end(), "|");
    if (bar == toks.end())
        throw parse_error(toks.size(), "expected '|' between prefix and period");
    std::vector<std::string> pre(toks.begin() + static_cast<std::ptrdiff_t>(start), bar), per(bar + 1, toks.end());
    std::size_t off = static_cast<std::size_t>(bar - toks.begin()) + 1;
    InfiniteWord w{parse_word_tokens(pre, start), parse_word_tokens(per, off)};
    if (w.period.empty())
        throw parse_error(off, "period must be nonempty");
    return w;
}

inline bool is_reduced(const InfiniteWord &w)
{
    Word probe = concat(w.prefix, concat(w.period, concat(w.period, w.period)));
    // every position of an infinite word has a successor
    probe.push_back(w.at(probe.size()));
    probe.push_back(w.at(probe.size()));
    return is_reduced(probe) &&
           [&] {
               for (std::size_t i = 0; i + 2 < probe.size(); ++i)
                   if (probe[i + 1].kind == Kind::B && probe[i + 2].indexed() &&
                       ((probe[i].kind == Kind::D && probe[i + 2].kind == Kind::X) ||
                        (probe[i].kind == Kind::F && probe[i + 2].kind == Kind::Y)))
                       return false;
               return true;
           }();
}

enum class WordType { Type1, Type2 };

inline WordType word_type(const InfiniteWord &w)
{
    if (!is_reduced(w))
        throw std::invalid_argument("word_type needs a reduced infinite word");
    bool d = false, f = false;
    for (const auto &l : w.period) {
        if (l.kind == Kind::B || l.indexed())
            return WordType::Type1;
        d |= l.kind == Kind::D;
        f |= l.kind == Kind::F;
    }
    return (d && f) ? WordType::Type1 : WordType::Type2;
}

} // namespace lcm

#endif
