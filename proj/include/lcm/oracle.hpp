#ifndef LCM_ORACLE_HPP
#define LCM_ORACLE_HPP

// Brute-force references used by the test suite and the verify command.
// Nothing here calls normal_form or left_divide.

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "ideals.hpp"

namespace lcm::oracle {

// The defining relations, longer side first: e b t_n [z] = b t_{n+shift} [z].
struct Relation {
    Kind eater, target;
    int shift;
    bool tail;
};

inline std::vector<Relation> relations_of(const std::string &name)
{
    if (name == "R")
        return {{Kind::A, Kind::X, 0, false}, {Kind::A, Kind::Y, 1, false}, {Kind::C, Kind::X, 1, false},
                {Kind::C, Kind::Y, 0, false}, {Kind::D, Kind::X, 0, true},  {Kind::F, Kind::Y, 0, true}};
    if (name == "S4")
        return {{Kind::A, Kind::X, 0, false}, {Kind::A, Kind::Y, 1, false}, {Kind::C, Kind::Y, 0, false},
                {Kind::D, Kind::X, 0, true}};
    if (name == "S5")
        return {{Kind::A, Kind::X, 0, false}, {Kind::A, Kind::Y, 1, false}, {Kind::C, Kind::Y, 0, false}};
    if (name.rfind("free:", 0) == 0)
        return {};
    throw std::invalid_argument("no relation table for " + name);
}

using SmallWord = basic_word<long long>;

// Both directions of every relation instance, words kept within max_len.
inline std::vector<SmallWord> neighbours(const std::vector<Relation> &rel, const SmallWord &w, std::size_t max_len)
{
    std::vector<SmallWord> out;
    const std::size_t n = w.size();
    for (const auto &r : rel) {
        for (std::size_t i = 0; i + 2 < n; ++i) {
            if (w[i].kind != r.eater || w[i + 1].kind != Kind::B || w[i + 2].kind != r.target)
                continue;
            if (r.tail && i + 3 >= n)
                continue;
            SmallWord v = w;
            v[i + 2].n += r.shift;
            v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
            out.push_back(std::move(v));
        }
        if (n + 1 > max_len)
            continue;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (w[i].kind != Kind::B || w[i + 1].kind != r.target)
                continue;
            if (r.tail && i + 2 >= n)
                continue;
            SmallWord v = w;
            v[i + 1].n -= r.shift;
            v.insert(v.begin() + static_cast<std::ptrdiff_t>(i), basic_letter<long long>(r.eater));
            out.push_back(std::move(v));
        }
    }
    return out;
}

inline std::uint64_t pack(const SmallWord &w)
{
    constexpr long long off = 12;
    std::uint64_t code = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::uint64_t c;
        if (!w[i].indexed()) {
            c = static_cast<std::uint64_t>(w[i].kind);
        } else {
            if (w[i].n < -off || w[i].n > off)
                throw std::out_of_range("index outside the packing range");
            c = 5 + static_cast<std::uint64_t>(w[i].n + off) + (w[i].kind == Kind::Y ? 25 : 0);
        }
        code |= c << (3 + 6 * i);
    }
    return code;
}

// The class of w among words of length <= max_len.
inline std::vector<SmallWord> rewrite_class(const std::vector<Relation> &rel, const SmallWord &w, std::size_t max_len)
{
    std::vector<SmallWord> members{w};
    std::unordered_set<std::uint64_t> seen{pack(w)};
    for (std::size_t i = 0; i < members.size(); ++i)
        for (auto &v : neighbours(rel, members[i], max_len))
            if (seen.insert(pack(v)).second)
                members.push_back(std::move(v));
    return members;
}

inline SmallWord to_small(const Word &w)
{
    SmallWord out;
    for (const auto &l : w)
        out.push_back(l.indexed() ? basic_letter<long long>(l.kind, static_cast<long long>(l.n))
                                  : basic_letter<long long>(l.kind));
    return out;
}

inline Word from_small(const SmallWord &w)
{
    Word out;
    for (const auto &l : w)
        out.push_back(l.indexed() ? Letter(l.kind, l.n) : Letter(l.kind));
    return out;
}

// Category of a word for the shape tests; invariant on classes other than e.
inline Mask category_of(const SmallWord &u)
{
    if (u.empty())
        return cat::E;
    if (!u[0].indexed())
        return cat::O;
    bool x = u[0].kind == Kind::X;
    if (u.size() == 1)
        return x ? cat::X1 : cat::Y1;
    return x ? cat::X2 : cat::Y2;
}

// w in v.T, decided over the class of w (a witness v u with u reduced has
// length at most |v| + |w|).
inline bool member(const std::string &monoid, const Word &v, Mask mask, const Word &w)
{
    auto rel = relations_of(monoid);
    SmallWord sv = to_small(v);
    for (const auto &m : rewrite_class(rel, to_small(w), v.size() + w.size())) {
        if (m.size() < sv.size() || !std::equal(sv.begin(), sv.end(), m.begin()))
            continue;
        SmallWord u(m.begin() + static_cast<std::ptrdiff_t>(sv.size()), m.end());
        if (close_mask(mask) & category_of(u))
            return true;
    }
    return false;
}

inline bool member(const std::string &monoid, const Ideal &a, const Word &w)
{
    return !a.empty && member(monoid, a.prefix, a.mask, w);
}

struct SweepReport {
    std::size_t words = 0, classes = 0, mismatches = 0;
    std::optional<std::pair<Word, Word>> counterexample; // member, normal form disagreeing
};

// Every word of length <= max_len over the window alphabet: its class in the
// length bounded rewrite graph must consist of the words sharing its normal
// form, and that normal form must belong to the class.
template <class NormalFn>
SweepReport word_problem_sweep(const std::string &monoid, const std::vector<basic_letter<long long>> &alphabet,
                               std::size_t max_len, NormalFn nf)
{
    auto rel = relations_of(monoid);
    const std::size_t k = alphabet.size();
    std::vector<std::size_t> offset{0};
    std::size_t total = 1, pw = 1;
    for (std::size_t len = 1; len <= max_len; ++len) {
        offset.push_back(total);
        pw *= k;
        total += pw;
    }
    auto code_of = [&](const std::size_t len, std::size_t digits) { return offset[len] + digits; };
    // position in the dense table, or none for words outside the alphabet
    auto dense = [&](const SmallWord &w) -> std::optional<std::size_t> {
        std::size_t d = 0;
        for (const auto &l : w) {
            std::size_t j = 0;
            while (j < k && alphabet[j] != l)
                ++j;
            if (j == k)
                return std::nullopt;
            d = d * k + j;
        }
        return code_of(w.size(), d);
    };
    std::vector<std::uint8_t> done(total, 0);
    SweepReport rep;
    rep.words = total;
    SmallWord w;
    for (std::size_t len = 0; len <= max_len; ++len) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < len; ++i)
            count *= k;
        for (std::size_t d = 0; d < count; ++d) {
            if (done[code_of(len, d)])
                continue;
            w.assign(len, alphabet[0]);
            for (std::size_t i = len, r = d; i-- > 0; r /= k)
                w[i] = alphabet[r % k];
            auto cls = rewrite_class(rel, w, max_len);
            ++rep.classes;
            SmallWord target = nf(w);
            bool target_in = false;
            for (const auto &m : cls) {
                if (auto p = dense(m))
                    done[*p] = 1;
                target_in = target_in || m == target;
                if (nf(m) != target) {
                    ++rep.mismatches;
                    if (!rep.counterexample)
                        rep.counterexample = std::make_pair(from_small(m), from_small(target));
                }
            }
            if (!target_in) {
                ++rep.mismatches;
                if (!rep.counterexample)
                    rep.counterexample = std::make_pair(from_small(w), from_small(target));
            }
        }
    }
    return rep;
}

inline std::vector<basic_letter<long long>> window_alphabet(bool indexed, long lo, long hi,
                                                            std::vector<Kind> plain = {Kind::A, Kind::B, Kind::C,
                                                                                       Kind::D, Kind::F})
{
    std::vector<basic_letter<long long>> out;
    for (Kind k : plain)
        out.emplace_back(k);
    if (indexed)
        for (Kind t : {Kind::X, Kind::Y})
            for (long n = lo; n <= hi; ++n)
                out.emplace_back(t, n);
    return out;
}

// All nonempty canonical ideals over the given prefixes.
inline std::vector<Ideal> canonical_pool(const Presentation &p, const std::vector<Word> &prefixes)
{
    std::vector<Ideal> out;
    std::unordered_set<std::string> seen;
    for (const auto &w : prefixes)
        for (Mask m : p.shapes) {
            Ideal a = canonical(p, w, m);
            if (!a.empty && seen.insert(format_ideal(a)).second)
                out.push_back(a);
        }
    return out;
}

inline void all_words(const std::vector<Letter> &letters, std::size_t max_len, std::vector<Word> &out)
{
    std::vector<Word> layer{{}};
    out.push_back({});
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const auto &w : layer)
            for (const auto &l : letters) {
                Word v = w;
                v.push_back(l);
                next.push_back(v);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
}

// Y in the pool, nonempty, inside X and disjoint from every member of F.
inline std::optional<Ideal> foundation_witness(const Presentation &p, const Ideal &x, const std::vector<Ideal> &fam,
                                               const std::vector<Ideal> &pool)
{
    for (const auto &y : pool) {
        if (y.empty || !subset(p, y, x))
            continue;
        bool clear = true;
        for (const auto &f : fam)
            clear = clear && intersect(p, y, f).empty;
        if (clear)
            return y;
    }
    return std::nullopt;
}

} // namespace lcm::oracle

#endif
