#ifndef LCM_REWRITE_HPP
#define LCM_REWRITE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "words.hpp"

namespace lcm {

// eater b t_n [z] -> b t_{n+shift} [z]
struct RuleSchema {
    Kind eater;
    Kind target; // X or Y
    int shift;
    bool needs_tail;
};

struct Presentation {
    std::string name;
    std::vector<RuleSchema> rules;
    std::array<bool, 5> plain{}; // allowed a b c d f
    bool indexed = true;         // x_n, y_n allowed
    std::vector<std::uint8_t> shapes;
    bool classified = false;      // exact boundary results available
    bool x_ideal_absent = false;  // no ideal of the form U x_n S
    bool lemma_multiple_x = false; // multiple x_n lemma holds

    const RuleSchema *rule(Kind eater, Kind target) const
    {
        for (const auto &r : rules)
            if (r.eater == eater && r.target == target)
                return &r;
        return nullptr;
    }
    bool eats(Kind k) const
    {
        for (const auto &r : rules)
            if (r.eater == k)
                return true;
        return false;
    }
    bool allows(Kind k) const { return is_indexed(k) ? indexed : plain[static_cast<int>(k)]; }
    std::vector<Kind> plain_letters() const
    {
        std::vector<Kind> out;
        for (int i = 0; i < 5; ++i)
            if (plain[i])
                out.push_back(static_cast<Kind>(i));
        return out;
    }

    template <class Int>
    void validate(const basic_word<Int> &w) const
    {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (!allows(w[i].kind))
                throw parse_error(i, "letter '" + format_letter(w[i]) + "' is not in the alphabet of " + name);
    }
};

template <class Int>
struct RewriteStep {
    std::size_t position;
    basic_word<Int> result;
};

namespace detail {
template <class Int>
const RuleSchema *redex_at(const Presentation &p, const basic_word<Int> &w, std::size_t i)
{
    if (i + 2 >= w.size() || w[i + 1].kind != Kind::B || !w[i + 2].indexed())
        return nullptr;
    const RuleSchema *r = p.rule(w[i].kind, w[i + 2].kind);
    if (!r || (r->needs_tail && i + 3 >= w.size()))
        return nullptr;
    return r;
}

template <class Int>
void contract(basic_word<Int> &w, std::size_t i, const RuleSchema &r)
{
    w[i + 2].n += r.shift;
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
}
} // namespace detail

template <class Int>
basic_word<Int> normal_form(const Presentation &p, basic_word<Int> w, std::vector<RewriteStep<Int>> *steps = nullptr)
{
    std::size_t i = 0;
    while (i + 2 < w.size()) {
        if (const RuleSchema *r = detail::redex_at(p, w, i)) {
            detail::contract(w, i, *r);
            if (steps)
                steps->push_back({i, w});
            i = i ? i - 1 : 0;
        } else {
            ++i;
        }
    }
    return w;
}

template <class Int>
bool is_irreducible(const Presentation &p, const basic_word<Int> &w)
{
    for (std::size_t i = 0; i + 2 < w.size(); ++i)
        if (detail::redex_at(p, w, i))
            return false;
    return true;
}

template <class Int>
bool equivalent(const Presentation &p, const basic_word<Int> &u, const basic_word<Int> &v)
{
    return normal_form(p, u) == normal_form(p, v);
}

// Every single-step rewrite of w, at any position.
template <class Int>
std::vector<basic_word<Int>> one_step_rewrites(const Presentation &p, const basic_word<Int> &w)
{
    std::vector<basic_word<Int>> out;
    for (std::size_t i = 0; i + 2 < w.size(); ++i)
        if (const RuleSchema *r = detail::redex_at(p, w, i)) {
            auto v = w;
            detail::contract(v, i, *r);
            out.push_back(std::move(v));
        }
    return out;
}

template <class Int>
std::optional<basic_word<Int>> left_divide_letter(const Presentation &p, const basic_letter<Int> &x,
                                                   const basic_word<Int> &normal)
{
    if (!normal.empty() && normal[0] == x)
        return subword(normal, 1);
    if (x.indexed() || normal.size() < 2 || normal[0].kind != Kind::B || !normal[1].indexed())
        return std::nullopt;
    const RuleSchema *r = p.rule(x.kind, normal[1].kind);
    if (!r || (r->needs_tail && normal.size() < 3))
        return std::nullopt;
    auto v = normal;
    v[1].n -= r->shift;
    return v;
}

template <class Int>
std::optional<basic_word<Int>> left_divide(const Presentation &p, const basic_word<Int> &x, const basic_word<Int> &w)
{
    std::optional<basic_word<Int>> cur = normal_form(p, w);
    for (const auto &l : x) {
        cur = left_divide_letter(p, l, *cur);
        if (!cur)
            return std::nullopt;
    }
    return cur;
}

template <class Int>
std::size_t min_count(const Presentation &p, const basic_word<Int> &w, Kind letter)
{
    std::size_t n = 0;
    for (const auto &l : normal_form(p, w))
        n += l.kind == letter;
    return n;
}

struct CertificateReport {
    bool pass = true;
    std::vector<std::string> overlaps;
    std::vector<std::string> failures;
    std::string argument;
};

// Two left-hand sides can only overlap when the trailing letter of a
// tail rule is the eater of a second redex.
inline CertificateReport confluence_certificate(const Presentation &p, long lo, long hi)
{
    if (lo > hi)
        throw std::invalid_argument("empty index window");
    CertificateReport rep;
    rep.argument = "rules commute with the shift x_n -> x_{n+k}, y_n -> y_{n+k}; every overlap is an instance of one "
                   "checked in the window";
    for (const auto &r1 : p.rules) {
        if (!r1.needs_tail)
            continue;
        for (const auto &r2 : p.rules) {
            std::vector<Word> tails{{}};
            if (r2.needs_tail) {
                tails.clear();
                for (Kind k : p.plain_letters())
                    tails.push_back({Letter(k)});
                if (p.indexed) {
                    tails.push_back({Letter(Kind::X, lo)});
                    tails.push_back({Letter(Kind::Y, lo)});
                }
            }
            for (long n = lo; n <= hi; ++n)
                for (long m = lo; m <= hi; ++m)
                    for (const auto &z : tails) {
                        Word w{Letter(r1.eater), Letter(Kind::B), Letter(r1.target, n), Letter(r2.eater),
                               Letter(Kind::B), Letter(r2.target, m)};
                        w.insert(w.end(), z.begin(), z.end());
                        Word left = w, right = w;
                        detail::contract(left, 0, r1);
                        detail::contract(right, 3, r2);
                        auto nl = normal_form(p, left), nr = normal_form(p, right);
                        rep.overlaps.push_back(format_word(w));
                        if (nl != nr) {
                            rep.pass = false;
                            rep.failures.push_back(format_word(w) + ": " + format_word(nl) + " vs " + format_word(nr));
                        }
                    }
        }
    }
    return rep;
}

} // namespace lcm

#endif
