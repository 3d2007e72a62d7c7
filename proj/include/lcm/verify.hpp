#ifndef LCM_VERIFY_HPP
#define LCM_VERIFY_HPP

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "groupoid.hpp"
#include "oracle.hpp"

namespace lcm::verify {

struct CheckResult {
    std::string name;
    std::string anchor;
    bool pass = false;
    std::string detail;
    std::optional<std::string> counterexample;
    double seconds = 0;
};

namespace detail {

template <class Fn>
CheckResult timed(std::string name, std::string anchor, Fn body)
{
    CheckResult r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception &e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline Word w(const std::string &s) { return s.empty() ? Word{} : parse_word(s); }

inline std::vector<Word> normal_words(const Presentation &p, const std::vector<Letter> &letters, std::size_t max_len)
{
    std::vector<Word> all, out;
    oracle::all_words(letters, max_len, all);
    std::set<std::string> seen;
    for (const auto &v : all) {
        Word n = normal_form(p, v);
        if (seen.insert(format_word(n)).second)
            out.push_back(n);
    }
    return out;
}

// Hull elements of at most `depth` moves, each a single letter.
inline std::vector<HullElement> hull_pool(const std::vector<Letter> &letters, std::size_t depth)
{
    std::vector<HullElement> out{HullElement::identity()}, layer{HullElement::identity()};
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<HullElement> next;
        for (const auto &h : layer)
            for (const auto &l : letters)
                for (bool div : {false, true}) {
                    HullElement g = h;
                    g.moves.push_back(Move{div, {l}});
                    next.push_back(g);
                }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

struct TableEntry {
    std::string statement;
    Ideal got, expected;
};

// The intersections and pullbacks of the classification of J(R),
// instantiated on sample words.
inline std::vector<TableEntry> appendix_table(const Presentation &p)
{
    std::vector<TableEntry> out;
    auto I = [&](const std::string &s) { return parse_ideal(p, s); };
    auto add_int = [&](const std::string &lhs, const std::string &rhs, const std::string &expect) {
        out.push_back({lhs + " & " + rhs + " = " + expect, intersect(p, I(lhs), I(rhs)), I(expect)});
    };
    auto add_pull = [&](const std::string &x, const std::string &a, const std::string &expect) {
        Letter l = parse_letter(x);
        out.push_back({x + "^-1 (" + a + ") = " + expect, pullback(p, l, I(a)), I(expect)});
    };
    auto count = [](const std::string &s, char c) {
        long n = 0;
        for (char ch : s)
            n += ch == c;
        return n;
    };
    auto idx = [](long n) { return std::to_string(n); };
    auto cat_ = [](const std::string &s, const std::string &t) { return s.empty() ? t : s + " " + t; };
    const std::vector<std::string> s0{"", "c", "a c", "c c"}, sd{"d", "c d", "d a"}, sf{"f", "a f", "f c"},
        sdf{"d f", "f d", "a d f"};
    const std::vector<long> ns{0, 2, -1};
    const std::vector<std::string> omegas{"a", "b x0", "y1"};
    auto starts = [](const std::string &s, const std::string &x) { return !s.empty() && s.substr(0, 1) == x; };

    // w = s b t_n omega, omega != e
    for (long n : ns)
        for (const auto &om : omegas) {
            for (const auto &group : {s0, sd})
                for (const auto &s : group) {
                    long m = count(s, 'c');
                    for (std::string x : {"a", "b", "d"}) {
                        if (starts(s, x))
                            continue;
                        std::string target = x == "b" ? "x" + idx(n + m) + " " + om : "b x" + idx(n + m) + " " + om;
                        add_pull(x, cat_(s, "b x" + idx(n) + " " + om + " R"), target + " R");
                    }
                }
            for (const auto &group : {s0, sf})
                for (const auto &s : group) {
                    long m = count(s, 'a');
                    if (!starts(s, "a"))
                        add_pull("a", cat_(s, "b y" + idx(n) + " " + om + " R"), "b y" + idx(n + m - 1) + " " + om + " R");
                    add_pull("b", cat_(s, "b y" + idx(n) + " " + om + " R"), "y" + idx(n + m) + " " + om + " R");
                }
            for (const auto &s : s0)
                add_int("d R", cat_(s, "b y" + idx(n) + " " + om + " R"), "0");
            for (const auto &s : sd)
                for (std::string x : {"a", "b", "d"})
                    if (!starts(s, x))
                        add_int(x + " R", cat_(s, "b y" + idx(n) + " " + om + " R"), "0");
            for (const auto &s : sf) {
                for (std::string x : {"a", "b", "d"})
                    if (!starts(s, x))
                        add_int(x + " R", cat_(s, "b x" + idx(n) + " " + om + " R"), "0");
                add_int("d R", cat_(s, "b y" + idx(n) + " " + om + " R"), "0");
            }
        }
    for (const auto &s : sdf)
        for (std::string x : {"a", "b", "d"})
            if (!starts(s, x))
                add_int(x + " R", s + " R", "0");

    // w = s b
    for (std::string x : {"a", "b"}) {
        auto ok = [&](const std::string &s) { return !(s.empty() && x == "b") && !starts(s, x); };
        for (const auto &[group, res] : std::vector<std::pair<std::vector<std::string>, std::string>>{
                 {s0, "b Z"}, {sd, "b X"}, {sf, "b Y"}})
            for (const auto &s : group)
                if (ok(s))
                    for (std::string t : {"R", "P", "Z"})
                        add_int(x + " R", cat_(s, "b " + t), res);
        for (const auto &group : {s0, sd})
            for (const auto &s : group)
                if (ok(s))
                    add_int(x + " R", cat_(s, "b X"), "b X");
        for (const auto &s : sf)
            if (ok(s))
                add_int(x + " R", cat_(s, "b X"), "0");
        for (const auto &group : {s0, sf})
            for (const auto &s : group)
                if (ok(s))
                    add_int(x + " R", cat_(s, "b Y"), "b Y");
        for (const auto &s : sd)
            if (ok(s))
                add_int(x + " R", cat_(s, "b Y"), "0");
    }
    for (const auto &group : {s0, sd})
        for (const auto &s : group) {
            if (starts(s, "d"))
                continue;
            for (std::string t : {"R", "P", "Z", "X"})
                add_int("d R", cat_(s, "b " + t), "b X");
            add_int("d R", cat_(s, "b Y"), "0");
        }
    for (const auto &s : sf)
        add_int("d R", cat_(s, "b R"), "0");

    // w = s: reduce to s b
    for (const auto &group : {s0, sd, sf})
        for (const auto &s : group) {
            if (s.empty())
                continue;
            for (std::string x : {"a", "b", "d"}) {
                if (starts(s, x))
                    continue;
                out.push_back({x + " R & " + s + " R = " + x + " R & " + s + " b R", intersect(p, I(x + " R"), I(s + " R")),
                               intersect(p, I(x + " R"), I(s + " b R"))});
                out.push_back({x + " R & " + s + " P = " + x + " R & " + s + " b P", intersect(p, I(x + " R"), I(s + " P")),
                               intersect(p, I(x + " R"), I(s + " b P"))});
                add_int(x + " R", s + " Z", "0");
                add_int(x + " R", s + " X", "0");
                add_int(x + " R", s + " Y", "0");
            }
        }

    // w = s b t_n
    for (long n : ns) {
        for (const auto &s : s0) {
            long mc = count(s, 'c'), ma = count(s, 'a');
            if (!starts(s, "a")) {
                add_pull("a", cat_(s, "b x" + idx(n) + " R"), "b x" + idx(n + mc) + " R");
                add_pull("a", cat_(s, "b y" + idx(n) + " R"), "b y" + idx(n + ma - 1) + " R");
            }
            add_pull("b", cat_(s, "b x" + idx(n) + " R"), "x" + idx(n + mc) + " R");
            // printed with x on the right; the y form is what the relations give
            add_pull("b", cat_(s, "b y" + idx(n) + " R"), "y" + idx(n + ma) + " R");
        }
        for (const auto &s : sd) {
            long mc = count(s, 'c');
            for (std::string x : {"a", "b"}) {
                if (starts(s, x))
                    continue;
                add_int(x + " R", s + " b x" + idx(n) + " R", "b x" + idx(n + mc) + " P");
                add_int(x + " R", s + " b x" + idx(n) + " P", "b x" + idx(n + mc) + " P");
                for (std::string t : {"Z", "X", "Y"})
                    add_int(x + " R", s + " b x" + idx(n) + " " + t, "b x" + idx(n + mc) + " " + t);
                add_int(x + " R", s + " b y" + idx(n) + " R", "0");
            }
        }
        for (const auto &s : sf) {
            long ma = count(s, 'a');
            for (std::string x : {"a", "b"}) {
                if (starts(s, x))
                    continue;
                add_int(x + " R", s + " b x" + idx(n) + " R", "0");
                add_int(x + " R", s + " b y" + idx(n) + " R", "b y" + idx(n + ma) + " P");
                add_int(x + " R", s + " b y" + idx(n) + " P", "b y" + idx(n + ma) + " P");
                for (std::string t : {"Z", "X", "Y"})
                    add_int(x + " R", s + " b y" + idx(n) + " " + t, "b y" + idx(n + ma) + " " + t);
            }
            add_int("d R", s + " R", "0");
        }
        for (const auto &group : {s0, sd, sf})
            for (const auto &s : group)
                if (!starts(s, "d"))
                    add_int("d R", cat_(s, "b y" + idx(n) + " R"), "0");
        for (const auto &group : {s0, sd})
            for (const auto &s : group) {
                if (starts(s, "d"))
                    continue;
                long mc = count(s, 'c');
                std::string w0 = cat_(s, "b x" + idx(n));
                add_int("d R", w0 + " R", w0 + " P");
                add_int("d R", w0 + " P", w0 + " P");
                for (std::string t : {"Z", "X", "Y"})
                    add_int("d R", w0 + " " + t, "b x" + idx(n + mc) + " " + t);
            }
    }

    // quoted individually
    add_int("a R", "b R", "b Z");
    add_int("d R", "f b R", "0");
    add_int("d R", "b R", "b X");
    add_pull("b", "c b x0 a R", "x1 a R");
    add_pull("a", "b y2 R", "b y1 R");
    add_pull("x3", "a b c R", "0");
    add_pull("a", "a b R", "b R");
    add_int("x0 R", "a R", "0");
    return out;
}

inline bool fixes_all_probes(const Presentation &p, const HullElement &h, Kind t, const std::vector<Word> &tails,
                             long k)
{
    for (long n = -4; n <= 4; ++n)
        for (const auto &z : tails) {
            auto r = apply(p, h, concat(Word{Letter(t, n)}, z));
            if (!r || *r != normal_form(p, concat(Word{Letter(t, n + k)}, z)))
                return false;
        }
    return true;
}

} // namespace detail

// ---- 1 --------------------------------------------------------------------
inline CheckResult check_word_problem(std::size_t max_len = 6)
{
    return detail::timed("confluence and word problem", "rewriting system of R", [&](CheckResult &r) {
        auto p = monoid_R();
        auto cert = confluence_certificate(p, -3, 3);
        auto sweep = oracle::word_problem_sweep("R", oracle::window_alphabet(true, -2, 2), max_len,
                                                [&](const oracle::SmallWord &v) { return normal_form(p, v); });
        std::ostringstream os;
        os << cert.overlaps.size() << " overlaps joinable: " << (cert.pass ? "yes" : "no") << "; " << sweep.words
           << " words in " << sweep.classes << " classes, " << sweep.mismatches << " mismatches";
        r.detail = os.str();
        r.pass = cert.pass && sweep.mismatches == 0;
        if (!cert.pass)
            r.counterexample = cert.failures.front();
        else if (sweep.counterexample)
            r.counterexample =
                format_word(sweep.counterexample->first) + " vs " + format_word(sweep.counterexample->second);
    });
}

// ---- 2 --------------------------------------------------------------------
inline CheckResult check_left_cancellation(std::size_t max_len = 4)
{
    return detail::timed("left cancellation", "cancellation lemma for R", [&](CheckResult &r) {
        auto p = monoid_R();
        auto alpha = oracle::window_alphabet(true, -2, 2);
        std::vector<oracle::SmallWord> words{{}}, layer{{}};
        for (std::size_t len = 1; len <= max_len; ++len) {
            std::vector<oracle::SmallWord> next;
            for (const auto &v : layer)
                for (const auto &l : alpha) {
                    auto u = v;
                    u.push_back(l);
                    next.push_back(u);
                }
            words.insert(words.end(), next.begin(), next.end());
            layer = std::move(next);
        }
        std::size_t pairs = 0, bad = 0;
        for (const auto &x : alpha) {
            std::map<std::uint64_t, std::pair<std::uint64_t, oracle::SmallWord>> seen;
            for (const auto &v : words) {
                oracle::SmallWord xv{x};
                xv.insert(xv.end(), v.begin(), v.end());
                auto key = oracle::pack(normal_form(p, xv));
                auto val = oracle::pack(normal_form(p, v));
                auto [it, fresh] = seen.emplace(key, std::make_pair(val, v));
                ++pairs;
                if (!fresh && it->second.first != val) {
                    ++bad;
                    if (!r.counterexample)
                        r.counterexample = format_letter(x) + " . (" + format_word(oracle::from_small(v)) + ") vs " +
                                           format_letter(x) + " . (" + format_word(oracle::from_small(it->second.second)) +
                                           ")";
                }
            }
        }
        r.detail = std::to_string(pairs) + " products grouped by class, " + std::to_string(bad) + " counterexamples";
        r.pass = bad == 0;
    });
}

// ---- 3 --------------------------------------------------------------------
inline CheckResult check_classification(int depth = 4)
{
    return detail::timed("constructible ideals of R", "classification of J(R) and its tables", [&](CheckResult &r) {
        auto p = monoid_R();
        auto letters = window_letters(p, -2, 2);
        auto rep = closure(p, letters, letters, depth);
        const std::set<Mask> allowed{0, shape::R, shape::P, shape::Z, shape::X, shape::Y};
        bool shapes_ok = true;
        for (Mask m : rep.shapes)
            if (!allowed.count(m)) {
                shapes_ok = false;
                r.counterexample = "shape mask " + std::to_string(m);
            }
        auto table = detail::appendix_table(p);
        std::size_t bad = 0;
        for (const auto &e : table)
            if (!(e.got == e.expected)) {
                ++bad;
                if (!r.counterexample)
                    r.counterexample = e.statement + " but got " + format_ideal(e.got);
            }
        r.detail = std::to_string(rep.ideals) + " ideals in the closure, shapes " + std::to_string(rep.shapes.size()) +
                   "; " + std::to_string(table.size()) + " table entries, " + std::to_string(bad) + " mismatches";
        r.pass = shapes_ok && bad == 0;
    });
}

// ---- 4 --------------------------------------------------------------------
inline CheckResult check_lemmas()
{
    return detail::timed("multiple x_n and fixing lemmas", "multiple x_n lemma, fix lemma, shift corollary",
                         [&](CheckResult &r) {
        auto p = monoid_R();
        std::vector<Letter> letters{Letter(Kind::A), Letter(Kind::B), Letter(Kind::C), Letter(Kind::D),
                                    Letter(Kind::F), Letter(Kind::X, -1), Letter(Kind::X, 0), Letter(Kind::X, 1),
                                    Letter(Kind::Y, -1), Letter(Kind::Y, 0), Letter(Kind::Y, 1)};
        auto ideals = oracle::canonical_pool(p, detail::normal_words(p, letters, 2));
        std::vector<Letter> rl(letters.begin(), letters.begin() + 5);
        rl.push_back(Letter(Kind::X, 0));
        rl.push_back(Letter(Kind::Y, 0));
        auto roots = detail::normal_words(p, rl, 2);
        const std::vector<Word> tails{{Letter(Kind::A)}, {Letter(Kind::B), Letter(Kind::X, 0)}};
        std::size_t cases = 0, bad = 0;
        auto fail = [&](std::string s) {
            ++bad;
            if (!r.counterexample)
                r.counterexample = std::move(s);
        };
        for (const auto &a : ideals)
            for (const auto &rt : roots)
                for (Kind t : {Kind::X, Kind::Y}) {
                    std::vector<long> in;
                    for (long n = -2; n <= 2; ++n)
                        if (contains(p, a, concat(rt, Word{Letter(t, n)})))
                            in.push_back(n);
                    if (in.size() >= 2) {
                        ++cases;
                        for (long n : {-4L, -3L, 3L, 4L, 37L})
                            for (Kind u : {Kind::X, Kind::Y})
                                if (!contains(p, a, concat(rt, Word{Letter(u, n)})))
                                    fail(format_ideal(a) + " holds two r x_n for r = " + format_word(rt) +
                                         " but misses " + format_word(concat(rt, Word{Letter(u, n)})));
                    }
                    for (const auto &t1 : tails)
                        for (const auto &t2 : tails) {
                            Word e1 = concat(concat(rt, Word{Letter(t, 0)}), t1);
                            Word e2 = concat(concat(rt, Word{Letter(t, 1)}), t2);
                            if (!contains(p, a, e1) || !contains(p, a, e2))
                                continue;
                            ++cases;
                            if (!subset(p, canonical(p, rt, t == Kind::X ? shape::X : shape::Y), a))
                                fail(format_ideal(a) + " holds " + format_word(e1) + " and " + format_word(e2));
                            for (long n : {-3L, 5L})
                                if (!contains(p, a, concat(rt, Word{Letter(t, n), Letter(Kind::D)})))
                                    fail(format_ideal(a) + " misses a two-letter tail element");
                        }
                }
        // fixing and shifting
        std::vector<Letter> hl{Letter(Kind::A), Letter(Kind::B), Letter(Kind::C), Letter(Kind::D),
                               Letter(Kind::F), Letter(Kind::X, 0), Letter(Kind::Y, 0)};
        const std::vector<Word> probes{{Letter(Kind::A)}, {Letter(Kind::B), Letter(Kind::X, 0)}, {Letter(Kind::Y, 1)},
                                       {Letter(Kind::D), Letter(Kind::F)}};
        std::size_t hulls = 0;
        for (const auto &h : detail::hull_pool(hl, 3)) {
            ++hulls;
            for (Kind t : {Kind::X, Kind::Y}) {
                // single letters
                std::vector<std::pair<long, std::optional<Word>>> img;
                for (long n = -2; n <= 2; ++n)
                    img.emplace_back(n, apply(p, h, Word{Letter(t, n)}));
                std::size_t in = 0;
                for (const auto &[n, v] : img)
                    in += v.has_value();
                if (in >= 2)
                    for (const auto &[n, v] : img) {
                        if (!v || v->size() != 1 || (*v)[0].kind != t)
                            continue;
                        ++cases;
                        long k = static_cast<long>((*v)[0].n) - n;
                        if (!detail::fixes_all_probes(p, h, t, {{}}, k))
                            fail(format_hull(h) + " moves " + format_letter(Letter(t, n)) + " by " +
                                 std::to_string(k) + " but not every " + format_letter(Letter(t, 0)));
                        break;
                    }
                // a letter after t_n
                for (const auto &z : probes) {
                    std::vector<std::pair<long, std::optional<Word>>> im2;
                    for (long n = -2; n <= 2; ++n)
                        im2.emplace_back(n, apply(p, h, concat(Word{Letter(t, n)}, z)));
                    std::size_t in2 = 0;
                    for (const auto &[n, v] : im2)
                        in2 += v.has_value();
                    if (in2 < 2)
                        continue;
                    for (const auto &[n, v] : im2) {
                        if (!v || v->empty() || (*v)[0].kind != t ||
                            subword(*v, 1) != normal_form(p, z))
                            continue;
                        ++cases;
                        long k = static_cast<long>((*v)[0].n) - n;
                        if (!detail::fixes_all_probes(p, h, t, probes, k))
                            fail(format_hull(h) + " moves " + format_letter(Letter(t, n)) + " " + format_word(z) +
                                 " by " + std::to_string(k) + " but not the whole family");
                        break;
                    }
                }
            }
        }
        r.detail = std::to_string(ideals.size()) + " ideals, " + std::to_string(roots.size()) + " roots, " +
                   std::to_string(hulls) + " hull elements, " + std::to_string(cases) + " hypotheses met, " +
                   std::to_string(bad) + " violations";
        r.pass = bad == 0;
    });
}

// ---- 5 --------------------------------------------------------------------
inline CheckResult check_foundations(std::size_t random_instances = 200, unsigned seed = 7)
{
    return detail::timed("foundation oracle", "foundation sets of R", [&](CheckResult &r) {
        auto p = monoid_R();
        auto I = [&](const std::string &s) { return parse_ideal(p, s); };
        std::vector<std::string> notes;
        bool ok = true;
        auto expect = [&](bool cond, const std::string &what) {
            if (!cond) {
                ok = false;
                if (!r.counterexample)
                    r.counterexample = what;
            }
        };
        for (std::string wp : {"", "a", "b x0", "c b"}) {
            std::string pre = wp.empty() ? "" : wp + " ";
            std::vector<Ideal> seven;
            for (std::string l : {"a", "b", "c", "d", "f"})
                seven.push_back(I(pre + l + " R"));
            seven.push_back(I(pre + "X"));
            seven.push_back(I(pre + "Y"));
            expect(is_foundation(p, I(pre + "R"), seven).foundation, "seven ideals under " + pre + "R");
            expect(is_foundation(p, I(pre + "b Z"), {I(pre + "b X"), I(pre + "b Y")}).foundation,
                   "two tails under " + pre + "b Z");
        }
        expect(is_foundation(p, I("b Z"), {I("b x0 R"), I("b X"), I("b Y")}).foundation, "tails with one more member");
        expect(is_foundation(p, I("P"), {I("a R"), I("b R"), I("c R"), I("d R"), I("f R"), I("X"), I("Y")}).foundation,
               "seven ideals under P");
        auto neg = is_foundation(p, I("b Z"), {I("b x0 R")});
        expect(!neg.foundation, "b x0 R must not be a foundation set for b Z");
        if (neg.witness) {
            expect(subset(p, *neg.witness, I("b Z")) && intersect(p, *neg.witness, I("b x0 R")).empty,
                   "witness " + format_ideal(*neg.witness) + " fails its own test");
            notes.push_back("negative witness " + format_ideal(*neg.witness));
        } else {
            expect(false, "negative case without a witness");
        }

        // random instances against an exhaustive witness search
        std::vector<Letter> letters{Letter(Kind::A), Letter(Kind::B), Letter(Kind::C), Letter(Kind::D),
                                    Letter(Kind::F)};
        for (long n = -1; n <= 1; ++n) {
            letters.push_back(Letter(Kind::X, n));
            letters.push_back(Letter(Kind::Y, n));
        }
        auto bases = oracle::canonical_pool(p, detail::normal_words(p, letters, 1));
        auto members = oracle::canonical_pool(p, detail::normal_words(p, letters, 2));
        std::vector<Letter> wide(letters.begin(), letters.begin() + 5);
        for (long n = -3; n <= 3; ++n) {
            wide.push_back(Letter(Kind::X, n));
            wide.push_back(Letter(Kind::Y, n));
        }
        std::vector<Word> tails;
        oracle::all_words(wide, 2, tails);
        std::mt19937 rng(seed);
        std::size_t agree = 0, yes = 0;
        for (std::size_t i = 0; i < random_instances; ++i) {
            Ideal x = bases[rng() % bases.size()];
            std::vector<Ideal> fam;
            std::size_t want = 1 + rng() % 3;
            for (std::size_t tries = 0; fam.size() < want && tries < 50; ++tries) {
                Ideal f = intersect(p, members[rng() % members.size()], x);
                if (!f.empty)
                    fam.push_back(f);
            }
            std::vector<Word> prefixes;
            for (const auto &t : tails)
                prefixes.push_back(concat(x.prefix, t));
            auto pool = oracle::canonical_pool(p, prefixes);
            auto brute = oracle::foundation_witness(p, x, fam, pool);
            auto got = is_foundation(p, x, fam);
            bool same = got.foundation == !brute.has_value();
            if (!got.foundation && got.witness)
                same = same && subset(p, *got.witness, x) &&
                       std::all_of(fam.begin(), fam.end(),
                                   [&](const Ideal &f) { return intersect(p, *got.witness, f).empty; });
            agree += same;
            yes += got.foundation;
            if (!same) {
                std::string s = format_ideal(x) + " with {";
                for (const auto &f : fam)
                    s += " " + format_ideal(f) + ";";
                expect(false, s + " }");
            }
        }
        notes.push_back(std::to_string(agree) + "/" + std::to_string(random_instances) + " random instances agree (" +
                        std::to_string(yes) + " foundations)");
        for (const auto &n : notes)
            r.detail += (r.detail.empty() ? "" : "; ") + n;
        r.pass = ok;
    });
}

// ---- 6 --------------------------------------------------------------------
inline CheckResult check_regularity()
{
    return detail::timed("regularity verdicts", "R strongly regular on the boundary, not regular",
                         [&](CheckResult &r) {
        auto p = monoid_R();
        auto pool = standard_pool(p);
        std::size_t witnesses = 0;
        bool ok = true;
        for (const auto &in : pool) {
            auto res = check_strong_boundary_instance(p, in);
            if (res.kind == WitnessKind::Witness) {
                ++witnesses;
            } else if (ok) {
                ok = false;
                std::string s = format_ideal(in.x) + " minus {";
                for (const auto &a : in.xs)
                    s += " " + format_ideal(a);
                r.counterexample = s + " } under " + format_hull(in.hs[0]) + ": " + format_witness_kind(res.kind) +
                                   " " + res.reason;
            }
        }
        RegInstance bz{parse_ideal(p, "b Z"), {}, {HullElement::mul({Letter(Kind::A)}), HullElement::mul({Letter(Kind::C)})}};
        auto plain = check_regularity_instance(p, bz);
        auto strong = check_strong_regularity_instance(p, bz);
        auto sb = check_strong_boundary_instance(p, bz);
        if (plain.kind != WitnessKind::ProvedImpossible || strong.kind != WitnessKind::ProvedImpossible) {
            ok = false;
            r.counterexample = "b Z under a, c: " + format_witness_kind(plain.kind);
        }
        if (sb.kind != WitnessKind::Witness) {
            ok = false;
            r.counterexample = "b Z under a, c on the boundary: " + format_witness_kind(sb.kind);
        }
        auto crit = check_boundary_equality_criterion(p, pool);
        auto s5 = monoid_S5();
        RegInstance s5in{parse_ideal(s5, "b Z"), {parse_ideal(s5, "b V")}, {HullElement::mul({Letter(Kind::A)})}};
        auto s5rep = check_boundary_equality_criterion(s5, {s5in});
        if (crit.witness != pool.size() || s5rep.impossible != 1) {
            ok = false;
            if (!r.counterexample)
                r.counterexample = "criterion: " + std::to_string(crit.witness) + "/" + std::to_string(pool.size()) +
                                   " witnesses for R, S5 verdict " + format_witness_kind(s5rep.results[0].kind);
        }
        r.detail = std::to_string(witnesses) + "/" + std::to_string(pool.size()) +
                   " strong boundary witnesses; b Z under a, c: " + format_witness_kind(plain.kind) + " (" +
                   plain.reason + "); S5: " + format_witness_kind(s5rep.results[0].kind);
        r.pass = ok;
    });
}

// ---- 7 --------------------------------------------------------------------
inline std::vector<Character> sample_characters(const Presentation &p)
{
    std::vector<Character> out;
    const std::vector<std::string> prefixes{"", "a", "b x0", "c b", "x1", "d", "b y2 a"};
    const std::vector<std::string> type1{"b x0", "d f", "x0", "b", "y1 a"};
    const std::vector<std::string> type2{"a", "c", "a c d", "c f", "d"};
    // 18 type-1 and 17 type-2 words, then 10 ideal and 5 principal characters
    std::size_t quota = 18;
    for (const auto &group : {type1, type2}) {
        std::size_t taken = 0;
        for (const auto &pre : prefixes)
            for (const auto &per : group) {
                InfiniteWord w{detail::w(pre), detail::w(per)};
                if (taken >= quota || !is_reduced(w))
                    continue;
                Character c = WordChar{w.canonical()};
                if (std::none_of(out.begin(), out.end(), [&](const Character &d) { return same_character(p, c, d); })) {
                    out.push_back(c);
                    ++taken;
                }
            }
        quota = 17;
    }
    for (std::string pre : {"", "a b", "b x0", "c", "b y1 d"})
        for (std::string t : {"X", "Y"})
            out.push_back(normalize(p, IdealChar{parse_ideal(p, pre.empty() ? t : pre + " " + t)}));
    for (std::string s : {"", "b x0", "a", "d b x1", "c c"})
        out.push_back(PrincipalChar{normal_form(p, detail::w(s))});
    return out;
}

inline CheckResult check_boundary_classes()
{
    return detail::timed("boundary characters of R", "classification of the boundary of R", [&](CheckResult &r) {
        auto p = monoid_R();
        auto chars = sample_characters(p);
        std::vector<Letter> letters{Letter(Kind::A), Letter(Kind::B), Letter(Kind::C), Letter(Kind::D),
                                    Letter(Kind::F), Letter(Kind::X, 0), Letter(Kind::X, 1), Letter(Kind::Y, 1)};
        auto pool = oracle::canonical_pool(p, detail::normal_words(p, letters, 2));
        std::map<std::string, std::size_t> tally;
        bool ok = true;
        auto fail = [&](const std::string &s) {
            ok = false;
            if (!r.counterexample)
                r.counterexample = s;
        };
        for (const auto &c : chars) {
            auto cls = classify_boundary(p, c);
            ++tally[format_class(cls)];
            bool consistent = false;
            if (auto *wc = std::get_if<WordChar>(&c)) {
                bool t1 = word_type(wc->w) == WordType::Type1;
                consistent = t1 ? cls == BoundaryClass::MaxType1 : cls == BoundaryClass::WordType2;
                consistent = consistent && (is_maximal(p, c) == (t1 ? Verdict::True : Verdict::False));
                if (t1) {
                    std::size_t depth = wc->w.prefix.size() + 2 * wc->w.period.size() + 8;
                    for (const auto &a : pool)
                        if (!evaluate(p, c, a) && !maximality_witness(p, c, a, depth))
                            fail(format_character(c) + " has no ideal separating it from " + format_ideal(a));
                }
            } else if (auto *ic = std::get_if<IdealChar>(&c)) {
                consistent = (ic->a.mask == shape::X ? cls == BoundaryClass::IdealX : cls == BoundaryClass::IdealY) &&
                             is_maximal(p, c) == Verdict::False;
            } else {
                consistent = cls == BoundaryClass::NotBoundary;
            }
            if (!consistent)
                fail(format_character(c) + " classified " + format_class(cls));
        }
        for (const auto &[k, v] : tally)
            r.detail += (r.detail.empty() ? "" : ", ") + k + " " + std::to_string(v);
        r.detail = std::to_string(chars.size()) + " characters: " + r.detail;
        r.pass = ok && chars.size() == 50;
    });
}

// ---- 8 --------------------------------------------------------------------
inline CheckResult check_means()
{
    return detail::timed("approximate invariant means", "deviation of the means", [&](CheckResult &r) {
        auto p = monoid_R();
        GroupoidElement shift = make_element(p, parse_hull(p, "b^-1 c b"), IdealChar{parse_ideal(p, "X")});
        GroupoidElement push = make_element(p, parse_hull(p, "c"), WordChar{InfiniteWord{{}, detail::w("b x0")}});
        bool ok = true;
        std::string d;
        for (const auto *g : {&shift, &push}) {
            for (std::size_t n : {2, 4, 8, 16, 32}) {
                auto dev = mean_deviation(p, *g, n);
                auto mu = mean(p, g->chi, n);
                Rational sum(0);
                for (const auto &wt : mu.weights)
                    sum += wt;
                bool good = dev == Rational(2, static_cast<long long>(n)) && mu.support.size() == n && sum == Rational(1);
                if (!good && ok) {
                    ok = false;
                    r.counterexample = format_hull(g->h) + " at " + format_character(g->chi) + ", n = " +
                                       std::to_string(n) + ": " + format_rational(dev);
                }
                if (n == 32)
                    d += (d.empty() ? "" : "; ") + format_hull(g->h) + " n=32: " + format_rational(dev);
            }
        }
        r.detail = d;
        r.pass = ok;
    });
}

// ---- 9 --------------------------------------------------------------------
inline CheckResult check_products()
{
    return detail::timed("products and free products", "ideals of products and free products", [&](CheckResult &r) {
        bool ok = true;
        auto fail = [&](const std::string &s) {
            ok = false;
            if (!r.counterexample)
                r.counterexample = s;
        };
        Product m{monoid_R(), monoid_S5()};
        std::vector<Letter> ll{Letter(Kind::A), Letter(Kind::B), Letter(Kind::C), Letter(Kind::D), Letter(Kind::X, 0),
                               Letter(Kind::Y, 0)};
        std::vector<Letter> rl{Letter(Kind::A), Letter(Kind::B), Letter(Kind::C), Letter(Kind::X, 0), Letter(Kind::Y, 0)};
        auto la = oracle::canonical_pool(m.left, detail::normal_words(m.left, ll, 1));
        auto ra = oracle::canonical_pool(m.right, detail::normal_words(m.right, rl, 1));
        std::vector<Word> lw, rw;
        oracle::all_words(ll, 3, lw);
        oracle::all_words(rl, 3, rw);
        std::vector<HullElement> lh{parse_hull(m.left, "b^-1 c b"), parse_hull(m.left, "a"), parse_hull(m.left, "d^-1")};
        std::vector<HullElement> rh{parse_hull(m.right, "a"), parse_hull(m.right, "b^-1"), parse_hull(m.right, "c b")};
        std::size_t probes = 0;
        for (std::size_t i = 0; i < la.size(); i += 3)
            for (std::size_t j = 0; j < ra.size(); j += 3) {
                ProductIdeal a{la[i], ra[j]};
                ProductIdeal b{la[(i + 7) % la.size()], ra[(j + 5) % ra.size()]};
                ProductIdeal c = intersect(m, a, b);
                ProductHull h{lh[(i + j) % lh.size()], rh[(i + 2 * j) % rh.size()]};
                ProductIdeal q = pullback_hull(m, h, a);
                for (std::size_t k = 0; k < lw.size(); k += 37)
                    for (std::size_t l = 0; l < rw.size(); l += 41) {
                        std::pair<Word, Word> pw{lw[k], rw[l]};
                        ++probes;
                        bool in_c = !c.empty() && contains(m, c, pw);
                        if (in_c != (contains(m, a, pw) && contains(m, b, pw)))
                            fail("product intersection law at " + format_word(pw.first) + ", " + format_word(pw.second));
                        auto f1 = apply(m.left, h.f, pw.first);
                        auto f2 = apply(m.right, h.g, pw.second);
                        bool direct = f1 && f2 && contains(m, a, {*f1, *f2});
                        if ((!q.empty() && contains(m, q, pw)) != direct)
                            fail("product pullback law at " + format_word(pw.first) + ", " + format_word(pw.second));
                    }
            }

        // free product of two one-generator monoids
        FreeProduct fp{free_monoid(1), free_monoid(1)};
        FPHull zero{{{false, parse_fp_word(fp, "a'")}, {true, parse_fp_word(fp, "a")}}};
        std::vector<FPWord> fw;
        {
            std::vector<FPWord> layer{{}};
            fw.push_back({});
            for (int len = 1; len <= 7; ++len) {
                std::vector<FPWord> next;
                for (const auto &u : layer)
                    for (int side : {0, 1}) {
                        FPWord v = u;
                        v.push_back({side, {Letter(Kind::A)}});
                        next.push_back(fp_normal(fp, v));
                    }
                fw.insert(fw.end(), next.begin(), next.end());
                layer = std::move(next);
            }
        }
        if (!domain(fp, zero).empty)
            fail("a^-1 a' has a nonempty domain");
        for (const auto &u : fw)
            if (apply(fp, zero, u))
                fail("a^-1 a' is defined at " + format_fp_word(u));

        // foundation, cover and factor cover agree for X = A(S*T), Y_j = A_j(S*T) \ B_j(S*T)
        struct Diff {
            int p, q; // a^p S minus a^q S, q < 0 for no subtraction
        };
        auto in_s = [](int m, const Diff &d) { return m >= d.p && (d.q < 0 || m < d.q); };
        auto lead = [](const FPWord &u) { return u.empty() || u[0].side != 0 ? 0 : static_cast<int>(u[0].w.size()); };
        auto in_y = [&](const FPWord &u, const Diff &d) { return in_s(lead(u), d); };
        std::vector<Diff> diffs;
        for (int pp = 0; pp <= 3; ++pp) {
            diffs.push_back({pp, -1});
            for (int qq = pp + 1; qq <= 3; ++qq)
                diffs.push_back({pp, qq});
        }
        std::size_t families = 0, found = 0;
        for (int k = 0; k <= 1; ++k) {
            std::vector<std::vector<Diff>> fams;
            for (std::size_t i = 0; i < diffs.size(); ++i) {
                if (diffs[i].p < k)
                    continue;
                fams.push_back({diffs[i]});
                for (std::size_t j = i + 1; j < diffs.size(); ++j)
                    if (diffs[j].p >= k)
                        fams.push_back({diffs[i], diffs[j]});
            }
            for (const auto &fam : fams) {
                ++families;
                auto in_x = [&](const FPWord &u) { return lead(u) >= k; };
                // a principal ideal y(S*T) inside X missing every Y_j, found among words of length <= k + 3
                bool witness = false;
                for (const auto &y : fw) {
                    std::size_t len = 0;
                    for (const auto &b : y)
                        len += b.w.size();
                    if (len > static_cast<std::size_t>(k) + 3 || !in_x(y))
                        continue;
                    bool miss = true;
                    for (const auto &u : fw) {
                        auto q = fp_left_divide(fp, y, u);
                        if (!q)
                            continue;
                        for (const auto &d : fam)
                            miss = miss && !in_y(u, d);
                    }
                    witness = witness || miss;
                }
                bool cover = true;
                for (const auto &u : fw)
                    if (in_x(u)) {
                        bool hit = false;
                        for (const auto &d : fam)
                            hit = hit || in_y(u, d);
                        cover = cover && hit;
                    }
                bool factor = true;
                for (int mm = k; mm <= 8; ++mm) {
                    bool hit = false;
                    for (const auto &d : fam)
                        hit = hit || in_s(mm, d);
                    factor = factor && hit;
                }
                found += !witness;
                if (!witness != cover || cover != factor)
                    fail("free product family at k = " + std::to_string(k) + ": foundation " +
                         std::to_string(!witness) + ", cover " + std::to_string(cover) + ", factor cover " +
                         std::to_string(factor));
            }
        }
        r.detail = std::to_string(probes) + " product probes; " + std::to_string(fw.size()) +
                   " free product words; " + std::to_string(families) + " families, " + std::to_string(found) +
                   " foundation sets";
        r.pass = ok;
    });
}

inline std::vector<std::function<CheckResult()>> appendix_suite()
{
    return {[] { return check_word_problem(); },  [] { return check_left_cancellation(); },
            [] { return check_classification(); }, [] { return check_lemmas(); },
            [] { return check_foundations(); },   [] { return check_regularity(); },
            [] { return check_boundary_classes(); }, [] { return check_means(); },
            [] { return check_products(); }};
}

} // namespace lcm::verify

#endif
