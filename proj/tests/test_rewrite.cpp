#include <catch_amalgamated.hpp>

#include <random>

#include "lcm/catalog.hpp"
#include "lcm/oracle.hpp"

using namespace lcm;

namespace {
Word W(const std::string &s) { return parse_word(s); }

std::vector<oracle::SmallWord> small_words(const std::vector<basic_letter<long long>> &alpha, std::size_t max_len)
{
    std::vector<oracle::SmallWord> out{{}}, layer{{}};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<oracle::SmallWord> next;
        for (const auto &v : layer)
            for (const auto &l : alpha) {
                auto u = v;
                u.push_back(l);
                next.push_back(u);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}
} // namespace

TEST_CASE("normal forms", "[rewrite]")
{
    auto p = monoid_R();
    CHECK(normal_form(p, W("a b x_0")) == W("b x_0"));
    CHECK(normal_form(p, W("a c b y_0")) == W("b y_1"));
    CHECK(normal_form(p, W("d b x_2 a")) == W("b x_2 a"));
    CHECK(normal_form(p, Word{}).empty());
    CHECK(normal_form(p, W("c b x_3 a")) == W("b x_4 a"));
    CHECK(normal_form(p, W("c c a b x_0")) == W("b x_2"));
    CHECK(normal_form(p, W("f b y_0 y_1")) == W("b y_0 y_1"));
    CHECK(normal_form(p, W("d b x_0")) == W("d b x_0"));
}

TEST_CASE("rewrite steps shorten the word", "[rewrite]")
{
    auto p = monoid_R();
    for (std::string s : {"a c a c b x_0 d", "d f b y_1 a", "c c c b y_-2 b x_0 a", "a b c"}) {
        std::vector<RewriteStep<Index>> steps;
        Word w = W(s);
        Word n = normal_form(p, w, &steps);
        CHECK(steps.size() <= w.size());
        CHECK(n.size() + steps.size() == w.size());
        std::size_t len = w.size();
        for (const auto &st : steps) {
            CHECK(st.result.size() == len - 1);
            len = st.result.size();
        }
        CHECK(is_irreducible(p, n));
    }
}

TEST_CASE("equivalence", "[rewrite]")
{
    auto p = monoid_R();
    CHECK(equivalent(p, W("a b x_0"), W("b x_0")));
    CHECK_FALSE(equivalent(p, W("b x_0"), W("b x_1")));
    CHECK_FALSE(equivalent(p, W("d b x_0"), W("b x_0")));
    CHECK(equivalent(p, W("c b y_0"), W("a b y_-1")));
}

TEST_CASE("confluence certificates", "[rewrite]")
{
    auto r = confluence_certificate(monoid_R(), -3, 3);
    CHECK(r.pass);
    CHECK_FALSE(r.overlaps.empty());
    CHECK_FALSE(r.argument.empty());
    auto f = confluence_certificate(free_monoid(2), -3, 3);
    CHECK(f.pass);
    CHECK(f.overlaps.empty());
    CHECK(confluence_certificate(monoid_S5(), -3, 3).pass);
    CHECK(confluence_certificate(monoid_S4(), -3, 3).pass);
}

TEST_CASE("left division", "[rewrite]")
{
    auto p = monoid_R();
    CHECK(left_divide(p, W("b"), W("b x_3 a")) == W("x_3 a"));
    CHECK(left_divide(p, W("a"), W("b x_0")) == W("b x_0"));
    CHECK_FALSE(left_divide(p, W("f"), W("b x_0 a")).has_value());
    CHECK(left_divide(p, Word{}, W("a b")) == W("a b"));
    CHECK(left_divide(p, W("a"), Word{}) == std::nullopt);
    CHECK(left_divide(p, Word{}, Word{}) == Word{});
    CHECK(left_divide(p, W("c"), W("b y_0 a")) == W("b y_0 a"));
    CHECK(left_divide(p, W("a"), W("b y_2")) == W("b y_1"));
}

TEST_CASE("minimal letter counts", "[rewrite]")
{
    auto p = monoid_R();
    CHECK(min_count(p, W("a a a a a a b x_5"), Kind::A) == 0);
    CHECK(min_count(p, W("d d d d d d d d d b x_0 d d d"), Kind::D) == 3);
    CHECK(min_count(p, Word{}, Kind::C) == 0);
}

// Normal forms against reachability in the length bounded rewrite graph.
TEST_CASE("normal forms agree with the rewrite graph", "[rewrite]")
{
    auto p = monoid_R();
    auto rep = oracle::word_problem_sweep("R", oracle::window_alphabet(true, -2, 2), 5,
                                          [&](const oracle::SmallWord &v) { return normal_form(p, v); });
    CHECK(rep.mismatches == 0);
    CHECK(rep.classes > 100000);
    for (std::string m : {"S4", "S5"}) {
        auto q = catalog_monoid(m);
        std::vector<Kind> plain = q.plain_letters();
        auto r2 = oracle::word_problem_sweep(m, oracle::window_alphabet(true, -1, 1, plain), 5,
                                             [&](const oracle::SmallWord &v) { return normal_form(q, v); });
        CHECK(r2.mismatches == 0);
    }
}

TEST_CASE("min_count is the minimum over the class", "[rewrite]")
{
    auto p = monoid_R();
    auto rel = oracle::relations_of("R");
    auto words = small_words(oracle::window_alphabet(true, -1, 1), 4);
    for (std::size_t i = 0; i < words.size(); i += 13) {
        const auto &w = words[i];
        auto cls = oracle::rewrite_class(rel, w, w.size());
        for (Kind k : {Kind::A, Kind::C, Kind::D, Kind::F}) {
            std::size_t best = w.size();
            for (const auto &m : cls) {
                auto c = raw_counts(m);
                std::size_t v = k == Kind::A ? c.raw_a : k == Kind::C ? c.raw_c : k == Kind::D ? c.raw_d : c.raw_f;
                best = std::min(best, v);
            }
            auto got = min_count(p, w, k);
            REQUIRE(got == best);
            auto c = raw_counts(w);
            CHECK(got <= (k == Kind::A ? c.raw_a : k == Kind::C ? c.raw_c : k == Kind::D ? c.raw_d : c.raw_f));
        }
    }
}

TEST_CASE("left cancellation", "[rewrite]")
{
    auto p = monoid_R();
    auto alpha = oracle::window_alphabet(true, -1, 1);
    auto words = small_words(alpha, 3);
    std::mt19937 rng(11);
    for (const auto &x : alpha) {
        std::map<std::uint64_t, std::uint64_t> image;
        for (const auto &v : words) {
            oracle::SmallWord xv{x};
            xv.insert(xv.end(), v.begin(), v.end());
            auto key = oracle::pack(normal_form(p, xv));
            auto val = oracle::pack(normal_form(p, v));
            auto [it, fresh] = image.emplace(key, val);
            REQUIRE(it->second == val);
        }
    }
    // longer words, sampled
    auto longer = small_words(oracle::window_alphabet(true, 0, 0), 5);
    for (int i = 0; i < 4000; ++i) {
        const auto &u = longer[rng() % longer.size()];
        const auto &v = longer[rng() % longer.size()];
        const auto &x = alpha[rng() % alpha.size()];
        oracle::SmallWord xu{x}, xv{x};
        xu.insert(xu.end(), u.begin(), u.end());
        xv.insert(xv.end(), v.begin(), v.end());
        if (equivalent(p, xu, xv))
            CHECK(equivalent(p, u, v));
    }
}

TEST_CASE("class formulas for b x_n and b y_n", "[rewrite]")
{
    auto p = monoid_R();
    std::vector<Word> rs;
    oracle::all_words({L(Kind::A), L(Kind::C)}, 3, rs);
    for (const auto &r : rs) {
        auto c = raw_counts(r);
        for (long n = -2; n <= 2; ++n) {
            CHECK(equivalent(p, concat(r, Word{L(Kind::B), xl(n - static_cast<long>(c.raw_c))}), Word{L(Kind::B), xl(n)}));
            CHECK(equivalent(p, concat(r, Word{L(Kind::B), yl(n - static_cast<long>(c.raw_a))}), Word{L(Kind::B), yl(n)}));
        }
    }
}

TEST_CASE("left division agrees with brute force", "[rewrite]")
{
    auto p = monoid_R();
    auto rel = oracle::relations_of("R");
    auto alpha = oracle::window_alphabet(true, -1, 1);
    auto words = small_words(alpha, 3);
    for (std::size_t i = 0; i < words.size(); i += 5)
        for (const auto &x : alpha) {
            Word w = oracle::from_small(words[i]);
            Word xw{x.indexed() ? Letter(x.kind, x.n) : Letter(x.kind)};
            auto q = left_divide(p, xw, w);
            // some member of the class of w starts with x
            bool starts = false;
            for (const auto &m : oracle::rewrite_class(rel, words[i], words[i].size() + 1))
                starts = starts || (!m.empty() && m[0] == x);
            REQUIRE(q.has_value() == starts);
            if (q)
                CHECK(equivalent(p, concat(xw, *q), w));
        }
}
