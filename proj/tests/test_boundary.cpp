#include <catch_amalgamated.hpp>

#include <random>

#include "lcm/catalog.hpp"
#include "lcm/oracle.hpp"
#include "lcm/verify.hpp"

using namespace lcm;

namespace {
Word W(const std::string &s) { return s.empty() ? Word{} : parse_word(s); }

struct Fixture {
    Presentation p = monoid_R();
    Ideal I(const std::string &s) const { return parse_ideal(p, s); }
    Character C(const std::string &s) const { return parse_character(p, s); }
};

std::vector<Ideal> pool(const Presentation &p, std::size_t len)
{
    std::vector<Word> ws, nf;
    oracle::all_words({L(Kind::A), L(Kind::B), L(Kind::C), L(Kind::D), L(Kind::F), xl(0), xl(1), yl(0)}, len, ws);
    for (const auto &w : ws)
        nf.push_back(normal_form(p, w));
    return oracle::canonical_pool(p, nf);
}
} // namespace

TEST_CASE_METHOD(Fixture, "evaluation", "[boundary]")
{
    CHECK(evaluate(p, C("inf | b x0"), I("b x_0 R")));
    CHECK(evaluate(p, C("ideal X"), I("Z")));
    CHECK_FALSE(evaluate(p, C("ideal X"), I("x_0 R")));
    CHECK(evaluate(p, C("chi a b x0"), I("b R")));
    CHECK_FALSE(evaluate(p, C("chi b x0"), I("0")));
    CHECK(evaluate(p, C("inf | b x0"), full_ideal()));
}

TEST_CASE_METHOD(Fixture, "evaluation on differences", "[boundary]")
{
    CHECK(evaluate_generalized(p, C("inf | b x0"), parse_generalized(p, "b Z \\ b Y")));
    CHECK_FALSE(evaluate_generalized(p, C("inf | b x0"), GeneralizedIdeal{I("0"), {}}));
    CHECK_FALSE(evaluate_generalized(p, C("ideal b Y"), parse_generalized(p, "b Z \\ b Y")));
}

TEST_CASE_METHOD(Fixture, "character syntax", "[boundary]")
{
    CHECK(std::holds_alternative<PrincipalChar>(C("ideal b x0 R")));
    CHECK(std::holds_alternative<IdealChar>(C("ideal b X")));
    CHECK(same_character(p, C("inf b x0 | b x0"), C("inf | b x0")));
    CHECK(format_character(C("chi a b x0")) == "chi b x_0");
    CHECK_THROWS(C("inf | a b x0"));
    CHECK_THROWS(C("ideal 0"));
    CHECK_THROWS_AS(C("phi a"), parse_error);
}

TEST_CASE_METHOD(Fixture, "membership in the spectrum and maximality", "[boundary]")
{
    CHECK(in_omega(p, C("chi a")) == Verdict::True);
    CHECK(in_omega(p, C("ideal b X")) == Verdict::True);
    CHECK(in_omega(p, C("ideal b x0 R")) == Verdict::True);
    CHECK(in_omega(p, C("ideal b P")) == Verdict::False);
    CHECK(is_maximal(p, C("inf | b x0")) == Verdict::True);
    CHECK(is_maximal(p, C("ideal b X")) == Verdict::False);
    CHECK(is_maximal(p, C("inf b x0 | a")) == Verdict::False);
    CHECK(is_maximal(p, C("chi b")) == Verdict::False);
    auto s5 = monoid_S5();
    CHECK(is_maximal(s5, parse_character(s5, "inf | b x0")) == Verdict::Unknown);
}

TEST_CASE_METHOD(Fixture, "boundary classification", "[boundary]")
{
    CHECK(classify_boundary(p, C("ideal a b Y")) == BoundaryClass::IdealY);
    CHECK(classify_boundary(p, C("ideal c X")) == BoundaryClass::IdealX);
    CHECK(classify_boundary(p, C("chi b x0")) == BoundaryClass::NotBoundary);
    CHECK(classify_boundary(p, C("inf | d f")) == BoundaryClass::MaxType1);
    CHECK(classify_boundary(p, C("inf b x0 | c")) == BoundaryClass::WordType2);
    CHECK_FALSE(in_boundary(p, C("chi b x0")));
    CHECK_THROWS(classify_boundary(monoid_S4(), C("inf | d f")));
    // chi_{b x_0} is charged by a clopen set disjoint from the boundary
    std::vector<Ideal> seven;
    for (std::string l : {"a", "b", "c", "d", "f"})
        seven.push_back(I("b x0 " + l + " R"));
    seven.push_back(I("b x0 X"));
    seven.push_back(I("b x0 Y"));
    CHECK(clopen_disjoint_from_boundary(p, I("b x0 R"), seven));
    auto u = GeneralizedIdeal{I("b x0 R"), seven};
    CHECK(evaluate_generalized(p, C("chi b x0"), u));
}

TEST_CASE_METHOD(Fixture, "clopen sets disjoint from the boundary", "[boundary]")
{
    CHECK(clopen_disjoint_from_boundary(p, I("b Z"), {I("b X"), I("b Y")}));
    CHECK_FALSE(clopen_disjoint_from_boundary(p, I("b Z"), {I("b x0 R")}));
    CHECK(evaluate_generalized(p, C("ideal b X"), parse_generalized(p, "b Z \\ b x0 R")));
    CHECK(clopen_disjoint_from_boundary(p, I("c b X"), {I("c b X")}));
}

TEST_CASE_METHOD(Fixture, "separating neighbourhoods", "[boundary]")
{
    auto w = parse_infinite("inf | b x0");
    auto u = separating_neighbourhood(p, w, 2);
    CHECK(u.one == I("b x0 R"));
    CHECK(u.zero.empty());
    auto v = separating_neighbourhood(p, parse_infinite("inf a a | d"), 2);
    CHECK(std::find(v.zero.begin(), v.zero.end(), I("a b Z")) != v.zero.end());
    auto t = separating_neighbourhood(p, parse_infinite("inf | b x0"), 1);
    CHECK(t.zero.empty());
    CHECK(t.one == I("b R"));
    CHECK_THROWS(separating_neighbourhood(p, w, 0));
}

TEST_CASE_METHOD(Fixture, "neighbourhoods pin the first letters", "[boundary]")
{
    auto chars = verify::sample_characters(p);
    for (const auto &c : chars) {
        auto *wc = std::get_if<WordChar>(&c);
        if (!wc)
            continue;
        for (std::size_t n = 1; n <= 4; ++n) {
            auto u = separating_neighbourhood(p, wc->w, n);
            CHECK(matches(p, c, u));
            for (const auto &d : chars) {
                auto *vc = std::get_if<WordChar>(&d);
                if (vc && matches(p, d, u))
                    CHECK(normal_form(p, vc->w.truncate(n)) == normal_form(p, wc->w.truncate(n)));
            }
        }
    }
}

TEST_CASE_METHOD(Fixture, "characters are multiplicative filters", "[boundary]")
{
    auto chars = verify::sample_characters(p);
    auto ideals = pool(p, 2);
    std::mt19937 rng(9);
    for (const auto &c : chars)
        for (int k = 0; k < 200; ++k) {
            const auto &a = ideals[rng() % ideals.size()];
            const auto &b = ideals[rng() % ideals.size()];
            bool ea = evaluate(p, c, a), eb = evaluate(p, c, b);
            REQUIRE(evaluate(p, c, intersect(p, a, b)) == (ea && eb));
            if (ea && subset(p, a, b))
                REQUIRE(eb);
        }
}

TEST_CASE_METHOD(Fixture, "word characters stabilise", "[boundary]")
{
    auto chars = verify::sample_characters(p);
    auto ideals = pool(p, 2);
    for (const auto &c : chars) {
        auto *wc = std::get_if<WordChar>(&c);
        if (!wc)
            continue;
        for (const auto &a : ideals) {
            std::size_t n = truncation_depth(wc->w, a);
            bool v = evaluate(p, c, a);
            REQUIRE(contains(p, a, wc->w.truncate(2 * n)) == v);
            REQUIRE(oracle::member("R", a, wc->w.truncate(n)) == v);
        }
    }
}

TEST_CASE_METHOD(Fixture, "distinct words give distinct characters", "[boundary]")
{
    auto chars = verify::sample_characters(p);
    auto ideals = pool(p, 3);
    for (std::size_t i = 0; i < chars.size(); ++i)
        for (std::size_t j = i + 1; j < chars.size(); ++j) {
            auto *u = std::get_if<WordChar>(&chars[i]);
            auto *v = std::get_if<WordChar>(&chars[j]);
            if (!u || !v)
                continue;
            // first disagreement of the two streams
            std::size_t k = 0;
            while (k < 40 && u->w.truncate(k + 1) == v->w.truncate(k + 1))
                ++k;
            REQUIRE(k < 40);
            Ideal a = principal(p, u->w.truncate(k + 1));
            bool separated = evaluate(p, chars[i], a) != evaluate(p, chars[j], a);
            if (!separated)
                for (const auto &b : ideals)
                    separated = separated || evaluate(p, chars[i], b) != evaluate(p, chars[j], b);
            CHECK(separated);
        }
}

TEST_CASE_METHOD(Fixture, "maximal characters separate from every uncharged ideal", "[boundary]")
{
    auto ideals = pool(p, 3);
    for (const auto &c : verify::sample_characters(p)) {
        if (is_maximal(p, c) != Verdict::True)
            continue;
        const auto &w = std::get<WordChar>(c).w;
        for (const auto &a : ideals)
            if (!evaluate(p, c, a))
                REQUIRE(maximality_witness(p, c, a, w.prefix.size() + 2 * w.period.size() + 8));
    }
    // a type 2 word is not maximal: b x_0 b x_0 R is uncharged yet meets every charged ideal
    auto t2 = C("inf b x0 | a");
    CHECK_FALSE(evaluate(p, t2, I("b x0 b x0 R")));
    CHECK_FALSE(maximality_witness(p, t2, I("b x0 b x0 R"), 12).has_value());
}
