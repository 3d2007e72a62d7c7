#include <catch_amalgamated.hpp>

#include "lcm/catalog.hpp"
#include "lcm/groupoid.hpp"
#include "lcm/verify.hpp"

using namespace lcm;

namespace {
struct Fixture {
    Presentation p = monoid_R();
    Ideal I(const std::string &s) const { return parse_ideal(p, s); }
    HullElement H(const std::string &s) const { return parse_hull(p, s); }
    Character C(const std::string &s) const { return parse_character(p, s); }
    GroupoidElement G(const std::string &h, const std::string &c) const { return make_element(p, H(h), C(c)); }
};
} // namespace

TEST_CASE_METHOD(Fixture, "source and range", "[groupoid]")
{
    CHECK(same_character(p, range(p, G("a", "chi b x0")), C("chi b x0")));
    CHECK(same_character(p, range(p, G("b^-1 c b", "ideal X")), C("ideal X")));
    CHECK(same_character(p, range(p, G("id", "inf | d f")), C("inf | d f")));
    CHECK(same_character(p, range(p, G("c", "inf | b x0")), C("inf b x1 | b x0")));
    CHECK(same_character(p, source(G("c", "inf | b x0")), C("inf | b x0")));
    CHECK_THROWS(G("b^-1", "chi a"));
}

TEST_CASE_METHOD(Fixture, "range and source swap under inversion", "[groupoid]")
{
    auto chars = verify::sample_characters(p);
    std::vector<HullElement> hs{H("id"), H("a"), H("c"), H("b^-1 c b"), H("b^-1 a b"), H("d"), H("c^2"), H("b^-1")};
    std::size_t n = 0;
    for (const auto &c : chars)
        for (const auto &h : hs) {
            if (!evaluate(p, c, domain(p, h)))
                continue;
            auto g = make_element(p, h, c);
            auto r = range(p, g);
            auto back = make_element(p, invert(h), r);
            REQUIRE(same_character(p, range(p, back), c));
            ++n;
        }
    CHECK(n > 50);
}

TEST_CASE_METHOD(Fixture, "equality of germs", "[groupoid]")
{
    auto d = equal_paterson(p, G("a", "ideal b X"), G("id", "ideal b X"));
    CHECK(d.verdict == Verdict::True);
    REQUIRE(d.witness);
    CHECK(d.witness->base == I("b X"));
    CHECK(equal_paterson(p, G("a", "chi e"), G("id", "chi e")).verdict == Verdict::False);
    CHECK(equal_paterson(p, G("b^-1 c b", "ideal X"), G("id", "ideal X")).verdict == Verdict::False);
    CHECK(equal_paterson(p, G("a", "inf | b x0"), G("id", "inf | b x0")).verdict == Verdict::True);
    CHECK(equal_paterson(p, G("c", "inf | b x0"), G("id", "inf | b x0")).verdict == Verdict::False);
    CHECK_THROWS(equal_paterson(p, G("a", "chi e"), G("id", "chi a")));
}

TEST_CASE_METHOD(Fixture, "equality of germs on differences", "[groupoid]")
{
    CHECK(equal_spielberg(p, G("a", "ideal b X"), G("id", "ideal b X")).verdict == Verdict::True);
    auto g = G("b^-1 c b", "ideal X");
    CHECK(equal_spielberg(p, g, g).verdict == Verdict::True);
    CHECK(equal_spielberg(p, G("b^-1 c b", "ideal X"), G("id", "ideal X")).verdict == Verdict::False);
    // b Z minus b Y still holds every b y_n, which a moves
    CHECK(equal_paterson(p, G("a", "ideal b Z"), G("id", "ideal b Z")).verdict == Verdict::False);
    CHECK_FALSE(fixes_generalized(p, H("a"), parse_generalized(p, "b Z \\ b Y")));
    CHECK(equal_spielberg(p, G("a", "ideal b Z"), G("id", "ideal b Z")).verdict != Verdict::True);
    CHECK(fixes_generalized(p, H("a"), parse_generalized(p, "b X \\ b x0 a R")));
}

TEST_CASE_METHOD(Fixture, "the coarser equivalence contains the finer one", "[groupoid]")
{
    auto chars = verify::sample_characters(p);
    std::vector<HullElement> hs{H("id"), H("a"), H("c"), H("b^-1 c b"), H("b^-1 a b"), H("d"), H("f")};
    std::size_t pairs = 0;
    for (const auto &c : chars)
        for (const auto &h1 : hs)
            for (const auto &h2 : hs) {
                if (!evaluate(p, c, domain(p, h1)) || !evaluate(p, c, domain(p, h2)))
                    continue;
                auto g1 = make_element(p, h1, c), g2 = make_element(p, h2, c);
                auto pat = equal_paterson(p, g1, g2);
                if (pat.verdict == Verdict::True)
                    REQUIRE(equal_spielberg(p, g1, g2).verdict == Verdict::True);
                ++pairs;
            }
    CHECK(pairs > 200);
}

TEST_CASE_METHOD(Fixture, "regularity instances", "[groupoid]")
{
    RegInstance bz{I("b Z"), {}, {H("a"), H("c")}};
    auto sb = check_strong_boundary_instance(p, bz);
    REQUIRE(sb.kind == WitnessKind::Witness);
    REQUIRE(sb.items.size() == 2);
    CHECK(sb.items[0].first.base == I("b X"));
    CHECK(sb.items[0].second == 1);
    CHECK(sb.items[1].first.base == I("b Y"));
    CHECK(sb.items[1].second == 2);
    CHECK(check_regularity_instance(p, bz).kind == WitnessKind::ProvedImpossible);
    CHECK(check_strong_regularity_instance(p, bz).kind == WitnessKind::ProvedImpossible);
    CHECK(check_boundary_instance(p, bz).kind == WitnessKind::Witness);

    auto empty = check_strong_regularity_instance(p, RegInstance{I("0"), {}, {H("a")}});
    CHECK(empty.kind == WitnessKind::ProvedImpossible);
    CHECK(empty.reason == "empty hypothesis set");

    auto f = free_monoid(2);
    auto fr = check_strong_regularity_instance(f, RegInstance{parse_ideal(f, "a R"), {}, {HullElement::identity()}});
    REQUIRE(fr.kind == WitnessKind::Witness);
    REQUIRE(fr.items.size() == 1);
    CHECK(fr.items[0].second == 1);
}

TEST_CASE_METHOD(Fixture, "witness entries are fixed and conclusive", "[groupoid]")
{
    auto pool = standard_pool(p, 60);
    REQUIRE(pool.size() == 60);
    for (const auto &in : pool) {
        auto r = check_strong_boundary_instance(p, in);
        REQUIRE(r.kind == WitnessKind::Witness);
        std::vector<Ideal> fam = in.xs;
        for (const auto &[y, k] : r.items) {
            REQUIRE(k >= 1);
            REQUIRE(k <= in.hs.size());
            REQUIRE(y.minus.empty());
            REQUIRE(fixes_ideal(p, in.hs[k - 1], y.base));
            fam.push_back(y.base);
        }
        REQUIRE(is_foundation(p, in.x, fam).foundation);
    }
}

TEST_CASE_METHOD(Fixture, "regularity hierarchy", "[groupoid]")
{
    std::vector<RegInstance> ins{{I("b Z"), {}, {H("a"), H("c")}},
                                 {I("R"), {}, {H("id")}},
                                 {I("b X"), {}, {H("a")}},
                                 {I("b Y"), {}, {H("c")}},
                                 {I("b Z"), {I("b Y")}, {H("a")}},
                                 {I("b x0 R"), {}, {H("id")}}};
    for (const auto &in : ins) {
        auto strong = check_strong_regularity_instance(p, in);
        auto plain = check_regularity_instance(p, in);
        auto sb = check_strong_boundary_instance(p, in);
        auto b = check_boundary_instance(p, in);
        if (strong.kind == WitnessKind::Witness)
            CHECK(plain.kind == WitnessKind::Witness);
        if (sb.kind == WitnessKind::Witness)
            CHECK(b.kind == WitnessKind::Witness);
        if (strong.kind == WitnessKind::Witness)
            CHECK(sb.kind == WitnessKind::Witness);
    }
}

TEST_CASE_METHOD(Fixture, "hypothesis violations are reported", "[groupoid]")
{
    auto r = check_strong_regularity_instance(p, RegInstance{I("b Z"), {}, {H("c")}});
    CHECK(r.kind == WitnessKind::HypothesisViolated);
    REQUIRE(r.counterexample);
    CHECK(contains(p, I("b Z"), *r.counterexample));
    CHECK(apply(p, H("c"), *r.counterexample) != normal_form(p, *r.counterexample));
}

TEST_CASE_METHOD(Fixture, "boundary equality criterion", "[groupoid]")
{
    auto pool = standard_pool(p);
    auto rep = check_boundary_equality_criterion(p, pool);
    CHECK(rep.witness == pool.size());
    CHECK(rep.impossible == 0);

    auto s5 = monoid_S5();
    RegInstance s5in{parse_ideal(s5, "b Z"), {parse_ideal(s5, "b V")}, {HullElement::mul({Letter(Kind::A)})}};
    auto s5rep = check_boundary_equality_criterion(s5, {s5in});
    CHECK(s5rep.impossible == 1);

    auto f = free_monoid(2);
    auto fpool = standard_pool(f);
    REQUIRE_FALSE(fpool.empty());
    auto frep = check_boundary_equality_criterion(f, fpool);
    CHECK(frep.witness == fpool.size());

    CHECK_THROWS(check_boundary_equality_criterion(p, {RegInstance{I("b Z"), {}, {H("a"), H("c")}}}));
}

TEST_CASE_METHOD(Fixture, "means", "[groupoid]")
{
    auto m = mean(p, C("inf | b x0"), 2);
    REQUIRE(m.support.size() == 2);
    CHECK(format_hull(m.support[0].h) == "b^-1");
    CHECK(format_hull(m.support[1].h) == "x_0^-1 b^-1");
    CHECK(m.weights[0] == Rational(1, 2));

    auto x = mean(p, C("ideal X"), 3);
    REQUIRE(x.support.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        HullElement want;
        want.moves.push_back(Move{true, {}});
        want.moves.push_back(Move{false, {Letter(Kind::B)}});
        for (std::size_t k = 0; k <= i; ++k)
            want.moves.push_back(Move{true, {Letter(Kind::C)}});
        for (const auto &w : std::vector<Word>{parse_word("x_0"), parse_word("x_-3 a"), parse_word("x_2 b y_0")})
            CHECK(apply(p, x.support[i].h, w) == apply(p, want, w));
        CHECK(x.weights[i] == Rational(1, 3));
    }
    auto one = mean(p, C("ideal a b Y"), 1);
    REQUIRE(one.support.size() == 1);
    CHECK(one.weights[0] == Rational(1));
    CHECK_THROWS(mean(p, C("chi b x0"), 3));
    CHECK_THROWS(mean(p, C("inf | d f"), 0));
}

TEST_CASE_METHOD(Fixture, "means are normalized and spread", "[groupoid]")
{
    auto chars = verify::sample_characters(p);
    for (const auto &c : chars) {
        if (!in_boundary(p, c))
            continue;
        for (std::size_t n : {1, 2, 5, 9}) {
            auto m = mean(p, c, n);
            REQUIRE(m.support.size() == n);
            Rational sum(0);
            for (const auto &w : m.weights) {
                REQUIRE(w > Rational(0));
                sum += w;
            }
            REQUIRE(sum == Rational(1));
        }
    }
}

TEST_CASE_METHOD(Fixture, "mean deviations", "[groupoid]")
{
    auto shift = G("b^-1 c b", "ideal X");
    for (std::size_t n : {4, 8, 16})
        CHECK(mean_deviation(p, shift, n) == Rational(2, static_cast<long long>(n)));
    for (std::string c : {"ideal X", "ideal a b Y", "inf | b x0", "inf b x0 | c"})
        CHECK(mean_deviation(p, G("id", c), 6) == Rational(0));
    auto step = G("c", "inf | b x0");
    for (std::size_t n : {2, 4, 8})
        CHECK(mean_deviation(p, step, n) == Rational(2, static_cast<long long>(n)));
}

TEST_CASE_METHOD(Fixture, "mean deviations halve when n doubles", "[groupoid]")
{
    for (const auto &g : {G("b^-1 c b", "ideal X"), G("c", "inf | b x0"), G("b^-1 a b", "ideal Y")})
        for (std::size_t n : {2, 4, 8, 16, 32})
            CHECK(mean_deviation(p, g, 2 * n) * Rational(2) == mean_deviation(p, g, n));
}
