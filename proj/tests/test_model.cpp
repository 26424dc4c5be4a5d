#include "fixtures.hpp"
#include "ptmatch/errors.hpp"
#include "ptmatch/pta.hpp"
#include "ptmatch/words.hpp"

#include <doctest.h>

#include <random>

using namespace ptmatch;
using ptmatch::testing::Q;

TEST_CASE("rationals stay in lowest terms and parse exactly") {
    CHECK(rational(2, 4) == rational(1, 2));
    CHECK(Q("0.5") == rational(1, 2));
    CHECK(Q("-3.25") == rational(-13, 4));
    CHECK(Q("7/10") == rational(7, 10));
    CHECK(fraction_string(Q("0.7")) == "7/10");
    CHECK(fraction_string(Q("4")) == "4");
    CHECK(decimal_string(Q("7/10")) == "0.7");
    CHECK_THROWS_AS(parse_rational("1.2.3"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
}

TEST_CASE("timed word validation") {
    CHECK_NOTHROW(TimedWord({{"a", Q("0.5")}, {"a", Q("0.9")}}));
    CHECK_THROWS_AS(TimedWord({{"a", Q("1")}, {"a", Q("1")}}), DomainError);
    CHECK_THROWS_AS(TimedWord({{"a", Q("0")}}), DomainError);
    CHECK_THROWS_AS(TimedWord({{"$", Q("1")}}), DomainError);
    CHECK_THROWS_AS(TimedWord({{"start", Q("1")}}), DomainError);
}

TEST_CASE("word_shift") {
    TimedWord w({{"a", Q("0.5")}, {"a", Q("0.9")}});
    CHECK(word_shift(w, Q("0")).events() == w.events());

    TimedWord single({{"a", Q("2.8")}});
    CHECK(word_shift(single, Q("-2")).event(1).time == Q("0.8"));

    TimedWord half({{"a", Q("0.5")}});
    CHECK_THROWS_AS(word_shift(half, Q("-0.5")), DomainError);

    // round-trip property on random shifts
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Rational shift = rational(static_cast<long>(rng() % 200), 10);
        TimedWord moved = word_shift(w, shift);
        CHECK(word_shift(moved, -shift).events() == w.events());
    }
}

TEST_CASE("word_slice uses 1-based inclusive indices") {
    TimedWord w = testing::demo_word();
    TimedWord part = word_slice(w, 7, 9);
    REQUIRE(part.size() == 3);
    CHECK(part.event(1) == Event{"a", Q("4.9")});
    CHECK(part.event(2) == Event{"a", Q("5.3")});
    CHECK(part.event(3) == Event{"a", Q("6.0")});

    CHECK(word_slice(w, 3, 3).size() == 1);
    CHECK_THROWS_AS(word_slice(w, 2, 1), DomainError);
    CHECK_THROWS_AS(word_slice(w, 0, 1), DomainError);
    CHECK_THROWS_AS(word_slice(w, 1, 10), DomainError);
}

TEST_CASE("concat_absorb juxtaposes without shifting") {
    std::vector<Event> a = {{"a", Q("1")}};
    std::vector<Event> dollar = {{"$", Q("2")}};
    std::vector<Event> joined = concat_absorb(a, dollar);
    REQUIRE(joined.size() == 2);
    CHECK(joined[0] == Event{"a", Q("1")});
    CHECK(joined[1] == Event{"$", Q("2")});

    CHECK(concat_absorb(a, {}) == a);

    // an equal-timestamp "$" tail is a valid segment
    std::vector<Event> tail = concat_absorb({{"a", Q("2.2")}}, {{"$", Q("2.2")}});
    CHECK_NOTHROW(Segment{tail});
}

TEST_CASE("word_segment on the running example") {
    TimedWord w = testing::demo_word();

    Segment s1 = word_segment(w, Q("3.8"), Q("6.0"));
    REQUIRE(s1.size() == 4);
    CHECK(s1.events()[0] == Event{"a", Q("1.1")});
    CHECK(s1.events()[1] == Event{"a", Q("1.5")});
    CHECK(s1.events()[2] == Event{"a", Q("2.2")});
    CHECK(s1.events()[3] == Event{"$", Q("2.2")});

    Segment s2 = word_segment(w, Q("2.0"), Q("3.0"));
    REQUIRE(s2.size() == 2);
    CHECK(s2.events()[0] == Event{"a", Q("0.8")});
    CHECK(s2.events()[1] == Event{"$", Q("1.0")});

    Segment s3 = word_segment(w, Q("1.4"), Q("1.5"));
    REQUIRE(s3.size() == 1);
    CHECK(s3.events()[0] == Event{"$", Q("0.1")});

    CHECK_THROWS_AS(word_segment(w, Q("2"), Q("2")), DomainError);
    CHECK_THROWS_AS(word_segment(w, Q("3"), Q("2")), DomainError);

    // window closed on both sides: an event at exactly t lands at offset 0
    Segment closed = word_segment(w, Q("0.5"), Q("0.9"));
    REQUIRE(closed.size() == 3);
    CHECK(closed.events()[0] == Event{"a", Q("0")});
    CHECK(closed.events()[1] == Event{"a", Q("0.4")});
}

TEST_CASE("word_segment properties on random windows") {
    TimedWord w = testing::demo_word();
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Rational t = rational(static_cast<long>(rng() % 70), 10);
        Rational t_prime = t + rational(static_cast<long>(rng() % 30) + 1, 10);
        Segment seg = word_segment(w, t, t_prime);
        CHECK(seg.duration() == t_prime - t);
        // every event in [t, t'] appears shifted; nothing else does
        std::size_t expected = 0;
        for (const Event& e : w.events()) {
            if (e.time >= t && e.time <= t_prime) ++expected;
        }
        CHECK(seg.size() == expected + 1);
    }
}

TEST_CASE("guard_sat") {
    Pta pta = testing::demo_pattern();
    Guard gt_p1 = {{pta.clock("x"), CmpOp::Gt, pta.parameter("p1")}};
    CHECK(guard_sat(pta, gt_p1, {{"x", Q("1.1")}}, {{"p1", Q("1")}, {"p2", Q("1")}}));
    CHECK(guard_sat(pta, {}, {{"x", Q("0")}}, {}));
    Guard eq_p = {{pta.clock("x"), CmpOp::Eq, pta.parameter("p1")}};
    CHECK_FALSE(guard_sat(pta, eq_p, {{"x", Q("2")}}, {{"p1", Q("3")}}));
    CHECK_THROWS_AS(guard_sat(pta, gt_p1, {}, {{"p1", Q("1")}}), DomainError);

    // satisfaction distributes over conjunction
    Guard both = gt_p1;
    both.push_back({pta.clock("x"), CmpOp::Lt, pta.parameter("p2")});
    ClockValuation mu{{"x", Q("1.5")}};
    ParamValuation v{{"p1", Q("1")}, {"p2", Q("2")}};
    CHECK(guard_sat(pta, both, mu, v) ==
          (guard_sat(pta, gt_p1, mu, v) &&
           guard_sat(pta, {{pta.clock("x"), CmpOp::Lt, pta.parameter("p2")}}, mu, v)));
}

TEST_CASE("valuate_pta replaces parameters and keeps structure") {
    Pta pattern = testing::demo_pattern();
    Pta fixed = valuate_pta(pattern, {{"p1", Q("1")}, {"p2", Q("1")}});
    CHECK(fixed.num_parameters() == 0);
    CHECK(fixed.num_locations() == pattern.num_locations());
    CHECK(fixed.edges().size() == pattern.edges().size());
    CHECK(fixed.action_names() == pattern.action_names());
    // first edge became x > 1
    const GuardAtom& atom = fixed.edges()[0].guard[0];
    CHECK_FALSE(atom.is_parametric());
    CHECK(std::get<Rational>(atom.rhs) == Q("1"));

    CHECK_THROWS_AS(valuate_pta(pattern, {{"p1", Q("1")}}), DomainError);

    Pta bare;
    bare.add_location("only");
    bare.set_initial(0);
    Pta same = valuate_pta(bare, {});
    CHECK(same.num_locations() == 1);
    CHECK(same.num_parameters() == 0);
}
