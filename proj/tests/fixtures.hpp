#pragma once

#include "ptmatch/pta.hpp"
#include "ptmatch/rational.hpp"
#include "ptmatch/words.hpp"

#include <string>
#include <vector>

namespace ptmatch::testing {

inline Rational Q(const std::string& text) { return parse_rational(text); }

/// a a b b a a a a a at 0.5 0.9 1.3 1.7 2.8 3.7 4.9 5.3 6.0
inline TimedWord demo_word() {
    std::vector<Event> events;
    const char* actions[] = {"a", "a", "b", "b", "a", "a", "a", "a", "a"};
    const char* times[] = {"0.5", "0.9", "1.3", "1.7", "2.8", "3.7", "4.9", "5.3", "6.0"};
    for (int i = 0; i < 9; ++i) events.push_back({actions[i], Q(times[i])});
    return TimedWord(std::move(events));
}

/// Three a's, the first later than p1 after the match start, the following
/// two within p2 of their predecessor, then $.
inline Pta demo_pattern() {
    Pta pta;
    int l0 = pta.add_location("l0");
    int l1 = pta.add_location("l1");
    int l2 = pta.add_location("l2");
    int l3 = pta.add_location("l3");
    int l4 = pta.add_location("l4", true);
    int x = pta.add_clock("x");
    int p1 = pta.add_parameter("p1");
    int p2 = pta.add_parameter("p2");
    int a = pta.add_action("a");
    pta.add_action("b");
    int dollar = pta.add_action(kTerminalAction);
    pta.set_initial(l0);
    pta.add_edge({l0, {{x, CmpOp::Gt, p1}}, a, {x}, l1});
    pta.add_edge({l1, {{x, CmpOp::Lt, p2}}, a, {x}, l2});
    pta.add_edge({l2, {{x, CmpOp::Lt, p2}}, a, {}, l3});
    pta.add_edge({l3, {}, dollar, {}, l4});
    return pta;
}

/// g1 followed by g2 within p.
inline Pta gear_pattern() {
    Pta pta;
    int s0 = pta.add_location("s0");
    int s1 = pta.add_location("s1");
    int s2 = pta.add_location("s2");
    int ok = pta.add_location("ok", true);
    int x = pta.add_clock("x");
    int p = pta.add_parameter("p");
    int g1 = pta.add_action("g1");
    int g2 = pta.add_action("g2");
    pta.add_action("g3");
    pta.add_action("g4");
    int dollar = pta.add_action(kTerminalAction);
    pta.set_initial(s0);
    pta.add_edge({s0, {}, g1, {x}, s1});
    pta.add_edge({s1, {{x, CmpOp::Lt, p}}, g2, {}, s2});
    pta.add_edge({s2, {}, dollar, {}, ok});
    return pta;
}

/// Gear change 1 -> 2 -> 3 -> 4 within p, an rpmHigh anywhere along it,
/// and nothing for one second after the last change.
inline Pta accel_pattern() {
    Pta pta;
    int q0 = pta.add_location("q0");
    int q1 = pta.add_location("q1");
    int q2 = pta.add_location("q2");
    int q3 = pta.add_location("q3");
    int q4 = pta.add_location("q4");
    int r0 = pta.add_location("r0");
    int r1 = pta.add_location("r1");
    int r2 = pta.add_location("r2");
    int r3 = pta.add_location("r3");
    int r4 = pta.add_location("r4");
    int ok = pta.add_location("ok", true);
    int x = pta.add_clock("x");
    int p = pta.add_parameter("p");
    int g1 = pta.add_action("g1");
    int g2 = pta.add_action("g2");
    int g3 = pta.add_action("g3");
    int g4 = pta.add_action("g4");
    int rpm = pta.add_action("rpmHigh");
    int dollar = pta.add_action(kTerminalAction);
    pta.set_initial(q0);
    pta.add_edge({q0, {}, g1, {}, q1});
    pta.add_edge({q1, {}, g2, {}, q2});
    pta.add_edge({q2, {}, g3, {}, q3});
    pta.add_edge({q3, {{x, CmpOp::Le, p}}, g4, {x}, q4});
    pta.add_edge({q0, {}, rpm, {}, r0});
    pta.add_edge({q1, {}, rpm, {}, r1});
    pta.add_edge({q2, {}, rpm, {}, r2});
    pta.add_edge({q3, {}, rpm, {}, r3});
    pta.add_edge({q4, {}, rpm, {}, r4});
    pta.add_edge({r0, {}, g1, {}, r1});
    pta.add_edge({r1, {}, g2, {}, r2});
    pta.add_edge({r2, {}, g3, {}, r3});
    pta.add_edge({r3, {{x, CmpOp::Le, p}}, g4, {x}, r4});
    pta.add_edge({r4, {{x, CmpOp::Gt, Rational(1)}}, dollar, {}, ok});
    return pta;
}

/// a (resetting y), then loops b / a with the loop taking between p3 and
/// p2, ending with $ exactly p1 after the match start.
inline Pta blowup_pattern() {
    Pta pta;
    int l1 = pta.add_location("l1");
    int l2 = pta.add_location("l2");
    int l3 = pta.add_location("l3");
    int l4 = pta.add_location("l4", true);
    int x = pta.add_clock("x");
    int y = pta.add_clock("y");
    int p1 = pta.add_parameter("p1");
    int p2 = pta.add_parameter("p2");
    int p3 = pta.add_parameter("p3");
    int a = pta.add_action("a");
    int b = pta.add_action("b");
    int dollar = pta.add_action(kTerminalAction);
    pta.set_initial(l1);
    pta.add_edge({l1, {}, a, {y}, l2});
    pta.add_edge({l2, {{x, CmpOp::Lt, p1}}, b, {}, l3});
    pta.add_edge({l3, {{x, CmpOp::Eq, p1}}, dollar, {}, l4});
    pta.add_edge({l3, {{y, CmpOp::Ge, p3}, {y, CmpOp::Lt, p2}}, a, {y}, l2});
    return pta;
}

} // namespace ptmatch::testing
