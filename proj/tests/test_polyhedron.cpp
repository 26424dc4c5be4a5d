#include "fixtures.hpp"
#include "ptmatch/errors.hpp"
#include "ptmatch/polyhedron.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace ptmatch;
using ptmatch::testing::Q;

namespace {

VarSpacePtr xy_space() {
    return VarSpace::make({{"x", VarKind::Clock}, {"y", VarKind::Clock}});
}

VarSpacePtr tp_space() {
    return VarSpace::make({{"t", VarKind::Parameter},
                           {"p1", VarKind::Parameter},
                           {"p2", VarKind::Parameter}});
}

bool sem_equal(const ConvexPoly& a, const ConvexPoly& b) {
    return a.includes(b) && b.includes(a);
}

/// Random not-necessarily-closed polyhedra with small integer data.
struct PolyGen {
    std::mt19937 rng;
    explicit PolyGen(unsigned seed) : rng(seed) {}

    Integer small(int span) {
        return Integer(static_cast<int>(rng() % (2 * span + 1)) - span);
    }

    LinAtom atom(const VarSpacePtr& space) {
        LinAtom out;
        out.coeffs.assign(static_cast<std::size_t>(space->dim()), Integer(0));
        for (int v = 0; v < space->dim(); ++v) {
            out.coeffs[static_cast<std::size_t>(v)] = small(3);
        }
        out.constant = small(6);
        unsigned kind = rng() % 5;
        out.rel = kind < 2 ? Rel::Le : (kind < 4 ? Rel::Lt : Rel::Eq);
        return out;
    }

    ConvexPoly poly(const VarSpacePtr& space, int max_atoms) {
        std::vector<LinAtom> atoms;
        int count = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_atoms));
        for (int i = 0; i < count; ++i) atoms.push_back(atom(space));
        return ConvexPoly(space, std::move(atoms));
    }

    Rational point_coord() { return Rational(static_cast<int>(rng() % 25) - 12, 1 + rng() % 4); }
};

bool satisfies_atoms(const std::vector<LinAtom>& atoms, const std::vector<Rational>& point) {
    for (const LinAtom& atom : atoms) {
        Rational value = atom.constant;
        for (std::size_t i = 0; i < point.size(); ++i) value += atom.coeffs[i] * point[i];
        switch (atom.rel) {
            case Rel::Le:
                if (!(value <= 0)) return false;
                break;
            case Rel::Lt:
                if (!(value < 0)) return false;
                break;
            case Rel::Eq:
                if (value != 0) return false;
                break;
        }
    }
    return true;
}

/// Complete 2-var satisfiability by candidate enumeration: the x-projection
/// of a planar polyhedron changes shape only at x-coordinates of pairwise
/// boundary intersections, so those values, midpoints between them and
/// points beyond the extremes cover every case; per x the y-interval is
/// computed directly.
bool plane_satisfiable(const std::vector<LinAtom>& atoms) {
    auto ratio = [](const Integer& num, const Integer& den) {
        Rational q(num, den);
        q.canonicalize();
        return q;
    };
    std::vector<Rational> candidates = {Rational(0)};
    auto boundary_x = [&](const LinAtom& a, const LinAtom& b) -> std::optional<Rational> {
        Integer det = a.coeffs[0] * b.coeffs[1] - a.coeffs[1] * b.coeffs[0];
        if (det == 0) return std::nullopt;
        return ratio(-a.constant * b.coeffs[1] + a.coeffs[1] * b.constant, det);
    };
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i].coeffs[1] == 0 && atoms[i].coeffs[0] != 0) {
            candidates.push_back(ratio(-atoms[i].constant, atoms[i].coeffs[0]));
        }
        for (std::size_t j = i + 1; j < atoms.size(); ++j) {
            auto x = boundary_x(atoms[i], atoms[j]);
            if (x) candidates.push_back(*x);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<Rational> probes;
    probes.push_back(candidates.front() - 1);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        probes.push_back(candidates[i]);
        if (i + 1 < candidates.size()) {
            probes.push_back((candidates[i] + candidates[i + 1]) / 2);
        }
    }
    probes.push_back(candidates.back() + 1);

    for (const Rational& x : probes) {
        std::optional<std::pair<Rational, bool>> lower, upper; // value, strict
        bool feasible = true;
        for (const LinAtom& atom : atoms) {
            Rational residue = atom.coeffs[0] * x + atom.constant;
            const Integer& cy = atom.coeffs[1];
            if (cy == 0) {
                bool ok = atom.rel == Rel::Eq   ? residue == 0
                          : atom.rel == Rel::Le ? residue <= 0
                                                : residue < 0;
                if (!ok) {
                    feasible = false;
                    break;
                }
                continue;
            }
            Rational bound = -residue / Rational(cy);
            bool strict = atom.rel == Rel::Lt;
            auto feed_upper = [&](const Rational& v, bool s) {
                if (!upper || v < upper->first || (v == upper->first && s)) upper = {{v, s}};
            };
            auto feed_lower = [&](const Rational& v, bool s) {
                if (!lower || v > lower->first || (v == lower->first && s)) lower = {{v, s}};
            };
            if (atom.rel == Rel::Eq) {
                feed_upper(bound, false);
                feed_lower(bound, false);
            } else if (cy > 0) {
                feed_upper(bound, strict);
            } else {
                feed_lower(bound, strict);
            }
        }
        if (!feasible) continue;
        if (lower && upper) {
            if (lower->first > upper->first) continue;
            if (lower->first == upper->first && (lower->second || upper->second)) continue;
        }
        return true;
    }
    return false;
}

} // namespace

TEST_CASE("conjoin") {
    VarSpacePtr space = xy_space();
    ConvexPoly universe = ConvexPoly::universe(space);
    LinAtom x_le_2 = lin_atom(space, {{0, Q("1")}}, Q("-2"), Rel::Le);

    ConvexPoly bounded = universe.conjoin({x_le_2});
    CHECK(bounded.atoms().size() == 1);
    CHECK_FALSE(bounded.is_empty());

    LinAtom x_gt_2 = lin_atom(space, {{0, Q("-1")}}, Q("2"), Rel::Lt);
    CHECK(bounded.conjoin({x_gt_2}).is_empty());

    VarSpacePtr mixed = VarSpace::make({{"x", VarKind::Clock}, {"p1", VarKind::Parameter}});
    ConvexPoly guard = ConvexPoly::universe(mixed).conjoin(
        {lin_atom(mixed, {{0, Q("-1")}, {1, Q("1")}}, Q("0"), Rel::Lt),   // x > p1
         lin_atom(mixed, {{0, Q("1")}}, Q("-1.1"), Rel::Eq)});            // x = 1.1
    CHECK(guard.atoms().size() == 2);
    CHECK_FALSE(guard.is_empty());
}

TEST_CASE("is_empty") {
    VarSpacePtr space = xy_space();
    ConvexPoly contradictory = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}}, Q("-2"), Rel::Le),
         lin_atom(space, {{0, Q("-1")}}, Q("2"), Rel::Lt)});
    CHECK(contradictory.is_empty());

    ConvexPoly open_interval = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}}, Q("-2"), Rel::Lt),
         lin_atom(space, {{0, Q("-1")}}, Q("1"), Rel::Lt)});
    CHECK_FALSE(open_interval.is_empty());

    VarSpacePtr params = tp_space();
    ConvexPoly point_gap = ConvexPoly::universe(params).conjoin(
        {lin_atom(params, {{2, Q("-1")}}, Q("1.2"), Rel::Lt),
         lin_atom(params, {{2, Q("1")}}, Q("-1.2"), Rel::Lt)});
    CHECK(point_gap.is_empty());
}

TEST_CASE("eliminate") {
    VarSpacePtr space = xy_space();
    // {x - y <= 0, y < 2} projected over y gives {x < 2}
    ConvexPoly poly = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}, {1, Q("-1")}}, Q("0"), Rel::Le),
         lin_atom(space, {{1, Q("1")}}, Q("-2"), Rel::Lt)});
    ConvexPoly shadow = poly.eliminate({1});
    ConvexPoly expected = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}}, Q("-2"), Rel::Lt)});
    CHECK(sem_equal(shadow, expected));

    VarSpacePtr mixed = VarSpace::make({{"x", VarKind::Clock}, {"p", VarKind::Parameter}});
    ConvexPoly pinned = ConvexPoly::universe(mixed).conjoin(
        {lin_atom(mixed, {{0, Q("1")}, {1, Q("-1")}}, Q("0"), Rel::Eq)});
    CHECK(sem_equal(pinned.eliminate({0}), ConvexPoly::universe(mixed)));
}

TEST_CASE("eliminate against a grid oracle") {
    // {t < 2.8 - p1, t > 1.7} over t leaves exactly {p1 < 1.1}
    VarSpacePtr space = VarSpace::make({{"t", VarKind::Parameter}, {"p1", VarKind::Parameter}});
    ConvexPoly poly = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}, {1, Q("1")}}, Q("-2.8"), Rel::Lt),
         lin_atom(space, {{0, Q("-1")}}, Q("1.7"), Rel::Lt)});
    ConvexPoly shadow = poly.eliminate({0});

    for (int num = 0; num <= 40; ++num) {
        Rational p1 = rational(num, 20); // grid over [0, 2]
        bool feasible = Q("1.7") < Q("2.8") - p1; // 1-d feasibility of t
        ConvexPoly slice = shadow.substitute(1, p1);
        CHECK(slice.is_empty() == !feasible);
    }
}

TEST_CASE("time_elapse") {
    VarSpacePtr space = xy_space();
    ConvexPoly origin = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}}, Q("0"), Rel::Eq),
         lin_atom(space, {{1, Q("1")}}, Q("0"), Rel::Eq)});
    ConvexPoly diagonal = origin.time_elapse();
    ConvexPoly expected = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}, {1, Q("-1")}}, Q("0"), Rel::Eq),
         lin_atom(space, {{0, Q("-1")}}, Q("0"), Rel::Le)});
    CHECK(sem_equal(diagonal, expected));

    VarSpacePtr mixed = VarSpace::make({{"x", VarKind::Clock}, {"p", VarKind::Parameter}});
    ConvexPoly state = ConvexPoly::universe(mixed).conjoin(
        {lin_atom(mixed, {{0, Q("1")}}, Q("-1"), Rel::Eq),
         lin_atom(mixed, {{1, Q("1")}}, Q("-2"), Rel::Eq)});
    ConvexPoly flowed = state.time_elapse();
    ConvexPoly expected_mixed = ConvexPoly::universe(mixed).conjoin(
        {lin_atom(mixed, {{0, Q("-1")}}, Q("1"), Rel::Le),
         lin_atom(mixed, {{1, Q("1")}}, Q("-2"), Rel::Eq)});
    CHECK(sem_equal(flowed, expected_mixed));
}

TEST_CASE("reset") {
    VarSpacePtr space = xy_space();
    ConvexPoly state = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}}, Q("-3"), Rel::Eq),
         lin_atom(space, {{1, Q("1")}}, Q("-5"), Rel::Eq)});
    ConvexPoly after = state.reset({0});
    ConvexPoly expected = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}}, Q("0"), Rel::Eq),
         lin_atom(space, {{1, Q("1")}}, Q("-5"), Rel::Eq)});
    CHECK(sem_equal(after, expected));

    CHECK(sem_equal(state.reset({}), state));

    VarSpacePtr mixed = VarSpace::make({{"x", VarKind::Clock}, {"p", VarKind::Parameter}});
    ConvexPoly above = ConvexPoly::universe(mixed).conjoin(
        {lin_atom(mixed, {{0, Q("-1")}, {1, Q("1")}}, Q("0"), Rel::Lt)}); // x > p
    ConvexPoly zeroed = above.reset({0});
    ConvexPoly just_zero = ConvexPoly::universe(mixed).conjoin(
        {lin_atom(mixed, {{0, Q("1")}}, Q("0"), Rel::Eq)});
    CHECK(sem_equal(zeroed, just_zero));
}

TEST_CASE("includes") {
    VarSpacePtr space = xy_space();
    ConvexPoly le2 = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}}, Q("-2"), Rel::Le)});
    ConvexPoly lt1 = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}}, Q("-1"), Rel::Lt)});
    ConvexPoly le1 = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}}, Q("-1"), Rel::Le)});
    CHECK(le2.includes(lt1));
    CHECK_FALSE(lt1.includes(le1)); // the boundary point x = 1 is outside
    ConvexPoly empty = le2.conjoin({lin_atom(space, {{0, Q("-1")}}, Q("3"), Rel::Le)});
    REQUIRE(empty.is_empty());
    CHECK(lt1.includes(empty));
}

TEST_CASE("substitute") {
    VarSpacePtr space = VarSpace::make({{"t", VarKind::Parameter}, {"p1", VarKind::Parameter}});
    ConvexPoly poly = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}, {1, Q("1")}}, Q("-2.8"), Rel::Lt)}); // t < 2.8 - p1
    ConvexPoly fixed = poly.substitute(1, Q("1"));
    CHECK(fixed.space()->dim() == 1);
    CHECK(fixed.space()->name(0) == "t");
    VarSpacePtr t_only = fixed.space();
    CHECK(sem_equal(fixed, ConvexPoly::universe(t_only).conjoin(
                               {lin_atom(t_only, {{0, Q("1")}}, Q("-1.8"), Rel::Lt)})));

    VarSpacePtr param = VarSpace::make({{"p2", VarKind::Parameter}});
    ConvexPoly above_12 = ConvexPoly::universe(param).conjoin(
        {lin_atom(param, {{0, Q("-1")}}, Q("1.2"), Rel::Lt)});
    CHECK(above_12.substitute(0, Q("1")).is_empty());

    ConvexPoly above_07 = ConvexPoly::universe(param).conjoin(
        {lin_atom(param, {{0, Q("-1")}}, Q("0.7"), Rel::Lt)});
    ConvexPoly residue = above_07.substitute(0, Q("1"));
    CHECK_FALSE(residue.is_empty());
    CHECK(residue.atoms().empty()); // universe over the empty space
}

TEST_CASE("difference") {
    VarSpacePtr space = xy_space();
    auto interval = [&](const char* lo, const char* hi, bool lo_strict, bool hi_strict) {
        return ConvexPoly::universe(space).conjoin(
            {lin_atom(space, {{0, Q("-1")}}, Q(lo), lo_strict ? Rel::Lt : Rel::Le),
             lin_atom(space, {{0, Q("1")}}, -Q(hi), hi_strict ? Rel::Lt : Rel::Le)});
    };
    DisjPoly zero_two(space);
    zero_two.add(interval("0", "2", false, false), false);
    DisjPoly above_one(space);
    above_one.add(ConvexPoly::universe(space).conjoin(
                      {lin_atom(space, {{0, Q("-1")}}, Q("1"), Rel::Lt)}),
                  false);
    DisjPoly rest = zero_two.difference(above_one);
    DisjPoly expected(space);
    expected.add(interval("0", "1", false, false), false);
    CHECK(rest.semantically_equals(expected));

    CHECK(zero_two.difference(zero_two).empty_set());
    CHECK(zero_two.difference(DisjPoly(space)).semantically_equals(zero_two));
}

TEST_CASE("bounds") {
    VarSpacePtr param = VarSpace::make({{"p2", VarKind::Parameter}});
    ConvexPoly above = ConvexPoly::universe(param).conjoin(
        {lin_atom(param, {{0, Q("-1")}}, Q("0.7"), Rel::Lt)});
    VarBounds b = above.bounds(0);
    REQUIRE(b.lower.has_value());
    CHECK(b.lower->value == Q("0.7"));
    CHECK(b.lower->strict);
    CHECK_FALSE(b.upper.has_value());

    VarSpacePtr space = VarSpace::make({{"t", VarKind::Parameter}, {"p1", VarKind::Parameter}});
    ConvexPoly strip = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{1, Q("-1")}}, Q("0"), Rel::Le),                 // p1 >= 0
         lin_atom(space, {{0, Q("1")}, {1, Q("1")}}, Q("-2.8"), Rel::Lt),  // t < 2.8 - p1
         lin_atom(space, {{0, Q("-1")}}, Q("1.7"), Rel::Lt)});             // t > 1.7
    VarBounds p1_bounds = strip.bounds(1);
    REQUIRE(p1_bounds.lower.has_value());
    REQUIRE(p1_bounds.upper.has_value());
    CHECK(p1_bounds.lower->value == Q("0"));
    CHECK_FALSE(p1_bounds.lower->strict);
    CHECK(p1_bounds.upper->value == Q("1.1"));
    CHECK(p1_bounds.upper->strict);

    VarSpacePtr xs = VarSpace::make({{"x", VarKind::Clock}});
    ConvexPoly pinned = ConvexPoly::universe(xs).conjoin(
        {lin_atom(xs, {{0, Q("1")}}, Q("-3"), Rel::Eq)});
    VarBounds x_bounds = pinned.bounds(0);
    CHECK(x_bounds.lower->value == Q("3"));
    CHECK(x_bounds.upper->value == Q("3"));
    CHECK_FALSE(x_bounds.lower->strict);
    CHECK_FALSE(x_bounds.upper->strict);

    ConvexPoly empty = pinned.conjoin({lin_atom(xs, {{0, Q("1")}}, Q("-1"), Rel::Eq)});
    CHECK_THROWS_AS(empty.bounds(0), EmptyPolyError);
}

TEST_CASE("bounds against a 1-d feasibility scan") {
    VarSpacePtr space = VarSpace::make({{"t", VarKind::Parameter}, {"p1", VarKind::Parameter}});
    ConvexPoly strip = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{1, Q("-1")}}, Q("0"), Rel::Le),
         lin_atom(space, {{0, Q("1")}, {1, Q("1")}}, Q("-2.8"), Rel::Lt),
         lin_atom(space, {{0, Q("-1")}}, Q("1.7"), Rel::Lt)});
    for (int num = -5; num <= 30; ++num) {
        Rational p1 = rational(num, 20);
        bool inside = !strip.substitute(1, p1).is_empty();
        CHECK(inside == (p1 >= 0 && p1 < Q("1.1")));
    }
}

TEST_CASE("union_add") {
    VarSpacePtr space = xy_space();
    ConvexPoly le2 = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}}, Q("-2"), Rel::Le)});
    ConvexPoly lt1 = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{0, Q("1")}}, Q("-1"), Rel::Lt)});

    DisjPoly with_subsumption(space);
    with_subsumption.add(le2, true);
    with_subsumption.add(lt1, true);
    CHECK(with_subsumption.size() == 1);

    DisjPoly raw(space);
    raw.add(le2, false);
    raw.add(lt1, false);
    CHECK(raw.size() == 2);

    ConvexPoly empty = le2.conjoin({lin_atom(space, {{0, Q("-1")}}, Q("3"), Rel::Lt)});
    raw.add(empty, false);
    CHECK(raw.size() == 2);
}

TEST_CASE("strictness propagates through combination") {
    VarSpacePtr space = xy_space();
    // y < 2 (strict upper) against y >= x (non-strict lower): x < 2
    ConvexPoly mixed = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{1, Q("1")}}, Q("-2"), Rel::Lt),
         lin_atom(space, {{0, Q("1")}, {1, Q("-1")}}, Q("0"), Rel::Le)});
    ConvexPoly shadow = mixed.eliminate({1});
    REQUIRE(shadow.atoms().size() == 1);
    CHECK(shadow.atoms()[0].rel == Rel::Lt);

    // both closed stays closed
    ConvexPoly closed = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{1, Q("1")}}, Q("-2"), Rel::Le),
         lin_atom(space, {{0, Q("1")}, {1, Q("-1")}}, Q("0"), Rel::Le)});
    ConvexPoly closed_shadow = closed.eliminate({1});
    REQUIRE(closed_shadow.atoms().size() == 1);
    CHECK(closed_shadow.atoms()[0].rel == Rel::Le);

    // equalities substitute without changing strictness
    ConvexPoly pinned = ConvexPoly::universe(space).conjoin(
        {lin_atom(space, {{1, Q("1")}, {0, Q("-1")}}, Q("0"), Rel::Eq),
         lin_atom(space, {{1, Q("1")}}, Q("-2"), Rel::Lt)});
    ConvexPoly via_eq = pinned.eliminate({1});
    REQUIRE(via_eq.atoms().size() == 1);
    CHECK(via_eq.atoms()[0].rel == Rel::Lt);
}

TEST_CASE("fourier-motzkin soundness and completeness" * doctest::timeout(300)) {
    PolyGen gen(2024);
    VarSpacePtr space = VarSpace::make(
        {{"x", VarKind::Parameter}, {"y", VarKind::Parameter}, {"z", VarKind::Parameter}});
    for (int trial = 0; trial < 300; ++trial) {
        ConvexPoly poly = gen.poly(space, 5);
        ConvexPoly shadow = poly.eliminate({1});
        std::vector<Rational> point = {gen.point_coord(), Rational(0), gen.point_coord()};
        bool in_shadow = satisfies_atoms(shadow.atoms(), point);
        // membership in the shadow must coincide with 1-d feasibility of y
        ConvexPoly column = poly.substitute(2, point[2]).substitute(0, point[0]);
        CHECK(in_shadow == !column.is_empty());
    }
}

TEST_CASE("emptiness agrees with exhaustive planar search" * doctest::timeout(300)) {
    PolyGen gen(4711);
    VarSpacePtr space = VarSpace::make({{"x", VarKind::Parameter}, {"y", VarKind::Parameter}});
    for (int trial = 0; trial < 300; ++trial) {
        ConvexPoly poly = gen.poly(space, 5);
        CHECK(poly.is_empty() == !plane_satisfiable(poly.atoms()));
    }
}

TEST_CASE("mutual inclusion coincides with empty differences") {
    PolyGen gen(99);
    VarSpacePtr space = xy_space();
    for (int trial = 0; trial < 60; ++trial) {
        ConvexPoly a = gen.poly(space, 4);
        ConvexPoly b = gen.poly(space, 4);
        DisjPoly da(space), db(space);
        da.add(a, false);
        db.add(b, false);
        bool by_inclusion = a.includes(b) && b.includes(a);
        bool by_difference = da.difference(db).empty_set() && db.difference(da).empty_set();
        if (a.is_empty() && b.is_empty()) {
            CHECK(by_difference);
        } else {
            CHECK(by_inclusion == by_difference);
        }
    }
}

TEST_CASE("time_elapse is monotone and idempotent") {
    PolyGen gen(31337);
    VarSpacePtr space = xy_space();
    for (int trial = 0; trial < 60; ++trial) {
        ConvexPoly poly = gen.poly(space, 4);
        ConvexPoly widened = poly.time_elapse();
        CHECK(widened.includes(poly));
        CHECK(sem_equal(widened.time_elapse(), widened));
    }
}

TEST_CASE("fused transition equals the composed operations") {
    PolyGen gen(777);
    VarSpacePtr space = VarSpace::make({{"x", VarKind::Clock},
                                        {"y", VarKind::Clock},
                                        {"p", VarKind::Parameter}});
    for (int trial = 0; trial < 60; ++trial) {
        ConvexPoly zone = gen.poly(space, 4);
        std::vector<LinAtom> guard = {gen.atom(space)};
        std::vector<LinAtom> invariant = {gen.atom(space)};
        std::vector<int> resets;
        if (trial % 3 == 0) resets.push_back(0);
        if (trial % 4 == 0) resets.push_back(1);

        ConvexPoly fused = zone.transition(guard, resets, invariant);
        ConvexPoly composed = zone.conjoin(guard)
                                  .reset(resets)
                                  .conjoin(invariant)
                                  .time_elapse()
                                  .conjoin(invariant);
        CHECK(fused.is_empty() == composed.is_empty());
        if (!fused.is_empty()) {
            CHECK(fused.includes(composed));
            CHECK(composed.includes(fused));
        }
    }
}

TEST_CASE("canonical form is stable across atom orderings") {
    PolyGen gen(555);
    VarSpacePtr space = xy_space();
    std::mt19937 shuffle_rng(1);
    for (int trial = 0; trial < 40; ++trial) {
        ConvexPoly poly = gen.poly(space, 5);
        std::vector<LinAtom> shuffled = poly.atoms();
        std::shuffle(shuffled.begin(), shuffled.end(), shuffle_rng);
        ConvexPoly reordered(space, std::move(shuffled));
        CHECK(poly.canonicalized().signature() == reordered.canonicalized().signature());
    }
}
