#include "ptmatch/oracle.hpp"

#include "ptmatch/errors.hpp"
#include "ptmatch/transform.hpp"

#include <algorithm>
#include <set>

namespace ptmatch {

namespace {

bool holds(CmpOp op, const Rational& lhs, const Rational& rhs) {
    switch (op) {
        case CmpOp::Lt: return lhs < rhs;
        case CmpOp::Le: return lhs <= rhs;
        case CmpOp::Eq: return lhs == rhs;
        case CmpOp::Ge: return lhs >= rhs;
        case CmpOp::Gt: return lhs > rhs;
    }
    return false;
}

using ClockVec = std::vector<Rational>;

struct ConcreteState {
    int loc;
    ClockVec clocks;

    bool operator<(const ConcreteState& other) const {
        if (loc != other.loc) return loc < other.loc;
        return clocks < other.clocks;
    }
};

bool satisfies(const Guard& g, const ClockVec& clocks) {
    for (const GuardAtom& atom : g) {
        if (atom.is_parametric()) throw DomainError("membership needs a parameter-free automaton");
        if (!holds(atom.op, clocks[static_cast<std::size_t>(atom.clock)],
                   std::get<Rational>(atom.rhs))) {
            return false;
        }
    }
    return true;
}

} // namespace

bool membership(const Segment& segment, const Pta& automaton) {
    if (automaton.num_parameters() > 0) {
        throw DomainError("membership needs a parameter-free automaton");
    }
    automaton.validate();

    std::set<ConcreteState> states;
    ClockVec zeros(static_cast<std::size_t>(automaton.num_clocks()), Rational(0));
    if (satisfies(automaton.invariant(automaton.initial()), zeros)) {
        states.insert({automaton.initial(), zeros});
    }

    Rational now = 0;
    for (const Event& event : segment.events()) {
        Rational delay = event.time - now;
        now = event.time;

        // delay: the invariant is convex, so checking the endpoint suffices
        std::set<ConcreteState> delayed;
        for (const ConcreteState& s : states) {
            ClockVec moved = s.clocks;
            for (Rational& c : moved) c += delay;
            if (satisfies(automaton.invariant(s.loc), moved)) {
                delayed.insert({s.loc, std::move(moved)});
            }
        }

        // discrete step on the event's action
        std::set<ConcreteState> next;
        int action = automaton.action(event.action);
        if (action >= 0) {
            for (const ConcreteState& s : delayed) {
                for (const Edge& e : automaton.edges()) {
                    if (e.source != s.loc || e.action != action) continue;
                    if (!satisfies(e.guard, s.clocks)) continue;
                    ClockVec reset = s.clocks;
                    for (int c : e.resets) reset[static_cast<std::size_t>(c)] = 0;
                    if (!satisfies(automaton.invariant(e.target), reset)) continue;
                    next.insert({e.target, std::move(reset)});
                }
            }
        }
        states = std::move(next);
        if (states.empty()) return false;
    }

    for (const ConcreteState& s : states) {
        if (automaton.is_accepting(s.loc)) return true;
    }
    return false;
}

// ============================================================================
// Enumerative match set
// ============================================================================

namespace {

constexpr int kStartMarker = -1; // "reset at the pattern start", absolute time t

/// Where a clock value is sampled: at word event k, or at the end date t'.
struct CheckTime {
    bool at_end = false;
    std::size_t event = 0; // meaningful when !at_end
};

struct PathContext {
    const Pta& automaton;      // valuated pattern
    const TimedWord& word;
    VarSpacePtr space;         // {t, t_prime}
    int t_var;
    int t_prime_var;
    std::size_t window_end;    // j
    std::vector<LinAtom> box;
    DisjPoly* result;
};

/// clock_value(marker, when) - rhs REL 0 as an atom over {t, t'}; the value
/// is when_time - marker_time with marker_time = t for kStartMarker.
/// Returns false when the atom is a violated constant (prune the path).
bool push_atom(PathContext& ctx, std::vector<LinAtom>& atoms, int marker, CheckTime when,
               CmpOp op, const Rational& rhs) {
    Rational coeff_t = 0, coeff_tp = 0, constant = 0;
    if (when.at_end) coeff_tp += 1;
    else constant += ctx.word.event(when.event).time;
    if (marker == kStartMarker) coeff_t -= 1;
    else constant -= ctx.word.event(static_cast<std::size_t>(marker)).time;
    constant -= rhs;

    Rel rel;
    switch (op) {
        case CmpOp::Lt: rel = Rel::Lt; break;
        case CmpOp::Le: rel = Rel::Le; break;
        case CmpOp::Eq: rel = Rel::Eq; break;
        case CmpOp::Ge:
        case CmpOp::Gt:
            coeff_t = -coeff_t;
            coeff_tp = -coeff_tp;
            constant = -constant;
            rel = (op == CmpOp::Gt) ? Rel::Lt : Rel::Le;
            break;
        default: rel = Rel::Le; break;
    }
    LinAtom atom = lin_atom(ctx.space, {{ctx.t_var, coeff_t}, {ctx.t_prime_var, coeff_tp}},
                            std::move(constant), rel);
    if (atom.is_constant()) return atom.constant_truth();
    atoms.push_back(std::move(atom));
    return true;
}

bool push_guard(PathContext& ctx, std::vector<LinAtom>& atoms, const Guard& guard,
                const std::vector<int>& markers, CheckTime when) {
    for (const GuardAtom& g : guard) {
        if (!push_atom(ctx, atoms, markers[static_cast<std::size_t>(g.clock)], when, g.op,
                       std::get<Rational>(g.rhs))) {
            return false;
        }
    }
    return true;
}

/// Read events next..j from loc, then one "$" edge into an accepting
/// location; every surviving constraint set becomes one disjunct.
void walk(PathContext& ctx, int loc, std::size_t next, const std::vector<int>& markers,
          std::vector<LinAtom> atoms) {
    if (next > ctx.window_end) {
        for (const Edge& e : ctx.automaton.edges()) {
            if (e.source != loc) continue;
            if (ctx.automaton.action_name(e.action) != kTerminalAction) continue;
            if (!ctx.automaton.is_accepting(e.target)) continue;
            std::vector<LinAtom> closing = atoms;
            CheckTime at_end{true, 0};
            // source invariant holds until t', guard fires at t', and the
            // target invariant holds right after the resets
            if (!push_guard(ctx, closing, ctx.automaton.invariant(loc), markers, at_end)) continue;
            if (!push_guard(ctx, closing, e.guard, markers, at_end)) continue;
            std::vector<int> after = markers;
            bool feasible = true;
            for (const GuardAtom& inv : ctx.automaton.invariant(e.target)) {
                bool was_reset =
                    std::find(e.resets.begin(), e.resets.end(), inv.clock) != e.resets.end();
                if (was_reset) {
                    if (!holds(inv.op, Rational(0), std::get<Rational>(inv.rhs))) {
                        feasible = false;
                        break;
                    }
                } else if (!push_atom(ctx, closing, after[static_cast<std::size_t>(inv.clock)],
                                      at_end, inv.op, std::get<Rational>(inv.rhs))) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
            ConvexPoly piece = ConvexPoly(ctx.space, ctx.box).conjoin(closing);
            ctx.result->add(std::move(piece), false);
        }
        return;
    }

    const Event& event = ctx.word.event(next);
    int action = ctx.automaton.action(event.action);
    if (action < 0) return; // the pattern cannot read this event at all
    CheckTime at_event{false, next};
    for (const Edge& e : ctx.automaton.edges()) {
        if (e.source != loc || e.action != action) continue;
        std::vector<LinAtom> step = atoms;
        if (!push_guard(ctx, step, ctx.automaton.invariant(loc), markers, at_event)) continue;
        if (!push_guard(ctx, step, e.guard, markers, at_event)) continue;
        std::vector<int> moved = markers;
        for (int c : e.resets) moved[static_cast<std::size_t>(c)] = static_cast<int>(next);
        if (!push_guard(ctx, step, ctx.automaton.invariant(e.target), moved, at_event)) continue;
        walk(ctx, e.target, next + 1, moved, std::move(step));
    }
}

} // namespace

DisjPoly brute_force_match_set(const TimedWord& w, const Pta& pattern, const ParamValuation& v) {
    Pta automaton = valuate_pta(pattern, v);
    automaton.validate();

    VarSpacePtr space = VarSpace::make(
        {{kStartParamName, VarKind::Parameter}, {kEndParamName, VarKind::Parameter}});
    int t_var = 0, t_prime_var = 1;
    DisjPoly result(space);

    std::size_t n = w.size();
    for (std::size_t i = 1; i <= n + 1; ++i) {
        for (std::size_t j = i - 1; j <= n; ++j) {
            // window box: tau_(i-1) < t <= tau_i, tau_j <= t' < tau_(j+1),
            // t < t'; boundary windows fall back to t >= 0 / no upper bound
            std::vector<LinAtom> box;
            if (i == 1) {
                box.push_back(lin_atom(space, {{t_var, Rational(-1)}}, Rational(0), Rel::Le));
            } else {
                box.push_back(lin_atom(space, {{t_var, Rational(-1)}}, w.event(i - 1).time, Rel::Lt));
            }
            if (i <= n) {
                box.push_back(lin_atom(space, {{t_var, Rational(1)}}, -w.event(i).time, Rel::Le));
            }
            if (j >= 1) {
                box.push_back(
                    lin_atom(space, {{t_prime_var, Rational(-1)}}, w.event(j).time, Rel::Le));
            } else {
                box.push_back(lin_atom(space, {{t_prime_var, Rational(-1)}}, Rational(0), Rel::Le));
            }
            if (j < n) {
                box.push_back(
                    lin_atom(space, {{t_prime_var, Rational(1)}}, -w.event(j + 1).time, Rel::Lt));
            }
            box.push_back(
                lin_atom(space, {{t_var, Rational(1)}, {t_prime_var, Rational(-1)}}, Rational(0),
                         Rel::Lt));

            PathContext ctx{automaton, w,       space, t_var, t_prime_var,
                            j,         std::move(box), &result};

            // the pattern enters its initial location at absolute time t
            // with all clocks zero
            std::vector<int> markers(static_cast<std::size_t>(automaton.num_clocks()),
                                     kStartMarker);
            std::vector<LinAtom> atoms;
            bool alive = true;
            for (const GuardAtom& inv : automaton.invariant(automaton.initial())) {
                if (!holds(inv.op, Rational(0), std::get<Rational>(inv.rhs))) {
                    alive = false;
                    break;
                }
            }
            if (alive) walk(ctx, automaton.initial(), i, markers, std::move(atoms));
        }
    }
    return result;
}

} // namespace ptmatch
