#include "ptmatch/engine.hpp"

#include "ptmatch/errors.hpp"

#include <deque>
#include <functional>
#include <map>
#include <unordered_set>

namespace ptmatch {

namespace {

LinAtom guard_atom_to_lin(const Pta& pta, const VarSpacePtr& space, const GuardAtom& atom) {
    int clock_var = space->index_of(pta.clock_name(atom.clock));
    std::vector<std::pair<int, Rational>> terms;
    Rational constant = 0;
    terms.emplace_back(clock_var, Rational(1));
    if (atom.is_parametric()) {
        int param_var = space->index_of(pta.parameter_name(std::get<int>(atom.rhs)));
        terms.emplace_back(param_var, Rational(-1));
    } else {
        constant = -std::get<Rational>(atom.rhs);
    }
    // clock - rhs OP 0
    switch (atom.op) {
        case CmpOp::Lt: return lin_atom(space, std::move(terms), std::move(constant), Rel::Lt);
        case CmpOp::Le: return lin_atom(space, std::move(terms), std::move(constant), Rel::Le);
        case CmpOp::Eq: return lin_atom(space, std::move(terms), std::move(constant), Rel::Eq);
        case CmpOp::Ge:
        case CmpOp::Gt:
            for (auto& [var, coeff] : terms) coeff = -coeff;
            return lin_atom(space, std::move(terms), -constant,
                            atom.op == CmpOp::Gt ? Rel::Lt : Rel::Le);
    }
    throw DomainError("unknown guard operator");
}

std::vector<LinAtom> guard_to_lin(const Pta& pta, const VarSpacePtr& space, const Guard& g) {
    std::vector<LinAtom> atoms;
    atoms.reserve(g.size());
    for (const GuardAtom& atom : g) atoms.push_back(guard_atom_to_lin(pta, space, atom));
    return atoms;
}

/// Precomputed zone-level view of an automaton.
struct Explorer {
    const Pta& pta;
    VarSpacePtr space;
    std::vector<std::vector<LinAtom>> invariants; // per location
    std::vector<std::vector<LinAtom>> guards;     // per edge
    std::vector<std::vector<int>> resets;         // per edge, space indices
    std::vector<std::vector<std::size_t>> out_edges;

    explicit Explorer(const Pta& automaton) : pta(automaton), space(zone_space(automaton)) {
        invariants.reserve(static_cast<std::size_t>(pta.num_locations()));
        for (int loc = 0; loc < pta.num_locations(); ++loc) {
            invariants.push_back(guard_to_lin(pta, space, pta.invariant(loc)));
        }
        out_edges.assign(static_cast<std::size_t>(pta.num_locations()), {});
        guards.reserve(pta.edges().size());
        resets.reserve(pta.edges().size());
        for (std::size_t i = 0; i < pta.edges().size(); ++i) {
            const Edge& e = pta.edges()[i];
            guards.push_back(guard_to_lin(pta, space, e.guard));
            std::vector<int> mapped;
            mapped.reserve(e.resets.size());
            for (int c : e.resets) mapped.push_back(space->index_of(pta.clock_name(c)));
            resets.push_back(std::move(mapped));
            out_edges[static_cast<std::size_t>(e.source)].push_back(i);
        }
    }

    ConvexPoly initial_zone() const {
        std::vector<LinAtom> atoms;
        for (int v = 0; v < space->dim(); ++v) {
            if (space->kind(v) == VarKind::Clock) {
                atoms.push_back(lin_atom(space, {{v, Rational(1)}}, Rational(0), Rel::Eq));
            } else {
                atoms.push_back(lin_atom(space, {{v, Rational(-1)}}, Rational(0), Rel::Le));
            }
        }
        ConvexPoly zero = ConvexPoly(space, std::move(atoms))
                              .conjoin(invariants[static_cast<std::size_t>(pta.initial())]);
        if (zero.is_empty()) {
            throw DomainError("initial invariant rejects the zero valuation");
        }
        return zero.time_elapse()
            .conjoin(invariants[static_cast<std::size_t>(pta.initial())])
            .canonicalized();
    }

    std::optional<ConvexPoly> step(const ConvexPoly& zone, std::size_t edge_index) const {
        const Edge& e = pta.edges()[edge_index];
        ConvexPoly moved = zone.transition(guards[edge_index], resets[edge_index],
                                           invariants[static_cast<std::size_t>(e.target)]);
        if (moved.is_empty()) return std::nullopt;
        return moved;
    }
};

VarSpacePtr parameter_space(const Pta& pta) {
    std::vector<std::pair<std::string, VarKind>> vars;
    for (const std::string& p : pta.parameter_names()) {
        vars.emplace_back(p, VarKind::Parameter);
    }
    return VarSpace::make(std::move(vars));
}

/// Shared worklist exploration. Breadth-first; deterministic edge order;
/// canonicalized zones make the visited check a hash lookup. Accepting
/// states are handed to on_accepting and never expanded.
void explore(const Explorer& ex, const std::vector<bool>& accepting, const EngineOptions& options,
             EngineStats& stats,
             const std::function<void(const SymbolicState&)>& on_accepting,
             const std::function<bool(const SymbolicState&)>& prune) {
    std::deque<SymbolicState> frontier;
    std::unordered_set<std::string> visited;

    SymbolicState init{ex.pta.initial(), ex.initial_zone()};
    visited.insert(std::to_string(init.loc) + "#" + init.zone.signature());
    stats.states_explored = 1;
    frontier.push_back(std::move(init));

    while (!frontier.empty()) {
        SymbolicState current = std::move(frontier.front());
        frontier.pop_front();

        if (prune && prune(current)) continue;
        if (accepting[static_cast<std::size_t>(current.loc)]) {
            on_accepting(current);
            continue;
        }
        for (std::size_t edge_index : ex.out_edges[static_cast<std::size_t>(current.loc)]) {
            std::optional<ConvexPoly> next = ex.step(current.zone, edge_index);
            if (!next) continue;
            int target = ex.pta.edges()[edge_index].target;
            std::string key = std::to_string(target) + "#" + next->signature();
            if (!visited.insert(std::move(key)).second) continue;
            ++stats.states_explored;
            if (options.state_ceiling && stats.states_explored > options.state_ceiling) {
                throw ResourceError("exploration exceeded the state ceiling");
            }
            frontier.push_back({target, std::move(*next)});
        }
    }
}

} // namespace

VarSpacePtr zone_space(const Pta& pta) {
    std::vector<std::pair<std::string, VarKind>> vars;
    for (const std::string& c : pta.clock_names()) vars.emplace_back(c, VarKind::Clock);
    for (const std::string& p : pta.parameter_names()) vars.emplace_back(p, VarKind::Parameter);
    return VarSpace::make(std::move(vars));
}

SymbolicState initial_state(const Pta& pta) {
    Explorer ex(pta);
    return {pta.initial(), ex.initial_zone()};
}

std::optional<SymbolicState> successor(const Pta& pta, const SymbolicState& s,
                                       std::size_t edge_index) {
    if (edge_index >= pta.edges().size()) throw DomainError("edge index out of range");
    if (pta.edges()[edge_index].source != s.loc) {
        throw DomainError("edge does not leave the state's location");
    }
    Explorer ex(pta);
    std::optional<ConvexPoly> zone = ex.step(s.zone, edge_index);
    if (!zone) return std::nullopt;
    return SymbolicState{pta.edges()[edge_index].target, std::move(*zone)};
}

DisjPoly efsynth(const Pta& pta, const std::vector<int>& targets, const EngineOptions& options,
                 EngineStats* stats) {
    Explorer ex(pta);
    std::vector<bool> accepting(static_cast<std::size_t>(pta.num_locations()), false);
    for (int loc : targets) {
        if (loc < 0 || loc >= pta.num_locations()) throw DomainError("target location unknown");
        accepting[static_cast<std::size_t>(loc)] = true;
    }

    VarSpacePtr params = parameter_space(pta);
    DisjPoly result(params);
    EngineStats local;
    explore(
        ex, accepting, options, local,
        [&](const SymbolicState& s) { result.add(s.zone.projected_to(params), options.subsumption); },
        nullptr);
    local.matches = result.size();
    if (stats) *stats = local;
    return result;
}

namespace {

struct Pipeline {
    Pta product;
    std::vector<int> targets;
    VarSpacePtr match_space; // original parameters + t + t_prime
};

Pipeline build_pipeline(const Pta& pattern, const TimedWord& w) {
    Alphabet sigma = w.alphabet();
    Pta normalized = normalize_pattern(pattern, sigma);
    Pta symbolic = make_symbolic(normalized, sigma);
    Pta word_automaton = tw2pta(w);
    Pipeline pipe{sync_product({symbolic, word_automaton}), {}, nullptr};
    pipe.targets = pipe.product.accepting_locations();
    pipe.match_space = parameter_space(pipe.product);
    return pipe;
}

/// The segment precondition t < t' is not expressible as a clock guard, so
/// it is intersected into every accepting projection instead.
std::optional<ConvexPoly> proper_window(const ConvexPoly& projection) {
    const VarSpacePtr& space = projection.space();
    int t = space->index_of(kStartParamName);
    int t_prime = space->index_of(kEndParamName);
    ConvexPoly bounded = projection.conjoin(
        {lin_atom(space, {{t, Rational(1)}, {t_prime, Rational(-1)}}, Rational(0), Rel::Lt)});
    if (bounded.is_empty()) return std::nullopt;
    return bounded;
}

} // namespace

MatchSet ptpm(const Pta& pattern, const TimedWord& w, const EngineOptions& options) {
    Pipeline pipe = build_pipeline(pattern, w);
    Explorer ex(pipe.product);
    std::vector<bool> accepting(static_cast<std::size_t>(pipe.product.num_locations()), false);
    for (int loc : pipe.targets) accepting[static_cast<std::size_t>(loc)] = true;

    MatchSet result{DisjPoly(pipe.match_space), {}};
    explore(
        ex, accepting, options, result.stats,
        [&](const SymbolicState& s) {
            std::optional<ConvexPoly> window =
                proper_window(s.zone.projected_to(pipe.match_space));
            if (window) result.set.add(std::move(*window), options.subsumption);
        },
        nullptr);
    result.stats.matches = result.set.size();
    return result;
}

MatchSet ptpm_fixed(const Pta& pattern, const TimedWord& w, const ParamValuation& v,
                    const EngineOptions& options) {
    return ptpm(valuate_pta(pattern, v), w, options);
}

OptResult ptpm_opt(const Pta& pattern, const TimedWord& w, const std::string& parameter,
                   OptDirection direction, const EngineOptions& options) {
    if (pattern.parameter(parameter) < 0) {
        throw DomainError("unknown parameter '" + parameter + "'");
    }
    Pipeline pipe = build_pipeline(pattern, w);
    Explorer ex(pipe.product);
    std::vector<bool> accepting(static_cast<std::size_t>(pipe.product.num_locations()), false);
    for (int loc : pipe.targets) accepting[static_cast<std::size_t>(loc)] = true;

    OptResult result;
    result.direction = direction;
    result.parameter = parameter;
    bool minimize = (direction == OptDirection::Min);

    // incumbent: value+strictness of the best match so far; smaller value
    // wins when minimizing, attained beats not-attained at equal value
    auto improves = [&](const std::optional<Bound>& candidate) {
        if (result.unbounded) return false;
        if (!candidate) return true; // an unbounded candidate beats any value
        if (!result.feasible) return true;
        if (minimize) {
            if (candidate->value != *result.bound) return candidate->value < *result.bound;
        } else {
            if (candidate->value != *result.bound) return candidate->value > *result.bound;
        }
        return !candidate->strict && result.strict;
    };

    auto param_bound = [&](const ConvexPoly& projection) -> std::optional<std::optional<Bound>> {
        // outer nullopt: projection empty; inner: bound or unbounded
        VarBounds bounds;
        try {
            bounds = projection.bounds(projection.space()->index_of(parameter));
        } catch (const EmptyPolyError&) {
            return std::nullopt;
        }
        return minimize ? bounds.lower : bounds.upper;
    };

    explore(
        ex, accepting, options, result.stats,
        [&](const SymbolicState& s) {
            std::optional<ConvexPoly> window =
                proper_window(s.zone.projected_to(pipe.match_space));
            if (!window) return;
            auto candidate = param_bound(*window);
            if (!candidate) return;
            if (improves(*candidate)) {
                result.feasible = true;
                if (*candidate) {
                    result.bound = (*candidate)->value;
                    result.strict = (*candidate)->strict;
                } else {
                    result.unbounded = true;
                    result.bound.reset();
                }
            }
        },
        [&](const SymbolicState& s) {
            if (!result.feasible) return false;
            std::optional<ConvexPoly> window =
                proper_window(s.zone.projected_to(pipe.match_space));
            if (!window) return true;
            auto best_possible = param_bound(*window);
            if (!best_possible) return true;
            return !improves(*best_possible);
        });
    return result;
}

Integer pipeline_state_bound(const Pta& symbolic_pattern, std::size_t word_length) {
    long branching = 1;
    std::map<std::pair<int, int>, long> degree;
    for (const Edge& e : symbolic_pattern.edges()) {
        long d = ++degree[{e.source, e.action}];
        if (d > branching) branching = d;
    }
    Integer bound = Integer(static_cast<unsigned long>(word_length) + 3) *
                    Integer(static_cast<unsigned long>(word_length) + 1);
    Integer growth;
    mpz_ui_pow_ui(growth.get_mpz_t(), static_cast<unsigned long>(branching),
                  static_cast<unsigned long>(word_length));
    return bound * growth;
}

} // namespace ptmatch
