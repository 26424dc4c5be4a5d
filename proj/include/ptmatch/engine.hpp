#pragma once

#include "ptmatch/polyhedron.hpp"
#include "ptmatch/pta.hpp"
#include "ptmatch/transform.hpp"
#include "ptmatch/words.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ptmatch {

struct EngineOptions {
    /// Skip an accepting projection when an already collected disjunct
    /// includes it. Off by default: with tens of thousands of disjuncts the
    /// test costs far more than it saves, and the reported match count is
    /// defined as the raw disjunct count.
    bool subsumption = false;
    /// Abort exploration beyond this many symbolic states (0 = unlimited).
    /// The matching pipeline terminates on its own; a ceiling is meant for
    /// reachability synthesis on arbitrary automata.
    std::size_t state_ceiling = 0;
};

struct EngineStats {
    std::size_t states_explored = 0;
    std::size_t matches = 0;
};

/// One node of the parametric zone graph: a location of the (product)
/// automaton plus a zone over clocks and parameters, kept in canonical
/// successor form (time-elapsed, intersected with the invariant).
struct SymbolicState {
    int loc;
    ConvexPoly zone;
};

/// Zone variable layout of an automaton: clocks first, then parameters,
/// both in declaration order.
VarSpacePtr zone_space(const Pta& pta);

/// Initial symbolic state: clocks zero, parameters non-negative, elapsed
/// within the initial invariant. Throws DomainError when the invariant
/// rejects the zero valuation.
SymbolicState initial_state(const Pta& pta);

/// Successor along one edge: guard, resets, target invariant, elapse,
/// invariant again. nullopt when the step is infeasible.
std::optional<SymbolicState> successor(const Pta& pta, const SymbolicState& s,
                                       std::size_t edge_index);

/// Reachability synthesis: all parameter valuations under which some
/// target location is reachable, as an exact union of polyhedra over the
/// automaton's parameters. Accepting states are not expanded; revisits are
/// pruned through canonicalized zones. Throws ResourceError when a state
/// ceiling is configured and exceeded. On arbitrary automata subsumption
/// pays off, so it defaults to on here (the matching pipeline turns it off).
DisjPoly efsynth(const Pta& pta, const std::vector<int>& targets,
                 const EngineOptions& options = {.subsumption = true, .state_ceiling = 0},
                 EngineStats* stats = nullptr);

/// The set of (parameters, t, t_prime) for which the word segment over
/// [t, t_prime] is accepted by the pattern, plus exploration statistics.
struct MatchSet {
    DisjPoly set; // over original parameters + t + t_prime
    EngineStats stats;
};

/// Full parametric matching: normalize, make the pattern symbolic, encode
/// the word, product, reachability synthesis.
MatchSet ptpm(const Pta& pattern, const TimedWord& w, const EngineOptions& options = {});

/// Matching at one fixed parameter valuation: a union of zones over
/// {t, t_prime} only.
MatchSet ptpm_fixed(const Pta& pattern, const TimedWord& w, const ParamValuation& v,
                    const EngineOptions& options = {});

enum class OptDirection { Min, Max };

struct OptResult {
    bool feasible = false;
    bool unbounded = false;           // only possible when maximizing
    std::optional<Rational> bound;    // set iff feasible and not unbounded
    bool strict = false;              // true: infimum/supremum not attained
    OptDirection direction = OptDirection::Min;
    std::string parameter;
    EngineStats stats;
};

/// Optimal value of one pattern parameter over all matches. Explores like
/// ptpm but keeps only the incumbent optimum and discards branches whose
/// parameter bounds cannot beat it.
OptResult ptpm_opt(const Pta& pattern, const TimedWord& w, const std::string& parameter,
                   OptDirection direction, const EngineOptions& options = {});

/// Worst-case number of symbolic states the pipeline explores for a word
/// of the given length: (|w|+3) * (|w|+1) * B^|w|, with B the largest
/// same-action out-degree of the symbolic pattern.
Integer pipeline_state_bound(const Pta& symbolic_pattern, std::size_t word_length);

} // namespace ptmatch
