#pragma once

#include "ptmatch/polyhedron.hpp"
#include "ptmatch/pta.hpp"
#include "ptmatch/words.hpp"

namespace ptmatch {

/// Brute-force semantics used to validate the engine. Nothing here touches
/// the symbolic pipeline: membership simulates concrete runs, and the
/// match-set enumeration walks edge paths window by window.

/// True iff the segment is in the language of the (parameter-free)
/// automaton: subset simulation of all concrete runs, delays fixed by the
/// timestamps (zero delays included). Throws DomainError when the
/// automaton still has parameters.
bool membership(const Segment& segment, const Pta& automaton);

/// The exact match set {(t, t') | w|(t,t') in L(pattern[v])} as a union of
/// polyhedra over {t, t_prime}: enumerates every index window including the
/// empty ones, every edge path reading the window's actions and a final
/// "$", and conjoins the resulting linear constraints (clock values along a
/// path are affine in t) with the window box.
DisjPoly brute_force_match_set(const TimedWord& w, const Pta& pattern, const ParamValuation& v);

} // namespace ptmatch
