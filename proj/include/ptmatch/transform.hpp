#pragma once

#include "ptmatch/pta.hpp"
#include "ptmatch/words.hpp"

#include <set>
#include <string>
#include <vector>

namespace ptmatch {

/// The word actions a pattern is matched against (never contains the
/// reserved "$" / "start" names). May be empty for an empty log.
using Alphabet = std::set<std::string>;

/// Names injected by the symbolic construction. Patterns may not declare
/// them; normalize_pattern rejects collisions.
inline const std::string kAbsClockName = "x_abs";
inline const std::string kInitClockName = "x_init";
inline const std::string kStartParamName = "t";
inline const std::string kEndParamName = "t_prime";

/// Enforces the two pattern assumptions: a single final location with all
/// incoming edges labeled "$" (merging accepting locations when needed),
/// and no edge action outside sigma + {"$"} (such edges are dropped). The
/// result declares the full alphabet sigma + {"$"} so that the product
/// blocks any word event the pattern cannot consume. Throws PatternError
/// on patterns that cannot be normalized.
Pta normalize_pattern(const Pta& pattern, const Alphabet& sigma);

/// Builds the self-matching pattern: adds parameters t / t_prime and the
/// global clock x_abs, two pre-initial locations that let the pattern
/// start at any position of the word, the "start" edges recording
/// x_abs = t, the x_abs = t_prime guard on every "$" edge, and a
/// post-final location reached only after a positive delay (which pins the
/// end date strictly before the next word event). Expects a normalized
/// pattern.
Pta make_symbolic(const Pta& normalized, const Alphabet& sigma);

/// Encodes a timed word as a linear automaton over the shared clock
/// x_abs: one edge per event guarded x_abs = tau_k, plus the invariant
/// x_abs <= tau_(k+1) on each location so that an end date beyond the next
/// event is impossible. No accepting locations.
Pta tw2pta(const TimedWord& w);

/// Synchronized product with strong broadcast: every component declaring
/// an action moves on it (guards conjoined, resets united), the others
/// stay. Clocks and parameters are shared by name.
Pta sync_product(const std::vector<Pta>& components);

/// An action name not declared by the automaton and not in the given set;
/// tries `base`, then base with underscores appended.
std::string fresh_action_name(const Pta& pta, const Alphabet& taken, const std::string& base);

} // namespace ptmatch
