#pragma once

#include "ptmatch/rational.hpp"
#include "ptmatch/words.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ptmatch {

enum class CmpOp { Lt, Le, Eq, Ge, Gt };

std::string to_string(CmpOp op);

/// One conjunct of a guard or invariant: clock <op> constant-or-parameter.
struct GuardAtom {
    int clock;
    CmpOp op;
    std::variant<Rational, int> rhs; // constant, or parameter index

    bool is_parametric() const { return std::holds_alternative<int>(rhs); }
};

using Guard = std::vector<GuardAtom>; // conjunction; empty = true

struct Edge {
    int source;
    Guard guard;
    int action;
    std::vector<int> resets; // clock indices
    int target;
};

/// A parametric timed automaton. Locations, clocks, parameters and actions
/// are identified by index; names are kept for I/O and diagnostics.
/// Immutable by convention once built.
class Pta {
public:
    Pta() = default;

    // construction ------------------------------------------------------
    int add_location(const std::string& name, bool accepting = false);
    int add_clock(const std::string& name);
    int add_parameter(const std::string& name);
    int add_action(const std::string& name);
    void set_initial(int loc) { initial_ = loc; }
    void set_accepting(int loc, bool accepting);
    void set_invariant(int loc, Guard inv);
    void add_edge(Edge e);

    // lookups -------------------------------------------------------------
    int location(const std::string& name) const;        // -1 when absent
    int clock(const std::string& name) const;
    int parameter(const std::string& name) const;
    int action(const std::string& name) const;

    int num_locations() const { return static_cast<int>(location_names_.size()); }
    int num_clocks() const { return static_cast<int>(clock_names_.size()); }
    int num_parameters() const { return static_cast<int>(parameter_names_.size()); }
    int num_actions() const { return static_cast<int>(action_names_.size()); }

    const std::string& location_name(int i) const { return location_names_.at(i); }
    const std::string& clock_name(int i) const { return clock_names_.at(i); }
    const std::string& parameter_name(int i) const { return parameter_names_.at(i); }
    const std::string& action_name(int i) const { return action_names_.at(i); }

    const std::vector<std::string>& location_names() const { return location_names_; }
    const std::vector<std::string>& clock_names() const { return clock_names_; }
    const std::vector<std::string>& parameter_names() const { return parameter_names_; }
    const std::vector<std::string>& action_names() const { return action_names_; }

    int initial() const { return initial_; }
    bool is_accepting(int loc) const { return accepting_.at(loc); }
    std::vector<int> accepting_locations() const;
    const Guard& invariant(int loc) const { return invariants_.at(loc); }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Checks the structural invariants; throws DomainError on violation.
    void validate() const;

private:
    std::vector<std::string> location_names_;
    std::vector<std::string> clock_names_;
    std::vector<std::string> parameter_names_;
    std::vector<std::string> action_names_;
    std::map<std::string, int> location_index_;
    std::map<std::string, int> clock_index_;
    std::map<std::string, int> parameter_index_;
    std::map<std::string, int> action_index_;

    int initial_ = -1;
    std::vector<bool> accepting_;
    std::vector<Guard> invariants_;
    std::vector<Edge> edges_;
};

/// Total maps from names to non-negative rationals.
using ClockValuation = std::map<std::string, Rational>;
using ParamValuation = std::map<std::string, Rational>;

/// True iff every atom of g holds under the given clock and parameter
/// values. Throws DomainError when a valuation misses a declared symbol.
bool guard_sat(const Pta& pta, const Guard& g, const ClockValuation& mu,
               const ParamValuation& v);

/// A[v]: every parameter occurrence replaced by its value. The result is
/// parameter-free. Throws DomainError when v is not total on A's parameters.
Pta valuate_pta(const Pta& pta, const ParamValuation& v);

} // namespace ptmatch
