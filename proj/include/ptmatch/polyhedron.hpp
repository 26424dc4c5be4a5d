#pragma once

#include "ptmatch/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ptmatch {

enum class VarKind { Clock, Parameter };

/// Relation of a linear atom against zero: expr <= 0, expr < 0, expr = 0.
enum class Rel { Le, Lt, Eq };

class VarSpace;
using VarSpacePtr = std::shared_ptr<const VarSpace>;

/// Ordered, immutable set of named variables with clock/parameter kinds.
class VarSpace {
public:
    static VarSpacePtr make(std::vector<std::pair<std::string, VarKind>> vars);

    int dim() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(i); }
    VarKind kind(int i) const { return kinds_.at(i); }
    int index_of(const std::string& name) const; // -1 when absent

    std::vector<int> clocks() const;
    std::vector<int> parameters() const;

    bool same_as(const VarSpace& other) const {
        return names_ == other.names_ && kinds_ == other.kinds_;
    }

private:
    VarSpace() = default;
    std::vector<std::string> names_;
    std::vector<VarKind> kinds_;
};

/// One linear constraint: sum(coeffs[i] * x_i) + constant REL 0.
/// Rational input data is scaled to coprime integers on construction, so
/// all elimination arithmetic runs over plain integers; equalities carry a
/// positive leading coefficient so that syntactically equal atoms denote
/// equal half-spaces.
struct LinAtom {
    std::vector<Integer> coeffs;
    Integer constant;
    Rel rel = Rel::Le;

    bool is_constant() const;
    /// Truth value, only meaningful when is_constant().
    bool constant_truth() const;
    void normalize();

    bool operator==(const LinAtom& other) const = default;
};

/// Builds an atom over `space` from sparse (variable index, coefficient)
/// terms. Convenience for guards, tests and transcriptions.
LinAtom lin_atom(const VarSpacePtr& space, std::vector<std::pair<int, Rational>> terms,
                 Rational constant, Rel rel);

/// The pieces of the complement of an atom (two for an equality).
std::vector<LinAtom> negate_atom(const LinAtom& atom);

/// Exact bound of a variable over a polyhedron; strict means the bound is
/// an infimum/supremum that is not attained.
struct Bound {
    Rational value;
    bool strict = false;
};

struct VarBounds {
    std::optional<Bound> lower; // nullopt = unbounded below
    std::optional<Bound> upper; // nullopt = unbounded above
};

/// A not-necessarily-closed convex polyhedron over rationals, represented
/// purely by constraints. Fourier-Motzkin elimination (with equalities
/// removed by substitution and the strict-iff-either-parent-strict rule)
/// is the single engine behind emptiness, projection, elapse and bounds.
/// Values are immutable; every operation returns a fresh polyhedron.
class ConvexPoly {
public:
    static ConvexPoly universe(VarSpacePtr space);
    ConvexPoly(VarSpacePtr space, std::vector<LinAtom> atoms);

    const VarSpacePtr& space() const { return space_; }
    const std::vector<LinAtom>& atoms() const { return atoms_; }

    ConvexPoly conjoin(const std::vector<LinAtom>& atoms) const;
    ConvexPoly conjoin(const ConvexPoly& other) const;

    /// Decided by eliminating every variable and inspecting the residue.
    bool is_empty() const;

    /// Exact existential projection; the space keeps the eliminated
    /// variables (they become unconstrained).
    ConvexPoly eliminate(const std::vector<int>& vars) const;

    /// { u | exists d >= 0 with u - d (on every clock) in this }.
    ConvexPoly time_elapse() const;

    /// Project away the clocks in R, then pin each of them to zero.
    ConvexPoly reset(const std::vector<int>& clocks) const;

    /// True iff other is a subset of this (atom-wise complement check).
    bool includes(const ConvexPoly& other) const;

    /// Fixes var := value and removes the variable from the space.
    ConvexPoly substitute(int var, const Rational& value) const;

    /// Infimum/supremum of one variable. Throws EmptyPolyError when empty.
    VarBounds bounds(int var) const;

    /// Eliminates every variable absent from `target` (matched by name) and
    /// reorders columns to the target layout.
    ConvexPoly projected_to(const VarSpacePtr& target) const;

    /// One symbolic transition step: conjoin the guard, reset the given
    /// clocks, conjoin the invariant, let time elapse within it, and return
    /// the canonicalized result. Equivalent to composing conjoin / reset /
    /// time_elapse / canonicalized; fused to avoid the intermediate copies
    /// on the exploration hot path.
    ConvexPoly transition(const std::vector<LinAtom>& guard, const std::vector<int>& resets,
                          const std::vector<LinAtom>& invariant) const;

    /// Canonical reduced form: merged opposite inequalities, reduced
    /// equality system, dominance-pruned and entailment-reduced atoms in a
    /// fixed order. Semantically equal zones built along different
    /// exploration paths normalize to the same atom list.
    ConvexPoly canonicalized() const;

    /// Serialization of the (canonicalized) atom list; used as the
    /// visited-set key of the exploration engine.
    std::string signature() const;

    /// Canonical form with every entailed inequality removed, regardless of
    /// size: the minimal rendering-quality representation.
    ConvexPoly reduced() const;

private:
    static ConvexPoly canonical_from(VarSpacePtr space, std::vector<LinAtom> atoms);

    VarSpacePtr space_;
    std::vector<LinAtom> atoms_;
    // emptiness memo: -1 unknown, 0 non-empty, 1 empty; mutation is safe
    // because the value is a pure function of the immutable atom list
    mutable signed char empty_memo_ = -1;
};

/// Finite union of convex polyhedra over one space; an empty disjunct list
/// denotes the empty set and disjuncts are never empty.
class DisjPoly {
public:
    explicit DisjPoly(VarSpacePtr space) : space_(std::move(space)) {}

    const VarSpacePtr& space() const { return space_; }
    const std::vector<ConvexPoly>& disjuncts() const { return disjuncts_; }
    bool empty_set() const { return disjuncts_.empty(); }
    std::size_t size() const { return disjuncts_.size(); }

    /// Adds a disjunct unless it is empty; with subsumption, also skips it
    /// when some existing disjunct already includes it.
    void add(ConvexPoly poly, bool subsumption);

    /// Exact set difference as a finite union.
    DisjPoly difference(const DisjPoly& other) const;

    /// Mutual difference-emptiness.
    bool semantically_equals(const DisjPoly& other) const;

    DisjPoly substitute(const std::string& var, const Rational& value) const;
    DisjPoly projected_to(const VarSpacePtr& target) const;

    /// Tightest bounds of one variable over the whole union.
    /// Throws EmptyPolyError when the union is empty.
    VarBounds bounds(const std::string& var) const;

private:
    VarSpacePtr space_;
    std::vector<ConvexPoly> disjuncts_;
};

} // namespace ptmatch
