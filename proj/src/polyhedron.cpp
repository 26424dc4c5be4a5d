#include "ptmatch/polyhedron.hpp"

#include "ptmatch/errors.hpp"

#include <algorithm>
#include <sstream>

namespace ptmatch {

// ============================================================================
// VarSpace
// ============================================================================

VarSpacePtr VarSpace::make(std::vector<std::pair<std::string, VarKind>> vars) {
    auto space = std::shared_ptr<VarSpace>(new VarSpace());
    for (auto& [name, kind] : vars) {
        if (space->index_of(name) >= 0) throw DomainError("duplicate variable '" + name + "'");
        space->names_.push_back(std::move(name));
        space->kinds_.push_back(kind);
    }
    return space;
}

int VarSpace::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<int> VarSpace::clocks() const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i) {
        if (kinds_[i] == VarKind::Clock) out.push_back(i);
    }
    return out;
}

std::vector<int> VarSpace::parameters() const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i) {
        if (kinds_[i] == VarKind::Parameter) out.push_back(i);
    }
    return out;
}

// ============================================================================
// LinAtom
// ============================================================================

bool LinAtom::is_constant() const {
    for (const Integer& c : coeffs) {
        if (c != 0) return false;
    }
    return true;
}

bool LinAtom::constant_truth() const {
    switch (rel) {
        case Rel::Le: return constant <= 0;
        case Rel::Lt: return constant < 0;
        case Rel::Eq: return constant == 0;
    }
    return false;
}

namespace {

/// Magnitude when the value fits one limb, 0 otherwise (0 also for zero).
inline unsigned long single_limb(const Integer& value) {
    int size = value.get_mpz_t()->_mp_size;
    if (size > 1 || size < -1) return 0;
    return size == 0 ? 0 : mpz_getlimbn(value.get_mpz_t(), 0);
}

inline unsigned long gcd_ul(unsigned long a, unsigned long b) {
    while (b != 0) {
        unsigned long r = a % b;
        a = b;
        b = r;
    }
    return a;
}

} // namespace

void LinAtom::normalize() {
    bool all_small = true;
    for (const Integer& c : coeffs) {
        int size = c.get_mpz_t()->_mp_size;
        if (size > 1 || size < -1) {
            all_small = false;
            break;
        }
    }
    int const_size = constant.get_mpz_t()->_mp_size;
    all_small = all_small && const_size <= 1 && const_size >= -1;

    if (all_small) {
        // single-limb fast path covers nearly every atom
        unsigned long g = 0;
        for (const Integer& c : coeffs) {
            g = gcd_ul(g, single_limb(c));
            if (g == 1) break;
        }
        if (g != 1) g = gcd_ul(g, single_limb(constant));
        if (g == 0) return; // 0 REL 0, already canonical
        if (g != 1) {
            for (Integer& c : coeffs) {
                mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), g);
            }
            mpz_divexact_ui(constant.get_mpz_t(), constant.get_mpz_t(), g);
        }
    } else {
        Integer divisor = 0;
        for (const Integer& c : coeffs) {
            mpz_gcd(divisor.get_mpz_t(), divisor.get_mpz_t(), c.get_mpz_t());
            if (mpz_cmp_ui(divisor.get_mpz_t(), 1) == 0) break;
        }
        if (divisor != 1) {
            mpz_gcd(divisor.get_mpz_t(), divisor.get_mpz_t(), constant.get_mpz_t());
        }
        if (divisor == 0) return; // 0 REL 0
        if (divisor != 1) {
            for (Integer& c : coeffs) {
                mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
            }
            mpz_divexact(constant.get_mpz_t(), constant.get_mpz_t(), divisor.get_mpz_t());
        }
    }
    if (rel == Rel::Eq) {
        // canonical sign: first nonzero coefficient positive
        for (const Integer& c : coeffs) {
            if (c == 0) continue;
            if (c < 0) {
                for (Integer& x : coeffs) x = -x;
                constant = -constant;
            }
            break;
        }
    }
}

LinAtom lin_atom(const VarSpacePtr& space, std::vector<std::pair<int, Rational>> terms,
                 Rational constant, Rel rel) {
    // scale the rational data to integers before storing
    Integer den = constant.get_den();
    for (const auto& [var, coeff] : terms) {
        if (var < 0 || var >= space->dim()) throw DomainError("atom variable outside space");
        den = lcm(den, coeff.get_den());
    }
    LinAtom atom;
    atom.coeffs.assign(static_cast<std::size_t>(space->dim()), Integer(0));
    for (auto& [var, coeff] : terms) {
        atom.coeffs[static_cast<std::size_t>(var)] +=
            coeff.get_num() * (den / coeff.get_den());
    }
    atom.constant = constant.get_num() * (den / constant.get_den());
    atom.rel = rel;
    atom.normalize();
    return atom;
}

std::vector<LinAtom> negate_atom(const LinAtom& atom) {
    auto flipped = [&](Rel rel) {
        LinAtom out;
        out.coeffs.reserve(atom.coeffs.size());
        for (const Integer& c : atom.coeffs) out.coeffs.push_back(-c);
        out.constant = -atom.constant;
        out.rel = rel;
        return out;
    };
    switch (atom.rel) {
        case Rel::Le: return {flipped(Rel::Lt)};         // not(e <= 0)  is  -e < 0
        case Rel::Lt: return {flipped(Rel::Le)};         // not(e < 0)   is  -e <= 0
        case Rel::Eq: {
            LinAtom below = atom;
            below.rel = Rel::Lt;                         // e < 0
            return {below, flipped(Rel::Lt)};            // or -e < 0
        }
    }
    return {};
}

// ============================================================================
// Constraint-system core: sweep, Fourier-Motzkin, emptiness
// ============================================================================

namespace {

using System = std::vector<LinAtom>;

LinAtom false_atom(std::size_t dim) {
    LinAtom atom;
    atom.coeffs.assign(dim, Integer(0));
    atom.constant = 1;
    atom.rel = Rel::Le; // 1 <= 0
    return atom;
}

bool atom_lex_less(const LinAtom& a, const LinAtom& b) {
    if (a.rel != b.rel) return static_cast<int>(a.rel) < static_cast<int>(b.rel);
    if (a.coeffs != b.coeffs) {
        return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(),
                                            b.coeffs.end());
    }
    return a.constant < b.constant;
}

/// First nonzero coefficient negative (sign orientation of the atom).
bool leading_negative(const LinAtom& atom) {
    for (const Integer& c : atom.coeffs) {
        if (c != 0) return c < 0;
    }
    return false;
}

/// Lexicographic comparison of sign-oriented coefficient vectors, without
/// materializing the oriented copies.
int cmp_oriented(const LinAtom& a, bool neg_a, const LinAtom& b, bool neg_b) {
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) {
        int c;
        if (neg_a == neg_b) {
            c = cmp(a.coeffs[k], b.coeffs[k]);
            if (neg_a) c = -c;
        } else {
            // compare a against -b (equivalently -a against b)
            Integer flipped = -b.coeffs[k];
            c = cmp(a.coeffs[k], flipped);
            if (neg_a) c = -c;
        }
        if (c != 0) return c;
    }
    return 0;
}

/// Fold of the sign-oriented coefficient vector into 64 bits; equal
/// oriented vectors hash equally, so distinct hashes need no comparison.
std::uint64_t oriented_hash(const LinAtom& atom, bool negated) {
    constexpr unsigned long kMod = 0x1fffffffffffffffUL;
    std::uint64_t h = 1469598103934665603ULL;
    for (const Integer& c : atom.coeffs) {
        int size = c.get_mpz_t()->_mp_size;
        std::uint64_t magnitude;
        if (size <= 1 && size >= -1) {
            magnitude = single_limb(c);
        } else {
            magnitude = mpz_fdiv_ui(c.get_mpz_t(), kMod);
            if (size < 0 && magnitude != 0) magnitude = kMod - magnitude; // |c| mod kMod
        }
        bool negative = (size < 0) != negated;
        std::uint64_t folded = negative && magnitude != 0 ? ~magnitude : magnitude;
        h = (h ^ folded) * 1099511628211ULL;
    }
    return h;
}

/// Normalizes, drops trivially true atoms, fuses atoms sharing a (signed)
/// coefficient vector into the tightest bounds. Returns false on a
/// contradiction (the system is then replaced by a single false atom).
/// The output order is deterministic but not sorted; canonical_from sorts.
bool sweep(System& sys) {
    const std::size_t dim = sys.empty() ? 0 : sys.front().coeffs.size();
    bool contradiction = false;

    System work;
    work.reserve(sys.size());
    for (LinAtom& atom : sys) {
        atom.normalize();
        if (atom.is_constant()) {
            if (!atom.constant_truth()) {
                contradiction = true;
                break;
            }
            continue;
        }
        work.push_back(std::move(atom));
    }
    if (contradiction) {
        sys.assign(1, false_atom(dim));
        return false;
    }

    // group atoms by direction: the coefficient vector divided by its own
    // gcd and sign-oriented, so that parallel constraints fuse no matter
    // how the trailing constant skewed their integer scaling
    struct Entry {
        std::uint64_t hash;
        std::uint32_t index;
        bool negated;
        unsigned long scale;      // gcd of the coefficients, 0 = multi-limb
        const LinAtom* direction; // reduced vector when scale > 1
    };
    std::vector<LinAtom> reduced_store;
    reduced_store.reserve(work.size()); // pointer stability for Entry::direction
    std::vector<Entry> order;
    order.reserve(work.size());
    for (std::uint32_t k = 0; k < work.size(); ++k) {
        unsigned long cg = 0;
        bool small = true;
        for (const Integer& c : work[k].coeffs) {
            int size = c.get_mpz_t()->_mp_size;
            if (size > 1 || size < -1) {
                small = false;
                break;
            }
            cg = gcd_ul(cg, single_limb(c));
            if (cg == 1) break;
        }
        Entry entry{0, k, leading_negative(work[k]), 1, &work[k]};
        if (!small || cg > 1) {
            Integer g = 0;
            for (const Integer& c : work[k].coeffs) {
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            }
            if (g > 1) {
                LinAtom dir;
                dir.coeffs.reserve(work[k].coeffs.size());
                for (const Integer& c : work[k].coeffs) {
                    Integer q;
                    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
                    dir.coeffs.push_back(std::move(q));
                }
                reduced_store.push_back(std::move(dir));
                entry.direction = &reduced_store.back();
                // 0 marks a gcd too large for a limb; recomputed exactly when fusing
                entry.scale = mpz_fits_ulong_p(g.get_mpz_t()) ? g.get_ui() : 0;
            }
        }
        entry.hash = oriented_hash(*entry.direction, entry.negated);
        order.push_back(entry);
    }

    bool any_dup = false;
    std::sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
        return a.hash != b.hash ? a.hash < b.hash : a.index < b.index;
    });
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        if (order[k].hash == order[k + 1].hash) {
            any_dup = true;
            break;
        }
    }
    if (!any_dup) {
        sys = std::move(work); // nothing can fuse
        return true;
    }

    // the scale of an atom relative to its direction, as an exact integer
    auto scale_of = [&](const Entry& e) -> Integer {
        if (e.scale != 0) return Integer(e.scale);
        Integer g = 0;
        for (const Integer& c : work[e.index].coeffs) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        }
        return g;
    };

    // inside an equal-hash stretch distinct directions may interleave;
    // order them exactly so that equal directions become adjacent
    for (std::size_t k = 0; k < order.size();) {
        std::size_t end = k + 1;
        while (end < order.size() && order[end].hash == order[k].hash) ++end;
        if (end - k > 1) {
            std::sort(order.begin() + static_cast<std::ptrdiff_t>(k),
                      order.begin() + static_cast<std::ptrdiff_t>(end),
                      [&](const Entry& a, const Entry& b) {
                          int c = cmp_oriented(*a.direction, a.negated, *b.direction, b.negated);
                          return c != 0 ? c < 0 : a.index < b.index;
                      });
        }
        k = end;
    }

    System out;
    out.reserve(work.size());
    std::size_t i = 0;
    while (i < order.size() && !contradiction) {
        std::size_t j = i + 1;
        while (j < order.size() && order[j].hash == order[i].hash &&
               cmp_oriented(*order[i].direction, order[i].negated, *order[j].direction,
                            order[j].negated) == 0) {
            ++j;
        }
        if (j == i + 1) {
            out.push_back(std::move(work[order[i].index]));
            i = j;
            continue;
        }

        // several atoms along one direction d: fuse them into the tightest
        // bounds on d . x
        std::optional<std::pair<Rational, bool>> upper, lower; // value, strict
        std::optional<Rational> equal;
        for (std::size_t k = i; k < j && !contradiction; ++k) {
            const LinAtom& atom = work[order[k].index];
            bool positive = !order[k].negated;
            Rational bound(positive ? Integer(-atom.constant) : atom.constant, scale_of(order[k]));
            bound.canonicalize();
            switch (atom.rel) {
                case Rel::Eq:
                    if (equal && *equal != bound) contradiction = true;
                    equal = std::move(bound);
                    break;
                case Rel::Le:
                case Rel::Lt: {
                    bool strict = (atom.rel == Rel::Lt);
                    if (positive) {
                        if (!upper || bound < upper->first ||
                            (bound == upper->first && strict)) {
                            upper = {{std::move(bound), strict}};
                        }
                    } else {
                        if (!lower || bound > lower->first ||
                            (bound == lower->first && strict)) {
                            lower = {{std::move(bound), strict}};
                        }
                    }
                    break;
                }
            }
        }
        if (contradiction) break;

        // d . x REL bound, scaled back to integers
        auto emit = [&](const Rational& bound, bool flip, Rel rel) {
            LinAtom atom;
            atom.coeffs.reserve(dim);
            const Integer& den = bound.get_den();
            bool neg = order[i].negated != flip;
            for (const Integer& c : order[i].direction->coeffs) {
                atom.coeffs.push_back(neg ? Integer(-c * den) : Integer(c * den));
            }
            atom.constant = flip ? bound.get_num() : Integer(-bound.get_num());
            atom.rel = rel;
            atom.normalize();
            out.push_back(std::move(atom));
        };
        if (equal) {
            if ((upper && (*equal > upper->first || (*equal == upper->first && upper->second))) ||
                (lower && (*equal < lower->first || (*equal == lower->first && lower->second)))) {
                contradiction = true;
                break;
            }
            emit(*equal, false, Rel::Eq);
            i = j;
            continue;
        }
        if (upper && lower) {
            if (lower->first > upper->first ||
                (lower->first == upper->first && (lower->second || upper->second))) {
                contradiction = true;
                break;
            }
            if (lower->first == upper->first) { // touching bounds: an equality
                emit(upper->first, false, Rel::Eq);
                i = j;
                continue;
            }
        }
        if (upper) emit(upper->first, false, upper->second ? Rel::Lt : Rel::Le);
        if (lower) emit(lower->first, true, lower->second ? Rel::Lt : Rel::Le);
        i = j;
    }

    if (contradiction) {
        sys.assign(1, false_atom(dim));
        return false;
    }
    sys = std::move(out);
    return true;
}

/// target := |pivot_v| * target - (sign-adjusted multiple) * pivot, which
/// zeroes the pivot variable while scaling the inequality positively.
void combine_out(LinAtom& target, const LinAtom& pivot, std::size_t v) {
    const Integer& pc = pivot.coeffs[v];
    Integer scale = pc < 0 ? Integer(-pc) : pc;
    Integer factor = target.coeffs[v];
    if (pc < 0) factor = -factor;
    for (std::size_t k = 0; k < target.coeffs.size(); ++k) {
        target.coeffs[k] = target.coeffs[k] * scale - factor * pivot.coeffs[k];
    }
    target.constant = target.constant * scale - factor * pivot.constant;
}

/// Removes one variable exactly. Equalities substitute; otherwise classic
/// Fourier-Motzkin with the strict-iff-either-parent-strict rule.
/// Returns false when the system became contradictory.
bool eliminate_one(System& sys, int var) {
    std::size_t v = static_cast<std::size_t>(var);

    // substitution via an equality touching var
    for (std::size_t i = 0; i < sys.size(); ++i) {
        if (sys[i].rel != Rel::Eq || sys[i].coeffs[v] == 0) continue;
        LinAtom pivot = std::move(sys[i]);
        sys.erase(sys.begin() + static_cast<std::ptrdiff_t>(i));
        for (LinAtom& atom : sys) {
            if (atom.coeffs[v] != 0) combine_out(atom, pivot, v);
        }
        return sweep(sys);
    }

    System rest;
    System uppers, lowers;
    for (LinAtom& atom : sys) {
        const Integer& c = atom.coeffs[v];
        if (c == 0) rest.push_back(std::move(atom));
        else if (c > 0) uppers.push_back(std::move(atom));
        else lowers.push_back(std::move(atom));
    }
    if (uppers.empty() || lowers.empty()) {
        // one-sided variable: its atoms simply vanish, nothing new appears
        sys = std::move(rest);
        return true;
    }
    for (const LinAtom& up : uppers) {
        for (const LinAtom& lo : lowers) {
            // up: cu*v + ru REL 0 (cu > 0), lo: cl*v + rl REL 0 (cl < 0)
            const Integer& cu = up.coeffs[v];
            Integer neg_cl = -lo.coeffs[v];
            LinAtom combined;
            combined.coeffs.reserve(up.coeffs.size());
            for (std::size_t k = 0; k < up.coeffs.size(); ++k) {
                combined.coeffs.push_back(up.coeffs[k] * neg_cl + lo.coeffs[k] * cu);
            }
            combined.constant = up.constant * neg_cl + lo.constant * cu;
            combined.rel = (up.rel == Rel::Lt || lo.rel == Rel::Lt) ? Rel::Lt : Rel::Le;
            rest.push_back(std::move(combined));
        }
    }
    sys = std::move(rest);
    return sweep(sys);
}

int cheapest_variable(const System& sys, const std::vector<bool>& todo) {
    int best = -1;
    long best_cost = 0;
    for (std::size_t v = 0; v < todo.size(); ++v) {
        if (!todo[v]) continue;
        long uppers = 0, lowers = 0;
        bool has_eq = false, occurs = false;
        for (const LinAtom& atom : sys) {
            const Integer& c = atom.coeffs[v];
            if (c == 0) continue;
            occurs = true;
            if (atom.rel == Rel::Eq) has_eq = true;
            else if (c > 0) ++uppers;
            else ++lowers;
        }
        if (!occurs) return static_cast<int>(v); // free elimination
        long cost = has_eq ? 0 : uppers * lowers - uppers - lowers;
        if (best < 0 || cost < best_cost) {
            best = static_cast<int>(v);
            best_cost = cost;
        }
    }
    return best;
}

/// Eliminates all flagged variables; returns false on contradiction.
bool eliminate_vars(System& sys, std::vector<bool> todo) {
    if (!sweep(sys)) return false;
    while (true) {
        int v = cheapest_variable(sys, todo);
        if (v < 0) return true;
        todo[static_cast<std::size_t>(v)] = false;
        if (!eliminate_one(sys, v)) return false;
    }
}

bool system_is_empty(System sys, int dim) {
    std::vector<bool> all(static_cast<std::size_t>(dim), true);
    return !eliminate_vars(sys, std::move(all));
}

} // namespace

// ============================================================================
// ConvexPoly
// ============================================================================

ConvexPoly ConvexPoly::universe(VarSpacePtr space) {
    return ConvexPoly(std::move(space), {});
}

ConvexPoly::ConvexPoly(VarSpacePtr space, std::vector<LinAtom> atoms)
    : space_(std::move(space)) {
    atoms_.reserve(atoms.size());
    std::size_t dim = static_cast<std::size_t>(space_->dim());
    for (LinAtom& atom : atoms) {
        if (atom.coeffs.size() != dim) throw DomainError("atom has wrong dimension");
        atom.normalize();
        if (atom.is_constant()) {
            if (atom.constant_truth()) continue;
            atoms_.assign(1, false_atom(dim));
            empty_memo_ = 1;
            return;
        }
        atoms_.push_back(std::move(atom));
    }
    if (atoms_.empty()) empty_memo_ = 0; // universe
}

ConvexPoly ConvexPoly::conjoin(const std::vector<LinAtom>& atoms) const {
    std::vector<LinAtom> merged = atoms_;
    merged.insert(merged.end(), atoms.begin(), atoms.end());
    return ConvexPoly(space_, std::move(merged));
}

ConvexPoly ConvexPoly::conjoin(const ConvexPoly& other) const {
    if (!space_->same_as(*other.space_)) throw DomainError("conjoin over mismatched spaces");
    return conjoin(other.atoms_);
}

bool ConvexPoly::is_empty() const {
    if (empty_memo_ < 0) {
        empty_memo_ = system_is_empty(atoms_, space_->dim()) ? 1 : 0;
    }
    return empty_memo_ == 1;
}

ConvexPoly ConvexPoly::eliminate(const std::vector<int>& vars) const {
    std::vector<bool> todo(static_cast<std::size_t>(space_->dim()), false);
    for (int v : vars) {
        if (v < 0 || v >= space_->dim()) throw DomainError("eliminate: variable outside space");
        todo[static_cast<std::size_t>(v)] = true;
    }
    System sys = atoms_;
    eliminate_vars(sys, std::move(todo));
    return ConvexPoly(space_, std::move(sys));
}

namespace {

/// In-place time elapse: an extra column for the elapsed amount d, clocks
/// substituted x -> x-d, then d eliminated again.
void elapse_system(System& sys, const std::vector<int>& clock_vars, std::size_t dim) {
    for (LinAtom& atom : sys) {
        Integer d_coeff = 0;
        for (int c : clock_vars) d_coeff -= atom.coeffs[static_cast<std::size_t>(c)];
        atom.coeffs.push_back(std::move(d_coeff));
    }
    LinAtom nonneg; // -d <= 0
    nonneg.coeffs.assign(dim + 1, Integer(0));
    nonneg.coeffs[dim] = -1;
    nonneg.rel = Rel::Le;
    sys.push_back(std::move(nonneg));

    std::vector<bool> todo(dim + 1, false);
    todo[dim] = true;
    eliminate_vars(sys, std::move(todo));
    for (LinAtom& atom : sys) atom.coeffs.resize(dim);
}

} // namespace

ConvexPoly ConvexPoly::time_elapse() const {
    std::size_t dim = static_cast<std::size_t>(space_->dim());
    System sys = atoms_;
    elapse_system(sys, space_->clocks(), dim);
    return ConvexPoly(space_, std::move(sys));
}

ConvexPoly ConvexPoly::reset(const std::vector<int>& clocks) const {
    if (clocks.empty()) return *this;
    for (int c : clocks) {
        if (c < 0 || c >= space_->dim() || space_->kind(c) != VarKind::Clock) {
            throw DomainError("reset of a non-clock variable");
        }
    }
    ConvexPoly projected = eliminate(clocks);
    std::vector<LinAtom> zeros;
    zeros.reserve(clocks.size());
    for (int c : clocks) {
        zeros.push_back(lin_atom(space_, {{c, Rational(1)}}, Rational(0), Rel::Eq));
    }
    return projected.conjoin(zeros);
}

bool ConvexPoly::includes(const ConvexPoly& other) const {
    if (!space_->same_as(*other.space_)) throw DomainError("inclusion over mismatched spaces");
    for (const LinAtom& atom : atoms_) {
        for (const LinAtom& piece : negate_atom(atom)) {
            System sys = other.atoms_;
            sys.push_back(piece);
            if (!system_is_empty(std::move(sys), space_->dim())) return false;
        }
    }
    return true;
}

ConvexPoly ConvexPoly::substitute(int var, const Rational& value) const {
    if (var < 0 || var >= space_->dim()) throw DomainError("substitute: variable outside space");
    std::vector<std::pair<std::string, VarKind>> remaining;
    for (int i = 0; i < space_->dim(); ++i) {
        if (i != var) remaining.emplace_back(space_->name(i), space_->kind(i));
    }
    VarSpacePtr reduced = VarSpace::make(std::move(remaining));

    const Integer& num = value.get_num();
    const Integer& den = value.get_den(); // positive
    std::vector<LinAtom> out;
    out.reserve(atoms_.size());
    for (const LinAtom& atom : atoms_) {
        LinAtom moved;
        moved.rel = atom.rel;
        // scale by den to stay integral: den * (rest) + coeff * num
        const Integer& coeff = atom.coeffs[static_cast<std::size_t>(var)];
        moved.constant = atom.constant * den + coeff * num;
        moved.coeffs.reserve(atom.coeffs.size() - 1);
        for (std::size_t i = 0; i < atom.coeffs.size(); ++i) {
            if (static_cast<int>(i) != var) moved.coeffs.push_back(atom.coeffs[i] * den);
        }
        out.push_back(std::move(moved));
    }
    return ConvexPoly(std::move(reduced), std::move(out));
}

VarBounds ConvexPoly::bounds(int var) const {
    if (var < 0 || var >= space_->dim()) throw DomainError("bounds: variable outside space");
    std::vector<bool> todo(static_cast<std::size_t>(space_->dim()), true);
    todo[static_cast<std::size_t>(var)] = false;
    System sys = atoms_;
    if (!eliminate_vars(sys, std::move(todo))) throw EmptyPolyError("bounds of empty polyhedron");

    VarBounds result;
    std::size_t v = static_cast<std::size_t>(var);
    auto feed_lower = [&](const Rational& value, bool strict) {
        if (!result.lower || value > result.lower->value ||
            (value == result.lower->value && strict)) {
            result.lower = Bound{value, strict};
        }
    };
    auto feed_upper = [&](const Rational& value, bool strict) {
        if (!result.upper || value < result.upper->value ||
            (value == result.upper->value && strict)) {
            result.upper = Bound{value, strict};
        }
    };
    for (const LinAtom& atom : sys) {
        const Integer& c = atom.coeffs[v];
        if (c == 0) continue; // cannot happen after elimination, kept defensively
        Rational value(-atom.constant, c);
        value.canonicalize();
        switch (atom.rel) {
            case Rel::Eq:
                feed_lower(value, false);
                feed_upper(value, false);
                break;
            case Rel::Le:
            case Rel::Lt: {
                bool strict = (atom.rel == Rel::Lt);
                if (c > 0) feed_upper(value, strict);
                else feed_lower(value, strict);
                break;
            }
        }
    }
    if (result.lower && result.upper) {
        const Bound& lo = *result.lower;
        const Bound& up = *result.upper;
        if (lo.value > up.value ||
            (lo.value == up.value && (lo.strict || up.strict))) {
            throw EmptyPolyError("bounds of empty polyhedron");
        }
    }
    return result;
}

ConvexPoly ConvexPoly::projected_to(const VarSpacePtr& target) const {
    std::vector<int> source_of(static_cast<std::size_t>(target->dim()), -1);
    std::vector<bool> keep(static_cast<std::size_t>(space_->dim()), false);
    for (int i = 0; i < target->dim(); ++i) {
        int src = space_->index_of(target->name(i));
        if (src < 0) throw DomainError("projection target names unknown variable");
        source_of[static_cast<std::size_t>(i)] = src;
        keep[static_cast<std::size_t>(src)] = true;
    }
    std::vector<bool> todo(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) todo[i] = !keep[i];

    System sys = atoms_;
    eliminate_vars(sys, std::move(todo));

    std::vector<LinAtom> out;
    out.reserve(sys.size());
    for (const LinAtom& atom : sys) {
        LinAtom mapped;
        mapped.rel = atom.rel;
        mapped.constant = atom.constant;
        mapped.coeffs.reserve(source_of.size());
        for (int src : source_of) mapped.coeffs.push_back(atom.coeffs[static_cast<std::size_t>(src)]);
        out.push_back(std::move(mapped));
    }
    return ConvexPoly(target, std::move(out));
}

namespace {

/// Zones stay compact through the Gauss and dominance passes alone; the
/// quadratic entailment sweep only pays off once a zone outgrows them.
constexpr std::size_t kEntailmentThreshold = 18;
constexpr std::size_t kEntailmentLimit = 64;

/// Greedy removal of inequalities entailed by the rest; deterministic on a
/// sorted system.
void entailment_reduce(System& sys, int dim) {
    if (sys.size() > kEntailmentLimit) return;
    for (std::size_t i = 0; i < sys.size();) {
        if (sys[i].rel == Rel::Eq) {
            ++i;
            continue;
        }
        bool entailed = true;
        for (const LinAtom& piece : negate_atom(sys[i])) {
            System probe;
            probe.reserve(sys.size());
            for (std::size_t k = 0; k < sys.size(); ++k) {
                if (k != i) probe.push_back(sys[k]);
            }
            probe.push_back(piece);
            if (!system_is_empty(std::move(probe), dim)) {
                entailed = false;
                break;
            }
        }
        if (entailed) sys.erase(sys.begin() + static_cast<std::ptrdiff_t>(i));
        else ++i;
    }
}

/// Gauss-reduces the equality subsystem (pivots in ascending variable
/// order) and substitutes pivot variables out of every other atom.
bool gauss_reduce(System& sys, int dim) {
    std::vector<std::size_t> pivots;
    for (int v = 0; v < dim; ++v) {
        std::size_t found = sys.size();
        for (std::size_t i = 0; i < sys.size(); ++i) {
            if (sys[i].rel != Rel::Eq || sys[i].coeffs[static_cast<std::size_t>(v)] == 0) continue;
            if (std::find(pivots.begin(), pivots.end(), i) != pivots.end()) continue;
            found = i;
            break;
        }
        if (found == sys.size()) continue;
        for (std::size_t i = 0; i < sys.size(); ++i) {
            if (i == found || sys[i].coeffs[static_cast<std::size_t>(v)] == 0) continue;
            combine_out(sys[i], sys[found], static_cast<std::size_t>(v));
            sys[i].normalize();
        }
        pivots.push_back(found);
    }
    return sweep(sys);
}

} // namespace

ConvexPoly ConvexPoly::canonical_from(VarSpacePtr space, std::vector<LinAtom> sys) {
    int dim = space->dim();
    if (!sweep(sys) || !gauss_reduce(sys, dim)) {
        return ConvexPoly(std::move(space), {false_atom(static_cast<std::size_t>(dim))});
    }
    if (sys.size() > kEntailmentThreshold) entailment_reduce(sys, dim);
    if (system_is_empty(sys, dim)) {
        return ConvexPoly(std::move(space), {false_atom(static_cast<std::size_t>(dim))});
    }
    std::sort(sys.begin(), sys.end(), atom_lex_less);
    ConvexPoly out(std::move(space), std::move(sys));
    out.empty_memo_ = 0;
    return out;
}

ConvexPoly ConvexPoly::canonicalized() const {
    return canonical_from(space_, atoms_);
}

ConvexPoly ConvexPoly::reduced() const {
    System sys = atoms_;
    int dim = space_->dim();
    if (!sweep(sys) || !gauss_reduce(sys, dim) || system_is_empty(sys, dim)) {
        return ConvexPoly(space_, {false_atom(static_cast<std::size_t>(dim))});
    }
    entailment_reduce(sys, dim);
    std::sort(sys.begin(), sys.end(), atom_lex_less);
    ConvexPoly out(space_, std::move(sys));
    out.empty_memo_ = 0;
    return out;
}

ConvexPoly ConvexPoly::transition(const std::vector<LinAtom>& guard,
                                  const std::vector<int>& resets,
                                  const std::vector<LinAtom>& invariant) const {
    std::size_t dim = static_cast<std::size_t>(space_->dim());
    System sys = atoms_;
    sys.reserve(sys.size() + guard.size() + 2 * invariant.size() + resets.size() + 1);
    sys.insert(sys.end(), guard.begin(), guard.end());

    if (!resets.empty()) {
        std::vector<bool> todo(dim, false);
        for (int c : resets) {
            if (c < 0 || c >= space_->dim() || space_->kind(c) != VarKind::Clock) {
                throw DomainError("reset of a non-clock variable");
            }
            todo[static_cast<std::size_t>(c)] = true;
        }
        if (!eliminate_vars(sys, std::move(todo))) {
            return canonical_from(space_, std::move(sys)); // already contradictory
        }
        for (int c : resets) {
            LinAtom zero;
            zero.coeffs.assign(dim, Integer(0));
            zero.coeffs[static_cast<std::size_t>(c)] = 1;
            zero.rel = Rel::Eq;
            sys.push_back(std::move(zero));
        }
    }

    sys.insert(sys.end(), invariant.begin(), invariant.end());
    elapse_system(sys, space_->clocks(), dim);
    sys.insert(sys.end(), invariant.begin(), invariant.end());
    return canonical_from(space_, std::move(sys));
}

std::string ConvexPoly::signature() const {
    std::ostringstream out;
    for (const LinAtom& atom : atoms_) {
        switch (atom.rel) {
            case Rel::Le: out << "L"; break;
            case Rel::Lt: out << "S"; break;
            case Rel::Eq: out << "E"; break;
        }
        out << atom.constant.get_str();
        for (std::size_t i = 0; i < atom.coeffs.size(); ++i) {
            if (atom.coeffs[i] == 0) continue;
            out << "," << i << ":" << atom.coeffs[i].get_str();
        }
        out << ";";
    }
    return out.str();
}

// ============================================================================
// DisjPoly
// ============================================================================

void DisjPoly::add(ConvexPoly poly, bool subsumption) {
    if (!space_->same_as(*poly.space())) throw DomainError("union over mismatched spaces");
    if (poly.is_empty()) return;
    if (subsumption) {
        for (const ConvexPoly& existing : disjuncts_) {
            if (existing.includes(poly)) return;
        }
    }
    disjuncts_.push_back(std::move(poly));
}

DisjPoly DisjPoly::difference(const DisjPoly& other) const {
    if (!space_->same_as(*other.space())) throw DomainError("difference over mismatched spaces");
    std::vector<ConvexPoly> pieces = disjuncts_;
    for (const ConvexPoly& q : other.disjuncts_) {
        std::vector<ConvexPoly> next;
        for (const ConvexPoly& p : pieces) {
            for (const LinAtom& atom : q.atoms()) {
                for (const LinAtom& neg : negate_atom(atom)) {
                    ConvexPoly piece = p.conjoin({neg});
                    if (!piece.is_empty()) next.push_back(std::move(piece));
                }
            }
        }
        pieces = std::move(next);
        if (pieces.empty()) break;
    }
    DisjPoly out(space_);
    out.disjuncts_ = std::move(pieces);
    return out;
}

bool DisjPoly::semantically_equals(const DisjPoly& other) const {
    return difference(other).empty_set() && other.difference(*this).empty_set();
}

DisjPoly DisjPoly::substitute(const std::string& var, const Rational& value) const {
    int idx = space_->index_of(var);
    if (idx < 0) throw DomainError("substitute: unknown variable '" + var + "'");
    std::optional<DisjPoly> out;
    for (const ConvexPoly& p : disjuncts_) {
        ConvexPoly fixed = p.substitute(idx, value);
        if (!out) out.emplace(fixed.space());
        out->add(std::move(fixed), false);
    }
    if (out) return *out;

    std::vector<std::pair<std::string, VarKind>> remaining;
    for (int i = 0; i < space_->dim(); ++i) {
        if (i != idx) remaining.emplace_back(space_->name(i), space_->kind(i));
    }
    return DisjPoly(VarSpace::make(std::move(remaining)));
}

DisjPoly DisjPoly::projected_to(const VarSpacePtr& target) const {
    DisjPoly out(target);
    for (const ConvexPoly& p : disjuncts_) out.add(p.projected_to(target), false);
    return out;
}

VarBounds DisjPoly::bounds(const std::string& var) const {
    int idx = space_->index_of(var);
    if (idx < 0) throw DomainError("bounds: unknown variable '" + var + "'");
    bool any = false;
    VarBounds merged;
    for (const ConvexPoly& p : disjuncts_) {
        VarBounds piece;
        try {
            piece = p.bounds(idx);
        } catch (const EmptyPolyError&) {
            continue;
        }
        if (!any) {
            merged = piece;
            any = true;
            continue;
        }
        // widen: union bounds are the weakest of the per-disjunct bounds
        if (!piece.lower || !merged.lower) merged.lower.reset();
        else if (piece.lower->value < merged.lower->value ||
                 (piece.lower->value == merged.lower->value && !piece.lower->strict)) {
            merged.lower = piece.lower;
        }
        if (!piece.upper || !merged.upper) merged.upper.reset();
        else if (piece.upper->value > merged.upper->value ||
                 (piece.upper->value == merged.upper->value && !piece.upper->strict)) {
            merged.upper = piece.upper;
        }
    }
    if (!any) throw EmptyPolyError("bounds of empty union");
    return merged;
}

} // namespace ptmatch
