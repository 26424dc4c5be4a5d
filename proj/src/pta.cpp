#include "ptmatch/pta.hpp"

#include "ptmatch/errors.hpp"

namespace ptmatch {

std::string to_string(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Eq: return "=";
        case CmpOp::Ge: return ">=";
        case CmpOp::Gt: return ">";
    }
    return "?";
}

namespace {

int add_named(std::vector<std::string>& names, std::map<std::string, int>& index,
              const std::string& name, const char* what) {
    if (index.count(name)) throw DomainError(std::string(what) + " '" + name + "' already declared");
    int id = static_cast<int>(names.size());
    names.push_back(name);
    index.emplace(name, id);
    return id;
}

int find_named(const std::map<std::string, int>& index, const std::string& name) {
    auto it = index.find(name);
    return it == index.end() ? -1 : it->second;
}

} // namespace

int Pta::add_location(const std::string& name, bool accepting) {
    int id = add_named(location_names_, location_index_, name, "location");
    accepting_.push_back(accepting);
    invariants_.emplace_back();
    return id;
}

int Pta::add_clock(const std::string& name) {
    return add_named(clock_names_, clock_index_, name, "clock");
}

int Pta::add_parameter(const std::string& name) {
    return add_named(parameter_names_, parameter_index_, name, "parameter");
}

int Pta::add_action(const std::string& name) {
    int existing = find_named(action_index_, name);
    if (existing >= 0) return existing;
    return add_named(action_names_, action_index_, name, "action");
}

void Pta::set_accepting(int loc, bool accepting) {
    accepting_.at(loc) = accepting;
}

void Pta::set_invariant(int loc, Guard inv) {
    invariants_.at(loc) = std::move(inv);
}

void Pta::add_edge(Edge e) {
    edges_.push_back(std::move(e));
}

int Pta::location(const std::string& name) const { return find_named(location_index_, name); }
int Pta::clock(const std::string& name) const { return find_named(clock_index_, name); }
int Pta::parameter(const std::string& name) const { return find_named(parameter_index_, name); }
int Pta::action(const std::string& name) const { return find_named(action_index_, name); }

std::vector<int> Pta::accepting_locations() const {
    std::vector<int> out;
    for (int i = 0; i < num_locations(); ++i) {
        if (accepting_[i]) out.push_back(i);
    }
    return out;
}

namespace {

void check_guard(const Pta& pta, const Guard& g, const char* where) {
    for (const GuardAtom& atom : g) {
        if (atom.clock < 0 || atom.clock >= pta.num_clocks()) {
            throw DomainError(std::string("undeclared clock in ") + where);
        }
        if (atom.is_parametric()) {
            int p = std::get<int>(atom.rhs);
            if (p < 0 || p >= pta.num_parameters()) {
                throw DomainError(std::string("undeclared parameter in ") + where);
            }
        } else if (std::get<Rational>(atom.rhs) < 0) {
            throw DomainError(std::string("negative guard constant in ") + where);
        }
    }
}

} // namespace

void Pta::validate() const {
    if (initial_ < 0 || initial_ >= num_locations()) {
        throw DomainError("automaton has no valid initial location");
    }
    for (int loc = 0; loc < num_locations(); ++loc) {
        check_guard(*this, invariants_[loc], "invariant");
    }
    for (const Edge& e : edges_) {
        if (e.source < 0 || e.source >= num_locations() || e.target < 0 ||
            e.target >= num_locations()) {
            throw DomainError("edge endpoint is not a declared location");
        }
        if (e.action < 0 || e.action >= num_actions()) {
            throw DomainError("edge action is not declared");
        }
        check_guard(*this, e.guard, "edge guard");
        for (int c : e.resets) {
            if (c < 0 || c >= num_clocks()) throw DomainError("reset of undeclared clock");
        }
    }
}

namespace {

bool atom_holds(CmpOp op, const Rational& lhs, const Rational& rhs) {
    switch (op) {
        case CmpOp::Lt: return lhs < rhs;
        case CmpOp::Le: return lhs <= rhs;
        case CmpOp::Eq: return lhs == rhs;
        case CmpOp::Ge: return lhs >= rhs;
        case CmpOp::Gt: return lhs > rhs;
    }
    return false;
}

} // namespace

bool guard_sat(const Pta& pta, const Guard& g, const ClockValuation& mu,
               const ParamValuation& v) {
    for (const GuardAtom& atom : g) {
        auto cit = mu.find(pta.clock_name(atom.clock));
        if (cit == mu.end()) {
            throw DomainError("clock valuation misses '" + pta.clock_name(atom.clock) + "'");
        }
        Rational rhs;
        if (atom.is_parametric()) {
            const std::string& pname = pta.parameter_name(std::get<int>(atom.rhs));
            auto pit = v.find(pname);
            if (pit == v.end()) throw DomainError("parameter valuation misses '" + pname + "'");
            rhs = pit->second;
        } else {
            rhs = std::get<Rational>(atom.rhs);
        }
        if (!atom_holds(atom.op, cit->second, rhs)) return false;
    }
    return true;
}

Pta valuate_pta(const Pta& pta, const ParamValuation& v) {
    std::vector<Rational> values(pta.num_parameters());
    for (int p = 0; p < pta.num_parameters(); ++p) {
        auto it = v.find(pta.parameter_name(p));
        if (it == v.end()) {
            throw DomainError("valuation misses parameter '" + pta.parameter_name(p) + "'");
        }
        if (it->second < 0) throw DomainError("parameter values must be non-negative");
        values[p] = it->second;
    }

    Pta out;
    for (int loc = 0; loc < pta.num_locations(); ++loc) {
        out.add_location(pta.location_name(loc), pta.is_accepting(loc));
    }
    for (const std::string& c : pta.clock_names()) out.add_clock(c);
    for (const std::string& a : pta.action_names()) out.add_action(a);
    out.set_initial(pta.initial());

    auto valuate_guard = [&](const Guard& g) {
        Guard fixed;
        fixed.reserve(g.size());
        for (const GuardAtom& atom : g) {
            if (atom.is_parametric()) {
                fixed.push_back({atom.clock, atom.op, values[std::get<int>(atom.rhs)]});
            } else {
                fixed.push_back(atom);
            }
        }
        return fixed;
    };

    for (int loc = 0; loc < pta.num_locations(); ++loc) {
        out.set_invariant(loc, valuate_guard(pta.invariant(loc)));
    }
    for (const Edge& e : pta.edges()) {
        out.add_edge({e.source, valuate_guard(e.guard), e.action, e.resets, e.target});
    }
    return out;
}

} // namespace ptmatch
