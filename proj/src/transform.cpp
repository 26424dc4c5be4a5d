#include "ptmatch/transform.hpp"

#include "ptmatch/errors.hpp"

#include <algorithm>
#include <map>

namespace ptmatch {

namespace {

void check_reserved_names(const Pta& pattern) {
    for (const std::string& c : pattern.clock_names()) {
        if (c == kAbsClockName || c == kInitClockName) {
            throw PatternError("pattern declares reserved clock '" + c + "'");
        }
    }
    for (const std::string& p : pattern.parameter_names()) {
        if (p == kStartParamName || p == kEndParamName) {
            throw PatternError("pattern declares reserved parameter '" + p + "'");
        }
    }
    for (const std::string& a : pattern.action_names()) {
        if (a == kStartAction) {
            throw PatternError("pattern declares reserved action 'start'");
        }
    }
}

std::string fresh_location_name(const Pta& pta, std::string base) {
    while (pta.location(base) >= 0) base += "_";
    return base;
}

} // namespace

std::string fresh_action_name(const Pta& pta, const Alphabet& taken, const std::string& base) {
    std::string name = base;
    while (pta.action(name) >= 0 || taken.count(name)) name += "_";
    return name;
}

Pta normalize_pattern(const Pta& pattern, const Alphabet& sigma) {
    pattern.validate();
    check_reserved_names(pattern);
    if (sigma.count(kTerminalAction) || sigma.count(kStartAction)) {
        throw DomainError("alphabet contains a reserved action");
    }

    std::vector<int> accepting = pattern.accepting_locations();
    if (accepting.empty()) throw PatternError("pattern has no accepting location");

    bool merge = accepting.size() > 1;
    std::vector<bool> is_old_final(static_cast<std::size_t>(pattern.num_locations()), false);
    for (int loc : accepting) is_old_final[static_cast<std::size_t>(loc)] = true;

    Pta out;
    // locations: originals minus merged accepting ones, plus one final
    std::vector<int> remap(static_cast<std::size_t>(pattern.num_locations()), -1);
    for (int loc = 0; loc < pattern.num_locations(); ++loc) {
        if (merge && is_old_final[static_cast<std::size_t>(loc)]) continue;
        remap[static_cast<std::size_t>(loc)] = out.add_location(pattern.location_name(loc));
    }
    int final_loc;
    if (merge) {
        final_loc = out.add_location(fresh_location_name(pattern, "final"), true);
        for (int loc : accepting) remap[static_cast<std::size_t>(loc)] = final_loc;
    } else {
        final_loc = remap[static_cast<std::size_t>(accepting.front())];
        out.set_accepting(final_loc, true);
    }

    for (const std::string& c : pattern.clock_names()) out.add_clock(c);
    for (const std::string& p : pattern.parameter_names()) out.add_parameter(p);

    // declared alphabet: sigma + "$", whether or not an edge uses the action
    for (const std::string& a : sigma) out.add_action(a);
    int dollar = out.add_action(kTerminalAction);

    out.set_initial(remap[static_cast<std::size_t>(pattern.initial())]);

    // invariants; a merged final conjoins the invariants of its members
    for (int loc = 0; loc < pattern.num_locations(); ++loc) {
        int target = remap[static_cast<std::size_t>(loc)];
        if (merge && is_old_final[static_cast<std::size_t>(loc)]) {
            Guard joined = out.invariant(final_loc);
            const Guard& extra = pattern.invariant(loc);
            joined.insert(joined.end(), extra.begin(), extra.end());
            out.set_invariant(final_loc, std::move(joined));
        } else {
            out.set_invariant(target, pattern.invariant(loc));
        }
    }

    for (const Edge& e : pattern.edges()) {
        const std::string& action = pattern.action_name(e.action);
        bool is_dollar = (action == kTerminalAction);
        if (!is_dollar && !sigma.count(action)) continue; // outside the word alphabet
        int source = remap[static_cast<std::size_t>(e.source)];
        int target = remap[static_cast<std::size_t>(e.target)];
        if (is_dollar && target != final_loc) {
            throw PatternError("'$' edge into a non-final location");
        }
        if (!is_dollar && target == final_loc) {
            throw PatternError("non-'$' edge into the final location");
        }
        out.add_edge({source, e.guard, is_dollar ? dollar : out.action(action), e.resets, target});
    }
    return out;
}

Pta make_symbolic(const Pta& normalized, const Alphabet& sigma) {
    Pta out;
    for (int loc = 0; loc < normalized.num_locations(); ++loc) {
        out.add_location(normalized.location_name(loc));
        out.set_invariant(loc, normalized.invariant(loc));
    }
    int pre_init = out.add_location(fresh_location_name(normalized, "pre_init"));
    int pre = out.add_location(fresh_location_name(normalized, "pre"));
    int post_final = out.add_location(fresh_location_name(normalized, "accept"), true);

    for (const std::string& c : normalized.clock_names()) out.add_clock(c);
    int abs_clock = out.add_clock(kAbsClockName);
    int init_clock = out.add_clock(kInitClockName);

    for (const std::string& p : normalized.parameter_names()) out.add_parameter(p);
    int t_param = out.add_parameter(kStartParamName);
    int t_prime_param = out.add_parameter(kEndParamName);

    for (const std::string& a : normalized.action_names()) out.add_action(a);
    int start = out.add_action(kStartAction);
    int end = out.add_action(fresh_action_name(normalized, sigma, "end"));

    std::vector<int> finals = normalized.accepting_locations();
    int final_loc = finals.front(); // normalized: exactly one

    // original edges; "$" edges additionally record x_abs = t' and rearm
    // the positive-delay clock
    for (const Edge& e : normalized.edges()) {
        Edge copy = e;
        if (normalized.action_name(e.action) == kTerminalAction) {
            copy.guard.push_back({abs_clock, CmpOp::Eq, t_prime_param});
            copy.resets.push_back(init_clock);
        }
        out.add_edge(std::move(copy));
    }

    // scanning phase: consume word events while the pattern has not started
    for (const std::string& a : sigma) {
        out.add_edge({pre, {}, out.action(a), {init_clock}, pre});
        out.add_edge({pre_init, {}, out.action(a), {init_clock}, pre});
    }

    // start after at least one event: positive delay since the last one
    Guard start_guard{{abs_clock, CmpOp::Eq, t_param}, {init_clock, CmpOp::Gt, Rational(0)}};
    std::vector<int> start_resets;
    for (int c = 0; c < out.num_clocks(); ++c) {
        if (c != abs_clock) start_resets.push_back(c);
    }
    out.add_edge({pre, std::move(start_guard), start, start_resets, normalized.initial()});

    // start before any event: no previous event restricts the date, so any
    // t up to the first timestamp is admissible; pattern clocks restart
    out.add_edge({pre_init, {{abs_clock, CmpOp::Eq, t_param}}, start, start_resets,
                  normalized.initial()});

    // accept only after a positive delay past the end date
    out.add_edge({final_loc, {{init_clock, CmpOp::Gt, Rational(0)}}, end, {}, post_final});

    out.set_initial(pre_init);
    return out;
}

Pta tw2pta(const TimedWord& w) {
    Pta out;
    std::size_t n = w.size();
    for (std::size_t k = 0; k <= n; ++k) {
        out.add_location("w" + std::to_string(k));
    }
    int abs_clock = out.add_clock(kAbsClockName);
    out.set_initial(0);
    for (std::size_t k = 1; k <= n; ++k) {
        const Event& e = w.event(k);
        int action = out.add_action(e.action);
        out.add_edge({static_cast<int>(k - 1),
                      {{abs_clock, CmpOp::Eq, e.time}},
                      action,
                      {},
                      static_cast<int>(k)});
    }
    // x_abs <= tau_(k+1) while waiting for event k+1; none after the last
    for (std::size_t k = 0; k < n; ++k) {
        out.set_invariant(static_cast<int>(k),
                          {{abs_clock, CmpOp::Le, w.event(k + 1).time}});
    }
    return out;
}

Pta sync_product(const std::vector<Pta>& components) {
    if (components.empty()) throw DomainError("product of no automata");
    std::size_t n = components.size();

    Pta out;

    // shared clocks/parameters by name; remap tables per component
    std::vector<std::vector<int>> clock_map(n), param_map(n), action_map(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Pta& comp = components[i];
        for (const std::string& c : comp.clock_names()) {
            int id = out.clock(c);
            clock_map[i].push_back(id >= 0 ? id : out.add_clock(c));
        }
        for (const std::string& p : comp.parameter_names()) {
            int id = out.parameter(p);
            param_map[i].push_back(id >= 0 ? id : out.add_parameter(p));
        }
        for (const std::string& a : comp.action_names()) {
            action_map[i].push_back(out.add_action(a));
        }
    }

    auto remap_guard = [&](std::size_t i, const Guard& g) {
        Guard mapped;
        mapped.reserve(g.size());
        for (const GuardAtom& atom : g) {
            GuardAtom m = atom;
            m.clock = clock_map[i][static_cast<std::size_t>(atom.clock)];
            if (atom.is_parametric()) {
                m.rhs = param_map[i][static_cast<std::size_t>(std::get<int>(atom.rhs))];
            }
            mapped.push_back(std::move(m));
        }
        return mapped;
    };

    // locations: cartesian product in mixed-radix order
    std::vector<int> radix(n);
    for (std::size_t i = 0; i < n; ++i) radix[i] = components[i].num_locations();
    std::size_t total = 1;
    for (int r : radix) total *= static_cast<std::size_t>(r);

    auto tuple_of = [&](std::size_t index) {
        std::vector<int> tuple(n);
        for (std::size_t i = n; i-- > 0;) {
            tuple[i] = static_cast<int>(index % static_cast<std::size_t>(radix[i]));
            index /= static_cast<std::size_t>(radix[i]);
        }
        return tuple;
    };

    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<int> tuple = tuple_of(idx);
        std::string name;
        bool accepting = false;
        Guard invariant;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) name += "|";
            name += components[i].location_name(tuple[i]);
            accepting = accepting || components[i].is_accepting(tuple[i]);
            Guard inv = remap_guard(i, components[i].invariant(tuple[i]));
            invariant.insert(invariant.end(), inv.begin(), inv.end());
        }
        int loc = out.add_location(name, accepting);
        out.set_invariant(loc, std::move(invariant));
    }

    // initial tuple
    {
        std::size_t index = 0;
        for (std::size_t i = 0; i < n; ++i) {
            index = index * static_cast<std::size_t>(radix[i]) +
                    static_cast<std::size_t>(components[i].initial());
        }
        out.set_initial(static_cast<int>(index));
    }

    // per component: edges indexed by (source location, product action)
    std::vector<std::map<std::pair<int, int>, std::vector<const Edge*>>> by_loc_action(n);
    std::vector<std::vector<bool>> declares(n);
    for (std::size_t i = 0; i < n; ++i) {
        declares[i].assign(static_cast<std::size_t>(out.num_actions()), false);
        for (int a = 0; a < components[i].num_actions(); ++a) {
            declares[i][static_cast<std::size_t>(action_map[i][static_cast<std::size_t>(a)])] = true;
        }
        for (const Edge& e : components[i].edges()) {
            int a = action_map[i][static_cast<std::size_t>(e.action)];
            by_loc_action[i][{e.source, a}].push_back(&e);
        }
    }

    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<int> tuple = tuple_of(idx);
        for (int a = 0; a < out.num_actions(); ++a) {
            // every declaring component needs a move; the rest stay
            std::vector<std::size_t> movers;
            bool possible = true;
            for (std::size_t i = 0; i < n && possible; ++i) {
                if (!declares[i][static_cast<std::size_t>(a)]) continue;
                movers.push_back(i);
                auto it = by_loc_action[i].find({tuple[i], a});
                if (it == by_loc_action[i].end()) possible = false;
            }
            if (!possible || movers.empty()) continue;

            // all combinations of the movers' local edges
            std::vector<std::size_t> pick(movers.size(), 0);
            while (true) {
                Guard guard;
                std::vector<int> resets;
                std::vector<int> target_tuple = tuple;
                for (std::size_t m = 0; m < movers.size(); ++m) {
                    std::size_t i = movers[m];
                    const Edge& local = *by_loc_action[i][{tuple[i], a}][pick[m]];
                    Guard g = remap_guard(i, local.guard);
                    guard.insert(guard.end(), g.begin(), g.end());
                    for (int c : local.resets) {
                        int mapped = clock_map[i][static_cast<std::size_t>(c)];
                        if (std::find(resets.begin(), resets.end(), mapped) == resets.end()) {
                            resets.push_back(mapped);
                        }
                    }
                    target_tuple[i] = local.target;
                }
                std::size_t target_index = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    target_index = target_index * static_cast<std::size_t>(radix[i]) +
                                   static_cast<std::size_t>(target_tuple[i]);
                }
                out.add_edge({static_cast<int>(idx), std::move(guard), a, std::move(resets),
                              static_cast<int>(target_index)});

                // next combination
                std::size_t m = 0;
                for (; m < movers.size(); ++m) {
                    std::size_t i = movers[m];
                    if (++pick[m] < by_loc_action[i][{tuple[i], a}].size()) break;
                    pick[m] = 0;
                }
                if (m == movers.size()) break;
            }
        }
    }
    return out;
}

} // namespace ptmatch
