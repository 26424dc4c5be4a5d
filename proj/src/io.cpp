#include "ptmatch/io.hpp"

#include "ptmatch/errors.hpp"
#include "ptmatch/transform.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace ptmatch {

namespace {

bool valid_action_name(const std::string& name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    for (char c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

} // namespace

TimedWord parse_word(const std::string& text) {
    std::vector<Event> events;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    const Rational* prev = nullptr;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos || line[begin] == ';') continue;
        std::istringstream fields(line);
        std::string action, stamp, extra;
        fields >> action >> stamp;
        if (stamp.empty() || (fields >> extra && !extra.empty())) {
            throw ParseError("expected '<action> <timestamp>'", line_no);
        }
        if (!valid_action_name(action)) {
            throw ParseError("invalid action name '" + action + "'", line_no);
        }
        if (action == kTerminalAction || action == kStartAction) {
            throw ParseError("reserved action '" + action + "'", line_no);
        }
        Rational time;
        try {
            time = parse_rational(stamp, /*allow_slash=*/false);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line_no);
        }
        if (time <= 0) throw ParseError("timestamps must be positive", line_no);
        if (prev && !(*prev < time)) {
            throw ParseError("timestamps must strictly increase", line_no);
        }
        events.push_back({std::move(action), std::move(time)});
        prev = &events.back().time;
    }
    return TimedWord(std::move(events));
}

std::string write_word(const TimedWord& w) {
    std::string out;
    for (const Event& e : w.events()) {
        // only 10-smooth denominators have a finite decimal form
        Integer den = e.time.get_den();
        while (den % 2 == 0) den /= 2;
        while (den % 5 == 0) den /= 5;
        if (den != 1) throw DomainError("timestamp has no finite decimal form");
        out += e.action;
        out += ' ';
        out += decimal_string(e.time, 64);
        out += '\n';
    }
    return out;
}

// ============================================================================
// patterns
// ============================================================================

namespace {

CmpOp parse_op(const std::string& op, const std::string& where) {
    if (op == "<") return CmpOp::Lt;
    if (op == "<=") return CmpOp::Le;
    if (op == "=") return CmpOp::Eq;
    if (op == ">=") return CmpOp::Ge;
    if (op == ">") return CmpOp::Gt;
    throw ParseError("bad operator '" + op + "' in " + where);
}

std::string op_string(CmpOp op) {
    return to_string(op);
}

Rational parse_const(const nlohmann::json& value, const std::string& where) {
    if (value.is_number_integer()) return Rational(static_cast<long>(value.get<long long>()));
    if (value.is_string()) return parse_rational(value.get<std::string>());
    throw ParseError("constant in " + where + " must be an integer or a string like \"0.7\"");
}

Guard parse_guard(const Pta& pta, const nlohmann::json& array, const std::string& where) {
    Guard guard;
    if (array.is_null()) return guard;
    if (!array.is_array()) throw ParseError(where + " must be an array of atoms");
    for (const nlohmann::json& atom : array) {
        if (!atom.is_object() || !atom.contains("clock") || !atom.contains("op") ||
            !atom.contains("rhs")) {
            throw ParseError("atom in " + where + " needs clock/op/rhs");
        }
        std::string clock_name = atom.at("clock").get<std::string>();
        int clock = pta.clock(clock_name);
        if (clock < 0) throw ParseError("undeclared clock '" + clock_name + "' in " + where);
        CmpOp op = parse_op(atom.at("op").get<std::string>(), where);
        const nlohmann::json& rhs = atom.at("rhs");
        GuardAtom out{clock, op, Rational(0)};
        if (rhs.contains("param")) {
            std::string pname = rhs.at("param").get<std::string>();
            int param = pta.parameter(pname);
            if (param < 0) throw ParseError("undeclared parameter '" + pname + "' in " + where);
            out.rhs = param;
        } else if (rhs.contains("const")) {
            Rational value = parse_const(rhs.at("const"), where);
            if (value < 0) throw ParseError("negative constant in " + where);
            out.rhs = std::move(value);
        } else {
            throw ParseError("rhs in " + where + " needs 'const' or 'param'");
        }
        guard.push_back(std::move(out));
    }
    return guard;
}

} // namespace

Pta parse_pattern(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ParseError("pattern file must hold a JSON object");
    for (const char* field : {"alphabet", "locations", "initial", "edges"}) {
        if (!doc.contains(field)) throw ParseError(std::string("pattern misses '") + field + "'");
    }

    Pta pta;
    for (const nlohmann::json& a : doc.at("alphabet")) {
        std::string name = a.get<std::string>();
        if (name == kTerminalAction) throw ParseError("'$' is implicit, not part of 'alphabet'");
        pta.add_action(name);
    }
    pta.add_action(kTerminalAction);
    if (doc.contains("clocks")) {
        for (const nlohmann::json& c : doc.at("clocks")) pta.add_clock(c.get<std::string>());
    }
    if (doc.contains("parameters")) {
        for (const nlohmann::json& p : doc.at("parameters")) pta.add_parameter(p.get<std::string>());
    }
    for (const nlohmann::json& l : doc.at("locations")) pta.add_location(l.get<std::string>());

    std::string initial = doc.at("initial").get<std::string>();
    if (pta.location(initial) < 0) throw ParseError("initial location '" + initial + "' unknown");
    pta.set_initial(pta.location(initial));

    if (doc.contains("accepting")) {
        for (const nlohmann::json& l : doc.at("accepting")) {
            std::string name = l.get<std::string>();
            if (pta.location(name) < 0) {
                throw ParseError("accepting location '" + name + "' unknown");
            }
            pta.set_accepting(pta.location(name), true);
        }
    }

    if (doc.contains("invariants")) {
        for (const auto& [name, inv] : doc.at("invariants").items()) {
            if (pta.location(name) < 0) {
                throw ParseError("invariant for unknown location '" + name + "'");
            }
            pta.set_invariant(pta.location(name), parse_guard(pta, inv, "invariants." + name));
        }
    }

    for (const nlohmann::json& edge : doc.at("edges")) {
        for (const char* field : {"source", "target", "action"}) {
            if (!edge.contains(field)) {
                throw ParseError(std::string("edge misses '") + field + "'");
            }
        }
        std::string source = edge.at("source").get<std::string>();
        std::string target = edge.at("target").get<std::string>();
        std::string action = edge.at("action").get<std::string>();
        if (pta.location(source) < 0) throw ParseError("edge source '" + source + "' unknown");
        if (pta.location(target) < 0) throw ParseError("edge target '" + target + "' unknown");
        if (pta.action(action) < 0) throw ParseError("edge action '" + action + "' undeclared");
        Edge e{pta.location(source),
               edge.contains("guard") ? parse_guard(pta, edge.at("guard"), "edge guard") : Guard{},
               pta.action(action),
               {},
               pta.location(target)};
        if (edge.contains("resets")) {
            for (const nlohmann::json& c : edge.at("resets")) {
                std::string clock_name = c.get<std::string>();
                int clock = pta.clock(clock_name);
                if (clock < 0) throw ParseError("reset of undeclared clock '" + clock_name + "'");
                e.resets.push_back(clock);
            }
        }
        pta.add_edge(std::move(e));
    }
    pta.validate();
    return pta;
}

Pta parse_pattern_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_pattern(doc);
}

nlohmann::json write_pattern(const Pta& pattern) {
    nlohmann::json doc;
    doc["alphabet"] = nlohmann::json::array();
    for (const std::string& a : pattern.action_names()) {
        if (a != kTerminalAction) doc["alphabet"].push_back(a);
    }
    doc["clocks"] = pattern.clock_names();
    doc["parameters"] = pattern.parameter_names();
    doc["locations"] = pattern.location_names();
    doc["initial"] = pattern.location_name(pattern.initial());
    doc["accepting"] = nlohmann::json::array();
    for (int loc : pattern.accepting_locations()) {
        doc["accepting"].push_back(pattern.location_name(loc));
    }

    auto guard_json = [&](const Guard& g) {
        nlohmann::json array = nlohmann::json::array();
        for (const GuardAtom& atom : g) {
            nlohmann::json rhs;
            if (atom.is_parametric()) {
                rhs["param"] = pattern.parameter_name(std::get<int>(atom.rhs));
            } else {
                rhs["const"] = fraction_string(std::get<Rational>(atom.rhs));
            }
            array.push_back({{"clock", pattern.clock_name(atom.clock)},
                             {"op", op_string(atom.op)},
                             {"rhs", rhs}});
        }
        return array;
    };

    doc["invariants"] = nlohmann::json::object();
    for (int loc = 0; loc < pattern.num_locations(); ++loc) {
        if (!pattern.invariant(loc).empty()) {
            doc["invariants"][pattern.location_name(loc)] = guard_json(pattern.invariant(loc));
        }
    }
    doc["edges"] = nlohmann::json::array();
    for (const Edge& e : pattern.edges()) {
        nlohmann::json edge{{"source", pattern.location_name(e.source)},
                            {"target", pattern.location_name(e.target)},
                            {"action", pattern.action_name(e.action)}};
        if (!e.guard.empty()) edge["guard"] = guard_json(e.guard);
        if (!e.resets.empty()) {
            edge["resets"] = nlohmann::json::array();
            for (int c : e.resets) edge["resets"].push_back(pattern.clock_name(c));
        }
        doc["edges"].push_back(edge);
    }
    return doc;
}

// ============================================================================
// results
// ============================================================================

namespace {

std::string rel_string(Rel rel) {
    switch (rel) {
        case Rel::Le: return "le";
        case Rel::Lt: return "lt";
        case Rel::Eq: return "eq";
    }
    return "?";
}

Rel parse_rel(const std::string& rel) {
    if (rel == "le") return Rel::Le;
    if (rel == "lt") return Rel::Lt;
    if (rel == "eq") return Rel::Eq;
    throw ParseError("bad relation '" + rel + "' in result");
}

nlohmann::json atom_json(const VarSpace& space, const LinAtom& atom) {
    nlohmann::json coeffs = nlohmann::json::object();
    for (int v = 0; v < space.dim(); ++v) {
        if (atom.coeffs[static_cast<std::size_t>(v)] != 0) {
            coeffs[space.name(v)] = fraction_string(atom.coeffs[static_cast<std::size_t>(v)]);
        }
    }
    return {{"coeffs", coeffs}, {"const", fraction_string(atom.constant)},
            {"rel", rel_string(atom.rel)}};
}

} // namespace

nlohmann::json write_result(const DisjPoly& set, const ResultStats& stats) {
    const VarSpace& space = *set.space();

    std::vector<std::pair<std::string, nlohmann::json>> ordered;
    for (const ConvexPoly& disjunct : set.disjuncts()) {
        ConvexPoly canonical = disjunct.reduced();
        nlohmann::json atoms = nlohmann::json::array();
        for (const LinAtom& atom : canonical.atoms()) atoms.push_back(atom_json(space, atom));
        ordered.emplace_back(canonical.signature(), std::move(atoms));
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    nlohmann::json doc;
    doc["variables"] = nlohmann::json::array();
    for (int v = 0; v < space.dim(); ++v) doc["variables"].push_back(space.name(v));
    doc["disjuncts"] = nlohmann::json::array();
    for (auto& [signature, atoms] : ordered) doc["disjuncts"].push_back(std::move(atoms));
    doc["stats"] = {{"states", stats.states},
                    {"matches", stats.matches},
                    {"comp_seconds", stats.comp_seconds}};
    return doc;
}

ResultDocument parse_result(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("variables") || !doc.contains("disjuncts")) {
        throw ParseError("result file needs 'variables' and 'disjuncts'");
    }
    std::vector<std::pair<std::string, VarKind>> vars;
    for (const nlohmann::json& name : doc.at("variables")) {
        vars.emplace_back(name.get<std::string>(), VarKind::Parameter);
    }
    VarSpacePtr space = VarSpace::make(std::move(vars));

    DisjPoly set(space);
    for (const nlohmann::json& disjunct : doc.at("disjuncts")) {
        std::vector<LinAtom> atoms;
        for (const nlohmann::json& atom : disjunct) {
            std::vector<std::pair<int, Rational>> terms;
            for (const auto& [name, value] : atom.at("coeffs").items()) {
                int var = space->index_of(name);
                if (var < 0) throw ParseError("atom names unknown variable '" + name + "'");
                terms.emplace_back(var, parse_rational(value.get<std::string>()));
            }
            atoms.push_back(lin_atom(space, std::move(terms),
                                     parse_rational(atom.at("const").get<std::string>()),
                                     parse_rel(atom.at("rel").get<std::string>())));
        }
        set.add(ConvexPoly(space, std::move(atoms)), false);
    }

    ResultStats stats;
    if (doc.contains("stats")) {
        const nlohmann::json& s = doc.at("stats");
        stats.states = s.value("states", 0u);
        stats.matches = s.value("matches", 0u);
        stats.comp_seconds = s.value("comp_seconds", 0.0);
    }
    return {std::move(set), stats};
}

std::string atom_text(const VarSpace& space, const LinAtom& atom) {
    // orient so that most terms sit on the left with positive sign
    int positive = 0, negative = 0;
    for (const Integer& c : atom.coeffs) {
        if (c > 0) ++positive;
        else if (c < 0) ++negative;
    }
    bool flip = negative > positive;

    // scale so the leading displayed term has coefficient one
    Rational unit = 0;
    for (const Integer& c : atom.coeffs) {
        if (c != 0) {
            unit = abs(c);
            break;
        }
    }

    std::string lhs, rhs;
    auto append_term = [&](std::string& side, const Rational& coeff, const std::string& name) {
        if (!side.empty()) side += " + ";
        if (coeff != 1) side += fraction_string(coeff) + "*";
        side += name;
    };
    for (int v = 0; v < space.dim(); ++v) {
        Rational c = atom.coeffs[static_cast<std::size_t>(v)];
        if (c == 0) continue;
        if (unit != 0) c /= unit;
        if (flip) c = -c;
        if (c > 0) append_term(lhs, c, space.name(v));
        else append_term(rhs, -c, space.name(v));
    }
    // constant joins the right-hand side: lhs REL rhs + constant
    Rational constant = flip ? Rational(atom.constant) : Rational(-atom.constant);
    if (unit != 0) constant /= unit;
    if (rhs.empty()) {
        rhs = fraction_string(constant);
    } else if (constant > 0) {
        rhs += " + " + fraction_string(constant);
    } else if (constant < 0) {
        rhs += " - " + fraction_string(-constant);
    }
    if (lhs.empty()) lhs = "0";

    std::string rel;
    switch (atom.rel) {
        case Rel::Le: rel = flip ? " >= " : " <= "; break;
        case Rel::Lt: rel = flip ? " > " : " < "; break;
        case Rel::Eq: rel = " = "; break;
    }
    return lhs + rel + rhs;
}

std::string result_text(const DisjPoly& set) {
    if (set.empty_set()) return "no match\n";
    std::vector<std::string> lines;
    for (const ConvexPoly& disjunct : set.disjuncts()) {
        ConvexPoly canonical = disjunct.reduced();
        std::string line;
        if (canonical.atoms().empty()) line = "true";
        for (const LinAtom& atom : canonical.atoms()) {
            if (!line.empty()) line += " & ";
            line += atom_text(*set.space(), atom);
        }
        lines.push_back(std::move(line));
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const std::string& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

// ============================================================================
// 2-D projection
// ============================================================================

namespace {

/// Solves the 2x2 system given by two atoms read as equalities.
std::optional<std::pair<Rational, Rational>> intersect_lines(const LinAtom& a, const LinAtom& b) {
    const Integer &a1 = a.coeffs[0], &a2 = a.coeffs[1];
    const Integer &b1 = b.coeffs[0], &b2 = b.coeffs[1];
    Integer det = a1 * b2 - a2 * b1;
    if (det == 0) return std::nullopt;
    // a1 x + a2 y = -ka, b1 x + b2 y = -kb
    Integer x_num = -a.constant * b2 + a2 * b.constant;
    Integer y_num = -a1 * b.constant + a.constant * b1;
    Rational x(x_num, det);
    x.canonicalize();
    Rational y(y_num, det);
    y.canonicalize();
    return std::make_pair(std::move(x), std::move(y));
}

bool closed_sat(const std::vector<LinAtom>& atoms, const Rational& x, const Rational& y) {
    for (const LinAtom& atom : atoms) {
        Rational value = atom.coeffs[0] * x + atom.coeffs[1] * y + atom.constant;
        if (atom.rel == Rel::Eq ? value != 0 : value > 0) return false;
    }
    return true;
}

/// Exact counterclockwise comparison around a center point.
struct CcwLess {
    Rational cx, cy;
    int half(const Rational& dx, const Rational& dy) const {
        if (dy > 0 || (dy == 0 && dx > 0)) return 0;
        return 1;
    }
    bool operator()(const std::pair<Rational, Rational>& a,
                    const std::pair<Rational, Rational>& b) const {
        Rational adx = a.first - cx, ady = a.second - cy;
        Rational bdx = b.first - cx, bdy = b.second - cy;
        int ha = half(adx, ady), hb = half(bdx, bdy);
        if (ha != hb) return ha < hb;
        Rational cross = adx * bdy - ady * bdx;
        if (cross != 0) return cross > 0;
        // collinear: nearer point first for determinism
        return adx * adx + ady * ady < bdx * bdx + bdy * bdy;
    }
};

} // namespace

std::vector<Polygon2D> project_2d(const DisjPoly& set, const std::string& var_x,
                                  const std::string& var_y, const Rational& x0,
                                  const Rational& x1, const Rational& y0, const Rational& y1) {
    if (set.space()->index_of(var_x) < 0 || set.space()->index_of(var_y) < 0) {
        throw DomainError("projection variable unknown");
    }
    if (!(x0 < x1) || !(y0 < y1)) throw DomainError("degenerate projection box");

    VarSpacePtr plane = VarSpace::make(
        {{var_x, VarKind::Parameter}, {var_y, VarKind::Parameter}});
    std::vector<LinAtom> box = {
        lin_atom(plane, {{0, Rational(-1)}}, x0, Rel::Le),  // x >= x0
        lin_atom(plane, {{0, Rational(1)}}, -x1, Rel::Le),  // x <= x1
        lin_atom(plane, {{1, Rational(-1)}}, y0, Rel::Le),  // y >= y0
        lin_atom(plane, {{1, Rational(1)}}, -y1, Rel::Le),  // y <= y1
    };

    // project first, dropping projections already covered by an earlier
    // one: overlapping disjuncts often collapse on the plane
    DisjPoly shadows(plane);
    for (const ConvexPoly& disjunct : set.disjuncts()) {
        shadows.add(disjunct.projected_to(plane).reduced(), true);
    }

    std::vector<Polygon2D> polygons;
    for (const ConvexPoly& projected : shadows.disjuncts()) {
        ConvexPoly clipped = projected.conjoin(box).canonicalized();
        if (clipped.is_empty()) continue;

        Polygon2D polygon;
        for (const LinAtom& side : box) {
            for (const LinAtom& beyond : negate_atom(side)) {
                if (!projected.conjoin({beyond}).is_empty()) {
                    polygon.clipped = true;
                    break;
                }
            }
            if (polygon.clipped) break;
        }

        const std::vector<LinAtom>& atoms = clipped.atoms();
        std::vector<std::pair<Rational, Rational>> vertices;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            for (std::size_t j = i + 1; j < atoms.size(); ++j) {
                auto point = intersect_lines(atoms[i], atoms[j]);
                if (!point) continue;
                if (!closed_sat(atoms, point->first, point->second)) continue;
                if (std::find(vertices.begin(), vertices.end(), *point) == vertices.end()) {
                    vertices.push_back(std::move(*point));
                }
            }
        }
        if (vertices.empty()) continue;

        Rational cx = 0, cy = 0;
        for (const auto& [x, y] : vertices) {
            cx += x;
            cy += y;
        }
        cx /= static_cast<int>(vertices.size());
        cy /= static_cast<int>(vertices.size());
        std::sort(vertices.begin(), vertices.end(), CcwLess{cx, cy});
        polygon.vertices = std::move(vertices);
        polygons.push_back(std::move(polygon));
    }
    return polygons;
}

std::string polygons_csv(const std::vector<Polygon2D>& polygons) {
    std::string out;
    for (std::size_t i = 0; i < polygons.size(); ++i) {
        if (i > 0) out += "\n\n"; // two blank lines: separate gnuplot datasets
        out += "# region " + std::to_string(i + 1) +
               " clipped=" + (polygons[i].clipped ? "1" : "0") + "\n";
        for (const auto& [x, y] : polygons[i].vertices) {
            out += decimal_string(x) + "," + decimal_string(y) + "\n";
        }
    }
    return out;
}

std::string polygons_gnuplot(const std::string& csv_path, const std::string& var_x,
                             const std::string& var_y) {
    std::string out;
    out += "set datafile separator \",\"\n";
    out += "set xlabel \"" + var_x + "\"\n";
    out += "set ylabel \"" + var_y + "\"\n";
    out += "set key off\n";
    out += "plot for [i=0:*] '" + csv_path +
           "' index i using 1:2 with filledcurves closed fs transparent solid 0.35\n";
    return out;
}

} // namespace ptmatch
