#pragma once

#include "ptmatch/polyhedron.hpp"
#include "ptmatch/pta.hpp"
#include "ptmatch/words.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ptmatch {

// ----------------------------------------------------------------------------
// timed word files (.tw): one "<action> <timestamp>" per line, ';' comments
// ----------------------------------------------------------------------------

TimedWord parse_word(const std::string& text);

/// Inverse of parse_word; timestamps must have finite decimal expansions
/// (which every parsed or generated word does).
std::string write_word(const TimedWord& w);

// ----------------------------------------------------------------------------
// pattern files (.pat.json)
// ----------------------------------------------------------------------------

Pta parse_pattern(const nlohmann::json& doc);
Pta parse_pattern_text(const std::string& text);
nlohmann::json write_pattern(const Pta& pattern);

// ----------------------------------------------------------------------------
// result files (.match.json) and human-readable rendering
// ----------------------------------------------------------------------------

struct ResultStats {
    std::size_t states = 0;
    std::size_t matches = 0;
    double comp_seconds = 0.0;
};

struct ResultDocument {
    DisjPoly set;
    ResultStats stats;
};

/// Deterministic serialization: canonicalized disjuncts sorted by their
/// atom serialization, rationals rendered in lowest terms.
nlohmann::json write_result(const DisjPoly& set, const ResultStats& stats);

ResultDocument parse_result(const nlohmann::json& doc);

/// One disjunct per line, atoms joined with " & "; "no match" when empty.
std::string result_text(const DisjPoly& set);

/// A single atom as an inequality with the constant moved to the right,
/// e.g. "p2 > 7/10" or "t + p1 < 14/5".
std::string atom_text(const VarSpace& space, const LinAtom& atom);

// ----------------------------------------------------------------------------
// 2-D projections (CSV polygons, the plotting pipeline)
// ----------------------------------------------------------------------------

struct Polygon2D {
    std::vector<std::pair<Rational, Rational>> vertices; // counterclockwise
    bool clipped = false; // true when the region leaves the clip box
};

/// Projects every disjunct onto (var_x, var_y), clips to the box
/// [x0,x1] x [y0,y1] and enumerates the polygon vertices exactly.
std::vector<Polygon2D> project_2d(const DisjPoly& set, const std::string& var_x,
                                  const std::string& var_y, const Rational& x0,
                                  const Rational& x1, const Rational& y0, const Rational& y1);

/// One "# region" block per polygon, vertices as decimal "x,y" lines.
std::string polygons_csv(const std::vector<Polygon2D>& polygons);

/// Companion gnuplot script plotting the CSV blocks as filled regions.
std::string polygons_gnuplot(const std::string& csv_path, const std::string& var_x,
                             const std::string& var_y);

} // namespace ptmatch
