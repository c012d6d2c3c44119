#pragma once

#include <string>
#include <vector>

#include "growth/graph.hpp"
#include "growth/rational.hpp"

namespace growth {

/// Graph interchange document:
///   {"vertices": [labels...], "unit": index,
///    "edges": [[src, dst, "p/q"], ...]}
/// Indices refer to the vertices array; weights are exact rational strings.
struct InterchangeGraph {
    std::vector<std::string> labels;
    std::size_t unit = 0;
    // (src, dst, weight): edge src -> dst
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> edges;
};

InterchangeGraph interchange_from_truncation(const Truncation& t, std::size_t unit_index = 0);
std::string interchange_to_json(const InterchangeGraph& g);
InterchangeGraph interchange_from_json(const std::string& text);

/// Dense matrix view of an interchange document (column j = out-edges of j).
std::vector<std::vector<Rational>> interchange_matrix(const InterchangeGraph& g);

/// Loads an interchange JSON file into a finite explicit problem.
GrowthProblem load_interchange_file(const std::string& path, ProblemOptions opts = {});

/// Parses a matrix file: either interchange JSON or a plain whitespace
/// matrix (one row per line, entries "p/q"); unit_override selects the unit
/// for the plain format and overrides the JSON one when >= 0.
GrowthProblem load_matrix_file(const std::string& path, long long unit_override,
                               ProblemOptions opts = {});

}  // namespace growth
