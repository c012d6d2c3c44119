#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "growth/graph.hpp"
#include "growth/rational.hpp"

namespace growth {

/// Built-in growth problems plus ingestion of explicit matrices.
///
/// Family tags: fibonacci, sl2, sl3-vector, gl2-vector, klein-four, sl2-f2,
/// psl2-f7-cutoff, star, jordan, line-Z, young-lattice, explicit.
struct FamilySpec {
    std::string name;

    std::int64_t lambda_weight = 1;                // sl2: highest weight >= 1
    std::int64_t star_leaves = 1;                  // star: N >= 1
    Rational jordan_alpha = 0;                     // jordan: alpha >= 0
    std::vector<std::vector<Rational>> matrix;     // explicit
    std::size_t unit_index = 0;                    // explicit

    static FamilySpec named(std::string tag) {
        FamilySpec s;
        s.name = std::move(tag);
        return s;
    }
    static FamilySpec sl2(std::int64_t lambda) {
        FamilySpec s;
        s.name = "sl2";
        s.lambda_weight = lambda;
        return s;
    }
    static FamilySpec star(std::int64_t leaves) {
        FamilySpec s;
        s.name = "star";
        s.star_leaves = leaves;
        return s;
    }
    static FamilySpec jordan(Rational alpha) {
        FamilySpec s;
        s.name = "jordan";
        s.jordan_alpha = std::move(alpha);
        return s;
    }
    static FamilySpec explicit_matrix(std::vector<std::vector<Rational>> m, std::size_t unit) {
        FamilySpec s;
        s.name = "explicit";
        s.matrix = std::move(m);
        s.unit_index = unit;
        return s;
    }
};

/// Decomposition of the tensor product of the two highest weights: the
/// multiset {|a-b|, |a-b|+2, ..., a+b}, each with multiplicity one.
std::vector<std::int64_t> sl2_clebsch_gordan(std::int64_t a, std::int64_t b);

/// Builds the lazily evaluated problem for a family spec.
/// Throws InvalidPresentation on invalid parameters.
GrowthProblem build_family(const FamilySpec& spec, ProblemOptions opts = {});

/// Alias for the generic entry point.
inline GrowthProblem make_growth_problem(const FamilySpec& spec, ProblemOptions opts = {}) {
    return build_family(spec, opts);
}

/// Finite problem whose oracle reads the columns of a square nonnegative
/// rational matrix; vertex keys are raw indices.
GrowthProblem load_explicit(std::vector<std::vector<Rational>> matrix, std::size_t unit_index,
                            ProblemOptions opts = {});

/// The embedded 16-vertex cutoff matrix of the modular PSL2(F7) problem,
/// entries as integers, columns giving out-edges.
const std::vector<std::vector<int>>& psl2_f7_matrix();
constexpr std::size_t psl2_f7_unit_index = 4;

/// Upper bound on the out-degree of `v`, as documented per family.
std::size_t declared_degree_bound(const FamilySpec& spec, const VertexKey& v);

/// All family tags with fixed parameters, for enumeration in tests/CLI.
std::vector<std::string> family_names();

}  // namespace growth
