#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "growth/rational.hpp"
#include "growth/vertex_key.hpp"

namespace growth {

/// One out-edge of the fusion graph. The source is implicit; the weight is
/// the multiplicity of `target` in the product of the distinguished element
/// with the source basis element. Weights are always > 0; zero-weight edges
/// are never materialized.
struct WeightedEdge {
    VertexKey target;
    Rational weight;
};

using OutEdges = std::vector<WeightedEdge>;
using NeighborOracle = std::function<OutEdges(const VertexKey&)>;

struct ProblemOptions {
    std::size_t vertex_cap = 200000;
};

/// A growth problem presented as a lazily expandable weighted digraph:
/// a unit vertex plus a deterministic neighbor oracle giving, for each basis
/// element, the exact decomposition of its product with the distinguished
/// element. Oracle results are normalized (sorted by key, duplicates merged,
/// zero weights dropped) and memoized.
///
/// Not internally synchronized: confine an instance to one thread, or give
/// each worker its own instance.
class GrowthProblem {
public:
    GrowthProblem(VertexKey unit, NeighborOracle oracle, std::string description,
                  ProblemOptions opts = {});

    const VertexKey& unit() const { return unit_; }
    const std::string& description() const { return description_; }

    /// Exact decomposition of c * c_v. Throws InvalidPresentation if the key
    /// is rejected by the oracle, ExpansionCapExceeded past the cap.
    const OutEdges& out_edges(const VertexKey& v);

    std::size_t expanded_count() const { return memo_.size(); }
    std::size_t vertex_cap() const { return opts_.vertex_cap; }
    void set_vertex_cap(std::size_t cap) { opts_.vertex_cap = cap; }

private:
    VertexKey unit_;
    NeighborOracle oracle_;
    std::string description_;
    ProblemOptions opts_;
    std::unordered_map<VertexKey, OutEdges, VertexKeyHash> memo_;
};

/// Action matrix of a finite truncation, stored column-sparse with exact
/// rational entries. Column j lists (row index, weight) pairs in increasing
/// row order; entry (i, j) is the multiplicity of vertex i in the product
/// with vertex j.
struct SparseMatrix {
    std::size_t n = 0;
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> cols;

    SparseMatrix() = default;
    explicit SparseMatrix(std::size_t size) : n(size), cols(size) {}

    double max_entry() const;
    SparseMatrix scaled(const Rational& s) const;
    std::vector<std::vector<double>> to_dense_double() const;
};

/// Finite induced stage of a filtration: an ordered vertex list (unit first)
/// together with the action matrix restricted to it. Out-of-set targets are
/// dropped, so column j equals the oracle output for vertex j filtered to
/// the listed vertices.
class Truncation {
public:
    Truncation(int depth, std::vector<VertexKey> vertices, SparseMatrix matrix);

    int depth() const { return depth_; }
    std::size_t size() const { return vertices_.size(); }
    const std::vector<VertexKey>& vertices() const { return vertices_; }
    const SparseMatrix& matrix() const { return matrix_; }
    std::optional<std::uint32_t> index_of(const VertexKey& v) const;

private:
    int depth_;
    std::vector<VertexKey> vertices_;
    SparseMatrix matrix_;
    std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> index_;
};

/// Vertices reachable from the unit by a path of length <= k, in
/// breadth-first discovery order with ties broken by key order; the unit
/// comes first. Depth 0 is the unit alone.
Truncation expand_to_depth(GrowthProblem& gp, int k);

/// Induced truncation on an explicit vertex set. The set must contain the
/// unit; vertices are reordered canonically (unit first, then sorted).
Truncation induced_truncation(GrowthProblem& gp, std::vector<VertexKey> verts, int depth_label);

inline const SparseMatrix& truncation_matrix(const Truncation& t) { return t.matrix(); }

/// Increasing stream of truncations. The naive strategy emits the depth-k
/// reachable set at page k; an explicit schedule must be nested, start at
/// {unit}, and is validated page by page.
class Filtration {
public:
    static Filtration naive(GrowthProblem& gp);
    static Filtration explicit_schedule(GrowthProblem& gp,
                                        std::vector<std::vector<VertexKey>> pages);

    /// Truncation for page k (naive: depth k). Pages may be requested in any
    /// order; explicit filtrations reject out-of-range pages.
    Truncation page(int k);

    bool finite() const { return !pages_.empty() || bounded_; }
    std::size_t page_count() const;  // explicit only

private:
    Filtration(GrowthProblem& gp, std::vector<std::vector<VertexKey>> pages, bool naive);
    GrowthProblem* gp_;
    std::vector<std::vector<VertexKey>> pages_;
    bool naive_ = true;
    bool bounded_ = false;
};

/// Wraps a problem with every edge weight multiplied by s > 0.
GrowthProblem scaled_problem(GrowthProblem& gp, const Rational& s);

}  // namespace growth
