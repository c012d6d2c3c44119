#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "growth/graph.hpp"
#include "growth/rational.hpp"
#include "growth/vertex_key.hpp"

namespace growth::detail {

template <typename T>
T weight_value(const Rational& w);

template <>
inline Rational weight_value<Rational>(const Rational& w) {
    return w;
}

template <>
inline double weight_value<double>(const Rational& w) {
    return rational_to_double(w);
}

/// Iterates v <- M v over the lazily expanded support, indexing vertices in
/// discovery order. Out-edges are resolved only once a vertex carries mass.
template <typename T>
class WalkEngine {
public:
    WalkEngine(GrowthProblem& gp, const VertexKey& start) : gp_(gp) {
        std::uint32_t s = ensure(start);
        values_.assign(1, T(0));
        values_[s] = T(1);
    }

    void step(double rescale = 1.0) {
        const std::size_t active = values_.size();
        for (std::uint32_t j = 0; j < active; ++j) {
            if (values_[j] != 0 && !resolved_[j]) resolve(j);
        }
        std::vector<T> next(verts_.size(), T(0));
        for (std::uint32_t j = 0; j < active; ++j) {
            if (values_[j] == 0) continue;
            for (const auto& [i, w] : cols_[j]) {
                next[i] += w * values_[j];
            }
        }
        if (rescale != 1.0) {
            if constexpr (std::is_same_v<T, double>) {
                for (auto& x : next) x *= rescale;
            }
        }
        values_ = std::move(next);
    }

    T mass() const {
        T s(0);
        for (const auto& x : values_) s += x;
        return s;
    }

    T value_at(const VertexKey& v) const {
        auto it = index_.find(v);
        if (it == index_.end() || it->second >= values_.size()) return T(0);
        return values_[it->second];
    }

    const std::vector<VertexKey>& support_keys() const { return verts_; }
    const std::vector<T>& values() const { return values_; }

private:
    std::uint32_t ensure(const VertexKey& v) {
        auto it = index_.find(v);
        if (it != index_.end()) return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(verts_.size());
        verts_.push_back(v);
        index_.emplace(v, id);
        cols_.emplace_back();
        resolved_.push_back(false);
        return id;
    }

    void resolve(std::uint32_t j) {
        const OutEdges& edges = gp_.out_edges(verts_[j]);
        // ensure() may grow cols_, so build locally before assigning.
        std::vector<std::pair<std::uint32_t, T>> col;
        col.reserve(edges.size());
        for (const auto& e : edges) {
            col.emplace_back(ensure(e.target), weight_value<T>(e.weight));
        }
        cols_[j] = std::move(col);
        resolved_[j] = true;
    }

    GrowthProblem& gp_;
    std::vector<VertexKey> verts_;
    std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> index_;
    std::vector<std::vector<std::pair<std::uint32_t, T>>> cols_;
    std::vector<char> resolved_;
    std::vector<T> values_;
};

}  // namespace growth::detail
