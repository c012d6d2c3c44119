#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace growth {

/// Canonical basis-element label: a tuple of integers.
///
/// Encodings by family: a single integer (chain-indexed families, raw matrix
/// indices), an integer pair (dominant weights), or a weakly decreasing list
/// with trailing zeros stripped (partitions). The empty tuple is the empty
/// partition.
struct VertexKey {
    std::vector<std::int64_t> parts;

    VertexKey() = default;
    explicit VertexKey(std::int64_t a) : parts{a} {}
    VertexKey(std::int64_t a, std::int64_t b) : parts{a, b} {}
    explicit VertexKey(std::vector<std::int64_t> p) : parts(std::move(p)) {}

    auto operator<=>(const VertexKey&) const = default;

    /// Strips trailing zeros; canonical form for partition-valued keys.
    static VertexKey partition(std::vector<std::int64_t> p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
        return VertexKey(std::move(p));
    }
};

/// "(a,b,c)" for tuples, "a" for singletons, "()" for the empty tuple.
std::string key_str(const VertexKey& k);

struct VertexKeyHash {
    std::size_t operator()(const VertexKey& k) const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (auto v : k.parts) {
            h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

}  // namespace growth
