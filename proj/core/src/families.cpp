#include "growth/families.hpp"

#include <algorithm>
#include <cstdlib>

#include "growth/errors.hpp"

namespace growth {

std::vector<std::int64_t> sl2_clebsch_gordan(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0) throw InvalidPresentation("negative highest weight");
    std::vector<std::int64_t> out;
    for (std::int64_t v = std::abs(a - b); v <= a + b; v += 2) {
        out.push_back(v);
    }
    return out;
}

namespace {

std::int64_t part_at(const VertexKey& k, std::size_t i) {
    return i < k.parts.size() ? k.parts[i] : 0;
}

void require_chain_key(const VertexKey& v, std::int64_t lo, const char* family) {
    if (v.parts.size() != 1 || v.parts[0] < lo) {
        throw InvalidPresentation(std::string("invalid key ") + key_str(v) + " for " + family);
    }
}

OutEdges fibonacci_edges(const VertexKey& v) {
    require_chain_key(v, 0, "fibonacci");
    if (v.parts[0] > 1) throw InvalidPresentation("fibonacci has two vertices");
    if (v.parts[0] == 0) return {{VertexKey(1), 1}};
    return {{VertexKey(0), 1}, {VertexKey(1), 1}};
}

OutEdges sl2_edges(std::int64_t lambda, const VertexKey& v) {
    require_chain_key(v, 0, "sl2");
    OutEdges out;
    for (auto mu : sl2_clebsch_gordan(lambda, v.parts[0])) {
        out.push_back({VertexKey(mu), 1});
    }
    return out;
}

OutEdges sl3_edges(const VertexKey& v) {
    if (v.parts.size() > 2) throw InvalidPresentation("sl3-vector keys have at most two parts");
    std::int64_t a = part_at(v, 0), b = part_at(v, 1);
    if (a < b || b < 0) throw InvalidPresentation("sl3-vector key is not a partition");
    OutEdges out;
    out.push_back({VertexKey::partition({a + 1, b}), 1});
    if (a >= b + 1) out.push_back({VertexKey::partition({a, b + 1}), 1});
    if (b >= 1) out.push_back({VertexKey::partition({a - 1, b - 1}), 1});
    return out;
}

OutEdges gl2_edges(const VertexKey& v) {
    if (v.parts.size() != 2) throw InvalidPresentation("gl2-vector keys are pairs");
    std::int64_t a = v.parts[0], b = v.parts[1];
    if (a < b || b < 0) throw InvalidPresentation("gl2-vector key out of the dominant cone");
    OutEdges out;
    out.push_back({VertexKey(a + 1, b), 1});
    if (a >= b + 1) out.push_back({VertexKey(a, b + 1), 1});
    return out;
}

OutEdges klein_edges(const VertexKey& v) {
    require_chain_key(v, 1, "klein-four");
    std::int64_t x = v.parts[0];
    if (x == 4) return {{VertexKey(4), 3}};  // regular representation, triple loop
    if (x % 2 == 0) throw InvalidPresentation("klein-four chain keys are odd");
    if (x == 1) return {{VertexKey(3), 1}};
    std::int64_t k = (x - 1) / 2;
    return {{VertexKey(x + 2), 1}, {VertexKey(4), Rational(k)}};
}

// Chain with weight-2 backward edges v -> v-(2^a - 1) for a = 1..nu_2(v+1);
// the strongly connected blocks are {2^k, ..., 2^(k+1)-1}.
OutEdges sl2f2_edges(const VertexKey& v) {
    require_chain_key(v, 1, "sl2-f2");
    std::int64_t x = v.parts[0];
    OutEdges out{{VertexKey(x + 1), 1}};
    std::int64_t step = 2;  // 2^a
    for (std::int64_t y = x + 1; y % 2 == 0; y /= 2, step *= 2) {
        std::int64_t target = x - (step - 1);
        if (target >= 1) out.push_back({VertexKey(target), 2});
    }
    return out;
}

OutEdges star_edges(std::int64_t leaves, const VertexKey& v) {
    require_chain_key(v, 0, "star");
    std::int64_t x = v.parts[0];
    if (x > leaves) throw InvalidPresentation("star key beyond leaf count");
    if (x == 0) {
        OutEdges out;
        for (std::int64_t i = 1; i <= leaves; ++i) out.push_back({VertexKey(i), 1});
        return out;
    }
    return {{VertexKey(0), 1}};
}

OutEdges jordan_edges(const Rational& alpha, const VertexKey& v) {
    require_chain_key(v, 0, "jordan");
    OutEdges out;
    if (alpha > 0) out.push_back({v, alpha});
    out.push_back({VertexKey(v.parts[0] + 1), 1});
    return out;
}

OutEdges line_edges(const VertexKey& v) {
    if (v.parts.size() != 1) throw InvalidPresentation("line-Z keys are integers");
    return {{VertexKey(v.parts[0] - 1), 1}, {VertexKey(v.parts[0] + 1), 1}};
}

OutEdges young_edges(const VertexKey& v) {
    const auto& p = v.parts;
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::int64_t next = i + 1 < p.size() ? p[i + 1] : 0;
        if (p[i] < next || p[i] <= 0) {
            throw InvalidPresentation("young-lattice key is not a partition");
        }
    }
    OutEdges out;
    // add one box
    for (std::size_t i = 0; i <= p.size(); ++i) {
        std::int64_t above = i == 0 ? INT64_MAX : p[i - 1];
        std::int64_t here = i < p.size() ? p[i] : 0;
        if (here + 1 <= above) {
            auto q = p;
            if (i < q.size()) {
                q[i] += 1;
            } else {
                q.push_back(1);
            }
            out.push_back({VertexKey::partition(std::move(q)), 1});
        }
    }
    // remove one box
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::int64_t below = i + 1 < p.size() ? p[i + 1] : 0;
        if (p[i] - 1 >= below) {
            auto q = p;
            q[i] -= 1;
            out.push_back({VertexKey::partition(std::move(q)), 1});
        }
    }
    return out;
}

const int kPsl2F7[16][16] = {
    {1, 3, 2, 1, 0, 0, 2, 2, 2, 6, 4, 6, 8, 8, 8, 12},
    {0, 1, 2, 0, 0, 0, 0, 0, 0, 2, 0, 2, 4, 4, 4, 4},
    {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
};

OutEdges explicit_edges(const std::vector<std::vector<Rational>>& m, const VertexKey& v) {
    if (v.parts.size() != 1 || v.parts[0] < 0 ||
        static_cast<std::size_t>(v.parts[0]) >= m.size()) {
        throw InvalidPresentation("matrix index out of range: " + key_str(v));
    }
    std::size_t j = static_cast<std::size_t>(v.parts[0]);
    OutEdges out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i][j] != 0) out.push_back({VertexKey(static_cast<std::int64_t>(i)), m[i][j]});
    }
    return out;
}

}  // namespace

const std::vector<std::vector<int>>& psl2_f7_matrix() {
    static const std::vector<std::vector<int>> m = [] {
        std::vector<std::vector<int>> r(16, std::vector<int>(16));
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) r[i][j] = kPsl2F7[i][j];
        return r;
    }();
    return m;
}

GrowthProblem load_explicit(std::vector<std::vector<Rational>> matrix, std::size_t unit_index,
                            ProblemOptions opts) {
    const std::size_t n = matrix.size();
    if (n == 0) throw InvalidPresentation("empty matrix");
    for (const auto& row : matrix) {
        if (row.size() != n) throw InvalidPresentation("matrix is not square");
        for (const auto& x : row) {
            if (x < 0) throw InvalidPresentation("negative matrix entry");
        }
    }
    if (unit_index >= n) throw InvalidPresentation("unit index out of range");
    auto shared = std::make_shared<std::vector<std::vector<Rational>>>(std::move(matrix));
    return GrowthProblem(
        VertexKey(static_cast<std::int64_t>(unit_index)),
        [shared](const VertexKey& v) { return explicit_edges(*shared, v); },
        "explicit[" + std::to_string(n) + "]", opts);
}

GrowthProblem build_family(const FamilySpec& spec, ProblemOptions opts) {
    const std::string& f = spec.name;
    if (f == "fibonacci") {
        return GrowthProblem(VertexKey(0), fibonacci_edges, f, opts);
    }
    if (f == "sl2") {
        if (spec.lambda_weight < 1) throw InvalidPresentation("sl2 requires lambda >= 1");
        std::int64_t lam = spec.lambda_weight;
        return GrowthProblem(
            VertexKey(0), [lam](const VertexKey& v) { return sl2_edges(lam, v); },
            "sl2(" + std::to_string(lam) + ")", opts);
    }
    if (f == "sl3-vector") {
        return GrowthProblem(VertexKey::partition({}), sl3_edges, f, opts);
    }
    if (f == "gl2-vector") {
        return GrowthProblem(VertexKey(0, 0), gl2_edges, f, opts);
    }
    if (f == "klein-four") {
        return GrowthProblem(VertexKey(1), klein_edges, f, opts);
    }
    if (f == "sl2-f2") {
        return GrowthProblem(VertexKey(1), sl2f2_edges, f, opts);
    }
    if (f == "psl2-f7-cutoff") {
        auto m = std::make_shared<std::vector<std::vector<Rational>>>(
            16, std::vector<Rational>(16));
        const auto& data = psl2_f7_matrix();
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) (*m)[i][j] = data[i][j];
        return GrowthProblem(
            VertexKey(static_cast<std::int64_t>(psl2_f7_unit_index)),
            [m](const VertexKey& v) { return explicit_edges(*m, v); }, f, opts);
    }
    if (f == "star") {
        if (spec.star_leaves < 1) throw InvalidPresentation("star requires N >= 1");
        std::int64_t n = spec.star_leaves;
        return GrowthProblem(
            VertexKey(0), [n](const VertexKey& v) { return star_edges(n, v); },
            "star(" + std::to_string(n) + ")", opts);
    }
    if (f == "jordan") {
        if (spec.jordan_alpha < 0) throw InvalidPresentation("jordan requires alpha >= 0");
        Rational a = spec.jordan_alpha;
        return GrowthProblem(
            VertexKey(0), [a](const VertexKey& v) { return jordan_edges(a, v); },
            "jordan(" + rational_str(a) + ")", opts);
    }
    if (f == "line-Z") {
        return GrowthProblem(VertexKey(0), line_edges, f, opts);
    }
    if (f == "young-lattice") {
        return GrowthProblem(VertexKey::partition({}), young_edges, f, opts);
    }
    if (f == "explicit") {
        return load_explicit(spec.matrix, spec.unit_index, opts);
    }
    throw InvalidPresentation("unknown family '" + f + "'");
}

std::size_t declared_degree_bound(const FamilySpec& spec, const VertexKey& v) {
    const std::string& f = spec.name;
    if (f == "fibonacci") return 2;
    if (f == "sl2") return static_cast<std::size_t>(spec.lambda_weight) + 1;
    if (f == "sl3-vector") return 3;
    if (f == "gl2-vector") return 2;
    if (f == "klein-four") return 2;
    if (f == "sl2-f2") {
        std::size_t b = 1, y = static_cast<std::size_t>(v.parts[0]) + 1;
        while (y % 2 == 0) {
            y /= 2;
            ++b;
        }
        return b;
    }
    if (f == "psl2-f7-cutoff" || f == "explicit") return 16;
    if (f == "star") return static_cast<std::size_t>(spec.star_leaves);
    if (f == "jordan") return 2;
    if (f == "line-Z") return 2;
    if (f == "young-lattice") return 2 * v.parts.size() + 2;
    throw InvalidPresentation("unknown family '" + f + "'");
}

std::vector<std::string> family_names() {
    return {"fibonacci", "sl2",    "sl3-vector", "gl2-vector", "klein-four",    "sl2-f2",
            "psl2-f7-cutoff", "star", "jordan",     "line-Z",     "young-lattice", "explicit"};
}

}  // namespace growth
