#include "growth/graph.hpp"

#include <algorithm>
#include <set>

#include "growth/errors.hpp"

namespace growth {

std::string key_str(const VertexKey& k) {
    if (k.parts.empty()) return "()";
    if (k.parts.size() == 1) return std::to_string(k.parts[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < k.parts.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(k.parts[i]);
    }
    s += ')';
    return s;
}

GrowthProblem::GrowthProblem(VertexKey unit, NeighborOracle oracle, std::string description,
                             ProblemOptions opts)
    : unit_(std::move(unit)),
      oracle_(std::move(oracle)),
      description_(std::move(description)),
      opts_(opts) {}

const OutEdges& GrowthProblem::out_edges(const VertexKey& v) {
    auto it = memo_.find(v);
    if (it != memo_.end()) return it->second;
    if (memo_.size() >= opts_.vertex_cap) {
        throw ExpansionCapExceeded(opts_.vertex_cap, "expanding " + description_);
    }
    OutEdges raw = oracle_(v);
    std::sort(raw.begin(), raw.end(),
              [](const WeightedEdge& a, const WeightedEdge& b) { return a.target < b.target; });
    OutEdges edges;
    edges.reserve(raw.size());
    for (auto& e : raw) {
        if (e.weight < 0) {
            throw InvalidPresentation("negative weight on edge " + key_str(v) + " -> " +
                                      key_str(e.target));
        }
        if (e.weight == 0) continue;
        if (!edges.empty() && edges.back().target == e.target) {
            edges.back().weight += e.weight;
        } else {
            edges.push_back(std::move(e));
        }
    }
    return memo_.emplace(v, std::move(edges)).first->second;
}

double SparseMatrix::max_entry() const {
    double m = 0.0;
    for (const auto& col : cols) {
        for (const auto& [i, w] : col) {
            m = std::max(m, rational_to_double(w));
        }
    }
    return m;
}

SparseMatrix SparseMatrix::scaled(const Rational& s) const {
    SparseMatrix out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.cols[j].reserve(cols[j].size());
        for (const auto& [i, w] : cols[j]) {
            out.cols[j].emplace_back(i, w * s);
        }
    }
    return out;
}

std::vector<std::vector<double>> SparseMatrix::to_dense_double() const {
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto& [i, w] : cols[j]) {
            d[i][j] = rational_to_double(w);
        }
    }
    return d;
}

Truncation::Truncation(int depth, std::vector<VertexKey> vertices, SparseMatrix matrix)
    : depth_(depth), vertices_(std::move(vertices)), matrix_(std::move(matrix)) {
    index_.reserve(vertices_.size());
    for (std::uint32_t i = 0; i < vertices_.size(); ++i) {
        index_.emplace(vertices_[i], i);
    }
}

std::optional<std::uint32_t> Truncation::index_of(const VertexKey& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

namespace {

SparseMatrix restricted_matrix(GrowthProblem& gp, const std::vector<VertexKey>& verts) {
    std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> pos;
    pos.reserve(verts.size());
    for (std::uint32_t i = 0; i < verts.size(); ++i) pos.emplace(verts[i], i);
    SparseMatrix m(verts.size());
    for (std::uint32_t j = 0; j < verts.size(); ++j) {
        for (const auto& e : gp.out_edges(verts[j])) {
            auto it = pos.find(e.target);
            if (it != pos.end()) {
                m.cols[j].emplace_back(it->second, e.weight);
            }
        }
        std::sort(m.cols[j].begin(), m.cols[j].end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    return m;
}

}  // namespace

Truncation expand_to_depth(GrowthProblem& gp, int k) {
    if (k < 0) throw InvalidPresentation("negative truncation depth");
    std::vector<VertexKey> order{gp.unit()};
    std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> seen;
    seen.emplace(gp.unit(), 0);
    std::vector<VertexKey> frontier{gp.unit()};
    for (int level = 0; level < k && !frontier.empty(); ++level) {
        std::set<VertexKey> found;
        for (const auto& v : frontier) {
            for (const auto& e : gp.out_edges(v)) {
                if (!seen.count(e.target)) found.insert(e.target);
            }
        }
        frontier.assign(found.begin(), found.end());
        for (const auto& v : frontier) {
            seen.emplace(v, static_cast<std::uint32_t>(order.size()));
            order.push_back(v);
        }
    }
    SparseMatrix m = restricted_matrix(gp, order);
    return Truncation(k, std::move(order), std::move(m));
}

Truncation induced_truncation(GrowthProblem& gp, std::vector<VertexKey> verts, int depth_label) {
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    auto it = std::find(verts.begin(), verts.end(), gp.unit());
    if (it == verts.end()) {
        throw ScheduleError("vertex set omits the unit");
    }
    verts.erase(it);
    std::vector<VertexKey> order{gp.unit()};
    order.insert(order.end(), verts.begin(), verts.end());
    SparseMatrix m = restricted_matrix(gp, order);
    return Truncation(depth_label, std::move(order), std::move(m));
}

Filtration::Filtration(GrowthProblem& gp, std::vector<std::vector<VertexKey>> pages, bool naive)
    : gp_(&gp), pages_(std::move(pages)), naive_(naive) {}

Filtration Filtration::naive(GrowthProblem& gp) { return Filtration(gp, {}, true); }

Filtration Filtration::explicit_schedule(GrowthProblem& gp,
                                         std::vector<std::vector<VertexKey>> pages) {
    if (pages.empty()) throw ScheduleError("empty schedule");
    for (auto& page : pages) {
        std::sort(page.begin(), page.end());
        page.erase(std::unique(page.begin(), page.end()), page.end());
    }
    if (pages.front() != std::vector<VertexKey>{gp.unit()}) {
        throw ScheduleError("schedule must start at {unit}");
    }
    for (std::size_t i = 0; i + 1 < pages.size(); ++i) {
        if (!std::includes(pages[i + 1].begin(), pages[i + 1].end(), pages[i].begin(),
                           pages[i].end())) {
            throw ScheduleError("schedule pages are not nested");
        }
    }
    Filtration f(gp, std::move(pages), false);
    return f;
}

Truncation Filtration::page(int k) {
    if (k < 0) throw ScheduleError("negative page index");
    if (naive_) {
        return expand_to_depth(*gp_, k);
    }
    if (static_cast<std::size_t>(k) >= pages_.size()) {
        throw ScheduleError("page index past the end of the explicit schedule");
    }
    return induced_truncation(*gp_, pages_[k], k);
}

std::size_t Filtration::page_count() const { return pages_.size(); }

GrowthProblem scaled_problem(GrowthProblem& gp, const Rational& s) {
    if (s <= 0) throw InvalidPresentation("scale factor must be positive");
    GrowthProblem* base = &gp;
    Rational scale = s;
    return GrowthProblem(
        gp.unit(),
        [base, scale](const VertexKey& v) {
            OutEdges out = base->out_edges(v);
            for (auto& e : out) e.weight *= scale;
            return out;
        },
        gp.description() + " scaled by " + rational_str(s),
        ProblemOptions{gp.vertex_cap()});
}

}  // namespace growth
