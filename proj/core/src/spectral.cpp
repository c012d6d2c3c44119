#include "growth/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "growth/errors.hpp"

namespace growth {

namespace {

// Column-sparse double view of the action matrix: out-edge j -> i.
struct DoubleGraph {
    std::size_t n;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> cols;

    explicit DoubleGraph(const SparseMatrix& m) : n(m.n), cols(m.n) {
        for (std::size_t j = 0; j < m.n; ++j) {
            cols[j].reserve(m.cols[j].size());
            for (const auto& [i, w] : m.cols[j]) {
                cols[j].emplace_back(i, rational_to_double(w));
            }
        }
    }
};

}  // namespace

SccPartition scc_decomposition(const SparseMatrix& m) {
    const std::size_t n = m.n;
    SccPartition out;
    out.component.assign(n, 0);

    // Iterative Tarjan.
    constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::uint32_t next_index = 0;

    struct Frame {
        std::uint32_t v;
        std::size_t edge;
    };
    std::vector<Frame> call;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& fr = call.back();
            std::uint32_t v = fr.v;
            if (fr.edge == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            bool descended = false;
            while (fr.edge < m.cols[v].size()) {
                std::uint32_t w = m.cols[v][fr.edge].first;
                ++fr.edge;
                if (index[w] == kUnvisited) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                std::vector<std::uint32_t> comp;
                for (;;) {
                    std::uint32_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    out.component[w] = static_cast<std::uint32_t>(out.members.size());
                    comp.push_back(w);
                    if (w == v) break;
                }
                std::sort(comp.begin(), comp.end());
                out.members.push_back(std::move(comp));
            }
            call.pop_back();
            if (!call.empty()) {
                std::uint32_t parent = call.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }

    out.dag.assign(out.members.size(), {});
    for (std::uint32_t j = 0; j < n; ++j) {
        for (const auto& [i, w] : m.cols[j]) {
            std::uint32_t a = out.component[j], b = out.component[i];
            if (a != b) out.dag[a].push_back(b);
        }
    }
    for (auto& succ : out.dag) {
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }
    return out;
}

SccPartition scc_decomposition(const Truncation& t) { return scc_decomposition(t.matrix()); }

std::optional<int> class_period(const SparseMatrix& m, const SccPartition& scc,
                                std::uint32_t class_id) {
    const auto& members = scc.members.at(class_id);
    std::vector<std::int64_t> level(m.n, -1);
    std::queue<std::uint32_t> bfs;
    bfs.push(members.front());
    level[members.front()] = 0;
    while (!bfs.empty()) {
        std::uint32_t v = bfs.front();
        bfs.pop();
        for (const auto& [w, weight] : m.cols[v]) {
            if (scc.component[w] != class_id) continue;
            if (level[w] < 0) {
                level[w] = level[v] + 1;
                bfs.push(w);
            }
        }
    }
    std::int64_t g = 0;
    for (std::uint32_t v : members) {
        for (const auto& [w, weight] : m.cols[v]) {
            if (scc.component[w] != class_id) continue;
            g = std::gcd(g, std::abs(level[v] + 1 - level[w]));
        }
    }
    if (g == 0) {
        // Every intra-class edge is level-consistent; either there are no
        // edges (acyclic singleton) or all closed walks have length 0.
        bool has_edge = false;
        for (std::uint32_t v : members) {
            for (const auto& [w, weight] : m.cols[v]) {
                if (scc.component[w] == class_id) has_edge = true;
            }
        }
        if (!has_edge) return std::nullopt;
        // Strongly connected with an edge but gcd 0 cannot happen: any edge
        // closing a cycle contributes a positive difference.
        return std::nullopt;
    }
    return static_cast<int>(g);
}

namespace {

// Shifted power iteration on one strongly connected block. The block is
// given by its member vertices; edges outside are ignored.
double block_pf(const DoubleGraph& g, const std::vector<std::uint32_t>& members,
                const PowerIterationOptions& opts) {
    const std::size_t m = members.size();
    if (m == 1) {
        // Only a self-loop can contribute.
        double loop = 0.0;
        for (const auto& [i, w] : g.cols[members[0]]) {
            if (i == members[0]) loop += w;
        }
        return loop;
    }
    std::vector<std::uint32_t> local(g.n, 0);
    for (std::uint32_t k = 0; k < m; ++k) local[members[k]] = k;
    // Local CSR in "apply" direction: y_i += w * x_j for edge j -> i.
    std::vector<std::vector<std::pair<std::uint32_t, double>>> cols(m);
    for (std::uint32_t k = 0; k < m; ++k) {
        for (const auto& [i, w] : g.cols[members[k]]) {
            if (std::binary_search(members.begin(), members.end(), i)) {
                cols[k].emplace_back(local[i], w);
            }
        }
    }
    const double eps = opts.shift;
    std::vector<double> x(m, 1.0 / static_cast<double>(m)), y(m);
    // The Collatz-Wielandt ratios bracket rho+eps at every iterate, so the
    // midpoint is always certified to half the bracket width. Rounding noise
    // puts a floor on the width near machine precision; once the bracket
    // stalls there we return the midpoint.
    double best_width = std::numeric_limits<double>::infinity();
    long stalled = 0;
    const long patience = 5000;
    for (long it = 0; it < opts.max_iterations; ++it) {
        std::fill(y.begin(), y.end(), 0.0);
        for (std::uint32_t j = 0; j < m; ++j) {
            const double xj = x[j];
            for (const auto& [i, w] : cols[j]) y[i] += w * xj;
        }
        double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
        for (std::uint32_t i = 0; i < m; ++i) {
            y[i] += eps * x[i];
            double r = y[i] / x[i];
            rmax = std::max(rmax, r);
            rmin = std::min(rmin, r);
        }
        double width = rmax - rmin;
        if (width <= opts.tol * rmax) {
            return std::max(0.0, 0.5 * (rmax + rmin) - eps);
        }
        if (width < 0.9 * best_width) {
            best_width = width;
            stalled = 0;
        } else if (++stalled >= patience && width <= 1e-9 * rmax) {
            return std::max(0.0, 0.5 * (rmax + rmin) - eps);
        }
        double s = std::accumulate(y.begin(), y.end(), 0.0);
        for (std::uint32_t i = 0; i < m; ++i) x[i] = y[i] / s;
    }
    throw ConvergenceError("power iteration did not converge within " +
                           std::to_string(opts.max_iterations) + " iterations");
}

std::vector<double> per_class_pf(const SparseMatrix& m, const SccPartition& scc,
                                 const PowerIterationOptions& opts) {
    DoubleGraph g(m);
    std::vector<double> pf(scc.count());
    for (std::uint32_t c = 0; c < scc.count(); ++c) {
        pf[c] = block_pf(g, scc.members[c], opts);
    }
    return pf;
}

Eigen::MatrixXd dense_matrix(const SparseMatrix& m) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.n),
                                              static_cast<Eigen::Index>(m.n));
    for (std::size_t j = 0; j < m.n; ++j) {
        for (const auto& [i, w] : m.cols[j]) {
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rational_to_double(w);
        }
    }
    return d;
}

}  // namespace

double pf_eigenvalue(const SparseMatrix& m, const PowerIterationOptions& opts) {
    if (m.n == 0) return 0.0;
    // SCC split keeps the iteration on irreducible blocks, where the
    // Collatz-Wielandt ratios bracket the eigenvalue.
    SccPartition scc = scc_decomposition(m);
    DoubleGraph g(m);
    double best = 0.0;
    for (std::uint32_t c = 0; c < scc.count(); ++c) {
        best = std::max(best, block_pf(g, scc.members[c], opts));
    }
    return best;
}

std::vector<std::uint32_t> SpectralSummary::final_basic_ids() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < final_basic.size(); ++c) {
        if (final_basic[c]) out.push_back(c);
    }
    return out;
}

SpectralSummary classify_classes(const Truncation& t, double tol, std::size_t dense_cap) {
    SpectralSummary s;
    s.scc = scc_decomposition(t);
    PowerIterationOptions popts;
    s.class_pf = per_class_pf(t.matrix(), s.scc, popts);
    s.lambda = 0.0;
    for (double v : s.class_pf) s.lambda = std::max(s.lambda, v);

    const std::uint32_t k = s.scc.count();
    s.basic.assign(k, false);
    for (std::uint32_t c = 0; c < k; ++c) {
        s.basic[c] = s.class_pf[c] >= s.lambda - tol * s.lambda;
    }
    // reach[c]: some basic class is reachable from c by a nonempty path.
    // Ascending class id processes condensation successors first.
    std::vector<bool> reach(k, false);
    for (std::uint32_t c = 0; c < k; ++c) {
        for (std::uint32_t d : s.scc.dag[c]) {
            if (s.basic[d] || reach[d]) {
                reach[c] = true;
                break;
            }
        }
    }
    s.final_basic.assign(k, false);
    for (std::uint32_t c = 0; c < k; ++c) s.final_basic[c] = s.basic[c] && !reach[c];

    s.period = 1;
    std::uint32_t best_member = std::numeric_limits<std::uint32_t>::max();
    for (std::uint32_t c = 0; c < k; ++c) {
        if (s.final_basic[c] && s.scc.members[c].front() < best_member) {
            best_member = s.scc.members[c].front();
            s.period = class_period(t.matrix(), s.scc, c).value_or(1);
        }
    }

    if (t.size() <= dense_cap) {
        s.second_modulus = subdominant_modulus(t, dense_cap);
    } else {
        s.second_modulus = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

std::vector<std::vector<VertexKey>> final_basic_vertex_sets(const Truncation& t,
                                                            const SpectralSummary& s) {
    std::vector<std::vector<VertexKey>> out;
    for (std::uint32_t c : s.final_basic_ids()) {
        std::vector<VertexKey> keys;
        keys.reserve(s.scc.members[c].size());
        for (std::uint32_t v : s.scc.members[c]) keys.push_back(t.vertices()[v]);
        std::sort(keys.begin(), keys.end());
        out.push_back(std::move(keys));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct DenseEigen {
    Eigen::VectorXcd values;
    Eigen::MatrixXcd vectors;
};

DenseEigen solve_dense(const Eigen::MatrixXd& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, true);
    if (solver.info() != Eigen::Success) {
        throw EigendataError("dense eigensolver failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<std::complex<double>> to_std(const Eigen::VectorXcd& v) {
    return {v.data(), v.data() + v.size()};
}

}  // namespace

EigenData leading_eigendata(const Truncation& t, int h, std::size_t dense_cap,
                            double residual_tol) {
    if (h < 1) throw EigendataError("period must be >= 1");
    EigenData data;
    data.h = h;
    data.lambda = pf_eigenvalue(t.matrix());
    const double lambda = data.lambda;
    if (lambda <= 0.0) throw EigendataError("zero spectral radius has no leading eigendata");

    const std::size_t n = t.size();
    if (n > dense_cap) {
        if (h != 1) {
            throw EigendataError("matrix too large for a dense solve and period != 1");
        }
        // Two-sided power iteration; the shift keeps transient rotations out.
        DoubleGraph g(t.matrix());
        auto iterate = [&](bool transpose) {
            std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n);
            for (long it = 0; it < 200000; ++it) {
                std::fill(y.begin(), y.end(), 0.0);
                for (std::uint32_t j = 0; j < n; ++j) {
                    for (const auto& [i, w] : g.cols[j]) {
                        if (transpose) {
                            y[j] += w * x[i];
                        } else {
                            y[i] += w * x[j];
                        }
                    }
                }
                double s = 0.0;
                for (double v : y) s += std::abs(v);
                double delta = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    y[i] /= s;
                    delta = std::max(delta, std::abs(y[i] - x[i]));
                }
                x.swap(y);
                if (delta < 1e-14) break;
            }
            return x;
        };
        auto v = iterate(false);
        auto w = iterate(true);
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += w[i] * v[i];
        if (std::abs(dot) < 1e-14) {
            throw EigendataError("left/right eigenvector normalization impossible");
        }
        data.right.emplace_back(v.begin(), v.end());
        std::vector<std::complex<double>> wl(n);
        for (std::size_t i = 0; i < n; ++i) wl[i] = w[i] / dot;
        data.left.push_back(std::move(wl));
        return data;
    }

    Eigen::MatrixXd dm = dense_matrix(t.matrix());
    DenseEigen right = solve_dense(dm);
    DenseEigen left = solve_dense(Eigen::MatrixXd(dm.transpose()));

    auto pick = [&](const DenseEigen& e, std::complex<double> target) {
        Eigen::Index best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < e.values.size(); ++i) {
            double d = std::abs(e.values(i) - target);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        if (best_d > 1e-6 * std::max(lambda, 1.0)) {
            throw EigendataError("expected eigenvalue not present in the spectrum");
        }
        return best;
    };

    for (int s = 0; s < h; ++s) {
        const double angle = 2.0 * M_PI * s / h;
        std::complex<double> target = lambda * std::complex<double>(std::cos(angle),
                                                                    std::sin(angle));
        Eigen::Index ri = pick(right, target);
        Eigen::Index li = pick(left, target);
        data.right.push_back(to_std(right.vectors.col(ri)));
        data.left.push_back(to_std(left.vectors.col(li)));
    }
    // normalize and check residuals
    for (int s = 0; s < h; ++s) {
        const double angle = 2.0 * M_PI * s / h;
        std::complex<double> mu = lambda * std::complex<double>(std::cos(angle), std::sin(angle));
        Eigen::Map<Eigen::VectorXcd> v(data.right[s].data(), static_cast<Eigen::Index>(n));
        Eigen::Map<Eigen::VectorXcd> w(data.left[s].data(), static_cast<Eigen::Index>(n));
        std::complex<double> c = (w.transpose() * v)(0);
        if (std::abs(c) < 1e-12 * v.norm() * w.norm()) {
            throw EigendataError("left/right eigenvector normalization impossible");
        }
        for (auto& x : data.left[s]) x /= c;
        Eigen::VectorXcd resid = dm * v - mu * v;
        double rnorm = resid.lpNorm<Eigen::Infinity>();
        if (rnorm > residual_tol * lambda * v.lpNorm<Eigen::Infinity>()) {
            throw EigendataError("eigenpair residual above tolerance");
        }
    }
    return data;
}

double subdominant_modulus(const Truncation& t, std::size_t dense_cap) {
    if (t.size() > dense_cap) {
        throw EigendataError("truncation too large for a dense eigensolve");
    }
    if (t.size() == 0) return 0.0;
    DenseEigen e = solve_dense(dense_matrix(t.matrix()));
    double lambda = 0.0;
    for (Eigen::Index i = 0; i < e.values.size(); ++i) {
        lambda = std::max(lambda, std::abs(e.values(i)));
    }
    double second = 0.0;
    for (Eigen::Index i = 0; i < e.values.size(); ++i) {
        double m = std::abs(e.values(i));
        if (m < lambda * (1.0 - 1e-9)) second = std::max(second, m);
    }
    return second;
}

const char* verdict_name(FiltrationEstimate::Verdict v) {
    switch (v) {
        case FiltrationEstimate::Verdict::Finite: return "finite";
        case FiltrationEstimate::Verdict::Infinite: return "infinite";
        case FiltrationEstimate::Verdict::Undecided: return "undecided";
    }
    return "undecided";
}

FiltrationEstimate pfdim_filtration(Filtration filtration, const std::vector<int>& pages,
                                    const PfdimOptions& opts) {
    for (std::size_t i = 0; i + 1 < pages.size(); ++i) {
        if (pages[i + 1] <= pages[i]) {
            throw ScheduleError("page schedule must be strictly increasing");
        }
    }
    FiltrationEstimate est;
    bool cap_hit = false;
    for (int page : pages) {
        try {
            Truncation t = filtration.page(page);
            est.lambda_k.emplace_back(page, pf_eigenvalue(t.matrix(), opts.power));
        } catch (const ExpansionCapExceeded& e) {
            cap_hit = true;
            est.note = e.what();
            break;
        }
        if (est.lambda_k.back().second > opts.divergence_threshold) {
            est.verdict = FiltrationEstimate::Verdict::Infinite;
            est.value = est.lambda_k.back().second;
            est.note = "divergence threshold " + std::to_string(opts.divergence_threshold) +
                       " exceeded";
            return est;
        }
    }
    if (!est.lambda_k.empty()) est.value = est.lambda_k.back().second;
    if (cap_hit) {
        est.verdict = FiltrationEstimate::Verdict::Undecided;
        return est;
    }
    const std::size_t n = est.lambda_k.size();
    if (n >= static_cast<std::size_t>(opts.window) + 1) {
        bool all_small = true, all_large = true;
        for (std::size_t i = n - opts.window; i < n; ++i) {
            double inc = est.lambda_k[i].second - est.lambda_k[i - 1].second;
            if (inc >= opts.tol) all_small = false;
            if (inc < opts.tol) all_large = false;
        }
        if (all_small) {
            est.verdict = FiltrationEstimate::Verdict::Finite;
            return est;
        }
        double half = est.lambda_k[n / 2].second;
        if (all_large && est.value > 2.0 * half) {
            est.verdict = FiltrationEstimate::Verdict::Infinite;
            est.note = "increments bounded below by tol and value doubled along the schedule";
            return est;
        }
    }
    est.verdict = FiltrationEstimate::Verdict::Undecided;
    return est;
}

}  // namespace growth
