#include "growth/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "growth/errors.hpp"
#include "growth/spectral.hpp"
#include "walk_engine.hpp"

namespace growth {

const Rational& Series::at(std::int64_t n) const {
    static const Rational zero = 0;
    if (n < start || n >= end()) return zero;
    return terms[static_cast<std::size_t>(n - start)];
}

Series bn_sequence(GrowthProblem& gp, int N) {
    if (N < 0) throw InvalidPresentation("negative series length");
    detail::WalkEngine<Rational> walk(gp, gp.unit());
    Series s;
    s.terms.reserve(N + 1);
    s.terms.push_back(1);
    for (int n = 1; n <= N; ++n) {
        walk.step();
        s.terms.push_back(walk.mass());
    }
    return s;
}

Series power_entry_series(GrowthProblem& gp, const VertexKey& i, const VertexKey& j, int N) {
    if (N < 0) throw InvalidPresentation("negative series length");
    detail::WalkEngine<Rational> walk(gp, j);
    Series s;
    s.terms.reserve(N + 1);
    s.terms.push_back(i == j ? 1 : 0);
    for (int n = 1; n <= N; ++n) {
        walk.step();
        s.terms.push_back(walk.value_at(i));
    }
    return s;
}

std::map<VertexKey, Rational> endpoint_distribution(GrowthProblem& gp, int n) {
    if (n < 0) throw InvalidPresentation("negative walk length");
    detail::WalkEngine<Rational> walk(gp, gp.unit());
    for (int k = 0; k < n; ++k) walk.step();
    std::map<VertexKey, Rational> out;
    const auto& keys = walk.support_keys();
    const auto& vals = walk.values();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (vals[i] != 0) out.emplace(keys[i], vals[i]);
    }
    return out;
}

namespace {

// l(n) = m(n) - sum_{k=1..n-1} l(k) m(n-k), from m(0) = 1.
template <typename T>
std::vector<T> invert_first_returns(const std::vector<T>& m) {
    std::vector<T> l(m.size(), T(0));
    for (std::size_t n = 1; n < m.size(); ++n) {
        T acc = m[n];
        for (std::size_t k = 1; k < n; ++k) {
            if (l[k] != 0 && m[n - k] != 0) acc -= l[k] * m[n - k];
        }
        l[n] = std::move(acc);
    }
    return l;
}

}  // namespace

Series first_return_series(GrowthProblem& gp, const VertexKey& i, int N) {
    if (N < 1) throw InvalidPresentation("first-return series needs N >= 1");
    Series m = power_entry_series(gp, i, i, N);
    std::vector<Rational> l = invert_first_returns(m.terms);
    Series s;
    s.start = 1;
    s.terms.assign(l.begin() + 1, l.end());
    return s;
}

Rational green_partial(GrowthProblem& gp, const VertexKey& i, const Rational& z, int N) {
    if (z < 0) throw InvalidPresentation("green_partial requires z >= 0");
    detail::WalkEngine<Rational> walk(gp, i);
    Rational total = 1;  // n = 0 term
    Rational zn = 1;
    for (int n = 1; n <= N; ++n) {
        walk.step();
        zn *= z;
        const Rational& v = walk.value_at(i);
        if (v != 0) total += v * zn;
    }
    return total;
}

namespace {

// Least squares y = a + b x.
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) return {sy / n, 0.0};
    double b = (n * sxy - sx * sy) / denom;
    double a = (sy - b * sx) / n;
    return {a, b};
}

}  // namespace

VjEstimate vj_pfdim_estimate(GrowthProblem& gp, const VertexKey& i, int N) {
    Series m = power_entry_series(gp, i, i, N);
    // Period of the diagonal: gcd of the indices carrying mass.
    std::int64_t h = 0;
    for (std::int64_t n = 1; n <= N; ++n) {
        if (m.at(n) != 0) h = std::gcd(h, n);
    }
    if (h == 0) throw StructureError("vertex lies on no cycle: diagonal power entries vanish");
    VjEstimate est;
    est.h = static_cast<int>(h);
    std::vector<double> logs;  // log m(h k)
    for (std::int64_t k = 1; h * k <= N; ++k) {
        const Rational& v = m.at(h * k);
        if (v == 0) break;
        logs.push_back(rational_log(v));
        est.roots.push_back(std::exp(logs.back() / static_cast<double>(h * k)));
    }
    if (logs.size() < 2) {
        est.extrapolated = est.roots.empty() ? 0.0 : est.roots.back();
        return est;
    }
    // Successive log-differences approach h log(limit) with an O(1/k)
    // correction; fit d_k = A + B/k on the tail half and take exp(A/h).
    std::vector<double> xs, ys;
    std::size_t lo = logs.size() / 2;
    if (lo == logs.size() - 1) lo = logs.size() - 2;
    for (std::size_t k = lo; k + 1 < logs.size(); ++k) {
        xs.push_back(1.0 / static_cast<double>(k + 1));
        ys.push_back(logs[k + 1] - logs[k]);
    }
    est.extrapolated = std::exp(linear_fit(xs, ys).first / static_cast<double>(h));
    return est;
}

const char* verdict_name(ClassificationReport::Verdict v) {
    using V = ClassificationReport::Verdict;
    switch (v) {
        case V::PositiveRecurrent: return "positive-recurrent";
        case V::NullRecurrent: return "null-recurrent";
        case V::Transient: return "transient";
        case V::Superexponential: return "superexponential";
        case V::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

// Final basic classes keyed by vertex labels, at two depths; identical
// nonempty sets certify a finite final basic class under the probe horizon.
bool stable_final_basic_classes(GrowthProblem& gp, int d1, int d2) {
    try {
        Truncation t1 = expand_to_depth(gp, d1);
        Truncation t2 = expand_to_depth(gp, d2);
        if (t1.size() == t2.size()) return true;  // problem saturated: finite
        SpectralSummary s1 = classify_classes(t1);
        SpectralSummary s2 = classify_classes(t2);
        auto f1 = final_basic_vertex_sets(t1, s1);
        auto f2 = final_basic_vertex_sets(t2, s2);
        return !f1.empty() && f1 == f2;
    } catch (const ExpansionCapExceeded&) {
        return false;
    }
}

}  // namespace

ClassificationReport classify_recurrence(GrowthProblem& gp, double lambda, int N,
                                         const RecurrenceThresholds& th,
                                         const std::optional<VertexKey>& at) {
    if (!(lambda > 0)) throw InvalidPresentation("classification requires lambda > 0");
    if (N < 8) throw InvalidPresentation("classification needs at least 8 terms");
    ClassificationReport rep;
    rep.lambda = lambda;
    rep.terms = N;

    if (!at && stable_final_basic_classes(gp, 12, 24)) {
        rep.verdict = ClassificationReport::Verdict::PositiveRecurrent;
        rep.exact_short_circuit = true;
        rep.notes = "final basic classes stable under deepening (finite FBC)";
        return rep;
    }

    const VertexKey origin = at.value_or(gp.unit());
    detail::WalkEngine<double> walk(gp, origin);
    std::vector<double> p(N + 1, 0.0);
    p[0] = 1.0;
    const double rescale = 1.0 / lambda;
    bool overflow = false;
    for (int n = 1; n <= N; ++n) {
        walk.step(rescale);
        p[n] = walk.value_at(origin);
        if (!(p[n] < 1e15)) {
            overflow = true;
            break;
        }
    }
    if (overflow) {
        rep.notes = "rescaled walk diverges; supplied lambda is below the growth rate";
        return rep;
    }
    std::vector<double> q = invert_first_returns(p);

    std::vector<double> F(N + 1, 0.0), mu(N + 1, 0.0), green(N + 1, 0.0);
    green[0] = p[0];
    for (int n = 1; n <= N; ++n) {
        F[n] = F[n - 1] + q[n];
        mu[n] = mu[n - 1] + n * q[n];
        green[n] = green[n - 1] + p[n];
    }
    rep.F = F[N];
    rep.mu = mu[N];
    rep.green = green[N];

    const int tail = std::max(1, static_cast<int>(N * th.stabilization_fraction));
    rep.f_stabilized = (F[N] - F[N - tail]) < th.delta / 10.0;
    rep.mu_stabilized = (mu[N] - mu[N - tail]) < th.delta / 10.0 * std::max(1.0, mu[N]);

    // Trend of the mean-return increments d_n = n q_n ~ C n^s on the tail.
    {
        std::vector<double> xs, ys;
        for (int n = N / 2; n <= N; ++n) {
            double d = n * q[n];
            if (d > 0) {
                xs.push_back(std::log(static_cast<double>(n)));
                ys.push_back(std::log(d));
            }
        }
        if (xs.size() >= 4) {
            auto [a, s] = linear_fit(xs, ys);
            rep.mu_trend_exponent = s;
            if (s > -1.0 + th.trend_margin) {
                // mu(N') ~ mu(N) + C/(s+1) (N'^(s+1) - N^(s+1))
                double C = std::exp(a);
                double target = th.mu_divergence;
                if (rep.mu >= target) {
                    rep.mu_projected_crossing = N;
                } else {
                    double base = std::pow(static_cast<double>(N), s + 1.0);
                    double arg = base + (s + 1.0) * (target - rep.mu) / C;
                    rep.mu_projected_crossing = std::pow(arg, 1.0 / (s + 1.0));
                }
            } else {
                rep.mu_projected_crossing = std::numeric_limits<double>::infinity();
            }
        } else {
            rep.mu_projected_crossing = std::numeric_limits<double>::infinity();
        }
    }

    if (std::abs(rep.F - 1.0) <= th.delta) {
        bool mu_diverging = !rep.mu_stabilized &&
                            (rep.mu > th.mu_divergence ||
                             std::isfinite(rep.mu_projected_crossing));
        if (rep.mu_stabilized) {
            rep.verdict = ClassificationReport::Verdict::PositiveRecurrent;
        } else if (mu_diverging) {
            rep.verdict = ClassificationReport::Verdict::NullRecurrent;
            rep.notes = "mean-return mass grows past the divergence threshold along the fitted trend";
        } else {
            rep.notes = "first-return mass near 1 but mean-return behavior unresolved";
        }
    } else if (rep.F < 1.0 - th.delta) {
        if (rep.f_stabilized) {
            rep.verdict = ClassificationReport::Verdict::Transient;
        } else {
            rep.notes = "first-return mass below 1 but not yet stabilized";
        }
    } else {
        rep.notes = "first-return mass inconclusive";
    }
    return rep;
}

}  // namespace growth
