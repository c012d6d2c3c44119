#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "growth/graph.hpp"
#include "growth/rational.hpp"

namespace growth {

/// Exact term list; terms[k] is the coefficient at index start + k.
/// No floating intermediates anywhere in the exact pipeline.
struct Series {
    std::int64_t start = 0;
    std::vector<Rational> terms;

    const Rational& at(std::int64_t n) const;
    std::int64_t end() const { return start + static_cast<std::int64_t>(terms.size()); }
};

/// b_0..b_N: total mass of the n-th power of the distinguished element,
/// computed by iterating the action matrix on the unit indicator while the
/// graph expands lazily under the support. b_0 = 1.
Series bn_sequence(GrowthProblem& gp, int N);

/// Entries (M^n)_{ij} for n = 0..N.
Series power_entry_series(GrowthProblem& gp, const VertexKey& i, const VertexKey& j, int N);

/// Distribution of the support of the n-th power over basis elements:
/// v -> (M^n)_{v,unit}. Totals the matching bn_sequence term.
std::map<VertexKey, Rational> endpoint_distribution(GrowthProblem& gp, int n);

/// First-return coefficients l(1..N) at vertex i, recovered from the power
/// entries by exact convolution inversion:
///   m^(n) = sum_{k=1..n} l(k) m^(n-k)   (n >= 1).
Series first_return_series(GrowthProblem& gp, const VertexKey& i, int N);

/// Exact partial sum sum_{n=0..N} (M^n)_{ii} z^n for z >= 0.
Rational green_partial(GrowthProblem& gp, const VertexKey& i, const Rational& z, int N);

struct VjEstimate {
    int h = 1;                       // detected from the nonzero support
    std::vector<double> roots;       // ((M^(hm))_{ii})^(1/(hm))
    double extrapolated = 0.0;       // limit estimate of the root sequence
};

/// Growth-rate estimate of the diagonal power entries at i, with a
/// log-corrected extrapolation of the root sequence.
VjEstimate vj_pfdim_estimate(GrowthProblem& gp, const VertexKey& i, int N);

struct RecurrenceThresholds {
    double delta = 0.02;              // recurrent/transient margin on F
    double mu_divergence = 1e3;       // mean-return divergence threshold
    double stabilization_fraction = 0.25;
    double trend_margin = 0.05;       // increments ~ n^s diverge when s > -1 + margin
};

struct ClassificationReport {
    enum class Verdict { PositiveRecurrent, NullRecurrent, Transient, Superexponential, Unknown };
    Verdict verdict = Verdict::Unknown;
    double lambda = 0.0;
    int terms = 0;

    // Evidence. F and mu are the first-return and mean-return partial sums of
    // the lambda-rescaled walk, green the rescaled Green partial sum.
    double F = 0.0;
    double mu = 0.0;
    double green = 0.0;
    bool f_stabilized = false;
    bool mu_stabilized = false;
    double mu_trend_exponent = 0.0;     // fitted s in d(mu)_n ~ C n^s
    double mu_projected_crossing = 0.0; // projected term count where mu passes the threshold
    bool exact_short_circuit = false;
    std::string notes;
};

const char* verdict_name(ClassificationReport::Verdict v);

/// Recurrence/transience classification of the walk at the unit (or at `at`)
/// for the supplied growth rate lambda > 0.
///
/// Problems whose final basic classes are stable under deepening short-circuit
/// to an exact positive-recurrent verdict. Otherwise the verdict comes from
/// the rescaled first-return mass F_N and mean-return mass mu_N with the
/// documented thresholds; evidence is always reported and Unknown is the
/// fallback. The rescaled series are evaluated in double precision (the walk
/// lengths involved rule out exact arithmetic); exact accessors above remain
/// exact.
ClassificationReport classify_recurrence(GrowthProblem& gp, double lambda, int N,
                                         const RecurrenceThresholds& thresholds = {},
                                         const std::optional<VertexKey>& at = std::nullopt);

}  // namespace growth
