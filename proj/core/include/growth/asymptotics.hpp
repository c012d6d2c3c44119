#pragma once

#include <complex>
#include <string>
#include <vector>

#include "growth/graph.hpp"
#include "growth/rational.hpp"
#include "growth/series.hpp"

namespace growth {

/// Closed-form growth model a(n) = Re(sum_s kappa_s zeta^(s n)) * lambda^n
/// with zeta = exp(2 pi i / h). Conjugate symmetry kappa_{h-s} = conj(kappa_s)
/// holds by construction, so a(n) is real.
struct AsymptoticModel {
    double lambda = 0.0;
    int h = 1;
    std::vector<std::complex<double>> kappa;

    struct Provenance {
        std::vector<int> depths;    // cutoff depths evaluated
        std::vector<double> deltas; // successive coefficient changes
        bool exact_depth = false;   // single saturated cutoff was enough
    } provenance;
};

/// Fits the model from truncation eigendata along a cutoff schedule.
/// kappa_s is the first-column sum of the outer product of the normalized
/// right and left eigenvectors for the s-th rotation of the PF eigenvalue,
/// i.e. (sum of right entries) * (left entry at the unit).
///
/// Requires a positively recurrent problem with a detected final basic class:
/// the fit refuses transient input. Finite problems are evaluated at one
/// saturated depth; infinite ones stabilize kappa over the schedule (change
/// < tol between successive depths) or fail.
AsymptoticModel fit_asymptotic_model(GrowthProblem& gp, const std::vector<int>& cutoff_schedule,
                                     double tol = 1e-6);

/// a(n). Throws EigendataError when the imaginary residue exceeds
/// 1e-9 relative to the coefficient scale (bad eigendata).
double evaluate_model(const AsymptoticModel& m, long long n);

struct VarianceRow {
    long long n;
    Rational b;      // exact
    double a;        // model value
    double absdiff;  // |b - a|
    double ratio;    // b / a
};

struct VarianceReport {
    std::vector<VarianceRow> rows;
    double fitted_ratio = 0.0;     // exp(slope) of log|b_n/a_n - 1|
    double reference_ratio = 0.0;  // |lambda_sec / lambda|; NaN if unavailable
};

/// Exact-vs-model table up to N with a least-squares estimate of the
/// geometric convergence ratio of b_n/a_n -> 1.
VarianceReport variance_report(GrowthProblem& gp, const AsymptoticModel& m, int N);

}  // namespace growth
