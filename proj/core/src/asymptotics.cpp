#include "growth/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "growth/errors.hpp"
#include "growth/spectral.hpp"

namespace growth {

namespace {

std::vector<std::complex<double>> kappa_from_eigendata(const Truncation& t, const EigenData& e) {
    // unit sits at index 0 of every truncation
    std::vector<std::complex<double>> kappa(e.h);
    for (int s = 0; s < e.h; ++s) {
        std::complex<double> col_sum = 0.0;
        for (const auto& x : e.right[s]) col_sum += x;
        kappa[s] = col_sum * e.left[s][0];
    }
    // Enforce the conjugate pairing exactly; eigenvectors of a real matrix
    // come in conjugate pairs up to solver noise.
    for (int s = 1; 2 * s < e.h; ++s) {
        std::complex<double> avg = 0.5 * (kappa[s] + std::conj(kappa[e.h - s]));
        kappa[s] = avg;
        kappa[e.h - s] = std::conj(avg);
    }
    kappa[0] = std::complex<double>(kappa[0].real(), 0.0);
    if (e.h % 2 == 0) {
        int half = e.h / 2;
        kappa[half] = std::complex<double>(kappa[half].real(), 0.0);
    }
    return kappa;
}

double kappa_distance(const std::vector<std::complex<double>>& a,
                      const std::vector<std::complex<double>>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

AsymptoticModel fit_asymptotic_model(GrowthProblem& gp, const std::vector<int>& cutoff_schedule,
                                     double tol) {
    if (cutoff_schedule.empty()) throw InvalidPresentation("empty cutoff schedule");

    AsymptoticModel model;
    std::vector<std::complex<double>> prev;
    int prev_depth = -1;
    std::size_t prev_size = 0;
    bool have_stable_fbc = false;
    std::vector<std::vector<VertexKey>> prev_fbc;

    for (int depth : cutoff_schedule) {
        Truncation t = expand_to_depth(gp, depth);
        SpectralSummary summary = classify_classes(t);
        auto fbc = final_basic_vertex_sets(t, summary);
        if (fbc.empty()) {
            throw StructureError("no final basic class detected at depth " +
                                 std::to_string(depth));
        }
        bool saturated = prev_depth >= 0 && t.size() == prev_size;
        if (prev_depth >= 0 && !saturated && fbc != prev_fbc) {
            throw StructureError(
                "final basic class not stable under deepening; "
                "asymptotic model is only defined for positively recurrent problems");
        }
        have_stable_fbc = prev_depth >= 0;
        prev_fbc = fbc;

        EigenData eig = leading_eigendata(t, summary.period);
        auto kappa = kappa_from_eigendata(t, eig);

        model.lambda = eig.lambda;
        model.h = eig.h;
        model.provenance.depths.push_back(depth);
        if (!prev.empty()) {
            double delta = kappa_distance(kappa, prev);
            model.provenance.deltas.push_back(delta);
            if (saturated) {
                model.kappa = kappa;
                model.provenance.exact_depth = true;
                return model;
            }
            if (delta < tol) {
                model.kappa = kappa;
                return model;
            }
        } else if (cutoff_schedule.size() == 1) {
            // Single-depth schedule: accept as the exact finite evaluation.
            model.kappa = kappa;
            model.provenance.exact_depth = true;
            return model;
        }
        prev = std::move(kappa);
        prev_depth = depth;
        prev_size = t.size();
    }
    (void)have_stable_fbc;
    throw StructureError("coefficients did not stabilize along the cutoff schedule");
}

double evaluate_model(const AsymptoticModel& m, long long n) {
    if (n < 0) throw InvalidPresentation("model evaluated at negative index");
    std::complex<double> acc = 0.0;
    double scale = 0.0;
    for (int s = 0; s < m.h; ++s) {
        double angle = 2.0 * M_PI * s * static_cast<double>(n % m.h) / m.h;
        acc += m.kappa[s] * std::complex<double>(std::cos(angle), std::sin(angle));
        scale += std::abs(m.kappa[s]);
    }
    if (std::abs(acc.imag()) > 1e-9 * std::max(std::abs(acc.real()), scale)) {
        throw EigendataError("imaginary residue in model evaluation exceeds tolerance");
    }
    return acc.real() * std::pow(m.lambda, static_cast<double>(n));
}

VarianceReport variance_report(GrowthProblem& gp, const AsymptoticModel& m, int N) {
    VarianceReport rep;
    Series b = bn_sequence(gp, N);
    std::vector<double> xs, ys;
    for (int n = 0; n <= N; ++n) {
        VarianceRow row;
        row.n = n;
        row.b = b.at(n);
        row.a = evaluate_model(m, n);
        double bd = rational_to_double(row.b);
        row.absdiff = std::abs(bd - row.a);
        row.ratio = row.a != 0.0 ? bd / row.a : std::numeric_limits<double>::quiet_NaN();
        if (n >= 1 && row.a != 0.0 && std::isfinite(row.ratio)) {
            double rel = std::abs(row.ratio - 1.0);
            if (rel > 1e-15) {
                xs.push_back(static_cast<double>(n));
                ys.push_back(std::log(rel));
            }
        }
        rep.rows.push_back(std::move(row));
    }
    if (xs.size() >= 2) {
        double n_ = static_cast<double>(xs.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        double denom = n_ * sxx - sx * sx;
        if (denom != 0) rep.fitted_ratio = std::exp((n_ * sxy - sx * sy) / denom);
    }
    rep.reference_ratio = std::numeric_limits<double>::quiet_NaN();
    try {
        // Deepen until saturation or the dense cap; the reference ratio only
        // exists when a finite cutoff carries the full spectrum.
        Truncation t = expand_to_depth(gp, std::max(N, 32));
        if (m.lambda > 0) rep.reference_ratio = subdominant_modulus(t) / m.lambda;
    } catch (const Error&) {
        // leave NaN
    }
    return rep;
}

}  // namespace growth
