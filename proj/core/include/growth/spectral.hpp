#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "growth/graph.hpp"

namespace growth {

/// Strongly connected components of a truncation, with the condensation.
/// Class ids are assigned in completion order, so every condensation edge
/// goes from a higher id to a lower one (ascending id = sinks first).
struct SccPartition {
    std::vector<std::uint32_t> component;                // vertex -> class id
    std::vector<std::vector<std::uint32_t>> members;     // class id -> vertices
    std::vector<std::vector<std::uint32_t>> dag;         // class id -> successor ids
    std::uint32_t count() const { return static_cast<std::uint32_t>(members.size()); }
};

SccPartition scc_decomposition(const Truncation& t);
SccPartition scc_decomposition(const SparseMatrix& m);

/// gcd of closed-walk lengths through the class, via BFS level differences.
/// nullopt when the class carries no cycle (isolated vertex without loop).
std::optional<int> class_period(const SparseMatrix& m, const SccPartition& scc,
                                std::uint32_t class_id);

struct PowerIterationOptions {
    double tol = 1e-12;       // relative bracket width
    double shift = 1e-3;      // diagonal shift, removes periodicity
    long max_iterations = 1000000;
};

/// Spectral radius of a square nonnegative matrix. Decomposes into strongly
/// connected blocks and runs a shifted power iteration per block; the
/// Collatz-Wielandt ratios bracket the eigenvalue, so the returned value is
/// certified to the requested relative tolerance. Nilpotent input gives 0
/// exactly. Throws ConvergenceError past max_iterations.
double pf_eigenvalue(const SparseMatrix& m, const PowerIterationOptions& opts = {});

struct SpectralSummary {
    double lambda = 0.0;          // max class PF value
    double second_modulus = 0.0;  // NaN when the dense solve was skipped
    int period = 1;               // period of the distinguished FBC, 1 if acyclic
    SccPartition scc;
    std::vector<double> class_pf;
    std::vector<bool> basic;
    std::vector<bool> final_basic;

    std::vector<std::uint32_t> final_basic_ids() const;
};

/// Per-class PF values, basic flags (within tol*lambda of the maximum) and
/// final-basic flags (basic without a condensation path to another basic
/// class). The summary period is taken from the final basic class with the
/// smallest member index.
SpectralSummary classify_classes(const Truncation& t, double tol = 1e-9,
                                 std::size_t dense_cap = 2000);

/// Sorted vertex keys of each final basic class.
std::vector<std::vector<VertexKey>> final_basic_vertex_sets(const Truncation& t,
                                                            const SpectralSummary& s);

struct EigenData {
    double lambda = 0.0;
    int h = 1;
    // right[s], left[s]: eigenvectors for exp(2*pi*i*s/h) * lambda with
    // left[s]^T right[s] = 1 (transpose, not conjugate-transpose).
    std::vector<std::vector<std::complex<double>>> right;
    std::vector<std::vector<std::complex<double>>> left;
};

/// Normalized leading left/right eigenpairs for all h rotations of the PF
/// eigenvalue. Dense solve up to dense_cap vertices; above the cap only the
/// aperiodic case is handled (two-sided power iteration).
EigenData leading_eigendata(const Truncation& t, int h, std::size_t dense_cap = 1500,
                            double residual_tol = 1e-8);

/// Largest modulus among the eigenvalues that remain after removing the
/// modulus-lambda ones. Requires a dense solve; throws over the cap.
double subdominant_modulus(const Truncation& t, std::size_t dense_cap = 2000);

struct PfdimOptions {
    double tol = 1e-6;            // increment tolerance for the finite verdict
    int window = 5;
    double divergence_threshold = 50.0;
    PowerIterationOptions power;
};

struct FiltrationEstimate {
    enum class Verdict { Finite, Infinite, Undecided };
    std::vector<std::pair<int, double>> lambda_k;  // (page, PF value)
    Verdict verdict = Verdict::Undecided;
    double value = 0.0;  // limit estimate: last PF value
    std::string note;
};

const char* verdict_name(FiltrationEstimate::Verdict v);

/// PF values along a good filtration with a divergence/stabilization verdict.
/// The sequence is nondecreasing up to eigenvalue tolerance. An expansion
/// cap abort downgrades the verdict to Undecided and keeps the partial data.
FiltrationEstimate pfdim_filtration(Filtration filtration, const std::vector<int>& pages,
                                    const PfdimOptions& opts = {});

}  // namespace growth
