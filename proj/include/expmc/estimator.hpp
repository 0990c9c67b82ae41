#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "expmc/sparse_matrix.hpp"

namespace expmc {

enum class Splitting { Lie, Strang };

/// Discretization and sampling contract: horizon beta split into n_steps
/// segments of dt = beta / n_steps, M sample paths, splitting mode, seed.
/// dt is derived, so dt * n_steps == beta holds by construction.
struct PathParams {
    double beta = 1.0;
    std::size_t n_steps = 32;
    std::size_t samples = 1'000'000;
    Splitting splitting = Splitting::Strang;
    std::uint64_t seed = 0;

    double dt() const { return beta / static_cast<double>(n_steps); }

    static PathParams with_steps(double beta, std::size_t n_steps,
                                 std::size_t samples, Splitting s,
                                 std::uint64_t seed);
    /// Rounds beta/dt to the nearest positive step count; the effective dt
    /// is beta / n_steps.
    static PathParams with_dt(double beta, double dt, std::size_t samples,
                              Splitting s, std::uint64_t seed);
    void validate() const;
};

/// A Monte Carlo scalar with its own uncertainty: sample mean, standard
/// error (sample standard deviation / sqrt(M)), and jump accounting.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples_used = 0;
    std::uint64_t total_jumps = 0;
};

/// Full-vector estimate. The statistical error is tracked globally through
/// the scalar path functional, not per entry.
struct VectorEstimate {
    std::vector<double> values;
    double std_error_global = 0.0;
    std::size_t samples_used = 0;
    std::uint64_t total_jumps = 0;
    double v_sum = 0.0;  ///< V = sum_l v_l
};

/// Estimates entry i of the splitting approximation to exp(beta A) v by
/// averaging the multiplicative path functional over M paths started at i.
/// Strang: half-weight exp(dt d_j / 2) before and after each segment.
/// Lie: full weight exp(dt d_j) after each segment only, realizing
/// (e^{-dt L} e^{dt D})^N v entrywise. v may have any sign.
Estimate entry_estimate(const SplitMatrix& m, std::span<const double> v,
                        NodeId i, const PathParams& p, unsigned workers = 1);

/// Estimates the whole vector at once: paths start from the categorical
/// distribution v / V (v must be entrywise >= 0 with V > 0) and each path
/// deposits V * weight into its final state. Valid because the generator
/// is symmetric, so the forward and backward chains coincide.
VectorEstimate vector_estimate(const SplitMatrix& m, std::span<const double> v,
                               const PathParams& p, unsigned workers = 1);

/// Total communicability (1, exp(beta A) 1) as a scalar mean of V * weight
/// over uniformly started paths; no per-entry accumulation.
Estimate tc_estimate(const SplitMatrix& m, const PathParams& p,
                     unsigned workers = 1);

}  // namespace expmc
