#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "expmc/estimator.hpp"
#include "expmc/sparse_matrix.hpp"

namespace expmc {

/// Dense symmetric workhorse for ground-truth products at small n.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    static DenseMatrix from_sparse(const SparseSymmetric& a);
    static DenseMatrix identity(std::size_t n);
    /// The Laplacian factor L of the splitting.
    static DenseMatrix laplacian(const SplitMatrix& m);
    /// The full matrix A = D - L.
    static DenseMatrix full(const SplitMatrix& m);

    std::size_t size() const { return n_; }
    double& at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    std::vector<double> apply(std::span<const double> v) const;
    DenseMatrix scaled(double s) const;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;  // row-major
};

/// Dense size ceiling for all oracle operations (default 2000); the
/// environment variable EXPMC_ORACLE_CAP overrides it.
std::size_t oracle_cap();

/// Matrix exponential by degree-13 Pade approximation with scaling and
/// squaring. Throws std::overflow_error when the result leaves the finite
/// range.
DenseMatrix dense_expm(const DenseMatrix& a);

/// exp(beta A) v through the dense exponential.
std::vector<double> dense_expm_action(const SplitMatrix& m,
                                      std::span<const double> v, double beta);

/// The exact splitting vector: N applications of the dense factors,
/// (e^{dt D/2} e^{-dt L} e^{dt D/2})^N v for Strang and
/// (e^{-dt L} e^{dt D})^N v for Lie. e^{-dt L} is formed once.
std::vector<double> splitting_product(const SplitMatrix& m,
                                      std::span<const double> v,
                                      const PathParams& p);

struct CommutatorBounds {
    double lie_local = 0.0;     ///< || (dt^2/2) [D,L] v ||_inf
    double strang_local = 0.0;  ///< || dt^3 ([D,[D,L]]/12 - [L,[L,D]]/24) v ||_inf
    double tc_bound = 0.0;      ///< 2 dmax^3 dt^2
};

/// Leading local splitting-error terms applied to v, plus the analytic
/// total-communicability bound.
CommutatorBounds commutator_bounds(const SplitMatrix& m, double dt,
                                   std::span<const double> v);

enum class ErrorNorm { LInf, L1 };

/// eps_total = eps_split + eps_stat by construction.
struct ErrorDecomposition {
    double eps_total = 0.0;
    double eps_split = 0.0;  ///< || exp(beta A) v - splitting product ||
    double eps_stat = 0.0;   ///< || splitting product - MC values ||
    double tc_bound = 0.0;   ///< 2 dmax^3 dt^2
};

/// Separates the splitting error from the Monte Carlo statistical error of
/// a vector estimate against the dense ground truth.
ErrorDecomposition decompose_error(const SplitMatrix& m,
                                   std::span<const double> v,
                                   const PathParams& p,
                                   const VectorEstimate& mc,
                                   ErrorNorm norm = ErrorNorm::LInf);

}  // namespace expmc
