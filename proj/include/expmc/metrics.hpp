#pragma once

#include <span>
#include <vector>

#include "expmc/sparse_matrix.hpp"

namespace expmc {

/// Node scores plus their descending order; ties broken by ascending index
/// so rankings are reproducible.
struct RankedVector {
    std::vector<double> scores;
    std::vector<NodeId> order;
};

/// Deterministic descending sort with index tie-break. Rejects NaN scores.
RankedVector rank(std::span<const double> values);

/// Intersection similarity of the top K = ceil(top_fraction * n) prefixes:
/// the prefix-averaged symmetric-difference size |x_i delta y_i| / (2i).
/// 0 means identical top-K prefixes at every depth, 1 means disjoint.
double isim(const RankedVector& x, const RankedVector& y,
            double top_fraction);

/// TC_n = TC / n.
double normalized_tc(double tc, std::size_t n);

/// Inverse-temperature selection: a fixed beta, 1/lambda_max, or the
/// cheaper upper-bound variant 1/d_max.
struct BetaRule {
    enum class Kind { Fixed, InverseLambdaMax, InverseDmax };
    Kind kind = Kind::Fixed;
    double fixed_beta = 1.0;

    static BetaRule fixed(double beta);
    static BetaRule inverse_lambda_max() {
        return {Kind::InverseLambdaMax, 0.0};
    }
    static BetaRule inverse_dmax() { return {Kind::InverseDmax, 0.0}; }
};

double resolve_beta(const BetaRule& rule, const GraphStats& stats);

}  // namespace expmc
