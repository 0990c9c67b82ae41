#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace expmc {

using NodeId = std::uint32_t;

/// One stored coefficient of a symmetric matrix, kept in the upper triangle
/// (row <= col). Off-diagonal weights must be strictly positive so that the
/// Laplacian part of the splitting generates a continuous-time Markov chain.
struct Entry {
    NodeId row = 0;
    NodeId col = 0;
    double weight = 0.0;
};

/// Sparse symmetric matrix. Only the upper triangle is stored; the mirrored
/// adjacency (both directions) is built at construction so row neighborhoods
/// enumerate in O(deg(i)).
class SparseSymmetric {
public:
    SparseSymmetric() = default;

    /// Validates and canonicalizes the entry list: indices in range, finite
    /// weights, no explicit zeros, no duplicates, positive off-diagonals.
    /// Entries may arrive in either triangle; they are normalized to the
    /// upper one and sorted.
    static SparseSymmetric from_entries(std::size_t n,
                                        std::vector<Entry> entries);

    std::size_t size() const { return n_; }
    std::size_t edge_count() const { return edges_; }
    const std::vector<Entry>& entries() const { return entries_; }

    double diagonal(NodeId i) const { return diag_[i]; }
    std::size_t degree(NodeId i) const {
        return row_offset_[i + 1] - row_offset_[i];
    }
    std::span<const NodeId> neighbors(NodeId i) const {
        return {adj_.data() + row_offset_[i], degree(i)};
    }
    std::span<const double> neighbor_weights(NodeId i) const {
        return {adj_weight_.data() + row_offset_[i], degree(i)};
    }

    bool operator==(const SparseSymmetric& other) const;

private:
    std::size_t n_ = 0;
    std::size_t edges_ = 0;                 // off-diagonal pairs
    std::vector<Entry> entries_;            // canonical upper triangle
    std::vector<double> diag_;
    std::vector<std::size_t> row_offset_;   // CSR over both directions
    std::vector<NodeId> adj_;
    std::vector<double> adj_weight_;
};

/// Laplacian splitting A = D - L of a SparseSymmetric, in the layout the
/// path samplers walk. Immutable after construction; safe to share across
/// workers.
struct SplitMatrix {
    std::size_t n = 0;
    std::vector<double> diag;   ///< original A_ii (kept for exact reassembly)
    std::vector<double> d;      ///< D_ii = A_ii + rate_i
    std::vector<double> rate;   ///< L_ii = sum_j |L_ij|; CTMC exit rate

    // CSR adjacency over off-diagonal entries, both directions.
    std::vector<std::size_t> row_offset;  ///< size n + 1
    std::vector<NodeId> neighbor;
    std::vector<double> weight;           ///< |L_ij| = A_ij > 0
    std::vector<double> cum;              ///< per-row cumulative weights
    std::vector<std::uint8_t> uniform_row;  ///< all weights in the row equal

    double dbar = 0.0;       ///< average degree (neighbor count)
    std::size_t dmax = 0;    ///< maximum degree

    std::size_t degree(NodeId i) const {
        return row_offset[i + 1] - row_offset[i];
    }
    std::span<const NodeId> row_neighbors(NodeId i) const {
        return {neighbor.data() + row_offset[i], degree(i)};
    }
    std::span<const double> row_weights(NodeId i) const {
        return {weight.data() + row_offset[i], degree(i)};
    }
};

/// Summary statistics; lambda_max stays empty until a power iteration ran.
struct GraphStats {
    std::size_t n = 0;
    std::size_t edges = 0;
    double dbar = 0.0;
    std::size_t dmax = 0;
    std::optional<double> lambda_max;
    double lambda_rel_change = 0.0;  ///< last-step relative change
};

/// Splits A = D - L with L_ij = -A_ij (i != j) and L_ii = sum_{j != i} A_ij.
/// Row sums of L are zero by construction.
SplitMatrix split(const SparseSymmetric& a);

/// Rebuilds the source matrix from the splitting; exact inverse of split().
SparseSymmetric reassemble(const SplitMatrix& m);

/// Degree statistics plus a power-iteration estimate of the largest
/// eigenvalue of A (power_iters = 0 skips the estimate). The iteration runs
/// on A shifted by its Gershgorin lower bound; bipartite adjacency spectra
/// stall the unshifted iteration.
GraphStats stats(const SplitMatrix& m, std::size_t power_iters);

/// y = A x through the splitting (A = diag(a_ii) + off-diagonal weights).
void apply_matrix(const SplitMatrix& m, std::span<const double> x,
                  std::span<double> y);

}  // namespace expmc
