#include "expmc/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace expmc {

namespace {

std::string entry_str(const Entry& e) {
    return "(" + std::to_string(e.row) + ", " + std::to_string(e.col) + ")";
}

}  // namespace

SparseSymmetric SparseSymmetric::from_entries(std::size_t n,
                                              std::vector<Entry> entries) {
    for (auto& e : entries) {
        if (e.row >= n || e.col >= n) {
            throw std::invalid_argument("entry " + entry_str(e) +
                                        " out of range for n = " +
                                        std::to_string(n));
        }
        if (!std::isfinite(e.weight)) {
            throw std::invalid_argument("non-finite weight at " +
                                        entry_str(e));
        }
        if (e.weight == 0.0) {
            throw std::invalid_argument("explicit zero entry at " +
                                        entry_str(e));
        }
        if (e.row != e.col && e.weight < 0.0) {
            throw std::invalid_argument(
                "negative off-diagonal weight at " + entry_str(e) +
                ": no CTMC interpretation");
        }
        if (e.row > e.col) std::swap(e.row, e.col);
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) {
                  return a.row != b.row ? a.row < b.row : a.col < b.col;
              });
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].row == entries[i - 1].row &&
            entries[i].col == entries[i - 1].col) {
            throw std::invalid_argument("duplicate entry at " +
                                        entry_str(entries[i]));
        }
    }

    SparseSymmetric a;
    a.n_ = n;
    a.entries_ = std::move(entries);
    a.diag_.assign(n, 0.0);

    std::vector<std::size_t> deg(n, 0);
    for (const auto& e : a.entries_) {
        if (e.row == e.col) {
            a.diag_[e.row] = e.weight;
        } else {
            ++deg[e.row];
            ++deg[e.col];
            ++a.edges_;
        }
    }
    a.row_offset_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        a.row_offset_[i + 1] = a.row_offset_[i] + deg[i];
    }
    a.adj_.resize(2 * a.edges_);
    a.adj_weight_.resize(2 * a.edges_);
    std::vector<std::size_t> fill(a.row_offset_.begin(),
                                  a.row_offset_.end() - 1);
    for (const auto& e : a.entries_) {
        if (e.row == e.col) continue;
        a.adj_[fill[e.row]] = e.col;
        a.adj_weight_[fill[e.row]++] = e.weight;
        a.adj_[fill[e.col]] = e.row;
        a.adj_weight_[fill[e.col]++] = e.weight;
    }
    // entries_ are sorted, so each adjacency row comes out sorted by target.
    return a;
}

bool SparseSymmetric::operator==(const SparseSymmetric& other) const {
    if (n_ != other.n_ || entries_.size() != other.entries_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& a = entries_[i];
        const auto& b = other.entries_[i];
        if (a.row != b.row || a.col != b.col || a.weight != b.weight) {
            return false;
        }
    }
    return true;
}

SplitMatrix split(const SparseSymmetric& a) {
    SplitMatrix m;
    m.n = a.size();
    m.diag.resize(m.n);
    m.d.resize(m.n);
    m.rate.resize(m.n);
    m.row_offset.assign(m.n + 1, 0);

    std::size_t half_edges = 0;
    for (std::size_t i = 0; i < m.n; ++i) {
        half_edges += a.degree(static_cast<NodeId>(i));
    }
    m.neighbor.resize(half_edges);
    m.weight.resize(half_edges);
    m.cum.resize(half_edges);
    m.uniform_row.assign(m.n, 1);

    std::size_t pos = 0;
    for (std::size_t i = 0; i < m.n; ++i) {
        const auto node = static_cast<NodeId>(i);
        m.row_offset[i] = pos;
        const auto nbrs = a.neighbors(node);
        const auto ws = a.neighbor_weights(node);
        double sum = 0.0;
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            m.neighbor[pos] = nbrs[k];
            m.weight[pos] = ws[k];
            sum += ws[k];
            m.cum[pos] = sum;
            if (ws[k] != ws[0]) m.uniform_row[i] = 0;
            ++pos;
        }
        m.rate[i] = sum;
        m.diag[i] = a.diagonal(node);
        m.d[i] = m.diag[i] + m.rate[i];
        m.dmax = std::max(m.dmax, nbrs.size());
    }
    m.row_offset[m.n] = pos;
    m.dbar = m.n > 0 ? static_cast<double>(pos) / static_cast<double>(m.n)
                     : 0.0;
    return m;
}

SparseSymmetric reassemble(const SplitMatrix& m) {
    std::vector<Entry> entries;
    entries.reserve(m.neighbor.size() / 2 + m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
        const auto node = static_cast<NodeId>(i);
        if (m.diag[i] != 0.0) {
            entries.push_back({node, node, m.diag[i]});
        }
        const auto nbrs = m.row_neighbors(node);
        const auto ws = m.row_weights(node);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            if (nbrs[k] > node) {
                entries.push_back({node, nbrs[k], ws[k]});
            }
        }
    }
    return SparseSymmetric::from_entries(m.n, std::move(entries));
}

void apply_matrix(const SplitMatrix& m, std::span<const double> x,
                  std::span<double> y) {
    for (std::size_t i = 0; i < m.n; ++i) {
        double acc = m.diag[i] * x[i];
        const std::size_t lo = m.row_offset[i];
        const std::size_t hi = m.row_offset[i + 1];
        for (std::size_t k = lo; k < hi; ++k) {
            acc += m.weight[k] * x[m.neighbor[k]];
        }
        y[i] = acc;
    }
}

GraphStats stats(const SplitMatrix& m, std::size_t power_iters) {
    GraphStats s;
    s.n = m.n;
    s.edges = m.neighbor.size() / 2;
    s.dbar = m.dbar;
    s.dmax = m.dmax;
    if (power_iters == 0 || m.n == 0) return s;

    // Shift by the Gershgorin lower bound so the algebraically largest
    // eigenvalue is also the dominant one.
    double shift = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) {
        shift = std::max(shift, m.rate[i] - m.diag[i]);
    }

    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(m.n));
    std::vector<double> x(m.n, inv_sqrt_n);
    std::vector<double> y(m.n);
    double lambda = 0.0;
    double prev = 0.0;
    for (std::size_t it = 0; it < power_iters; ++it) {
        apply_matrix(m, x, y);
        double rayleigh = 0.0;
        double norm2 = 0.0;
        for (std::size_t i = 0; i < m.n; ++i) {
            y[i] += shift * x[i];
            rayleigh += x[i] * y[i];
            norm2 += y[i] * y[i];
        }
        prev = lambda;
        lambda = rayleigh - shift;
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) break;  // x in the kernel of the shifted matrix
        for (std::size_t i = 0; i < m.n; ++i) x[i] = y[i] / norm;
        if (it > 0) {
            const double denom = std::max(std::abs(lambda), 1e-300);
            s.lambda_rel_change = std::abs(lambda - prev) / denom;
        }
    }
    s.lambda_max = lambda;
    return s;
}

}  // namespace expmc
