#include "expmc/generators.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "expmc/rng.hpp"

namespace expmc {

namespace {

std::uint64_t edge_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

SparseSymmetric small_world(const GenSpec& spec) {
    if (spec.k < 1 || spec.n < 2 * spec.k + 1) {
        throw std::invalid_argument(
            "small-world: need ring radius k >= 1 and n >= 2k + 1");
    }
    if (spec.ps < 0.0 || spec.ps > 1.0) {
        throw std::invalid_argument("small-world: ps must be in [0, 1]");
    }
    RngStream rng(spec.seed, 0);
    std::vector<Entry> entries;
    entries.reserve(spec.n * spec.k + static_cast<std::size_t>(
                                          spec.ps * spec.n / 2.0 + 16));
    std::unordered_set<std::uint64_t> shortcut;

    const auto n = static_cast<NodeId>(spec.n);
    for (NodeId i = 0; i < n; ++i) {
        for (std::size_t r = 1; r <= spec.k; ++r) {
            const auto j = static_cast<NodeId>((i + r) % spec.n);
            entries.push_back({i, j, 1.0});
        }
    }
    // Half the per-node rate because each accepted shortcut raises two
    // degrees: expected average degree ends up at 2k + ps.
    const double p_node = spec.ps / 2.0;
    for (NodeId i = 0; i < n; ++i) {
        if (rng.uniform() >= p_node) continue;
        const auto j = static_cast<NodeId>(rng.uniform_index(spec.n));
        if (j == i) continue;
        const NodeId lo = std::min(i, j);
        const NodeId hi = std::max(i, j);
        const std::size_t fwd = hi - lo;
        const std::size_t ring_dist = std::min(fwd, spec.n - fwd);
        if (ring_dist <= spec.k) continue;  // already a lattice edge
        if (!shortcut.insert(edge_key(i, j)).second) continue;
        entries.push_back({lo, hi, 1.0});
    }
    return SparseSymmetric::from_entries(spec.n, std::move(entries));
}

SparseSymmetric scale_free(const GenSpec& spec) {
    if (spec.m0 < 1 || spec.n < spec.m0 + 1) {
        throw std::invalid_argument(
            "scale-free: need m0 >= 1 and n >= m0 + 1");
    }
    RngStream rng(spec.seed, 0);
    std::vector<Entry> entries;
    entries.reserve(spec.m0 * spec.n);
    // Attachment by sampling from the repeated-endpoints list: each node
    // appears once per unit of degree.
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * spec.m0 * spec.n);

    const std::size_t seed_nodes = spec.m0 + 1;
    for (NodeId i = 0; i < seed_nodes; ++i) {
        for (NodeId j = i + 1; j < seed_nodes; ++j) {
            entries.push_back({i, j, 1.0});
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    }

    std::vector<NodeId> picked;
    picked.reserve(spec.m0);
    for (std::size_t v = seed_nodes; v < spec.n; ++v) {
        picked.clear();
        while (picked.size() < spec.m0) {
            const NodeId t = endpoints[rng.uniform_index(endpoints.size())];
            bool fresh = true;
            for (const NodeId q : picked) {
                if (q == t) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) picked.push_back(t);
        }
        const auto node = static_cast<NodeId>(v);
        for (const NodeId t : picked) {
            entries.push_back({t, node, 1.0});
            endpoints.push_back(t);
            endpoints.push_back(node);
        }
    }
    return SparseSymmetric::from_entries(spec.n, std::move(entries));
}

SparseSymmetric erdos_renyi(const GenSpec& spec) {
    if (spec.p < 0.0 || spec.p > 1.0) {
        throw std::invalid_argument("erdos-renyi: p must be in [0, 1]");
    }
    if (spec.n == 0) {
        throw std::invalid_argument("erdos-renyi: n must be >= 1");
    }
    std::vector<Entry> entries;
    if (spec.p == 0.0) {
        return SparseSymmetric::from_entries(spec.n, std::move(entries));
    }
    RngStream rng(spec.seed, 0);
    const std::size_t total = spec.n * (spec.n - 1) / 2;
    if (spec.p == 1.0) {
        for (NodeId i = 0; i < spec.n; ++i) {
            for (NodeId j = i + 1; j < spec.n; ++j) {
                entries.push_back({i, j, 1.0});
            }
        }
        return SparseSymmetric::from_entries(spec.n, std::move(entries));
    }
    // Geometric skipping over the linearized upper triangle.
    const double log_q = std::log1p(-spec.p);
    std::size_t pos = 0;
    for (;;) {
        const double u = rng.uniform_pos();
        const double skip = std::floor(std::log(u) / log_q);
        if (skip >= static_cast<double>(total - pos)) break;
        pos += static_cast<std::size_t>(skip);
        // Unrank pos -> (i, j), j > i.
        std::size_t i = 0;
        std::size_t rem = pos;
        std::size_t row_len = spec.n - 1;
        while (rem >= row_len) {
            rem -= row_len;
            --row_len;
            ++i;
        }
        const std::size_t j = i + 1 + rem;
        entries.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j),
                           1.0});
        ++pos;
        if (pos >= total) break;
    }
    return SparseSymmetric::from_entries(spec.n, std::move(entries));
}

}  // namespace

SparseSymmetric generate(const GenSpec& spec) {
    switch (spec.kind) {
        case GraphKind::SmallWorld:
            return small_world(spec);
        case GraphKind::ScaleFree:
            return scale_free(spec);
        case GraphKind::ErdosRenyi:
            return erdos_renyi(spec);
    }
    throw std::invalid_argument("unknown graph kind");
}

}  // namespace expmc
