#include "expmc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace expmc {

RankedVector rank(std::span<const double> values) {
    for (const double v : values) {
        if (std::isnan(v)) {
            throw std::invalid_argument("rank: NaN score");
        }
    }
    RankedVector r;
    r.scores.assign(values.begin(), values.end());
    r.order.resize(values.size());
    std::iota(r.order.begin(), r.order.end(), NodeId{0});
    std::sort(r.order.begin(), r.order.end(), [&](NodeId a, NodeId b) {
        if (r.scores[a] != r.scores[b]) return r.scores[a] > r.scores[b];
        return a < b;
    });
    return r;
}

double isim(const RankedVector& x, const RankedVector& y,
            double top_fraction) {
    if (x.order.size() != y.order.size()) {
        throw std::invalid_argument("isim: length mismatch");
    }
    if (!(top_fraction > 0.0) || top_fraction > 1.0) {
        throw std::invalid_argument("isim: top_fraction must be in (0, 1]");
    }
    const std::size_t n = x.order.size();
    if (n == 0) throw std::invalid_argument("isim: empty ranking");
    const auto k = static_cast<std::size_t>(
        std::ceil(top_fraction * static_cast<double>(n)));

    // marks bit 0: in x's prefix; bit 1: in y's prefix. |delta_i| = 2(i - c)
    // where c counts nodes in both prefixes.
    std::vector<std::uint8_t> marks(n, 0);
    std::size_t common = 0;
    double sum = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
        const NodeId a = x.order[i - 1];
        const NodeId b = y.order[i - 1];
        if (marks[a] & 2u) ++common;
        marks[a] |= 1u;
        if (marks[b] & 1u) ++common;
        marks[b] |= 2u;
        sum += static_cast<double>(i - common) / static_cast<double>(i);
    }
    return sum / static_cast<double>(k);
}

double normalized_tc(double tc, std::size_t n) {
    if (n < 1) throw std::invalid_argument("normalized_tc: n must be >= 1");
    return tc / static_cast<double>(n);
}

BetaRule BetaRule::fixed(double beta) {
    if (!(beta > 0.0)) {
        throw std::invalid_argument("BetaRule: fixed beta must be positive");
    }
    return {Kind::Fixed, beta};
}

double resolve_beta(const BetaRule& rule, const GraphStats& stats) {
    switch (rule.kind) {
        case BetaRule::Kind::Fixed:
            return rule.fixed_beta;
        case BetaRule::Kind::InverseLambdaMax:
            if (!stats.lambda_max.has_value()) {
                throw std::invalid_argument(
                    "resolve_beta: lambda_max has not been estimated");
            }
            if (!(*stats.lambda_max > 0.0)) {
                throw std::invalid_argument(
                    "resolve_beta: lambda_max must be positive");
            }
            return 1.0 / *stats.lambda_max;
        case BetaRule::Kind::InverseDmax:
            if (stats.dmax == 0) {
                throw std::invalid_argument(
                    "resolve_beta: graph has no edges, d_max = 0");
            }
            return 1.0 / static_cast<double>(stats.dmax);
    }
    throw std::invalid_argument("resolve_beta: unknown rule");
}

}  // namespace expmc
