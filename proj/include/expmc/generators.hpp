#pragma once

#include <cstdint>

#include "expmc/sparse_matrix.hpp"

namespace expmc {

enum class GraphKind { SmallWorld, ScaleFree, ErdosRenyi };

/// Parameters for the synthetic network generators. SmallWorld builds a
/// ring lattice of radius k plus random shortcuts; shortcut drawing is
/// tuned so that the expected average degree is 2k + ps (one expected
/// shortcut edge per two nodes at ps = 1). ScaleFree grows by preferential
/// attachment with m0 edges per new node, giving average degree near 2 m0.
struct GenSpec {
    GraphKind kind = GraphKind::SmallWorld;
    std::size_t n = 0;
    std::size_t k = 1;    ///< SmallWorld ring radius, >= 1
    double ps = 0.0;      ///< SmallWorld shortcut rate, in [0, 1]
    std::size_t m0 = 2;   ///< ScaleFree edges per new node, >= 1
    double p = 0.0;       ///< ErdosRenyi edge probability, in [0, 1]
    std::uint64_t seed = 0;
};

/// Deterministic for a fixed spec (seed included). All outputs are
/// unweighted, without self-loops or duplicate edges.
SparseSymmetric generate(const GenSpec& spec);

}  // namespace expmc
