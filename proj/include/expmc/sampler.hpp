#pragma once

#include <cstdint>

#include "expmc/rng.hpp"
#include "expmc/sparse_matrix.hpp"

namespace expmc {

struct PathSegmentResult {
    NodeId end_state = 0;
    std::uint64_t jumps = 0;
};

/// Sample from Exp(rate) by inverse transform, -ln(u)/rate with u in (0, 1].
/// rate = 0 returns +infinity: an isolated node never jumps.
double exp_time(RngStream& rng, double rate);

/// Jump from node i to a neighbor j with probability |L_ij| / rate_i.
/// Uniform rows take the O(1) degree-scaling route; weighted rows do a
/// binary search over the row's cumulative weights.
NodeId jump(RngStream& rng, const SplitMatrix& m, NodeId i);

/// Simulate the chain generated by Q = -L from `start` for duration dt:
/// accumulate exponential waiting times, jumping while the clock stays
/// below dt. Each segment starts a fresh clock; memorylessness makes this
/// exact.
PathSegmentResult advance(RngStream& rng, const SplitMatrix& m, NodeId start,
                          double dt);

}  // namespace expmc
