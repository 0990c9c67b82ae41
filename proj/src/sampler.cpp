#include "expmc/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace expmc {

double exp_time(RngStream& rng, double rate) {
    if (rate < 0.0 || !std::isfinite(rate)) {
        throw std::invalid_argument("exp_time: rate must be finite and >= 0");
    }
    if (rate == 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(rng.uniform_pos()) / rate;
}

NodeId jump(RngStream& rng, const SplitMatrix& m, NodeId i) {
    const std::size_t lo = m.row_offset[i];
    const std::size_t deg = m.row_offset[i + 1] - lo;
    if (deg == 0) {
        throw std::invalid_argument("jump: node " + std::to_string(i) +
                                    " is isolated");
    }
    if (m.uniform_row[i]) {
        return m.neighbor[lo + rng.uniform_index(deg)];
    }
    const double target = rng.uniform() * m.rate[i];
    const double* first = m.cum.data() + lo;
    const double* last = first + deg;
    const double* it = std::upper_bound(first, last, target);
    if (it == last) --it;  // u*rate can round up onto the row total
    return m.neighbor[lo + static_cast<std::size_t>(it - first)];
}

PathSegmentResult advance(RngStream& rng, const SplitMatrix& m, NodeId start,
                          double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("advance: dt must be positive");
    }
    PathSegmentResult r{start, 0};
    double tau = exp_time(rng, m.rate[r.end_state]);
    while (tau < dt) {
        r.end_state = jump(rng, m, r.end_state);
        ++r.jumps;
        tau += exp_time(rng, m.rate[r.end_state]);
    }
    return r;
}

}  // namespace expmc
