#include "expmc/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "expmc/rng.hpp"
#include "expmc/sampler.hpp"

namespace expmc {

namespace {

struct PathOutcome {
    double weight = 1.0;
    NodeId end = 0;
    std::uint64_t jumps = 0;
};

// One N-segment path. `before` / `after` are optional per-node factors
// applied to the current state ahead of each segment and to the landing
// state following it. Strang uses half-weights on both sides; Lie places
// the full weight on exactly one side depending on which operator order
// the estimate realizes.
PathOutcome run_path(RngStream& rng, const SplitMatrix& m, NodeId start,
                     double dt, std::size_t n_steps, const double* before,
                     const double* after) {
    PathOutcome out;
    out.end = start;
    for (std::size_t k = 0; k < n_steps; ++k) {
        if (before) out.weight *= before[out.end];
        const PathSegmentResult seg = advance(rng, m, out.end, dt);
        out.end = seg.end_state;
        out.jumps += seg.jumps;
        if (after) out.weight *= after[out.end];
    }
    return out;
}

std::vector<double> node_factors(const SplitMatrix& m, double scale) {
    std::vector<double> f(m.n);
    for (std::size_t i = 0; i < m.n; ++i) f[i] = std::exp(scale * m.d[i]);
    return f;
}

// Runs body(worker, lo, hi) over a fixed partition of [0, samples); the
// caller merges per-worker tallies in worker order, so results for a given
// (seed, workers) pair are fully deterministic.
template <typename Body>
void parallel_samples(std::size_t samples, unsigned workers, Body body) {
    if (workers <= 1 || samples < 2) {
        body(0u, std::size_t{0}, samples);
        return;
    }
    const auto w = std::min<std::size_t>(workers, samples);
    std::vector<std::thread> pool;
    pool.reserve(w);
    const std::size_t chunk = samples / w;
    const std::size_t rem = samples % w;
    std::size_t lo = 0;
    for (unsigned t = 0; t < w; ++t) {
        const std::size_t hi = lo + chunk + (t < rem ? 1 : 0);
        pool.emplace_back([&body, t, lo, hi] { body(t, lo, hi); });
        lo = hi;
    }
    for (auto& th : pool) th.join();
}

struct ScalarTally {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t jumps = 0;
};

Estimate finalize(double sum, double sum_sq, std::size_t m_samples,
                  std::uint64_t jumps) {
    Estimate e;
    e.samples_used = m_samples;
    e.total_jumps = jumps;
    const auto m = static_cast<double>(m_samples);
    e.value = sum / m;
    if (m_samples > 1) {
        const double var =
            std::max(0.0, (sum_sq - sum * sum / m) / (m - 1.0));
        e.std_error = std::sqrt(var / m);
    }
    return e;
}

// Draws a start index from the categorical distribution v / V.
class StartSampler {
public:
    StartSampler(std::span<const double> v, double v_sum)
        : v_sum_(v_sum), n_(v.size()) {
        uniform_ = true;
        for (const double x : v) {
            if (x != v[0]) {
                uniform_ = false;
                break;
            }
        }
        if (!uniform_) {
            cum_.reserve(n_);
            double acc = 0.0;
            for (const double x : v) {
                acc += x;
                cum_.push_back(acc);
            }
        }
    }

    NodeId operator()(RngStream& rng) const {
        if (uniform_) {
            return static_cast<NodeId>(rng.uniform_index(n_));
        }
        const double target = rng.uniform() * v_sum_;
        auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
        if (it == cum_.end()) --it;
        return static_cast<NodeId>(it - cum_.begin());
    }

private:
    double v_sum_;
    std::size_t n_;
    bool uniform_;
    std::vector<double> cum_;
};

void check_vector(const SplitMatrix& m, std::span<const double> v) {
    if (v.size() != m.n) {
        throw std::invalid_argument("vector length does not match matrix");
    }
    for (const double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("non-finite entry in v");
        }
    }
}

}  // namespace

PathParams PathParams::with_steps(double beta, std::size_t n_steps,
                                  std::size_t samples, Splitting s,
                                  std::uint64_t seed) {
    PathParams p{beta, n_steps, samples, s, seed};
    p.validate();
    return p;
}

PathParams PathParams::with_dt(double beta, double dt, std::size_t samples,
                               Splitting s, std::uint64_t seed) {
    if (!(beta > 0.0) || !(dt > 0.0)) {
        throw std::invalid_argument("beta and dt must be positive");
    }
    const auto n = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(beta / dt)));
    return with_steps(beta, n, samples, s, seed);
}

void PathParams::validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("beta must be positive and finite");
    }
    if (n_steps == 0) throw std::invalid_argument("n_steps must be >= 1");
    if (samples == 0) throw std::invalid_argument("samples must be >= 1");
}

Estimate entry_estimate(const SplitMatrix& m, std::span<const double> v,
                        NodeId i, const PathParams& p, unsigned workers) {
    p.validate();
    check_vector(m, v);
    if (i >= m.n) throw std::invalid_argument("entry index out of range");

    const double dt = p.dt();
    const bool strang = p.splitting == Splitting::Strang;
    const std::vector<double> factor =
        node_factors(m, strang ? dt / 2.0 : dt);
    const double* before = strang ? factor.data() : nullptr;
    const double* after = factor.data();

    const unsigned w = std::max(1u, workers);
    std::vector<ScalarTally> tally(w);
    parallel_samples(p.samples, w, [&](unsigned t, std::size_t lo,
                                       std::size_t hi) {
        ScalarTally local;
        for (std::size_t l = lo; l < hi; ++l) {
            RngStream rng(p.seed, l);
            const PathOutcome out =
                run_path(rng, m, i, dt, p.n_steps, before, after);
            const double f = out.weight * v[out.end];
            local.sum += f;
            local.sum_sq += f * f;
            local.jumps += out.jumps;
        }
        tally[t] = local;
    });

    ScalarTally total;
    for (const auto& t : tally) {
        total.sum += t.sum;
        total.sum_sq += t.sum_sq;
        total.jumps += t.jumps;
    }
    return finalize(total.sum, total.sum_sq, p.samples, total.jumps);
}

VectorEstimate vector_estimate(const SplitMatrix& m, std::span<const double> v,
                               const PathParams& p, unsigned workers) {
    p.validate();
    check_vector(m, v);
    double v_sum = 0.0;
    for (const double x : v) {
        if (x < 0.0) {
            throw std::invalid_argument(
                "vector_estimate requires v >= 0 entrywise");
        }
        v_sum += x;
    }
    if (!(v_sum > 0.0)) {
        throw std::invalid_argument("vector_estimate requires sum(v) > 0");
    }

    const double dt = p.dt();
    const bool strang = p.splitting == Splitting::Strang;
    const std::vector<double> factor =
        node_factors(m, strang ? dt / 2.0 : dt);
    // Lie weights go on the state each segment leaves from; that is the
    // sampling dual of (e^{-dt L} e^{dt D})^N v under a symmetric generator.
    const double* before = factor.data();
    const double* after = strang ? factor.data() : nullptr;

    const StartSampler draw_start(v, v_sum);
    const unsigned w = std::max(1u, workers);
    std::vector<ScalarTally> tally(w);
    std::vector<std::vector<double>> sums(w);
    parallel_samples(p.samples, w, [&](unsigned t, std::size_t lo,
                                       std::size_t hi) {
        ScalarTally local;
        std::vector<double> local_values(m.n, 0.0);
        for (std::size_t l = lo; l < hi; ++l) {
            RngStream rng(p.seed, l);
            const NodeId start = draw_start(rng);
            const PathOutcome out =
                run_path(rng, m, start, dt, p.n_steps, before, after);
            const double f = v_sum * out.weight;
            local.sum += f;
            local.sum_sq += f * f;
            local.jumps += out.jumps;
            local_values[out.end] += f;
        }
        tally[t] = local;
        sums[t] = std::move(local_values);
    });

    VectorEstimate est;
    est.values.assign(m.n, 0.0);
    ScalarTally total;
    for (unsigned t = 0; t < w; ++t) {
        total.sum += tally[t].sum;
        total.sum_sq += tally[t].sum_sq;
        total.jumps += tally[t].jumps;
        if (!sums[t].empty()) {
            for (std::size_t i = 0; i < m.n; ++i) {
                est.values[i] += sums[t][i];
            }
        }
    }
    const auto mm = static_cast<double>(p.samples);
    for (auto& x : est.values) x /= mm;
    const Estimate scalar =
        finalize(total.sum, total.sum_sq, p.samples, total.jumps);
    est.std_error_global = scalar.std_error;
    est.samples_used = p.samples;
    est.total_jumps = total.jumps;
    est.v_sum = v_sum;
    return est;
}

Estimate tc_estimate(const SplitMatrix& m, const PathParams& p,
                     unsigned workers) {
    p.validate();
    if (m.n == 0) throw std::invalid_argument("empty matrix");

    const double dt = p.dt();
    const bool strang = p.splitting == Splitting::Strang;
    const std::vector<double> factor =
        node_factors(m, strang ? dt / 2.0 : dt);
    const double* before = factor.data();
    const double* after = strang ? factor.data() : nullptr;
    const auto v_sum = static_cast<double>(m.n);

    const unsigned w = std::max(1u, workers);
    std::vector<ScalarTally> tally(w);
    parallel_samples(p.samples, w, [&](unsigned t, std::size_t lo,
                                       std::size_t hi) {
        ScalarTally local;
        for (std::size_t l = lo; l < hi; ++l) {
            RngStream rng(p.seed, l);
            const auto start = static_cast<NodeId>(rng.uniform_index(m.n));
            const PathOutcome out =
                run_path(rng, m, start, dt, p.n_steps, before, after);
            const double f = v_sum * out.weight;
            local.sum += f;
            local.sum_sq += f * f;
            local.jumps += out.jumps;
        }
        tally[t] = local;
    });

    ScalarTally total;
    for (const auto& t : tally) {
        total.sum += t.sum;
        total.sum_sq += t.sum_sq;
        total.jumps += t.jumps;
    }
    return finalize(total.sum, total.sum_sq, p.samples, total.jumps);
}

}  // namespace expmc
