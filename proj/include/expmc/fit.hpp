#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace expmc {

/// Least-squares slope of log(y) against log(x). All inputs must be
/// positive; used for convergence-order fits.
inline double loglog_slope(std::span<const double> x,
                           std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("loglog_slope: need >= 2 paired points");
    }
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw std::invalid_argument("loglog_slope: inputs must be > 0");
        }
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        throw std::invalid_argument("loglog_slope: degenerate abscissae");
    }
    return (n * sxy - sx * sy) / denom;
}

}  // namespace expmc
