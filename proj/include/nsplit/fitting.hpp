#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace nsplit {

/// Least-squares slope of log(y) against log(x). Callers filter the points
/// (round-off floor, blow-up sentinels) before fitting.
inline double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_loglog_slope: size mismatch");
    if (x.size() < 2) throw std::invalid_argument("fit_loglog_slope: need at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("fit_loglog_slope: nonpositive data");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_loglog_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

}  // namespace nsplit
