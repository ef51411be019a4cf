#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gwave/graph/graph.hpp"
#include "gwave/numerics/matrix.hpp"

namespace gwave {

struct LocalizationOptions {
    std::size_t window = 10;  ///< onset window length in grid steps
    double rho = 3.0;
    double band_factor = 5.0;
    double band_floor = 1e-10;
};

struct LocalizationResult {
    VertexSet vertices;  ///< flagged vertices, sorted
    std::string status;  ///< "ok", "ambiguous" or "no localizable source"
    std::size_t onset = 0;  ///< earliest band crossing (grid index)
    std::vector<double> band;  ///< per E vertex
    std::vector<double> peak;  ///< per E vertex, max |x^R| over the onset window
    std::vector<long> crossing;  ///< per E vertex, first crossing or -1
};

namespace detail {

inline double median(std::vector<double> v)
{
    if (v.empty())
        return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t const n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

/// Flags the vertices of E whose reconstructed residual crosses its noise band
/// and stands out by a factor rho against the rest over the onset window.
/// xr_e is N_E x samples with rows ordered as `unobserved`.
inline LocalizationResult localize(DenseMatrix const& xr_e, VertexSet const& unobserved, std::size_t i0,
                                   std::size_t ik, LocalizationOptions const& opt = {})
{
    detail::require(xr_e.rows() == unobserved.size(), "localize: row count does not match E");
    detail::require(ik < xr_e.cols() && ik > i0, "localize: bad range");
    detail::require(opt.rho > 0, "localize: rho must be positive");
    std::size_t const ne = unobserved.size();
    LocalizationResult out;
    out.band.assign(ne, 0.0);
    out.peak.assign(ne, 0.0);
    out.crossing.assign(ne, -1);

    for (std::size_t m = 0; m < ne; ++m) {
        double mean = 0.0;
        for (std::size_t i = 0; i <= i0; ++i)
            mean += xr_e(m, i);
        mean /= static_cast<double>(i0 + 1);
        double var = 0.0;
        for (std::size_t i = 0; i <= i0; ++i)
            var += (xr_e(m, i) - mean) * (xr_e(m, i) - mean);
        var /= static_cast<double>(i0 + 1);
        out.band[m] = std::max(opt.band_factor * std::sqrt(var), opt.band_floor);
        for (std::size_t i = i0 + 1; i <= ik; ++i)
            if (std::abs(xr_e(m, i)) > out.band[m]) {
                out.crossing[m] = static_cast<long>(i);
                break;
            }
    }

    long first = -1;
    for (long c : out.crossing)
        if (c >= 0 && (first < 0 || c < first))
            first = c;
    if (first < 0) {
        out.status = "no localizable source";
        return out;
    }
    out.onset = static_cast<std::size_t>(first);
    std::size_t const stop = std::min(out.onset + opt.window, ik);
    for (std::size_t m = 0; m < ne; ++m)
        for (std::size_t i = out.onset; i <= stop; ++i)
            out.peak[m] = std::max(out.peak[m], std::abs(xr_e(m, i)));

    std::vector<std::size_t> crossed;
    for (std::size_t m = 0; m < ne; ++m)
        if (out.crossing[m] >= 0)
            crossed.push_back(m);
    std::stable_sort(crossed.begin(), crossed.end(),
                     [&](std::size_t a, std::size_t b) { return out.peak[a] > out.peak[b]; });

    for (std::size_t k = 1; k <= crossed.size(); ++k) {
        std::vector<double> rest;
        for (std::size_t m = 0; m < ne; ++m)
            if (std::find(crossed.begin(), crossed.begin() + static_cast<long>(k), m) ==
                crossed.begin() + static_cast<long>(k))
                rest.push_back(out.peak[m]);
        std::size_t const kth = crossed[k - 1];
        double const bar = rest.empty() ? out.band[kth] : opt.rho * detail::median(rest);
        if (out.peak[kth] >= bar) {
            for (std::size_t j = 0; j < k; ++j)
                out.vertices.push_back(unobserved[crossed[j]]);
            std::sort(out.vertices.begin(), out.vertices.end());
            out.status = "ok";
            return out;
        }
    }
    for (std::size_t m : crossed)
        out.vertices.push_back(unobserved[m]);
    std::sort(out.vertices.begin(), out.vertices.end());
    out.status = "ambiguous";
    return out;
}

}  // namespace gwave
