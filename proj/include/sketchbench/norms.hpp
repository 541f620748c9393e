#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "sketchbench/errors.hpp"
#include "sketchbench/matrix.hpp"

namespace skb {

constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

// (sum |v_i|^r)^(1/r); pass kInfinityNorm for max |v_i|. Requires r >= 1.
inline double lp_norm(const RealVector& v, double r) {
    if (v.empty()) throw InvalidParameter("lp_norm: empty vector");
    if (std::isinf(r)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    if (r < 1.0) throw InvalidParameter("lp_norm: r must be >= 1");
    if (r == 1.0) {
        double acc = 0.0;
        for (double x : v) acc += std::abs(x);
        return acc;
    }
    if (r == 2.0) return norm2(v);
    double acc = 0.0;
    for (double x : v) acc += std::pow(std::abs(x), r);
    return std::pow(acc, 1.0 / r);
}

// Block norm interpolating between l2 (s = 1) and l1 (s = dim):
// sort |v| descending, cut into ceil(dim/s) consecutive blocks of size s
// (last block may be short), return sqrt of the sum of squared block l1 norms.
inline double interpolation_norm(const RealVector& v, std::size_t s) {
    if (v.empty()) throw InvalidParameter("interpolation_norm: empty vector");
    if (s < 1 || s > v.size())
        throw InvalidParameter("interpolation_norm: s must lie in [1, dim]");
    RealVector mags(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) mags[i] = std::abs(v[i]);
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    double acc = 0.0;
    for (std::size_t start = 0; start < mags.size(); start += s) {
        const std::size_t end = std::min(start + s, mags.size());
        double block = 0.0;
        for (std::size_t i = start; i < end; ++i) block += mags[i];
        acc += block * block;
    }
    return std::sqrt(acc);
}

} // namespace skb
