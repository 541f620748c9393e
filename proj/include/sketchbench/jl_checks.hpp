#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "sketchbench/errors.hpp"
#include "sketchbench/matrix.hpp"
#include "sketchbench/norms.hpp"
#include "sketchbench/parallel.hpp"
#include "sketchbench/projection.hpp"
#include "sketchbench/random_matrix.hpp"
#include "sketchbench/rng.hpp"

namespace skb {

// ---------------------------------------------------------------------------
// Monte Carlo verifiers for the linear-projection guarantees. Every check
// derives trial t's randomness from split_seed(seed, t) and writes into a
// per-trial slot, so results are independent of the worker count.
// ---------------------------------------------------------------------------

struct ExpectationCheck {
    double mean_ratio = 0.0;
    std::size_t trials = 0;
};

// Mean over trials of |U^T x|^2 / |x|^2 with U entries N(0, 1/p); the ratio
// has expectation exactly 1 for any fixed nonzero x.
inline ExpectationCheck expectation_preservation_check(const RealVector& x, std::size_t p,
                                                       std::size_t trials, uint64_t seed) {
    if (trials < 100) throw InvalidParameter("expectation_preservation_check: trials must be >= 100");
    if (p < 1) throw InvalidParameter("expectation_preservation_check: p must be >= 1");
    const double xsq = norm2_sq(x);
    if (xsq == 0.0) throw InvalidParameter("expectation_preservation_check: zero vector");
    const std::size_t d = x.size();
    std::vector<double> ratios(trials);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng(seed, t);
        const double inv_root_p = 1.0 / std::sqrt(static_cast<double>(p));
        double acc = 0.0;
        for (std::size_t col = 0; col < p; ++col) {
            double y = 0.0;
            for (std::size_t i = 0; i < d; ++i) y += rng.gaussian() * inv_root_p * x[i];
            acc += y * y;
        }
        ratios[t] = acc / xsq;
    });
    double sum = 0.0;
    for (double r : ratios) sum += r;
    return ExpectationCheck{sum / static_cast<double>(trials), trials};
}

struct TailCheck {
    double empirical_prob = 0.0;
    double bound = 0.0;
    double standard_error = 0.0;
    std::size_t trials = 0;
};

// Tail of L = |Q^T x|^2 where Q is an orthonormalized Gaussian d x p basis and
// x a random unit vector, so E[L] = p/d. For beta < 1 measures P(L <= beta p/d),
// for beta > 1 measures P(L >= beta p/d); either way the closed-form bound is
// exp((p/2)(1 - beta + ln beta)).
inline TailCheck chi_square_tail_check(std::size_t p, std::size_t d, double beta,
                                       std::size_t trials, uint64_t seed) {
    if (p >= d) throw InvalidParameter("chi_square_tail_check: requires p < d");
    if (beta <= 0.0) throw InvalidParameter("chi_square_tail_check: beta must be positive");
    if (beta == 1.0)
        throw InvalidParameter("chi_square_tail_check: beta = 1 makes the bound trivially 1");
    if (trials < 1) throw InvalidParameter("chi_square_tail_check: trials must be >= 1");

    const double threshold = beta * static_cast<double>(p) / static_cast<double>(d);
    std::vector<unsigned char> hits(trials, 0);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng(seed, t);
        // Gaussian basis, then modified Gram-Schmidt.
        std::vector<double> q(d * p);
        for (double& v : q) v = rng.gaussian();
        for (std::size_t j = 0; j < p; ++j) {
            double* qj = q.data() + j * d;
            for (std::size_t i = 0; i < j; ++i) {
                const double* qi = q.data() + i * d;
                double proj = 0.0;
                for (std::size_t r = 0; r < d; ++r) proj += qi[r] * qj[r];
                for (std::size_t r = 0; r < d; ++r) qj[r] -= proj * qi[r];
            }
            double len = 0.0;
            for (std::size_t r = 0; r < d; ++r) len += qj[r] * qj[r];
            len = std::sqrt(len);
            for (std::size_t r = 0; r < d; ++r) qj[r] /= len;
        }
        std::vector<double> x(d);
        for (double& v : x) v = rng.gaussian();
        double xlen = 0.0;
        for (double v : x) xlen += v * v;
        xlen = std::sqrt(xlen);
        double lsq = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            const double* qj = q.data() + j * d;
            double acc = 0.0;
            for (std::size_t r = 0; r < d; ++r) acc += qj[r] * x[r];
            acc /= xlen;
            lsq += acc * acc;
        }
        const bool hit = (beta < 1.0) ? (lsq <= threshold) : (lsq >= threshold);
        hits[t] = hit ? 1 : 0;
    });
    std::size_t count = 0;
    for (unsigned char h : hits) count += h;
    TailCheck out;
    out.trials = trials;
    out.empirical_prob = static_cast<double>(count) / static_cast<double>(trials);
    out.bound = std::exp(static_cast<double>(p) / 2.0 * (1.0 - beta + std::log(beta)));
    out.standard_error =
        std::sqrt(std::max(out.empirical_prob * (1.0 - out.empirical_prob), 1e-12) /
                  static_cast<double>(trials));
    return out;
}

struct RipCheck {
    double violating_fraction = 0.0;
    std::size_t trials = 0;
};

// Samples k-sparse unit vectors (uniform support, Gaussian magnitudes) and
// reports the fraction violating (1 +- eps) |x|^2 under x -> U^T x.
inline RipCheck rip_check(const ProjectionMatrix& u, std::size_t k, double epsilon,
                          std::size_t trials, uint64_t seed) {
    const std::size_t d = u.d();
    const std::size_t p = u.p();
    if (k < 1 || k > d) throw InvalidParameter("rip_check: k must lie in [1, d]");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidParameter("rip_check: epsilon must lie in (0,1)");
    if (trials < 1) throw InvalidParameter("rip_check: trials must be >= 1");

    std::vector<unsigned char> bad(trials, 0);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng(seed, t);
        // Uniform support by partial Fisher-Yates.
        std::vector<std::size_t> idx(d);
        for (std::size_t i = 0; i < d; ++i) idx[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(d - i));
            std::swap(idx[i], idx[j]);
        }
        std::vector<double> vals(k);
        double len = 0.0;
        do {
            len = 0.0;
            for (double& v : vals) {
                v = rng.gaussian();
                len += v * v;
            }
        } while (len == 0.0);
        len = std::sqrt(len);
        double ysq = 0.0;
        for (std::size_t col = 0; col < p; ++col) {
            const double* ucol = u.mat.col(col);
            double acc = 0.0;
            for (std::size_t i = 0; i < k; ++i) acc += ucol[idx[i]] * vals[i] / len;
            ysq += acc * acc;
        }
        bad[t] = (ysq < 1.0 - epsilon || ysq > 1.0 + epsilon) ? 1 : 0;
    });
    std::size_t count = 0;
    for (unsigned char b : bad) count += b;
    return RipCheck{static_cast<double>(count) / static_cast<double>(trials), trials};
}

struct InterpolationEmbeddingCheck {
    std::size_t lo_violations = 0; // |U^T x|_1 below (0.63 - eps) * block norm
    std::size_t hi_violations = 0; // |U^T x|_1 above (1.63 + eps) * block norm
    std::size_t trials = 0;
    double lo_bound = 0.0;
    double hi_bound = 0.0;
    double mean_l1 = 0.0;
};

// Empirical check of the l1-embedding sandwich against the interpolation
// norm. The constants 0.63 / 1.63 are treated as empirical targets for U with
// Gaussian entries scaled 1/p; counts are reported, not asserted.
inline InterpolationEmbeddingCheck interpolation_embedding_check(const RealVector& v,
                                                                 std::size_t s, double epsilon,
                                                                 std::size_t p,
                                                                 std::size_t trials,
                                                                 uint64_t seed) {
    if (v.empty()) throw InvalidParameter("interpolation_embedding_check: empty vector");
    if (s < 1 || s > v.size())
        throw InvalidParameter("interpolation_embedding_check: s must lie in [1, dim]");
    if (trials < 1) throw InvalidParameter("interpolation_embedding_check: trials must be >= 1");
    const double block_norm = interpolation_norm(v, s);
    const std::size_t d = v.size();
    InterpolationEmbeddingCheck out;
    out.trials = trials;
    out.lo_bound = (0.63 - epsilon) * block_norm;
    out.hi_bound = (1.63 + epsilon) * block_norm;
    std::vector<double> l1(trials);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng(seed, t);
        const double scale = 1.0 / static_cast<double>(p);
        double acc = 0.0;
        for (std::size_t col = 0; col < p; ++col) {
            double y = 0.0;
            for (std::size_t i = 0; i < d; ++i) y += rng.gaussian() * scale * v[i];
            acc += std::abs(y);
        }
        l1[t] = acc;
    });
    double sum = 0.0;
    for (double value : l1) {
        sum += value;
        if (value < out.lo_bound) ++out.lo_violations;
        if (value > out.hi_bound) ++out.hi_violations;
    }
    out.mean_l1 = sum / static_cast<double>(trials);
    return out;
}

struct NormGapPoint {
    std::size_t d = 0;
    double mean_gap = 0.0; // mean of max - min distance from origin
};

// For each dimension d, samples n i.i.d. uniform [0,1]^d points and averages
// the spread (max - min) of their l_r distances from the origin. The trend in
// d separates norms: growing for r < 2, flat for r = 2, shrinking for r > 2.
inline std::vector<NormGapPoint> norm_concentration_experiment(std::size_t n,
                                                               const std::vector<std::size_t>& d_list,
                                                               double r, std::size_t repeats,
                                                               uint64_t seed) {
    if (n < 2) throw InvalidParameter("norm_concentration_experiment: n must be >= 2");
    if (repeats < 1) throw InvalidParameter("norm_concentration_experiment: repeats must be >= 1");
    std::vector<NormGapPoint> series;
    series.reserve(d_list.size());
    for (std::size_t di = 0; di < d_list.size(); ++di) {
        const std::size_t d = d_list[di];
        std::vector<double> gaps(repeats);
        parallel_for(repeats, [&](std::size_t rep) {
            Rng rng(seed, di * 1000003ULL + rep);
            double lo = kInfinityNorm, hi = -kInfinityNorm;
            RealVector point(d);
            for (std::size_t i = 0; i < n; ++i) {
                for (double& c : point) c = rng.uniform();
                const double dist = lp_norm(point, r);
                lo = std::min(lo, dist);
                hi = std::max(hi, dist);
            }
            gaps[rep] = hi - lo;
        });
        double sum = 0.0;
        for (double g : gaps) sum += g;
        series.push_back(NormGapPoint{d, sum / static_cast<double>(repeats)});
    }
    return series;
}

} // namespace skb
