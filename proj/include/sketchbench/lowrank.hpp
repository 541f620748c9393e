#pragma once

#include <cmath>
#include <cstdint>

#include "sketchbench/errors.hpp"
#include "sketchbench/matrix.hpp"
#include "sketchbench/random_matrix.hpp"
#include "sketchbench/svd.hpp"

namespace skb {

// Rank-p surrogate of X built from a random sketch: project X down with a
// standard-normal matrix, take the sketch's top right singular vectors as a
// basis for the row space, and express X in that basis.
struct LowRankResult {
    RealMatrix approx; // d x n, X restricted to the basis
    RealMatrix basis;  // n x p, top right singular vectors of the sketch
    RealMatrix sketch; // p x n
    std::size_t p = 0;
};

// (1/sqrt(p)) U^T X with U entries i.i.d. N(0,1).
inline RealMatrix sketch(const RealMatrix& x, std::size_t p, uint64_t seed) {
    if (p < 1) throw InvalidParameter("sketch: p must be >= 1");
    ProjectionMatrix u = sample_projection(x.rows(), p, DistributionSpec::gaussian_unit(), seed);
    RealMatrix y = matmul_at_b(u.mat, x);
    const double inv = 1.0 / std::sqrt(static_cast<double>(p));
    for (double& v : y.data()) v *= inv;
    return y;
}

inline LowRankResult lowrank_approximate(const RealMatrix& x, std::size_t p, uint64_t seed) {
    if (p < 1) throw InvalidParameter("lowrank_approximate: p must be >= 1");
    if (p > x.cols()) throw InvalidParameter("lowrank_approximate: p must not exceed n");
    LowRankResult out;
    out.p = p;
    out.sketch = sketch(x, p, seed);
    SvdResult s = svd(out.sketch); // p x n with p <= n, so right is n x p already
    out.basis = std::move(s.right);
    RealMatrix xb = matmul(x, out.basis);            // d x p
    out.approx = matmul(xb, transpose(out.basis));   // d x n
    return out;
}

// Eckart-Young optimum: top-p part of the full SVD. Ties between equal
// singular values break by column index (inherited from svd()).
inline RealMatrix best_rank_p(const RealMatrix& x, std::size_t p) {
    const std::size_t k = std::min(x.rows(), x.cols());
    if (p < 1 || p > k) throw InvalidParameter("best_rank_p: p must lie in [1, min(d,n)]");
    SvdResult s = svd(x);
    RealMatrix scaled(x.rows(), p);
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t i = 0; i < x.rows(); ++i) scaled(i, j) = s.left(i, j) * s.singular[j];
    RealMatrix right_p(x.cols(), p);
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t i = 0; i < x.cols(); ++i) right_p(i, j) = s.right(i, j);
    return matmul(scaled, transpose(right_p));
}

// Error certificate: the sketch-based approximation may lose at most
// 2 eps |X_p|_F^2 beyond the optimal rank-p residual.
struct LowRankErrorReport {
    double lhs = 0.0;      // |X - approx|_F^2
    double baseline = 0.0; // |X - X_p|_F^2
    double bound = 0.0;    // baseline + 2 eps |X_p|_F^2
    bool holds = false;
    double implied_epsilon = 0.0; // from p = 8 ln(n) / eps^2
};

inline LowRankErrorReport lowrank_error_report(const RealMatrix& x, const LowRankResult& result,
                                               double epsilon) {
    LowRankErrorReport rep;
    const RealMatrix xp = best_rank_p(x, std::min(result.p, std::min(x.rows(), x.cols())));
    rep.lhs = frobenius_norm_sq(subtract(x, result.approx));
    rep.baseline = frobenius_norm_sq(subtract(x, xp));
    rep.bound = rep.baseline + 2.0 * epsilon * frobenius_norm_sq(xp);
    rep.holds = rep.lhs <= rep.bound;
    rep.implied_epsilon =
        std::sqrt(8.0 * std::log(static_cast<double>(x.cols())) / static_cast<double>(result.p));
    return rep;
}

// Sum of squared sketch singular values against (1 - eps) |X_p|_F^2; the
// sketch spectrum should not collapse below the top-p energy of X.
inline bool sketch_spectrum_holds(const RealMatrix& x, const LowRankResult& result,
                                  double epsilon) {
    const RealMatrix xp = best_rank_p(x, std::min(result.p, std::min(x.rows(), x.cols())));
    return frobenius_norm_sq(result.sketch) >= (1.0 - epsilon) * frobenius_norm_sq(xp);
}

} // namespace skb
