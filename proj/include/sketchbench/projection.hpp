#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "sketchbench/errors.hpp"
#include "sketchbench/matrix.hpp"
#include "sketchbench/random_matrix.hpp"
#include "sketchbench/solve.hpp"

namespace skb {

// Embedding-dimension and failure-probability bookkeeping for a point set of
// size n at distortion tolerance epsilon.
struct JlParams {
    std::size_t n = 0;
    double epsilon = 0.0;
    std::size_t p_min = 0; // smallest p meeting the dimension bound
    double delta = 0.0;    // per-pair failure bound at a given p
};

// Smallest integer p with p >= 4 * ln(n) / (eps^2/2 - eps^3/3).
inline std::size_t jl_min_dimension(std::size_t n, double epsilon) {
    if (n < 2) throw InvalidParameter("jl_min_dimension: n must be >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidParameter("jl_min_dimension: epsilon must lie in (0,1)");
    const double denom = epsilon * epsilon / 2.0 - epsilon * epsilon * epsilon / 3.0;
    const double value = 4.0 * std::log(static_cast<double>(n)) / denom;
    return static_cast<std::size_t>(std::ceil(value));
}

// Per-pair failure probability min(1, 2 exp(-(eps^2 - eps^3) p / 4)).
inline double jl_failure_bound(std::size_t p, double epsilon) {
    if (p < 1) throw InvalidParameter("jl_failure_bound: p must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidParameter("jl_failure_bound: epsilon must lie in (0,1)");
    const double exponent =
        -(epsilon * epsilon - epsilon * epsilon * epsilon) * static_cast<double>(p) / 4.0;
    return std::min(1.0, 2.0 * std::exp(exponent));
}

inline JlParams make_jl_params(std::size_t n, double epsilon,
                               std::optional<std::size_t> p = std::nullopt) {
    JlParams out;
    out.n = n;
    out.epsilon = epsilon;
    out.p_min = jl_min_dimension(n, epsilon);
    out.delta = jl_failure_bound(p.value_or(out.p_min), epsilon);
    return out;
}

// Columns of the output are U^T x (optionally with per-coordinate sign flips
// applied to x first, optionally scaled by 1/sqrt(p)).
inline RealMatrix project(const RealMatrix& x, const ProjectionMatrix& u, bool normalized = false,
                          const SignVector* sign_flip = nullptr) {
    if (u.mat.rows() != x.rows()) throw ShapeError("project: U rows must match data dimension");
    if (sign_flip && sign_flip->signs.size() != x.rows())
        throw ShapeError("project: sign vector length must match data dimension");
    const RealMatrix* input = &x;
    RealMatrix flipped;
    if (sign_flip) {
        flipped = x;
        for (std::size_t j = 0; j < flipped.cols(); ++j) {
            double* cj = flipped.col(j);
            for (std::size_t i = 0; i < flipped.rows(); ++i) cj[i] *= sign_flip->signs[i];
        }
        input = &flipped;
    }
    RealMatrix out = matmul_at_b(u.mat, *input);
    if (normalized) {
        const double inv = 1.0 / std::sqrt(static_cast<double>(u.p()));
        for (double& v : out.data()) v *= inv;
    }
    return out;
}

inline RealVector project(const RealVector& x, const ProjectionMatrix& u,
                          bool normalized = false) {
    RealVector out = matT_vec(u.mat, x);
    if (normalized) {
        const double inv = 1.0 / std::sqrt(static_cast<double>(u.p()));
        for (double& v : out) v *= inv;
    }
    return out;
}

// U (U^T U)^{-1} U^T; symmetric and idempotent, equals U U^T for orthonormal U.
inline RealMatrix hat_matrix(const RealMatrix& u) {
    RealMatrix gram = matmul_at_b(u, u);
    RealMatrix l;
    try {
        l = cholesky(gram);
    } catch (const SingularMatrixError&) {
        throw SingularMatrixError("hat_matrix: U is rank deficient");
    }
    // Solve G Z = U^T column by column, then form U Z.
    RealMatrix z(u.cols(), u.rows());
    for (std::size_t j = 0; j < u.rows(); ++j) {
        RealVector rhs(u.cols());
        for (std::size_t i = 0; i < u.cols(); ++i) rhs[i] = u(j, i);
        RealVector sol = cholesky_solve(l, rhs);
        for (std::size_t i = 0; i < u.cols(); ++i) z(i, j) = sol[i];
    }
    return matmul(u, z);
}

// U * Xproj; the reconstruction map for orthonormal U.
inline RealMatrix reconstruct(const RealMatrix& xproj, const RealMatrix& u) {
    if (u.cols() != xproj.rows()) throw ShapeError("reconstruct: shape mismatch");
    return matmul(u, xproj);
}

// Pairwise squared-distance distortion statistics of a projected dataset
// against the (1 +- epsilon) sandwich. Zero-distance pairs carry no ratio
// information and are counted separately.
struct DistortionReport {
    double epsilon = 0.0;
    std::size_t pairs_total = 0;
    std::size_t pairs_below = 0; // projected^2 < (1-eps) * original^2
    std::size_t pairs_above = 0; // projected^2 > (1+eps) * original^2
    std::size_t pairs_zero = 0;  // skipped: original distance zero
    double max_distortion = 0.0;
    double mean_distortion = 0.0;
    double theoretical_pair_delta = 0.0;

    std::size_t violations() const noexcept { return pairs_below + pairs_above; }
    double violating_fraction() const noexcept {
        const std::size_t counted = pairs_total - pairs_zero;
        return counted ? static_cast<double>(violations()) / static_cast<double>(counted) : 0.0;
    }
};

inline DistortionReport distortion_report(const RealMatrix& x, const RealMatrix& xproj,
                                          double epsilon) {
    if (x.cols() != xproj.cols()) throw ShapeError("distortion_report: sample counts disagree");
    if (x.cols() < 2) throw InvalidParameter("distortion_report: need at least two samples");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidParameter("distortion_report: epsilon must lie in (0,1)");
    DistortionReport rep;
    rep.epsilon = epsilon;
    rep.theoretical_pair_delta = jl_failure_bound(xproj.rows(), epsilon);
    const std::size_t n = x.cols();
    double sum_distortion = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            ++rep.pairs_total;
            const double orig = col_sq_dist(x, i, j);
            if (orig == 0.0) {
                ++rep.pairs_zero;
                continue;
            }
            const double proj = col_sq_dist(xproj, i, j);
            if (proj < (1.0 - epsilon) * orig) ++rep.pairs_below;
            if (proj > (1.0 + epsilon) * orig) ++rep.pairs_above;
            const double distortion = std::abs(proj / orig - 1.0);
            sum_distortion += distortion;
            rep.max_distortion = std::max(rep.max_distortion, distortion);
        }
    }
    const std::size_t counted = rep.pairs_total - rep.pairs_zero;
    rep.mean_distortion = counted ? sum_distortion / static_cast<double>(counted) : 0.0;
    return rep;
}

} // namespace skb
