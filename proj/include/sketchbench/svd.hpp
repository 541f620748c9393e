#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "sketchbench/errors.hpp"
#include "sketchbench/matrix.hpp"

namespace skb {

// Thin SVD M = left * diag(singular) * right^T with k = min(rows, cols)
// columns on each factor. Singular values are nonnegative and nonincreasing;
// equal values are ordered by their pre-sort column index.
struct SvdResult {
    RealMatrix left;
    RealVector singular;
    RealMatrix right;
};

namespace detail {

// One-sided Jacobi (Hestenes) on a matrix with rows >= cols: rotate column
// pairs until mutually orthogonal; the column norms are then the singular
// values and the accumulated rotations form the right factor. Dependency-free
// and robust at desk scale (a few hundred rows/cols).
struct OneSidedJacobi {
    RealMatrix work;   // m x k, becomes U * diag(sigma)
    RealMatrix vee;    // k x k accumulated rotations

    explicit OneSidedJacobi(const RealMatrix& a) : work(a), vee(identity(a.cols())) {
        const std::size_t m = work.rows();
        const std::size_t k = work.cols();
        constexpr double tol = 1e-14;
        constexpr int max_sweeps = 60;
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            bool rotated = false;
            for (std::size_t i = 0; i + 1 < k; ++i) {
                for (std::size_t j = i + 1; j < k; ++j) {
                    double* wi = work.col(i);
                    double* wj = work.col(j);
                    double alpha = 0.0, beta = 0.0, gamma = 0.0;
                    for (std::size_t r = 0; r < m; ++r) {
                        alpha += wi[r] * wi[r];
                        beta += wj[r] * wj[r];
                        gamma += wi[r] * wj[r];
                    }
                    if (alpha == 0.0 || beta == 0.0) continue;
                    if (std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
                    rotated = true;
                    const double zeta = (beta - alpha) / (2.0 * gamma);
                    const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                     (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = c * t;
                    for (std::size_t r = 0; r < m; ++r) {
                        const double a = wi[r], b = wj[r];
                        wi[r] = c * a - s * b;
                        wj[r] = s * a + c * b;
                    }
                    double* vi = vee.col(i);
                    double* vj = vee.col(j);
                    for (std::size_t r = 0; r < k; ++r) {
                        const double a = vi[r], b = vj[r];
                        vi[r] = c * a - s * b;
                        vj[r] = s * a + c * b;
                    }
                }
            }
            if (!rotated) break;
        }
    }
};

// Replace a (near-)zero column by a unit vector orthogonal to the columns
// already fixed, trying coordinate directions in order.
inline void orthonormal_fill(RealMatrix& u, std::size_t col_index) {
    const std::size_t m = u.rows();
    for (std::size_t trial = 0; trial < m; ++trial) {
        RealVector cand(m, 0.0);
        cand[trial] = 1.0;
        for (std::size_t j = 0; j < u.cols(); ++j) {
            if (j == col_index) continue;
            const double* uj = u.col(j);
            double proj = 0.0;
            for (std::size_t r = 0; r < m; ++r) proj += uj[r] * cand[r];
            for (std::size_t r = 0; r < m; ++r) cand[r] -= proj * uj[r];
        }
        const double len = norm2(cand);
        if (len > 1e-6) {
            for (std::size_t r = 0; r < m; ++r) u(r, col_index) = cand[r] / len;
            return;
        }
    }
}

} // namespace detail

inline SvdResult svd(const RealMatrix& m_in) {
    const bool transposed = m_in.rows() < m_in.cols();
    const RealMatrix a = transposed ? transpose(m_in) : m_in;
    const std::size_t m = a.rows();
    const std::size_t k = a.cols();

    detail::OneSidedJacobi jac(a);

    RealVector sigma(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double acc = 0.0;
        const double* wj = jac.work.col(j);
        for (std::size_t r = 0; r < m; ++r) acc += wj[r] * wj[r];
        sigma[j] = std::sqrt(acc);
    }

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    RealMatrix u(m, k);
    RealMatrix v(k, k);
    RealVector sorted_sigma(k);
    double sigma_max = sigma.empty() ? 0.0 : sigma[order[0]];
    for (std::size_t out = 0; out < k; ++out) {
        const std::size_t src = order[out];
        sorted_sigma[out] = sigma[src];
        for (std::size_t r = 0; r < k; ++r) v(r, out) = jac.vee(r, src);
        if (sigma[src] > sigma_max * 1e-300 && sigma[src] > 0.0) {
            const double inv = 1.0 / sigma[src];
            for (std::size_t r = 0; r < m; ++r) u(r, out) = jac.work(r, src) * inv;
        }
    }
    // Columns whose singular value underflowed get an orthonormal completion.
    for (std::size_t out = 0; out < k; ++out) {
        if (!(sorted_sigma[out] > sigma_max * 1e-300 && sorted_sigma[out] > 0.0))
            detail::orthonormal_fill(u, out);
    }

    if (transposed) return SvdResult{std::move(v), std::move(sorted_sigma), std::move(u)};
    return SvdResult{std::move(u), std::move(sorted_sigma), std::move(v)};
}

} // namespace skb
