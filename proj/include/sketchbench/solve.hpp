#pragma once

#include <cmath>
#include <cstddef>

#include "sketchbench/errors.hpp"
#include "sketchbench/matrix.hpp"

namespace skb {

// In-place lower Cholesky of a symmetric positive definite matrix.
// Throws SingularMatrixError when a pivot falls below tol * diagonal scale.
inline RealMatrix cholesky(const RealMatrix& a, double rel_tol = 1e-13) {
    if (a.rows() != a.cols()) throw ShapeError("cholesky: matrix not square");
    const std::size_t n = a.rows();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i)));
    if (scale == 0.0) scale = 1.0;
    RealMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > rel_tol * scale))
            throw SingularMatrixError("cholesky: matrix not positive definite");
        const double root = std::sqrt(diag);
        l(j, j) = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            double acc = a(i, j);
            for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * l(j, k);
            l(i, j) = acc / root;
        }
    }
    return l;
}

// Solves A x = b given the lower Cholesky factor of A.
inline RealVector cholesky_solve(const RealMatrix& l, const RealVector& b) {
    const std::size_t n = l.rows();
    if (b.size() != n) throw ShapeError("cholesky_solve: dimension mismatch");
    RealVector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = b[i];
        for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * y[k];
        y[i] = acc / l(i, i);
    }
    RealVector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) acc -= l(k, ii) * x[k];
        x[ii] = acc / l(ii, ii);
    }
    return x;
}

} // namespace skb
