#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sketchbench/errors.hpp"

namespace skb {

using RealVector = std::vector<double>;

// Dense real matrix, d rows (features) x n columns (samples).
// Storage is column-major: entry (i, j) lives at data[j*rows + i], so a
// sample column is contiguous. Constructors reject NaN/Inf entries.
class RealMatrix {
public:
    RealMatrix() = default;

    RealMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
        if (rows == 0 || cols == 0) throw ShapeError("RealMatrix: zero dimension");
    }

    RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major)
        : rows_(rows), cols_(cols), data_(std::move(column_major)) {
        if (rows == 0 || cols == 0) throw ShapeError("RealMatrix: zero dimension");
        if (data_.size() != rows * cols)
            throw ShapeError("RealMatrix: data size " + std::to_string(data_.size()) +
                             " != " + std::to_string(rows * cols));
        for (double v : data_)
            if (!std::isfinite(v)) throw InvalidParameter("RealMatrix: non-finite entry");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * rows_ + i]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[j * rows_ + i]; }

    double* col(std::size_t j) noexcept { return data_.data() + j * rows_; }
    const double* col(std::size_t j) const noexcept { return data_.data() + j * rows_; }

    std::vector<double>& data() noexcept { return data_; }
    const std::vector<double>& data() const noexcept { return data_; }

    RealVector column(std::size_t j) const {
        return RealVector(col(j), col(j) + rows_);
    }

    void set_column(std::size_t j, const RealVector& v) {
        if (v.size() != rows_) throw ShapeError("set_column: length mismatch");
        std::copy(v.begin(), v.end(), col(j));
    }

    bool operator==(const RealMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline RealMatrix identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

inline RealMatrix transpose(const RealMatrix& m) {
    RealMatrix t(m.cols(), m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) t(j, i) = m(i, j);
    return t;
}

// C = A * B
inline RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matmul: inner dimensions disagree");
    RealMatrix c(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        double* cj = c.col(j);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double bkj = b(k, j);
            if (bkj == 0.0) continue;
            const double* ak = a.col(k);
            for (std::size_t i = 0; i < a.rows(); ++i) cj[i] += ak[i] * bkj;
        }
    }
    return c;
}

// C = A^T * B, avoiding an explicit transpose.
inline RealMatrix matmul_at_b(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows() != b.rows()) throw ShapeError("matmul_at_b: row counts disagree");
    RealMatrix c(a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        const double* bj = b.col(j);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double* ai = a.col(i);
            double acc = 0.0;
            for (std::size_t k = 0; k < a.rows(); ++k) acc += ai[k] * bj[k];
            c(i, j) = acc;
        }
    }
    return c;
}

inline RealVector mat_vec(const RealMatrix& m, const RealVector& v) {
    if (m.cols() != v.size()) throw ShapeError("mat_vec: dimension mismatch");
    RealVector out(m.rows(), 0.0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const double* mj = m.col(j);
        const double vj = v[j];
        for (std::size_t i = 0; i < m.rows(); ++i) out[i] += mj[i] * vj;
    }
    return out;
}

// U^T x for column-stored U; one pass per column.
inline RealVector matT_vec(const RealMatrix& m, const RealVector& v) {
    if (m.rows() != v.size()) throw ShapeError("matT_vec: dimension mismatch");
    RealVector out(m.cols(), 0.0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const double* mj = m.col(j);
        double acc = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) acc += mj[i] * v[i];
        out[j] = acc;
    }
    return out;
}

inline double dot(const RealVector& a, const RealVector& b) {
    if (a.size() != b.size()) throw ShapeError("dot: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double norm2_sq(const RealVector& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return acc;
}

inline double norm2(const RealVector& v) { return std::sqrt(norm2_sq(v)); }

inline double frobenius_norm(const RealMatrix& m) {
    double acc = 0.0;
    for (double v : m.data()) acc += v * v;
    return std::sqrt(acc);
}

inline double frobenius_norm_sq(const RealMatrix& m) {
    double acc = 0.0;
    for (double v : m.data()) acc += v * v;
    return acc;
}

inline RealMatrix subtract(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("subtract: shape mismatch");
    RealMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

// Squared Euclidean distance between columns j and k of X.
inline double col_sq_dist(const RealMatrix& x, std::size_t j, std::size_t k) {
    const double* a = x.col(j);
    const double* b = x.col(k);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc;
}

} // namespace skb
