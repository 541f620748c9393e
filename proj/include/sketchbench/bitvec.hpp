#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

#include "sketchbench/errors.hpp"

namespace skb {

// Packed binary vector; bit i lives in word i/64 at position i%64.
class BitVector {
public:
    BitVector() = default;

    explicit BitVector(std::size_t dim)
        : dim_(dim), words_((dim + 63) / 64, 0) {
        if (dim == 0) throw ShapeError("BitVector: zero dimension");
    }

    static BitVector from_bools(const std::vector<bool>& bits) {
        BitVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) v.set(i, true);
        return v;
    }

    std::size_t dim() const noexcept { return dim_; }

    bool get(std::size_t i) const noexcept {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool value) noexcept {
        const uint64_t mask = uint64_t(1) << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) noexcept { words_[i >> 6] ^= uint64_t(1) << (i & 63); }

    std::size_t popcount() const noexcept {
        std::size_t acc = 0;
        for (uint64_t w : words_) acc += std::popcount(w);
        return acc;
    }

    BitVector operator^(const BitVector& other) const {
        if (dim_ != other.dim_) throw ShapeError("BitVector xor: dimension mismatch");
        BitVector out(dim_);
        for (std::size_t k = 0; k < words_.size(); ++k)
            out.words_[k] = words_[k] ^ other.words_[k];
        return out;
    }

    bool operator==(const BitVector& other) const {
        return dim_ == other.dim_ && words_ == other.words_;
    }

    const std::vector<uint64_t>& words() const noexcept { return words_; }
    std::vector<uint64_t>& words() noexcept { return words_; }

private:
    std::size_t dim_ = 0;
    std::vector<uint64_t> words_;
};

// Count of differing positions, by XOR + popcount over packed words.
// (Trailing bits past dim are kept zero by construction.)
inline std::size_t hamming_distance(const BitVector& a, const BitVector& b) {
    if (a.dim() != b.dim()) throw ShapeError("hamming_distance: dimension mismatch");
    std::size_t acc = 0;
    for (std::size_t k = 0; k < a.words().size(); ++k)
        acc += std::popcount(a.words()[k] ^ b.words()[k]);
    return acc;
}

// Binary matrix stored as packed columns (each column a d-bit vector), which
// makes mod-2 column dot products a parity of AND-ed words.
class BitMatrix {
public:
    BitMatrix() = default;

    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), columns_(cols, BitVector(rows)) {
        if (rows == 0 || cols == 0) throw ShapeError("BitMatrix: zero dimension");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t i, std::size_t j) const noexcept { return columns_[j].get(i); }
    void set(std::size_t i, std::size_t j, bool v) noexcept { columns_[j].set(i, v); }

    const BitVector& column(std::size_t j) const noexcept { return columns_[j]; }
    BitVector& column(std::size_t j) noexcept { return columns_[j]; }

    std::size_t popcount() const noexcept {
        std::size_t acc = 0;
        for (const auto& c : columns_) acc += c.popcount();
        return acc;
    }

    bool operator==(const BitMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && columns_ == other.columns_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BitVector> columns_;
};

} // namespace skb
