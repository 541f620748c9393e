#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "sketchbench/bitvec.hpp"
#include "sketchbench/errors.hpp"
#include "sketchbench/matrix.hpp"
#include "sketchbench/rng.hpp"

namespace skb {

// Entry distributions for projection matrices. All real-valued kinds have
// zero mean and variance 1/p after their scaling, except GaussianUnit which
// is plain N(0,1) for callers that apply 1/sqrt(p) themselves.
enum class Distribution {
    GaussianUnit,     // N(0, 1)
    GaussianScaled,   // N(0, 1/p)
    Rademacher,       // +-1 equiprobable, scaled 1/sqrt(p)
    AchlioptasSparse, // sqrt(3) * {+1 w.p. 1/6, 0 w.p. 2/3, -1 w.p. 1/6}, scaled 1/sqrt(p)
    BernoulliBinary,  // {0,1}, P(1) = xi; only valid for binary matrices
};

struct DistributionSpec {
    Distribution kind = Distribution::GaussianScaled;
    double xi = 0.0; // one-probability, BernoulliBinary only

    static DistributionSpec gaussian_unit() { return {Distribution::GaussianUnit, 0.0}; }
    static DistributionSpec gaussian_scaled() { return {Distribution::GaussianScaled, 0.0}; }
    static DistributionSpec rademacher() { return {Distribution::Rademacher, 0.0}; }
    static DistributionSpec achlioptas() { return {Distribution::AchlioptasSparse, 0.0}; }
    static DistributionSpec bernoulli(double xi) {
        if (!(xi > 0.0 && xi < 1.0))
            throw InvalidParameter("BernoulliBinary: xi must lie in (0,1)");
        return {Distribution::BernoulliBinary, xi};
    }

    std::string name() const {
        switch (kind) {
            case Distribution::GaussianUnit: return "gaussian-unit";
            case Distribution::GaussianScaled: return "gaussian";
            case Distribution::Rademacher: return "rademacher";
            case Distribution::AchlioptasSparse: return "sparse";
            case Distribution::BernoulliBinary: return "binary";
        }
        return "?";
    }

    // CLI names: gaussian, gaussian-unit, rademacher, sparse, binary.
    static DistributionSpec parse(const std::string& s, double xi = 0.5) {
        if (s == "gaussian") return gaussian_scaled();
        if (s == "gaussian-unit") return gaussian_unit();
        if (s == "rademacher") return rademacher();
        if (s == "sparse") return achlioptas();
        if (s == "binary") return bernoulli(xi);
        throw InvalidParameter("unknown distribution: " + s);
    }
};

// A d x p real random matrix together with the recipe that made it, so the
// exact same matrix can be regenerated from (d, p, dist, seed).
struct ProjectionMatrix {
    RealMatrix mat;
    DistributionSpec dist;
    uint64_t seed = 0;

    std::size_t d() const noexcept { return mat.rows(); }
    std::size_t p() const noexcept { return mat.cols(); }
};

// Binary counterpart used by the hypercube map.
struct BitProjection {
    BitMatrix mat;
    double xi = 0.0;
    uint64_t seed = 0;

    std::size_t d() const noexcept { return mat.rows(); }
    std::size_t p() const noexcept { return mat.cols(); }
};

// Diagonal of +-1 sign flips.
struct SignVector {
    RealVector signs;
    uint64_t seed = 0;
};

// Column t draws from substream split_seed(seed, t), so columns can be
// generated in any order (or in parallel) with identical output.
inline ProjectionMatrix sample_projection(std::size_t d, std::size_t p,
                                          DistributionSpec dist, uint64_t seed) {
    if (d < 1 || p < 1) throw InvalidParameter("sample_projection: dims must be >= 1");
    if (dist.kind == Distribution::BernoulliBinary)
        throw InvalidParameter(
            "sample_projection: BernoulliBinary is binary-valued; use sample_hypercube_matrix");
    RealMatrix m(d, p);
    const double root_p = std::sqrt(static_cast<double>(p));
    const double root3 = std::sqrt(3.0);
    for (std::size_t t = 0; t < p; ++t) {
        Rng rng(seed, t);
        double* col = m.col(t);
        switch (dist.kind) {
            case Distribution::GaussianUnit:
                for (std::size_t i = 0; i < d; ++i) col[i] = rng.gaussian();
                break;
            case Distribution::GaussianScaled:
                for (std::size_t i = 0; i < d; ++i) col[i] = rng.gaussian() / root_p;
                break;
            case Distribution::Rademacher:
                for (std::size_t i = 0; i < d; ++i) col[i] = rng.sign() / root_p;
                break;
            case Distribution::AchlioptasSparse:
                for (std::size_t i = 0; i < d; ++i) {
                    const double u = rng.uniform();
                    double v = 0.0;
                    if (u < 1.0 / 6.0)
                        v = root3;
                    else if (u < 1.0 / 3.0)
                        v = -root3;
                    col[i] = v / root_p;
                }
                break;
            case Distribution::BernoulliBinary:
                break; // rejected above
        }
    }
    return ProjectionMatrix{std::move(m), dist, seed};
}

inline BitProjection sample_hypercube_matrix(std::size_t d, std::size_t p, double xi,
                                             uint64_t seed) {
    if (d < 1 || p < 1) throw InvalidParameter("sample_hypercube_matrix: dims must be >= 1");
    if (!(xi > 0.0 && xi < 1.0))
        throw InvalidParameter("sample_hypercube_matrix: xi must lie in (0,1)");
    BitMatrix m(d, p);
    for (std::size_t t = 0; t < p; ++t) {
        Rng rng(seed, t);
        BitVector& col = m.column(t);
        for (std::size_t i = 0; i < d; ++i)
            if (rng.bernoulli(xi)) col.set(i, true);
    }
    return BitProjection{std::move(m), xi, seed};
}

inline SignVector sample_sign_diagonal(std::size_t d, uint64_t seed) {
    if (d < 1) throw InvalidParameter("sample_sign_diagonal: d must be >= 1");
    Rng rng(seed, 0);
    RealVector s(d);
    for (std::size_t i = 0; i < d; ++i) s[i] = rng.sign();
    return SignVector{std::move(s), seed};
}

} // namespace skb
