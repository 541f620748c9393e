#pragma once

#include <cstdint>

#include "sketchbench/matrix.hpp"
#include "sketchbench/rng.hpp"

namespace skb {

struct LabeledData {
    RealMatrix x;      // d x n
    RealVector labels; // n, integral values stored as doubles
};

// Two spherical Gaussian clusters with means +-separation/2 along the first
// coordinate; labels 0 and 1, deterministic per seed.
inline LabeledData two_cluster_dataset(std::size_t d, std::size_t n, double separation,
                                       uint64_t seed) {
    Rng rng(seed);
    LabeledData out{RealMatrix(d, n), RealVector(n)};
    for (std::size_t j = 0; j < n; ++j) {
        const bool positive = rng.bernoulli(0.5);
        out.labels[j] = positive ? 1.0 : 0.0;
        double* col = out.x.col(j);
        for (std::size_t i = 0; i < d; ++i) col[i] = rng.gaussian();
        col[0] += (positive ? 0.5 : -0.5) * separation;
    }
    return out;
}

} // namespace skb
