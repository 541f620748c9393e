#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sketchbench/errors.hpp"
#include "sketchbench/matrix.hpp"
#include "sketchbench/parallel.hpp"
#include "sketchbench/rng.hpp"

namespace skb {

// ---------------------------------------------------------------------------
// Random Fourier features for shift-invariant kernels. Frequencies are drawn
// from the kernel's spectral density; the feature map is
//   z(x) = (1/sqrt(p)) [cos(u_1.x) ... cos(u_p.x), sin(u_1.x) ... sin(u_p.x)]
// (all cosines first, then all sines), and z(x).z(y) estimates k(x, y).
// ---------------------------------------------------------------------------

enum class KernelKind { Gaussian, Laplacian };

struct KernelSpec {
    KernelKind kind = KernelKind::Gaussian;
    double sigma = 1.0;

    static KernelSpec gaussian(double sigma) { return make(KernelKind::Gaussian, sigma); }
    static KernelSpec laplacian(double sigma) { return make(KernelKind::Laplacian, sigma); }

    std::string name() const {
        return kind == KernelKind::Gaussian ? "gaussian" : "laplacian";
    }

    static KernelSpec parse(const std::string& s, double sigma) {
        if (s == "gaussian") return gaussian(sigma);
        if (s == "laplacian") return laplacian(sigma);
        throw InvalidParameter("unknown kernel: " + s);
    }

private:
    static KernelSpec make(KernelKind kind, double sigma) {
        if (!(sigma > 0.0)) throw InvalidParameter("kernel bandwidth must be positive");
        return KernelSpec{kind, sigma};
    }
};

// Closed-form kernel value; the oracle every verifier compares against.
inline double exact_kernel(const KernelSpec& kernel, const RealVector& x, const RealVector& y) {
    if (x.size() != y.size()) throw ShapeError("exact_kernel: dimension mismatch");
    if (kernel.kind == KernelKind::Gaussian) {
        double sq = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) sq += (x[i] - y[i]) * (x[i] - y[i]);
        return std::exp(-sq / (2.0 * kernel.sigma * kernel.sigma));
    }
    double l1 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) l1 += std::abs(x[i] - y[i]);
    return std::exp(-l1 / kernel.sigma);
}

struct FeatureMap {
    RealMatrix frequencies; // d x p, column t is u_t
    std::size_t p = 0;
    KernelSpec kernel;
    uint64_t seed = 0;
};

// Gaussian kernel <-> N(0, sigma^-2 I) frequencies; Laplacian kernel <->
// per-coordinate standard Cauchy scaled 1/sigma. These are the two spectral
// pairs carried in closed form; arbitrary kernels are out of scope.
inline FeatureMap sample_spectral(const KernelSpec& kernel, std::size_t d, std::size_t p,
                                  uint64_t seed) {
    if (d < 1 || p < 1) throw InvalidParameter("sample_spectral: dims must be >= 1");
    FeatureMap fm;
    fm.p = p;
    fm.kernel = kernel;
    fm.seed = seed;
    fm.frequencies = RealMatrix(d, p);
    const double inv_sigma = 1.0 / kernel.sigma;
    for (std::size_t t = 0; t < p; ++t) {
        Rng rng(seed, t);
        double* col = fm.frequencies.col(t);
        if (kernel.kind == KernelKind::Gaussian)
            for (std::size_t i = 0; i < d; ++i) col[i] = rng.gaussian() * inv_sigma;
        else
            for (std::size_t i = 0; i < d; ++i) col[i] = rng.cauchy() * inv_sigma;
    }
    return fm;
}

inline RealVector feature_map(const RealVector& x, const FeatureMap& fm) {
    if (x.size() != fm.frequencies.rows()) throw ShapeError("feature_map: dimension mismatch");
    const std::size_t p = fm.p;
    RealVector z(2 * p);
    const double scale = 1.0 / std::sqrt(static_cast<double>(p));
    for (std::size_t t = 0; t < p; ++t) {
        const double* u = fm.frequencies.col(t);
        double phase = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) phase += u[i] * x[i];
        z[t] = std::cos(phase) * scale;
        z[p + t] = std::sin(phase) * scale;
    }
    return z;
}

// Feature matrix for a whole dataset, one column per sample.
inline RealMatrix feature_map_all(const RealMatrix& x, const FeatureMap& fm) {
    RealMatrix z(2 * fm.p, x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j) z.set_column(j, feature_map(x.column(j), fm));
    return z;
}

inline double approx_kernel(const RealVector& zx, const RealVector& zy) {
    if (zx.size() != zy.size()) throw ShapeError("approx_kernel: dimension mismatch");
    return dot(zx, zy);
}

struct HoeffdingCheck {
    double empirical_prob = 0.0;
    double bound = 0.0; // 2 exp(-p eps^2 / 2)
    double standard_error = 0.0;
    double exact_value = 0.0; // kernel value of the probed pair
    std::size_t trials = 0;
};

// Fixes one random pair and resamples the feature map per trial, counting how
// often |z(x).z(y) - k(x,y)| reaches eps.
inline HoeffdingCheck hoeffding_check(const KernelSpec& kernel, std::size_t d, std::size_t p,
                                      double epsilon, std::size_t trials, uint64_t seed) {
    if (trials < 1000) throw InvalidParameter("hoeffding_check: trials must be >= 1000");
    Rng pair_rng(seed, 0xfeedULL);
    RealVector x(d), y(d);
    for (double& v : x) v = pair_rng.gaussian();
    for (double& v : y) v = pair_rng.gaussian();
    const double exact = exact_kernel(kernel, x, y);

    std::vector<unsigned char> hits(trials, 0);
    parallel_for(trials, [&](std::size_t t) {
        FeatureMap fm = sample_spectral(kernel, d, p, split_seed(seed, t + 1));
        const double approx = approx_kernel(feature_map(x, fm), feature_map(y, fm));
        hits[t] = std::abs(approx - exact) >= epsilon ? 1 : 0;
    });
    std::size_t count = 0;
    for (unsigned char h : hits) count += h;

    HoeffdingCheck out;
    out.trials = trials;
    out.exact_value = exact;
    out.empirical_prob = static_cast<double>(count) / static_cast<double>(trials);
    out.bound = 2.0 * std::exp(-static_cast<double>(p) * epsilon * epsilon / 2.0);
    out.standard_error =
        std::sqrt(std::max(out.empirical_prob * (1.0 - out.empirical_prob), 1e-12) /
                  static_cast<double>(trials));
    return out;
}

struct SupErrorEstimate {
    double sup_error = 0.0;   // max over dataset pairs of |z.z - k|
    double diameter = 0.0;    // max pairwise distance, for context
    double claim_bound = 0.0; // 2^8 (sigma_u diam / eps)^2 exp(-p eps^2 / (4(d+2)))
                              // at eps = sup_error; infinite for Cauchy spectra
};

// Monte Carlo lower estimate of the uniform kernel-approximation error over a
// finite dataset. The compact-set tail bound is evaluated for context only;
// it is not an assertion.
inline SupErrorEstimate sup_error_estimate(const KernelSpec& kernel, const RealMatrix& dataset,
                                           std::size_t p, uint64_t seed) {
    if (dataset.cols() < 2) throw InvalidParameter("sup_error_estimate: need >= 2 samples");
    FeatureMap fm = sample_spectral(kernel, dataset.rows(), p, seed);
    RealMatrix z = feature_map_all(dataset, fm);
    SupErrorEstimate out;
    for (std::size_t i = 0; i < dataset.cols(); ++i) {
        for (std::size_t j = i + 1; j < dataset.cols(); ++j) {
            const double approx = approx_kernel(z.column(i), z.column(j));
            const double exact = exact_kernel(kernel, dataset.column(i), dataset.column(j));
            out.sup_error = std::max(out.sup_error, std::abs(approx - exact));
            out.diameter = std::max(out.diameter, std::sqrt(col_sq_dist(dataset, i, j)));
        }
    }
    if (kernel.kind == KernelKind::Gaussian && out.sup_error > 0.0) {
        const double sigma_u =
            std::sqrt(static_cast<double>(dataset.rows())) / kernel.sigma;
        const double ratio = sigma_u * out.diameter / out.sup_error;
        out.claim_bound = 256.0 * ratio * ratio *
                          std::exp(-static_cast<double>(p) * out.sup_error * out.sup_error /
                                   (4.0 * (static_cast<double>(dataset.rows()) + 2.0)));
    } else {
        out.claim_bound = std::numeric_limits<double>::infinity();
    }
    return out;
}

} // namespace skb
