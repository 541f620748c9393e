#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "sketchbench/bitvec.hpp"
#include "sketchbench/errors.hpp"
#include "sketchbench/matrix.hpp"
#include "sketchbench/parallel.hpp"
#include "sketchbench/random_matrix.hpp"
#include "sketchbench/rng.hpp"

namespace skb {

// ---------------------------------------------------------------------------
// Binary projection onto a hypercube: f(x) = U^T x mod 2 with a sparse random
// 0/1 matrix, plus the radius-laddered nearest-neighbor index built on it.
// ---------------------------------------------------------------------------

// Output bit t is the parity of the AND of column t with x.
inline BitVector project_binary(const BitVector& x, const BitProjection& u) {
    if (u.d() != x.dim()) throw ShapeError("project_binary: dimension mismatch");
    BitVector out(u.p());
    for (std::size_t t = 0; t < u.p(); ++t) {
        const auto& col = u.mat.column(t).words();
        const auto& xv = x.words();
        uint64_t acc = 0;
        for (std::size_t w = 0; w < xv.size(); ++w) acc ^= col[w] & xv[w];
        if (std::popcount(acc) & 1u) out.set(t, true);
    }
    return out;
}

// Thermometer code: bit (i, t) = [x_i > thresholds[t]], strict inequality, so
// a value equal to a threshold codes as 0. Output dimension is
// x.size() * thresholds.size(), coordinate-major.
inline BitVector quantize(const RealVector& x, const std::vector<double>& thresholds) {
    if (thresholds.empty()) throw InvalidParameter("quantize: empty thresholds");
    if (!std::is_sorted(thresholds.begin(), thresholds.end()))
        throw InvalidParameter("quantize: thresholds must be sorted");
    if (x.empty()) throw ShapeError("quantize: empty vector");
    BitVector out(x.size() * thresholds.size());
    std::size_t bit = 0;
    for (double value : x)
        for (double t : thresholds) {
            if (value > t) out.set(bit, true);
            ++bit;
        }
    return out;
}

// Equally spaced quantiles of all matrix entries; the default quantizer grid
// for real-valued datasets.
inline std::vector<double> quantile_thresholds(const RealMatrix& data, std::size_t count = 15) {
    if (count < 1) throw InvalidParameter("quantile_thresholds: count must be >= 1");
    std::vector<double> sorted(data.data());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t t = 1; t <= count; ++t) {
        const double q = static_cast<double>(t) / static_cast<double>(count + 1);
        const auto idx = static_cast<std::size_t>(q * static_cast<double>(sorted.size() - 1));
        out.push_back(sorted[idx]);
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct IndexLevel {
    std::size_t ell = 0;                       // radius this level certifies
    double xi = 0.0;                           // = epsilon^2 / ell
    std::vector<uint64_t> seeds;               // one per projection, K total
    std::vector<std::vector<BitVector>> codes; // [k][point] p-bit codes
};

// K independent binary projections per radius level over a fixed dataset.
// Projections are regenerable from (d, p, xi, seed); codes are stored because
// queries compare against them constantly.
struct HypercubeIndex {
    std::size_t d = 0;
    std::size_t n = 0;
    std::size_t k_projections = 0;
    std::size_t p = 0; // code length, ceil(8 ln(n) / eps^2)
    double epsilon = 0.0;
    uint64_t seed = 0;
    std::vector<IndexLevel> levels;
    std::vector<BitVector> dataset;
    // Round-robin projection choice; the only mutable state after build.
    mutable std::atomic<uint64_t> query_counter{0};

    HypercubeIndex() = default;
    HypercubeIndex(HypercubeIndex&& other) noexcept
        : d(other.d), n(other.n), k_projections(other.k_projections), p(other.p),
          epsilon(other.epsilon), seed(other.seed), levels(std::move(other.levels)),
          dataset(std::move(other.dataset)), query_counter(other.query_counter.load()) {}
    HypercubeIndex& operator=(HypercubeIndex&& other) noexcept {
        d = other.d;
        n = other.n;
        k_projections = other.k_projections;
        p = other.p;
        epsilon = other.epsilon;
        seed = other.seed;
        levels = std::move(other.levels);
        dataset = std::move(other.dataset);
        query_counter.store(other.query_counter.load());
        return *this;
    }

    BitProjection projection(std::size_t level, std::size_t k) const {
        return sample_hypercube_matrix(d, p, levels[level].xi, levels[level].seeds[k]);
    }

    std::size_t stored_code_bits() const {
        return levels.size() * k_projections * n * p;
    }
};

// Radius ladder 1, 2, 4, ... capped with d itself.
inline std::vector<std::size_t> radius_schedule(std::size_t d) {
    std::vector<std::size_t> out;
    for (std::size_t ell = 1; ell < d; ell *= 2) out.push_back(ell);
    out.push_back(d);
    return out;
}

inline std::size_t hypercube_code_length(std::size_t n, double epsilon) {
    const double v = 8.0 * std::log(static_cast<double>(n)) / (epsilon * epsilon);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(v)));
}

inline HypercubeIndex build_index(std::vector<BitVector> dataset, double epsilon,
                                  std::size_t k_projections, uint64_t seed) {
    if (dataset.empty()) throw InvalidParameter("build_index: empty dataset");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidParameter("build_index: epsilon must lie in (0,1)");
    if (k_projections < 1) throw InvalidParameter("build_index: K must be >= 1");
    const std::size_t d = dataset[0].dim();
    for (const auto& x : dataset)
        if (x.dim() != d) throw ShapeError("build_index: inconsistent dimensions");

    HypercubeIndex index;
    index.d = d;
    index.n = dataset.size();
    index.k_projections = k_projections;
    index.epsilon = epsilon;
    index.seed = seed;
    index.p = hypercube_code_length(index.n, epsilon);
    index.dataset = std::move(dataset);

    const auto ladder = radius_schedule(d);
    index.levels.resize(ladder.size());
    for (std::size_t li = 0; li < ladder.size(); ++li) {
        IndexLevel& level = index.levels[li];
        level.ell = ladder[li];
        level.xi = epsilon * epsilon / static_cast<double>(level.ell);
        level.seeds.resize(k_projections);
        level.codes.resize(k_projections);
        for (std::size_t k = 0; k < k_projections; ++k) {
            level.seeds[k] = split_seed(seed, li * k_projections + k);
            BitProjection u = index.projection(li, k);
            level.codes[k].reserve(index.n);
            for (const auto& x : index.dataset) level.codes[k].push_back(project_binary(x, u));
        }
    }
    return index;
}

struct QueryResult {
    bool found = false;
    std::size_t index = 0;
    std::size_t certified_radius = 0; // level at which the match was accepted
    std::size_t distance = 0;         // true Hamming distance to the match
};

// Walks the radius ladder from the smallest level. At each level one of the K
// projections is chosen round-robin by a per-index query counter; candidates
// whose code distance beats the level threshold (1+eps) p xi ell / 4 are
// verified against the original vectors (cheapest code distance first), and
// the first point passing Hamming(q, x) <= (1+eps) ell is returned. A null
// result is a valid outcome.
inline QueryResult query(const HypercubeIndex& index, const BitVector& q, double epsilon) {
    if (q.dim() != index.d) throw ShapeError("query: dimension mismatch");
    const std::size_t k =
        static_cast<std::size_t>(index.query_counter.fetch_add(1)) % index.k_projections;
    for (std::size_t li = 0; li < index.levels.size(); ++li) {
        const IndexLevel& level = index.levels[li];
        const BitProjection u = index.projection(li, k);
        const BitVector code_q = project_binary(q, u);
        const double threshold = (1.0 + epsilon) * static_cast<double>(index.p) * level.xi *
                                 static_cast<double>(level.ell) / 4.0;
        std::vector<std::pair<std::size_t, std::size_t>> candidates; // (code dist, point)
        for (std::size_t i = 0; i < index.n; ++i) {
            const std::size_t code_dist = hamming_distance(code_q, level.codes[k][i]);
            if (static_cast<double>(code_dist) < threshold) candidates.emplace_back(code_dist, i);
        }
        std::sort(candidates.begin(), candidates.end());
        const double radius_budget = (1.0 + epsilon) * static_cast<double>(level.ell);
        for (const auto& [code_dist, i] : candidates) {
            const std::size_t true_dist = hamming_distance(q, index.dataset[i]);
            if (static_cast<double>(true_dist) <= radius_budget)
                return QueryResult{true, i, level.ell, true_dist};
        }
    }
    return QueryResult{};
}

// ---------------------------------------------------------------------------
// Three-regime distance separation check.
// ---------------------------------------------------------------------------

struct RegimeStats {
    bool applicable = false;
    std::size_t trials = 0;
    std::size_t violations = 0;
    double rate() const {
        return trials ? static_cast<double>(violations) / static_cast<double>(trials) : 0.0;
    }
};

struct RegimeReport {
    std::size_t d = 0;
    std::size_t ell = 0;
    std::size_t p = 0;
    double epsilon = 0.0;
    double xi = 0.0;
    RegimeStats near;   // h <  ell/4: code distance must stay under (1+eps) p xi ell/4
    RegimeStats mid;    // ell/4 <= h <= ell/(2 eps): ratio in [(1-eps) p xi, (1+eps) p xi)
    RegimeStats far;    // h >  ell/(2 eps): code distance must exceed (1-eps) p xi ell/(2 eps)
    double fitted_c = 0.0; // c in exp(-c eps^4 p) matching the worst regime rate
};

// Samples pairs at controlled Hamming distance h per regime and measures the
// code-space distance under a fresh projection per trial. By mod-2 linearity
// f(x) xor f(y) = f(x xor y), so only the h differing coordinates contribute:
// each code bit is the parity of h Bernoulli(xi) draws.
inline RegimeReport regime_check(std::size_t d, std::size_t ell, double epsilon, std::size_t p,
                                 std::size_t trials, uint64_t seed) {
    if (ell > d) throw InvalidParameter("regime_check: ell must not exceed d");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidParameter("regime_check: epsilon must lie in (0,1)");
    if (p < 1 || trials < 1) throw InvalidParameter("regime_check: p and trials must be >= 1");

    RegimeReport rep;
    rep.d = d;
    rep.ell = ell;
    rep.p = p;
    rep.epsilon = epsilon;
    rep.xi = epsilon * epsilon / static_cast<double>(ell);

    const double pxi = static_cast<double>(p) * rep.xi;
    const double near_limit = static_cast<double>(ell) / 4.0;
    const double far_limit = static_cast<double>(ell) / (2.0 * epsilon);

    // Integer h ranges per regime; a regime with no admissible h is reported
    // as not applicable.
    const std::size_t near_lo = 0;
    const std::size_t near_hi =
        near_limit > 0.0 ? static_cast<std::size_t>(std::ceil(near_limit)) - 1 : 0;
    const std::size_t mid_lo = static_cast<std::size_t>(std::ceil(near_limit));
    const std::size_t mid_hi = std::min(d, static_cast<std::size_t>(std::floor(far_limit)));
    const std::size_t far_lo = static_cast<std::size_t>(std::floor(far_limit)) + 1;
    const std::size_t far_hi = d;

    auto code_distance = [&](std::size_t h, Rng& rng) {
        std::size_t dist = 0;
        for (std::size_t t = 0; t < p; ++t) {
            unsigned parity = 0;
            for (std::size_t r = 0; r < h; ++r) parity ^= rng.bernoulli(rep.xi) ? 1u : 0u;
            dist += parity;
        }
        return dist;
    };

    auto run_regime = [&](RegimeStats& stats, std::size_t lo, std::size_t hi, int which) {
        if (lo > hi) return;
        stats.applicable = true;
        stats.trials = trials;
        std::vector<unsigned char> bad(trials, 0);
        parallel_for(trials, [&](std::size_t t) {
            Rng rng(seed, static_cast<uint64_t>(which) * 1000003ULL + t);
            const std::size_t h = lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
            const double dist = static_cast<double>(code_distance(h, rng));
            bool violated = false;
            switch (which) {
                case 0:
                    violated = dist >= (1.0 + epsilon) * pxi * near_limit;
                    break;
                case 1: {
                    const double ratio = dist / static_cast<double>(h);
                    violated = ratio < (1.0 - epsilon) * pxi || ratio >= (1.0 + epsilon) * pxi;
                    break;
                }
                case 2:
                    violated = dist <= (1.0 - epsilon) * pxi * far_limit;
                    break;
            }
            bad[t] = violated ? 1 : 0;
        });
        for (unsigned char b : bad) stats.violations += b;
    };

    run_regime(rep.near, near_lo, near_hi, 0);
    run_regime(rep.mid, std::max<std::size_t>(mid_lo, 1), mid_hi, 1);
    run_regime(rep.far, std::min(far_lo, d + 1), far_hi, 2);

    double worst = 0.0;
    for (const RegimeStats* s : {&rep.near, &rep.mid, &rep.far})
        if (s->applicable) worst = std::max(worst, s->rate());
    const double floor_rate = 1.0 / static_cast<double>(trials);
    rep.fitted_c = -std::log(std::max(worst, floor_rate)) /
                   (std::pow(epsilon, 4.0) * static_cast<double>(p));
    return rep;
}

// ---------------------------------------------------------------------------
// Index persistence: magic "HCUB1", little-endian u64/f64 fields, then
// per-level seeds, packed codes, and the packed dataset.
// ---------------------------------------------------------------------------

namespace detail {

inline void put_u64(std::ostream& os, uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(buf, 8);
}

inline uint64_t get_u64(std::istream& is) {
    unsigned char buf[8];
    is.read(reinterpret_cast<char*>(buf), 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(buf[i]) << (8 * i);
    return v;
}

inline void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<uint64_t>(v)); }
inline double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

inline void put_bits(std::ostream& os, const BitVector& v) {
    for (uint64_t w : v.words()) put_u64(os, w);
}

inline BitVector get_bits(std::istream& is, std::size_t dim) {
    BitVector v(dim);
    for (auto& w : v.words()) w = get_u64(is);
    return v;
}

} // namespace detail

inline void save_index(const HypercubeIndex& index, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("save_index: cannot open " + path);
    os.write("HCUB1", 5);
    detail::put_u64(os, index.d);
    detail::put_u64(os, index.n);
    detail::put_f64(os, index.epsilon);
    detail::put_u64(os, index.levels.size());
    detail::put_u64(os, index.k_projections);
    detail::put_u64(os, index.p);
    detail::put_u64(os, index.seed);
    for (const auto& level : index.levels) {
        detail::put_u64(os, level.ell);
        detail::put_f64(os, level.xi);
        for (uint64_t s : level.seeds) detail::put_u64(os, s);
        for (const auto& per_proj : level.codes)
            for (const auto& code : per_proj) detail::put_bits(os, code);
    }
    for (const auto& x : index.dataset) detail::put_bits(os, x);
    if (!os) throw FormatError("save_index: write failed for " + path);
}

inline HypercubeIndex load_index(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("load_index: cannot open " + path);
    char magic[5];
    is.read(magic, 5);
    if (!is || std::string(magic, 5) != "HCUB1")
        throw FormatError("load_index: bad magic in " + path);
    HypercubeIndex index;
    index.d = detail::get_u64(is);
    index.n = detail::get_u64(is);
    index.epsilon = detail::get_f64(is);
    const std::size_t level_count = detail::get_u64(is);
    index.k_projections = detail::get_u64(is);
    index.p = detail::get_u64(is);
    index.seed = detail::get_u64(is);
    index.levels.resize(level_count);
    for (auto& level : index.levels) {
        level.ell = detail::get_u64(is);
        level.xi = detail::get_f64(is);
        level.seeds.resize(index.k_projections);
        for (auto& s : level.seeds) s = detail::get_u64(is);
        level.codes.assign(index.k_projections, {});
        for (auto& per_proj : level.codes) {
            per_proj.reserve(index.n);
            for (std::size_t i = 0; i < index.n; ++i)
                per_proj.push_back(detail::get_bits(is, index.p));
        }
    }
    index.dataset.reserve(index.n);
    for (std::size_t i = 0; i < index.n; ++i)
        index.dataset.push_back(detail::get_bits(is, index.d));
    if (!is) throw FormatError("load_index: truncated file " + path);
    return index;
}

} // namespace skb
