#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>

#include "sketchbench/lowrank.hpp"
#include "sketchbench/rng.hpp"

using namespace skb;

namespace {

// Rank-r signal plus entrywise Gaussian noise.
RealMatrix noisy_lowrank(std::size_t d, std::size_t n, std::size_t r, double noise,
                         uint64_t seed) {
    Rng rng(seed);
    RealMatrix a(d, r), b(r, n);
    for (double& v : a.data()) v = rng.gaussian();
    for (double& v : b.data()) v = rng.gaussian();
    RealMatrix x = matmul(a, b);
    for (double& v : x.data()) v += noise * rng.gaussian();
    return x;
}

} // namespace

TEST_CASE("sketch basics") {
    SECTION("zero matrix sketches to zero") {
        RealMatrix x(10, 6);
        RealMatrix y = sketch(x, 3, 1);
        CHECK(frobenius_norm(y) == 0.0);
    }
    SECTION("linearity in X") {
        Rng rng(2);
        RealMatrix x(8, 5), y(8, 5);
        for (double& v : x.data()) v = rng.gaussian();
        for (double& v : y.data()) v = rng.gaussian();
        RealMatrix sum(8, 5);
        for (std::size_t i = 0; i < sum.data().size(); ++i)
            sum.data()[i] = x.data()[i] + y.data()[i];
        RealMatrix sx = sketch(x, 4, 3), sy = sketch(y, 4, 3), ss = sketch(sum, 4, 3);
        for (std::size_t i = 0; i < ss.data().size(); ++i)
            CHECK(ss.data()[i] == Catch::Approx(sx.data()[i] + sy.data()[i]).margin(1e-12));
    }
    SECTION("per-column energy is preserved in expectation") {
        Rng rng(4);
        RealMatrix x(6, 3);
        for (double& v : x.data()) v = rng.gaussian();
        const std::size_t trials = 10000, p = 8;
        RealVector acc(x.cols(), 0.0);
        for (std::size_t t = 0; t < trials; ++t) {
            RealMatrix y = sketch(x, p, 1000 + t);
            for (std::size_t j = 0; j < x.cols(); ++j) {
                double e = 0.0;
                for (std::size_t i = 0; i < p; ++i) e += y(i, j) * y(i, j);
                acc[j] += e;
            }
        }
        for (std::size_t j = 0; j < x.cols(); ++j) {
            const double ratio = acc[j] / trials / norm2_sq(x.column(j));
            CHECK(ratio >= 0.98);
            CHECK(ratio <= 1.02);
        }
    }
}

TEST_CASE("lowrank_approximate") {
    SECTION("rank-1 input is recovered") {
        RealMatrix x = noisy_lowrank(30, 20, 1, 0.0, 5);
        LowRankResult res = lowrank_approximate(x, 1, 6);
        CHECK(frobenius_norm(subtract(x, res.approx)) / frobenius_norm(x) <= 0.05);
    }
    SECTION("p = n reproduces X exactly") {
        RealMatrix x = noisy_lowrank(12, 6, 4, 0.05, 7);
        LowRankResult res = lowrank_approximate(x, 6, 8);
        CHECK(frobenius_norm(subtract(x, res.approx)) <= 1e-8 * frobenius_norm(x));
    }
    SECTION("zero matrix maps to zero") {
        RealMatrix x(10, 5);
        LowRankResult res = lowrank_approximate(x, 2, 9);
        CHECK(frobenius_norm(res.approx) == 0.0);
    }
    SECTION("basis columns are orthonormal") {
        RealMatrix x = noisy_lowrank(20, 15, 3, 0.1, 10);
        LowRankResult res = lowrank_approximate(x, 5, 11);
        RealMatrix btb = matmul_at_b(res.basis, res.basis);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                CHECK(std::abs(btb(i, j) - (i == j ? 1.0 : 0.0)) < 1e-8);
    }
    SECTION("p beyond n is rejected") {
        RealMatrix x(4, 3);
        CHECK_THROWS_AS(lowrank_approximate(x, 4, 0), InvalidParameter);
    }
}

TEST_CASE("best_rank_p") {
    SECTION("diagonal truncation") {
        RealMatrix x(3, 3);
        x(0, 0) = 4.0;
        x(1, 1) = 3.0;
        x(2, 2) = 1.0;
        RealMatrix t = best_rank_p(x, 2);
        CHECK(t(0, 0) == Catch::Approx(4.0));
        CHECK(t(1, 1) == Catch::Approx(3.0));
        CHECK(std::abs(t(2, 2)) < 1e-10);
    }
    SECTION("p = rank returns X") {
        RealMatrix x = noisy_lowrank(10, 8, 3, 0.0, 12);
        RealMatrix t = best_rank_p(x, 3);
        CHECK(frobenius_norm(subtract(x, t)) <= 1e-8 * frobenius_norm(x));
    }
    SECTION("residual equals the tail singular values") {
        RealMatrix x = noisy_lowrank(6, 4, 4, 0.3, 13);
        SvdResult s = svd(x);
        RealMatrix t = best_rank_p(x, 2);
        const double expected =
            std::sqrt(s.singular[2] * s.singular[2] + s.singular[3] * s.singular[3]);
        CHECK(frobenius_norm(subtract(x, t)) == Catch::Approx(expected).margin(1e-8));
    }
    SECTION("invalid p") {
        RealMatrix x(4, 3);
        x(0, 0) = 1.0;
        CHECK_THROWS_AS(best_rank_p(x, 0), InvalidParameter);
        CHECK_THROWS_AS(best_rank_p(x, 4), InvalidParameter);
    }
}

TEST_CASE("lowrank_error_report") {
    SECTION("low-rank X has zero baseline") {
        RealMatrix x = noisy_lowrank(20, 10, 2, 0.0, 14);
        LowRankResult res = lowrank_approximate(x, 4, 15);
        auto rep = lowrank_error_report(x, res, 0.5);
        CHECK(rep.baseline <= 1e-10);
        CHECK(rep.lhs <= 2.0 * 0.5 * frobenius_norm_sq(x) + 1e-10);
        CHECK(rep.holds);
    }
    SECTION("signal-plus-noise instance satisfies the certificate") {
        RealMatrix x = noisy_lowrank(200, 100, 5, 0.01, 16);
        LowRankResult res = lowrank_approximate(x, 20, 17);
        auto rep = lowrank_error_report(x, res, 0.5);
        CHECK(rep.holds);
    }
    SECTION("eps = 1 always holds empirically") {
        for (uint64_t seed = 0; seed < 5; ++seed) {
            RealMatrix x = noisy_lowrank(30, 20, 4, 0.2, 18 + seed);
            LowRankResult res = lowrank_approximate(x, 6, 100 + seed);
            auto rep = lowrank_error_report(x, res, 1.0);
            CHECK(rep.holds);
        }
    }
}

TEST_CASE("certificate and sketch spectrum hold on 95 percent of seeded trials") {
    const double eps = 0.5;
    int cert_ok = 0, spectrum_ok = 0;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        RealMatrix x = noisy_lowrank(60, 40, 5, 0.05, 700 + seed);
        LowRankResult res = lowrank_approximate(x, 12, 900 + seed);
        auto rep = lowrank_error_report(x, res, eps);
        if (rep.holds) ++cert_ok;
        if (sketch_spectrum_holds(x, res, eps)) ++spectrum_ok;
    }
    CHECK(cert_ok >= 95);
    CHECK(spectrum_ok >= 95);
}

TEST_CASE("randomized path wall time grows about linearly in d") {
    const std::size_t n = 60, p = 10;
    auto timed = [&](std::size_t d) {
        RealMatrix x = noisy_lowrank(d, n, 5, 0.05, d);
        double best = 1e300;
        for (int rep = 0; rep < 5; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            LowRankResult res = lowrank_approximate(x, p, rep);
            (void)res;
            const std::chrono::duration<double> elapsed =
                std::chrono::steady_clock::now() - start;
            best = std::min(best, elapsed.count());
        }
        return best;
    };
    const double t200 = timed(200);
    const double t400 = timed(400);
    const double t800 = timed(800);
    CHECK(t400 / t200 <= 2.6);
    CHECK(t800 / t400 <= 2.6);
}
