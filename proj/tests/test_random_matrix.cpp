#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sketchbench/random_matrix.hpp"

using namespace skb;

namespace {

double entry_mean(const RealMatrix& m) {
    double acc = 0.0;
    for (double v : m.data()) acc += v;
    return acc / static_cast<double>(m.data().size());
}

double entry_variance(const RealMatrix& m) {
    const double mu = entry_mean(m);
    double acc = 0.0;
    for (double v : m.data()) acc += (v - mu) * (v - mu);
    return acc / static_cast<double>(m.data().size());
}

} // namespace

TEST_CASE("sample_projection is deterministic per seed") {
    auto a = sample_projection(4, 2, DistributionSpec::gaussian_scaled(), 7);
    auto b = sample_projection(4, 2, DistributionSpec::gaussian_scaled(), 7);
    CHECK(a.mat == b.mat);
    auto c = sample_projection(4, 2, DistributionSpec::gaussian_scaled(), 8);
    CHECK_FALSE(a.mat == c.mat);
}

TEST_CASE("gaussian scaled moments") {
    auto u = sample_projection(1000, 100, DistributionSpec::gaussian_scaled(), 1);
    CHECK(std::abs(entry_mean(u.mat)) <= 0.002);
    const double var = entry_variance(u.mat);
    CHECK(var >= 0.01 * 0.95);
    CHECK(var <= 0.01 * 1.05);
}

TEST_CASE("gaussian unit moments") {
    auto u = sample_projection(1000, 100, DistributionSpec::gaussian_unit(), 2);
    CHECK(std::abs(entry_mean(u.mat)) <= 0.02);
    const double var = entry_variance(u.mat);
    CHECK(var >= 0.95);
    CHECK(var <= 1.05);
}

TEST_CASE("rademacher moments") {
    auto u = sample_projection(1000, 100, DistributionSpec::rademacher(), 3);
    CHECK(std::abs(entry_mean(u.mat)) <= 0.002);
    const double var = entry_variance(u.mat);
    CHECK(var >= 0.01 * 0.95);
    CHECK(var <= 0.01 * 1.05);
    for (double v : u.mat.data()) CHECK(std::abs(std::abs(v) - 0.1) < 1e-15);
}

TEST_CASE("achlioptas sparsity and moments") {
    auto u = sample_projection(1000, 100, DistributionSpec::achlioptas(), 1);
    std::size_t zeros = 0;
    for (double v : u.mat.data())
        if (v == 0.0) ++zeros;
    const double zero_frac = static_cast<double>(zeros) / 1e5;
    CHECK(zero_frac >= 2.0 / 3.0 - 0.02);
    CHECK(zero_frac <= 2.0 / 3.0 + 0.02);
    const double var = entry_variance(u.mat);
    CHECK(var >= 0.01 * 0.95);
    CHECK(var <= 0.01 * 1.05);
}

TEST_CASE("independence proxy: lagged correlation is tiny") {
    auto u = sample_projection(1000, 100, DistributionSpec::gaussian_scaled(), 5);
    const auto& d = u.mat.data();
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    const double mu = entry_mean(u.mat);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        sxy += (d[i] - mu) * (d[i + 1] - mu);
        sxx += (d[i] - mu) * (d[i] - mu);
        syy += (d[i + 1] - mu) * (d[i + 1] - mu);
    }
    CHECK(std::abs(sxy / std::sqrt(sxx * syy)) <= 0.02);
}

TEST_CASE("sample_projection rejects binary spec") {
    CHECK_THROWS_AS(sample_projection(4, 2, DistributionSpec::bernoulli(0.5), 0),
                    InvalidParameter);
}

TEST_CASE("hypercube matrix determinism and frequency") {
    auto a = sample_hypercube_matrix(8, 4, 0.5, 3);
    auto b = sample_hypercube_matrix(8, 4, 0.5, 3);
    CHECK(a.mat == b.mat);

    auto big = sample_hypercube_matrix(2000, 50, 0.1, 9);
    const double ones = static_cast<double>(big.mat.popcount()) / (2000.0 * 50.0);
    CHECK(ones >= 0.09);
    CHECK(ones <= 0.11);

    CHECK_THROWS_AS(sample_hypercube_matrix(4, 4, 0.0, 0), InvalidParameter);
    CHECK_THROWS_AS(sample_hypercube_matrix(4, 4, 1.0, 0), InvalidParameter);
}

TEST_CASE("hypercube matrix with vanishing density stays valid") {
    auto u = sample_hypercube_matrix(1000, 100, 1e-9, 12);
    CHECK(u.mat.popcount() == 0);
}

TEST_CASE("sign diagonal") {
    auto one = sample_sign_diagonal(1, 0);
    REQUIRE(one.signs.size() == 1);
    CHECK((one.signs[0] == 1.0 || one.signs[0] == -1.0));

    auto a = sample_sign_diagonal(64, 4);
    auto b = sample_sign_diagonal(64, 4);
    CHECK(a.signs == b.signs);

    auto big = sample_sign_diagonal(100000, 5);
    double mean = 0.0;
    for (double s : big.signs) {
        CHECK((s == 1.0 || s == -1.0));
        mean += s;
    }
    mean /= 1e5;
    CHECK(std::abs(mean) <= 0.02);
}

TEST_CASE("column substreams make sampling order irrelevant") {
    // A wider matrix reproduces the narrower one's columns (up to the 1/sqrt(p)
    // scaling), because each column draws from its own substream.
    auto narrow = sample_projection(32, 3, DistributionSpec::gaussian_scaled(), 77);
    auto wide = sample_projection(32, 5, DistributionSpec::gaussian_scaled(), 77);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 32; ++i)
            CHECK(narrow.mat(i, j) * std::sqrt(3.0) ==
                  Catch::Approx(wide.mat(i, j) * std::sqrt(5.0)).margin(1e-15));
}

TEST_CASE("distribution CLI names round-trip") {
    for (const char* name : {"gaussian", "gaussian-unit", "rademacher", "sparse"})
        CHECK(DistributionSpec::parse(name).name() == name);
    CHECK(DistributionSpec::parse("binary", 0.25).name() == "binary");
    CHECK_THROWS_AS(DistributionSpec::parse("cauchy"), InvalidParameter);
}
