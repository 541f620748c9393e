#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "sketchbench/matrix.hpp"
#include "sketchbench/rng.hpp"
#include "sketchbench/svd.hpp"

using namespace skb;

namespace {

RealMatrix random_matrix(std::size_t rows, std::size_t cols, uint64_t seed) {
    Rng rng(seed);
    RealMatrix m(rows, cols);
    for (double& v : m.data()) v = rng.gaussian();
    return m;
}

void check_factorization(const RealMatrix& m, const SvdResult& s, double tol) {
    const std::size_t k = s.singular.size();
    REQUIRE(k == std::min(m.rows(), m.cols()));
    // Orthonormal factors.
    RealMatrix ltl = matmul_at_b(s.left, s.left);
    RealMatrix rtr = matmul_at_b(s.right, s.right);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const double expected = i == j ? 1.0 : 0.0;
            CHECK(std::abs(ltl(i, j) - expected) < 1e-10);
            CHECK(std::abs(rtr(i, j) - expected) < 1e-10);
        }
    }
    // Nonincreasing, nonnegative.
    for (std::size_t i = 0; i + 1 < k; ++i) CHECK(s.singular[i] >= s.singular[i + 1]);
    CHECK(s.singular[k - 1] >= 0.0);
    // Reconstruction.
    RealMatrix scaled = s.left;
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < scaled.rows(); ++i) scaled(i, j) *= s.singular[j];
    RealMatrix recon = matmul(scaled, transpose(s.right));
    CHECK(frobenius_norm(subtract(m, recon)) <= tol * std::max(1.0, frobenius_norm(m)));
}

} // namespace

TEST_CASE("svd of diagonal matrix sorts singular values") {
    RealMatrix m(2, 2);
    m(0, 0) = 3.0;
    m(1, 1) = 4.0;
    SvdResult s = svd(m);
    CHECK(s.singular[0] == Catch::Approx(4.0).epsilon(1e-12));
    CHECK(s.singular[1] == Catch::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("svd of a permutation matrix") {
    RealMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    SvdResult s = svd(m);
    CHECK(s.singular[0] == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(s.singular[1] == Catch::Approx(1.0).epsilon(1e-12));
    check_factorization(m, s, 1e-10);
}

TEST_CASE("svd singular values match Gram eigenvalue oracle") {
    const RealMatrix m = random_matrix(4, 3, 101);
    SvdResult s = svd(m);
    const RealMatrix gram = matmul_at_b(m, m);
    const auto eig = oracle::jacobi_eigenvalues(gram);
    REQUIRE(eig.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(s.singular[i] == Catch::Approx(std::sqrt(std::max(eig[i], 0.0))).margin(1e-9));
}

TEST_CASE("svd round trip on random shapes") {
    for (auto [rows, cols, seed] :
         {std::tuple<std::size_t, std::size_t, uint64_t>{1, 1, 1},
          {5, 5, 2},
          {8, 3, 3},
          {3, 8, 4},
          {64, 64, 5},
          {40, 64, 6}}) {
        const RealMatrix m = random_matrix(rows, cols, seed);
        check_factorization(m, svd(m), 1e-8);
    }
}

TEST_CASE("svd of rank-deficient and zero matrices") {
    SECTION("zero matrix") {
        RealMatrix m(4, 3);
        SvdResult s = svd(m);
        for (double v : s.singular) CHECK(v == 0.0);
        check_factorization(m, s, 1e-10);
    }
    SECTION("rank one") {
        Rng rng(7);
        RealMatrix m(6, 4);
        RealVector a(6), b(4);
        for (double& v : a) v = rng.gaussian();
        for (double& v : b) v = rng.gaussian();
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t i = 0; i < 6; ++i) m(i, j) = a[i] * b[j];
        SvdResult s = svd(m);
        CHECK(s.singular[0] > 0.0);
        for (std::size_t i = 1; i < 4; ++i) CHECK(s.singular[i] < 1e-10 * s.singular[0]);
        check_factorization(m, s, 1e-8);
    }
}

TEST_CASE("svd right vectors are eigenvectors of the Gram matrix") {
    const RealMatrix m = random_matrix(6, 4, 42);
    SvdResult s = svd(m);
    const RealMatrix gram = matmul_at_b(m, m);
    for (std::size_t j = 0; j < 4; ++j) {
        RealVector v = s.right.column(j);
        RealVector gv = mat_vec(gram, v);
        const double lambda = s.singular[j] * s.singular[j];
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(gv[i] - lambda * v[i]) < 1e-8);
    }
}
