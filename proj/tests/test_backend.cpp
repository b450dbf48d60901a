#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <amgkit/backend/builtin.hpp>

#include "oracle.hpp"

using vec = std::vector<double>;
using amgkit::backend::builtin;

namespace {

builtin<double> with_workers(int w) {
    builtin<double>::params p;
    p.workers = w;
    return builtin<double>(p);
}

amgkit::csr_matrix<double> two_by_two() {
    std::vector<amgkit::triplet<double>> t{{0, 0, 2}, {0, 1, -1}, {1, 0, -1}, {1, 1, 2}};
    return amgkit::csr_from_triplets(t, 2, 2);
}

} // namespace

TEST(Spmv, Examples) {
    builtin<double> bk;
    vec x{3, -4, 5}, y(3, 7.0);
    bk.spmv(1, amgkit::identity<double>(3), x, 0, y);
    EXPECT_EQ(y, x);

    vec z(2);
    bk.spmv(1, two_by_two(), vec{1, 1}, 0, z);
    EXPECT_EQ(z, (vec{1, 1}));

    vec w{9, 8};
    bk.spmv(0, two_by_two(), vec{1, 1}, 1, w);
    EXPECT_EQ(w, (vec{9, 8}));
}

TEST(Spmv, DimensionMismatch) {
    builtin<double> bk;
    vec x(3), y(2);
    EXPECT_THROW(bk.spmv(1, two_by_two(), x, 0, y), amgkit::dimension_error);
}

TEST(Spmv, MatchesDenseOracle) {
    builtin<double> bk;
    std::mt19937 gen(41);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 1 + gen() % 50, m = 1 + gen() % 50;
        auto A = oracle::random_sparse(n, m, 0.2, gen);
        auto x = oracle::random_vector(m, gen);
        auto y0 = oracle::random_vector(n, gen);
        auto y = y0;
        bk.spmv(0.5, A, x, -2.0, y);
        auto Ax = oracle::matvec(oracle::to_dense(A), x);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y[i], 0.5 * Ax[i] - 2.0 * y0[i], 1e-12);
    }
}

TEST(Spmv, Linearity) {
    builtin<double> bk;
    std::mt19937 gen(43);
    auto A = oracle::random_sparse(40, 40, 0.2, gen);
    auto x1 = oracle::random_vector(40, gen), x2 = oracle::random_vector(40, gen);
    vec s(40), y1(40), y2(40), ys(40);
    for (std::size_t i = 0; i < 40; ++i) s[i] = x1[i] + x2[i];
    bk.spmv(1, A, x1, 0, y1);
    bk.spmv(1, A, x2, 0, y2);
    bk.spmv(1, A, s, 0, ys);
    for (std::size_t i = 0; i < 40; ++i)
        EXPECT_LE(std::abs(ys[i] - y1[i] - y2[i]), 1e-12 * std::max(1.0, std::abs(ys[i])));
}

TEST(Residual, Examples) {
    builtin<double> bk;
    auto A = two_by_two();
    vec r(2);
    bk.residual(vec{1, 1}, A, vec{1, 0}, r);
    EXPECT_EQ(r, (vec{-1, 2}));

    bk.residual(vec{4, 5}, A, vec{0, 0}, r);
    EXPECT_EQ(r, (vec{4, 5}));

    // A [1 1]^T = [1 1]^T
    bk.residual(vec{1, 1}, A, vec{1, 1}, r);
    EXPECT_EQ(r, (vec{0, 0}));
}

TEST(Dot, Examples) {
    builtin<double> bk;
    EXPECT_EQ(bk.dot(vec{0, 0}, vec{0, 0}), 0.0);
    EXPECT_EQ(bk.dot(vec{1, 0, 0}, vec{7, 8, 9}), 7.0);
    EXPECT_EQ(bk.dot(vec{1, 2}, vec{3, 4}), 11.0);
    EXPECT_EQ(bk.norm2(vec{3, 4}), 5.0);
    EXPECT_THROW(bk.dot(vec{1}, vec{1, 2}), amgkit::dimension_error);
}

TEST(Dot, SymmetricAndPositive) {
    builtin<double> bk;
    std::mt19937 gen(47);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = oracle::random_vector(100, gen), y = oracle::random_vector(100, gen);
        EXPECT_EQ(bk.dot(x, y), bk.dot(y, x));
        EXPECT_GT(bk.dot(x, x), 0.0);
        EXPECT_NEAR(bk.dot(x, y), oracle::dot(x, y), 1e-12);
    }
}

TEST(VectorOps, Examples) {
    builtin<double> bk;
    vec x{1, 2, 3}, y{4, 5, 6};
    bk.axpby(1, x, 0, y);
    EXPECT_EQ(y, x);

    vec z{4, 5, 6};
    bk.axpby(0, x, 1, z);
    EXPECT_EQ(z, (vec{4, 5, 6}));

    vec w(2);
    bk.vmul(1, vec{2, 3}, vec{1, 1}, 0, w);
    EXPECT_EQ(w, (vec{2, 3}));

    vec t{1, 1, 1};
    bk.axpbypcz(1, x, 2, vec{1, 1, 1}, 3, t);
    EXPECT_EQ(t, (vec{6, 7, 8}));

    vec c(3);
    bk.copy(x, c);
    EXPECT_EQ(c, x);
    bk.set_zero(c);
    EXPECT_EQ(c, (vec{0, 0, 0}));
}

TEST(Backend, WorkerCountParity) {
    std::mt19937 gen(53);
    auto A = oracle::random_sparse(3000, 3000, 0.003, gen);
    auto x = oracle::random_vector(3000, gen);
    auto big = oracle::random_vector(20000, gen), big2 = oracle::random_vector(20000, gen);
    auto one = with_workers(1), four = with_workers(4);

    vec y1(3000), y4(3000);
    one.spmv(1, A, x, 0, y1);
    four.spmv(1, A, x, 0, y4);
    EXPECT_EQ(y1, y4);

    EXPECT_EQ(one.dot(big, big2), four.dot(big, big2));
    EXPECT_EQ(one.norm2(big), four.norm2(big));
    EXPECT_NEAR(one.dot(big, big2), oracle::dot(big, big2), 1e-12 * 20000);

    vec a1 = big2, a4 = big2;
    one.axpbypcz(0.3, big, -1.5, big2, 2.0, a1);
    four.axpbypcz(0.3, big, -1.5, big2, 2.0, a4);
    EXPECT_EQ(a1, a4);
}
