#include <cmath>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include <amgkit/amg.hpp>
#include <amgkit/backend/builtin.hpp>
#include <amgkit/coarsening/aggregation.hpp>
#include <amgkit/dense_lu.hpp>
#include <amgkit/poisson.hpp>
#include <amgkit/relaxation/damped_jacobi.hpp>
#include <amgkit/relaxation/spai0.hpp>

#include "oracle.hpp"

using Backend = amgkit::backend::builtin<double>;
using SA = amgkit::amg<Backend, amgkit::coarsening::smoothed_aggregation, amgkit::relaxation::spai0>;
using SAJacobi =
    amgkit::amg<Backend, amgkit::coarsening::smoothed_aggregation, amgkit::relaxation::damped_jacobi>;
using vec = std::vector<double>;

namespace {

vec residual(const amgkit::csr_matrix<double> &A, const vec &f, const vec &u) {
    vec r(f.size());
    Backend().residual(f, A, u, r);
    return r;
}

} // namespace

TEST(DenseLU, ReconstructsPA) {
    std::mt19937 gen(1);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + gen() % 30;
        auto A = oracle::random_sparse(n, n, 0.4, gen);
        std::vector<amgkit::triplet<double>> t;
        for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 0.5});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) t.push_back({i, A.col_idx[k], A.values[k]});
        A = amgkit::csr_from_triplets(t, n, n);
        amgkit::dense_lu<double> lu(A);
        const auto &F = lu.factors();
        const auto &p = lu.perm();
        auto Ad = oracle::to_dense(A);
        double err = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0;
                for (std::size_t k = 0; k <= std::min(i, j); ++k) {
                    double l = k == i ? 1.0 : F[i * n + k];
                    s += l * F[k * n + j];
                }
                err = std::max(err, std::abs(s - Ad(p[i], j)));
            }
        EXPECT_LE(err, 1e-10 * Ad.max_abs());

        auto b = oracle::random_vector(n, gen);
        vec x(n);
        lu.solve(b, x);
        auto ref = oracle::solve(Ad, b);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], ref[i], 1e-9 * std::max(1.0, std::abs(ref[i])));
    }
}

TEST(DenseLU, SingularThrows) {
    std::vector<amgkit::triplet<double>> t{{0, 0, 1}, {0, 1, 2}, {1, 0, 2}, {1, 1, 4}};
    EXPECT_THROW(amgkit::dense_lu<double>(amgkit::csr_from_triplets(t, 2, 2)), amgkit::setup_error);
}

TEST(Setup, SmallMatrixIsSingleLevel) {
    auto A = oracle::poisson2d(10);
    SA amg(A);
    EXPECT_EQ(amg.num_levels(), 1u);
    std::mt19937 gen(2);
    auto f = oracle::random_vector(100, gen);
    vec u(100);
    amg.apply(f, u);
    EXPECT_LE(oracle::norm(residual(A, f, u)), 1e-10 * oracle::norm(f));

    auto rep = amg.report();
    EXPECT_EQ(rep.operator_complexity, 1.0);
    EXPECT_EQ(rep.grid_complexity, 1.0);
}

TEST(Setup, Poisson16WithSmallCoarseEnough) {
    auto pb = amgkit::generate_poisson<double>(16);
    SA::params prm;
    prm.coarse_enough = 100;
    SA amg(pb.A, prm);
    ASSERT_GE(amg.num_levels(), 2u);
    const auto &L = amg.get_hierarchy().levels;
    for (std::size_t i = 0; i + 1 < L.size(); ++i) {
        EXPECT_LT(L[i + 1].A.nrows, L[i].A.nrows);
        EXPECT_EQ(L[i + 1].A.nrows, L[i].P.ncols);
        EXPECT_EQ(L[i].R, amgkit::transpose(L[i].P));
    }
    EXPECT_TRUE(amg.get_hierarchy().stagnated || L.back().A.nrows <= 100);
}

TEST(Setup, IdentityStagnates) {
    SA::params prm;
    prm.coarse_enough = 1;
    auto A = amgkit::identity<double>(10);
    SA amg(A, prm);
    EXPECT_TRUE(amg.get_hierarchy().stagnated);
    EXPECT_EQ(amg.num_levels(), 1u);
    vec f{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, u(10);
    amg.apply(f, u);
    EXPECT_EQ(u, f);
}

TEST(Setup, MaxLevelsRespected) {
    auto pb = amgkit::generate_poisson<double>(16);
    SA::params prm;
    prm.coarse_enough = 10;
    prm.max_levels = 2;
    SA amg(pb.A, prm);
    EXPECT_EQ(amg.num_levels(), 2u);
}

TEST(Setup, InvalidParams) {
    auto A = oracle::poisson1d(10);
    SA::params prm;
    prm.npre = 0;
    prm.npost = 0;
    EXPECT_THROW(SA(A, prm), amgkit::config_error);
    prm = SA::params{};
    prm.coarse_enough = 0;
    EXPECT_THROW(SA(A, prm), amgkit::config_error);
    EXPECT_THROW(SA(oracle::random_sparse(3, 4, 0.5, *std::make_unique<std::mt19937>(1))),
                 amgkit::dimension_error);
}

TEST(VCycle, OneCycleReducesResidualOnPoisson1D) {
    auto A = oracle::poisson1d(64);
    SA::params prm;
    prm.coarse_enough = 8;
    SA amg(A, prm);
    ASSERT_GE(amg.num_levels(), 2u);
    std::mt19937 gen(3);
    auto f = oracle::random_vector(64, gen);
    vec u(64, 0.0);
    amg.vcycle(0, f, u);
    EXPECT_LT(oracle::norm(residual(A, f, u)), oracle::norm(f));

    vec z(64, 0.0), zero(64, 0.0);
    amg.vcycle(0, zero, z);
    EXPECT_EQ(z, zero);
}

TEST(Preconditioner, ZeroAndScaling) {
    auto pb = amgkit::generate_poisson<double>(12);
    SA::params prm;
    prm.coarse_enough = 50;
    SA amg(pb.A, prm);
    const std::size_t n = amg.size();
    vec z(n, 1.0);
    amg.apply(vec(n, 0.0), z);
    EXPECT_EQ(z, vec(n, 0.0));

    std::mt19937 gen(4);
    auto r = oracle::random_vector(n, gen);
    vec ar(n), z1(n), z2(n);
    for (std::size_t i = 0; i < n; ++i) ar[i] = 3.5 * r[i];
    amg.apply(r, z1);
    amg.apply(ar, z2);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(z2[i], 3.5 * z1[i], 1e-12 * std::abs(z2[i]) + 1e-300);
}

template <class Amg>
void check_linear_and_self_adjoint(std::size_t grid) {
    auto pb = amgkit::generate_poisson<double>(grid);
    typename Amg::params prm;
    prm.coarse_enough = 50;
    Amg amg(pb.A, prm);
    ASSERT_GE(amg.num_levels(), 2u);
    const std::size_t n = amg.size();
    std::mt19937 gen(5);
    for (int trial = 0; trial < 5; ++trial) {
        auto r1 = oracle::random_vector(n, gen), r2 = oracle::random_vector(n, gen);
        const double a = 0.7, b = -1.3;
        vec c(n), z1(n), z2(n), zc(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = a * r1[i] + b * r2[i];
        amg.apply(r1, z1);
        amg.apply(r2, z2);
        amg.apply(c, zc);
        vec lin(n);
        for (std::size_t i = 0; i < n; ++i) lin[i] = zc[i] - a * z1[i] - b * z2[i];
        EXPECT_LE(oracle::norm(lin), 1e-11 * oracle::norm(zc));

        const double lhs = oracle::dot(z1, r2), rhs = oracle::dot(r1, z2);
        EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::max(std::abs(lhs), std::abs(rhs)));
    }
}

TEST(Preconditioner, LinearAndSelfAdjointSpai0) { check_linear_and_self_adjoint<SA>(12); }
TEST(Preconditioner, LinearAndSelfAdjointJacobi) { check_linear_and_self_adjoint<SAJacobi>(12); }

TEST(Preconditioner, StationaryIterationContracts) {
    auto pb = amgkit::generate_poisson<double>(16);
    SA amg(pb.A);
    const auto &A = pb.A;
    const std::size_t n = amg.size();
    vec u(n, 0.0), z(n);
    auto r = residual(A, pb.rhs, u);
    std::vector<double> norms{oracle::norm(r)};
    for (int k = 0; k < 10; ++k) {
        amg.apply(r, z);
        for (std::size_t i = 0; i < n; ++i) u[i] += z[i];
        r = residual(A, pb.rhs, u);
        norms.push_back(oracle::norm(r));
    }
    double avg = std::pow(norms[10] / norms[1], 1.0 / 9.0);
    EXPECT_LT(avg, 0.5);
}

TEST(Preconditioner, CloneSharesHierarchyWithOwnWorkspace) {
    auto pb = amgkit::generate_poisson<double>(12);
    SA::params prm;
    prm.coarse_enough = 50;
    SA amg(pb.A, prm);
    SA other = amg.clone();
    EXPECT_EQ(&amg.get_hierarchy(), &other.get_hierarchy());

    std::mt19937 gen(6);
    auto r1 = oracle::random_vector(amg.size(), gen), r2 = oracle::random_vector(amg.size(), gen);
    vec ref1(amg.size()), ref2(amg.size());
    amg.apply(r1, ref1);
    amg.apply(r2, ref2);

    vec z1(amg.size()), z2(amg.size());
    std::thread t1([&] { for (int k = 0; k < 5; ++k) amg.apply(r1, z1); });
    std::thread t2([&] { for (int k = 0; k < 5; ++k) other.apply(r2, z2); });
    t1.join();
    t2.join();
    EXPECT_EQ(z1, ref1);
    EXPECT_EQ(z2, ref2);
}

TEST(Report, ComplexityArithmetic) {
    auto one = amgkit::make_hierarchy_report({{100, 500}}, false);
    EXPECT_EQ(one.operator_complexity, 1.0);
    EXPECT_EQ(one.grid_complexity, 1.0);
    auto two = amgkit::make_hierarchy_report({{100, 500}, {25, 200}}, false);
    EXPECT_EQ(two.grid_complexity, 1.25);
    EXPECT_EQ(two.operator_complexity, 1.4);
    std::ostringstream os;
    os << two;
    EXPECT_NE(os.str().find("Operator complexity"), std::string::npos);
}

TEST(Report, Poisson32Complexity) {
    auto pb = amgkit::generate_poisson<double>(32);
    SA amg(pb.A);
    auto rep = amg.report();
    EXPECT_LT(rep.operator_complexity, 2.0);
    EXPECT_LT(rep.grid_complexity, 1.5);
    EXPECT_FALSE(rep.stagnated);
    EXPECT_LE(rep.levels.back().rows, 3000u);
}
