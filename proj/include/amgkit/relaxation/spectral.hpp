#pragma once

/**
 * \file   amgkit/relaxation/spectral.hpp
 * \brief  Spectral radius bounds for A or D^-1 A: power iteration and the
 *         Gershgorin disc bound.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <amgkit/error.hpp>
#include <amgkit/sparse.hpp>

namespace amgkit {
namespace relaxation {

template <class T>
struct spectral_estimate {
    T value = 0;
    /// False when successive estimates were still moving by more than 1%
    /// at the last iteration.
    bool converged = false;
};

namespace detail {

template <class T>
std::vector<T> inverse_diagonal(const csr_matrix<T> &A, const char *who) {
    std::vector<T> d = A.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == T(0))
            throw setup_error(std::string(who) + ": zero diagonal entry in row " + std::to_string(i));
        d[i] = T(1) / d[i];
    }
    return d;
}

/// Fixed-seed start vector with entries in [-1, 1).
/// Not all-ones: for Laplacians that vector is (nearly) orthogonal to the
/// highest-frequency eigenvector.
template <class T>
std::vector<T> start_vector(std::size_t n) {
    std::mt19937_64 gen(20190907u);
    std::vector<T> x(n);
    for (auto &v : x) v = static_cast<T>(static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0);
    return x;
}

} // namespace detail

/// Power iteration estimate of rho(A), or of rho(D^-1 A) when diag_scaled.
template <class T>
spectral_estimate<T> power_iteration(const csr_matrix<T> &A, bool diag_scaled,
                                     std::size_t iters) {
    amgkit::detail::check_dims(A.nrows == A.ncols, "spectral radius requires a square matrix");
    const std::size_t n = A.nrows;
    spectral_estimate<T> est;
    if (n == 0) return est;

    std::vector<T> dinv;
    if (diag_scaled) dinv = detail::inverse_diagonal(A, "estimate_spectral_radius");

    std::vector<T> x = detail::start_vector<T>(n), y(n);
    auto norm = [](const std::vector<T> &v) {
        T s = 0;
        for (T a : v) s += a * a;
        return std::sqrt(s);
    };
    {
        T nx = norm(x);
        for (auto &v : x) v /= nx;
    }

    T prev = 0;
    for (std::size_t it = 0; it < std::max<std::size_t>(iters, 1); ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            T s = 0;
            for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
                s += A.values[k] * x[A.col_idx[k]];
            y[i] = diag_scaled ? dinv[i] * s : s;
        }
        T ny = norm(y);
        est.value = ny;
        est.converged = it > 0 && std::abs(ny - prev) <= T(0.01) * ny;
        if (ny == T(0)) {
            est.converged = true;
            break;
        }
        prev = ny;
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
    }
    return est;
}

template <class T>
T estimate_spectral_radius(const csr_matrix<T> &A, bool diag_scaled, std::size_t iters) {
    return power_iteration(A, diag_scaled, iters).value;
}

/// Gershgorin upper bound: max_i sum_j |a_ij| (scaled by 1/|a_ii| when requested).
template <class T>
T gershgorin_bound(const csr_matrix<T> &A, bool diag_scaled) {
    T bound = 0;
    for (std::size_t i = 0; i < A.nrows; ++i) {
        T s = 0, d = 0;
        for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            s += std::abs(A.values[k]);
            if (A.col_idx[k] == i) d = std::abs(A.values[k]);
        }
        if (diag_scaled) {
            if (d == T(0))
                throw setup_error("gershgorin_bound: zero diagonal entry in row " + std::to_string(i));
            s /= d;
        }
        bound = std::max(bound, s);
    }
    return bound;
}

} // namespace relaxation
} // namespace amgkit
