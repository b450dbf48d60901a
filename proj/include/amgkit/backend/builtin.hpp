#pragma once

/**
 * \file   amgkit/backend/builtin.hpp
 * \brief  Shared-memory backend: vector type and the parallel primitives
 *         used by smoothers and Krylov solvers during the solve phase.
 *
 * A backend is a class exposing `value_type`, `matrix`, `vector` and the
 * primitive set below as member functions. Smoothers and solvers are
 * written against that surface only, so a different backend (another
 * threading model, user-owned storage) can be dropped in without touching
 * them.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <amgkit/error.hpp>
#include <amgkit/sparse.hpp>

namespace amgkit {
namespace backend {

template <class T = double>
struct builtin {
    using value_type = T;
    using matrix = csr_matrix<T>;
    using vector = std::vector<T>;

    struct params {
        /// Worker count for the parallel loops; 0 uses the OpenMP default.
        int workers = 0;
    };

    /// Reductions are summed in fixed-size blocks and the block sums are
    /// added in order, so dot/norm2 give bit-identical results for any
    /// worker count.
    static constexpr std::size_t reduction_block = 4096;

    params prm;

    builtin() = default;
    explicit builtin(params p) : prm(p) {}

    int workers() const {
#ifdef _OPENMP
        return prm.workers > 0 ? prm.workers : omp_get_max_threads();
#else
        return 1;
#endif
    }

    vector make_vector(std::size_t n) const { return vector(n, T(0)); }

    /// y = alpha * A * x + beta * y
    void spmv(T alpha, const matrix &A, const vector &x, T beta, vector &y) const {
        detail::check_dims(x.size() == A.ncols && y.size() == A.nrows, "spmv");
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(A.nrows);
        const std::size_t *ptr = A.row_ptr.data();
        const std::size_t *col = A.col_idx.data();
        const T *val = A.values.data();
        const T *xp = x.data();
        T *yp = y.data();
        // beta == 0 overwrites y so that NaN garbage in y cannot leak.
        if (beta == T(0)) {
#pragma omp parallel for num_threads(workers())
            for (std::ptrdiff_t i = 0; i < n; ++i) {
                T s = 0;
                for (std::size_t k = ptr[i]; k < ptr[i + 1]; ++k) s += val[k] * xp[col[k]];
                yp[i] = alpha * s;
            }
        } else {
#pragma omp parallel for num_threads(workers())
            for (std::ptrdiff_t i = 0; i < n; ++i) {
                T s = 0;
                for (std::size_t k = ptr[i]; k < ptr[i + 1]; ++k) s += val[k] * xp[col[k]];
                yp[i] = alpha * s + beta * yp[i];
            }
        }
    }

    /// r = f - A * x
    void residual(const vector &f, const matrix &A, const vector &x, vector &r) const {
        detail::check_dims(x.size() == A.ncols && f.size() == A.nrows && r.size() == A.nrows,
                           "residual");
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(A.nrows);
        const std::size_t *ptr = A.row_ptr.data();
        const std::size_t *col = A.col_idx.data();
        const T *val = A.values.data();
        const T *xp = x.data();
        const T *fp = f.data();
        T *rp = r.data();
#pragma omp parallel for num_threads(workers())
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            T s = fp[i];
            for (std::size_t k = ptr[i]; k < ptr[i + 1]; ++k) s -= val[k] * xp[col[k]];
            rp[i] = s;
        }
    }

    T dot(const vector &x, const vector &y) const {
        detail::check_dims(x.size() == y.size(), "dot");
        return blocked_sum(x.size(), [&](std::size_t i) { return x[i] * y[i]; });
    }

    T norm2(const vector &x) const {
        return std::sqrt(blocked_sum(x.size(), [&](std::size_t i) { return x[i] * x[i]; }));
    }

    /// y = a * x + b * y
    void axpby(T a, const vector &x, T b, vector &y) const {
        detail::check_dims(x.size() == y.size(), "axpby");
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
        if (b == T(0)) {
#pragma omp parallel for num_threads(workers())
            for (std::ptrdiff_t i = 0; i < n; ++i) y[i] = a * x[i];
        } else {
#pragma omp parallel for num_threads(workers())
            for (std::ptrdiff_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
        }
    }

    /// z = a * x + b * y + c * z
    void axpbypcz(T a, const vector &x, T b, const vector &y, T c, vector &z) const {
        detail::check_dims(x.size() == y.size() && y.size() == z.size(), "axpbypcz");
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
        if (c == T(0)) {
#pragma omp parallel for num_threads(workers())
            for (std::ptrdiff_t i = 0; i < n; ++i) z[i] = a * x[i] + b * y[i];
        } else {
#pragma omp parallel for num_threads(workers())
            for (std::ptrdiff_t i = 0; i < n; ++i) z[i] = a * x[i] + b * y[i] + c * z[i];
        }
    }

    /// y = a * (d .* x) + b * y
    void vmul(T a, const vector &d, const vector &x, T b, vector &y) const {
        detail::check_dims(d.size() == x.size() && x.size() == y.size(), "vmul");
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
        if (b == T(0)) {
#pragma omp parallel for num_threads(workers())
            for (std::ptrdiff_t i = 0; i < n; ++i) y[i] = a * d[i] * x[i];
        } else {
#pragma omp parallel for num_threads(workers())
            for (std::ptrdiff_t i = 0; i < n; ++i) y[i] = a * d[i] * x[i] + b * y[i];
        }
    }

    void copy(const vector &x, vector &y) const {
        detail::check_dims(x.size() == y.size(), "copy");
        std::copy(x.begin(), x.end(), y.begin());
    }

    void set_zero(vector &x) const { std::fill(x.begin(), x.end(), T(0)); }

  private:
    template <class F>
    T blocked_sum(std::size_t n, F &&term) const {
        const std::size_t nblocks = (n + reduction_block - 1) / reduction_block;
        if (nblocks <= 1) {
            T s = 0;
            for (std::size_t i = 0; i < n; ++i) s += term(i);
            return s;
        }
        // Vectors up to 16M entries reduce without touching the heap.
        constexpr std::size_t stack_blocks = 4096;
        T stack_buf[stack_blocks];
        std::vector<T> heap_buf;
        T *partial = stack_buf;
        if (nblocks > stack_blocks) {
            heap_buf.resize(nblocks);
            partial = heap_buf.data();
        }
        const std::ptrdiff_t nb = static_cast<std::ptrdiff_t>(nblocks);
#pragma omp parallel for num_threads(workers())
        for (std::ptrdiff_t b = 0; b < nb; ++b) {
            const std::size_t beg = static_cast<std::size_t>(b) * reduction_block;
            const std::size_t end = std::min(n, beg + reduction_block);
            T s = 0;
            for (std::size_t i = beg; i < end; ++i) s += term(i);
            partial[b] = s;
        }
        T s = 0;
        for (std::size_t b = 0; b < nblocks; ++b) s += partial[b];
        return s;
    }
};

} // namespace backend
} // namespace amgkit
