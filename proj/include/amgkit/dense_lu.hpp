#pragma once

/**
 * \file   amgkit/dense_lu.hpp
 * \brief  Dense LU factorization with partial pivoting, used as the direct
 *         solver on the coarsest level.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <amgkit/error.hpp>
#include <amgkit/sparse.hpp>

namespace amgkit {

template <class T>
class dense_lu {
  public:
    /// Largest dimension accepted for densification.
    static constexpr std::size_t max_size = 20000;
    /// Pivots below this fraction of max|a_ij| are treated as singular.
    static constexpr double pivot_tolerance = 1e-14;

    dense_lu() = default;

    explicit dense_lu(const csr_matrix<T> &A) : n_(A.nrows) {
        detail::check_dims(A.nrows == A.ncols, "dense_lu requires a square matrix");
        if (n_ > max_size)
            throw setup_error("coarsest level has " + std::to_string(n_) +
                              " rows, too large for a dense factorization");

        lu_.assign(n_ * n_, T(0));
        T amax = 0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
                lu_[i * n_ + A.col_idx[k]] = A.values[k];
                amax = std::max(amax, std::abs(A.values[k]));
            }

        perm_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;

        const T tiny = static_cast<T>(pivot_tolerance) * amax;
        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t p = k;
            T best = std::abs(lu_[k * n_ + k]);
            for (std::size_t i = k + 1; i < n_; ++i) {
                T v = std::abs(lu_[i * n_ + k]);
                if (v > best) {
                    best = v;
                    p = i;
                }
            }
            if (!(best > tiny) || best == T(0))
                throw setup_error("singular coarsest matrix: pivot " + std::to_string(k) +
                                  " below tolerance");
            if (p != k) {
                std::swap_ranges(lu_.begin() + static_cast<std::ptrdiff_t>(k * n_),
                                 lu_.begin() + static_cast<std::ptrdiff_t>((k + 1) * n_),
                                 lu_.begin() + static_cast<std::ptrdiff_t>(p * n_));
                std::swap(perm_[k], perm_[p]);
            }

            const T pivot = lu_[k * n_ + k];
            const T *row_k = lu_.data() + k * n_;
            const std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(k + 1);
            const std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n_);
#pragma omp parallel for if (n_ - k > 256)
            for (std::ptrdiff_t si = lo; si < hi; ++si) {
                T *row_i = lu_.data() + static_cast<std::size_t>(si) * n_;
                const T l = row_i[k] / pivot;
                row_i[k] = l;
                if (l == T(0)) continue;
                for (std::size_t j = k + 1; j < n_; ++j) row_i[j] -= l * row_k[j];
            }
        }
    }

    std::size_t size() const { return n_; }

    /// x = A^-1 b. x and b may not alias.
    template <class Vec>
    void solve(const Vec &b, Vec &x) const {
        detail::check_dims(b.size() == n_ && x.size() == n_, "dense_lu::solve");
        for (std::size_t i = 0; i < n_; ++i) x[i] = b[perm_[i]];
        for (std::size_t i = 0; i < n_; ++i) {
            const T *row = lu_.data() + i * n_;
            T s = x[i];
            for (std::size_t j = 0; j < i; ++j) s -= row[j] * x[j];
            x[i] = s;
        }
        for (std::size_t i = n_; i-- > 0;) {
            const T *row = lu_.data() + i * n_;
            T s = x[i];
            for (std::size_t j = i + 1; j < n_; ++j) s -= row[j] * x[j];
            x[i] = s / row[i];
        }
    }

    /// Row permutation: row i of PA is row perm()[i] of A.
    const std::vector<std::size_t> &perm() const { return perm_; }
    /// Packed factors, row-major: strict lower part is L (unit diagonal), upper part is U.
    const std::vector<T> &factors() const { return lu_; }

  private:
    std::size_t n_ = 0;
    std::vector<T> lu_;
    std::vector<std::size_t> perm_;
};

} // namespace amgkit
