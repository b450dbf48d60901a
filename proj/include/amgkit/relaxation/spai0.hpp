#pragma once

/**
 * \file   amgkit/relaxation/spai0.hpp
 * \brief  Diagonal sparse approximate inverse smoother.
 *
 * M = diag(m) minimizes ||I - M A||_F over diagonal matrices. The
 * Frobenius norm splits into independent row terms, and minimizing
 * sum_j (delta_ij - m_i a_ij)^2 over m_i gives m_i = a_ii / sum_j a_ij^2.
 */

#include <string>

#include <amgkit/relaxation/params.hpp>
#include <amgkit/sparse.hpp>

namespace amgkit {
namespace relaxation {

template <class T>
std::vector<T> spai0_diagonal(const csr_matrix<T> &A) {
    amgkit::detail::check_dims(A.nrows == A.ncols, "spai0 requires a square matrix");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(A.nrows);
    std::vector<T> m(A.nrows);
    bool zero_diag = false;
#pragma omp parallel for reduction(|| : zero_diag)
    for (std::ptrdiff_t si = 0; si < n; ++si) {
        const std::size_t i = static_cast<std::size_t>(si);
        T num = 0, den = 0;
        for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            const T v = A.values[k];
            den += v * v;
            if (A.col_idx[k] == i) num += v;
        }
        if (num == T(0)) zero_diag = true;
        else m[i] = num / den;
    }
    if (zero_diag) {
        for (std::size_t i = 0; i < A.nrows; ++i)
            if (A.at(i, i) == T(0))
                throw setup_error("spai0: zero diagonal entry in row " + std::to_string(i));
    }
    return m;
}

/// u <- u + M (f - A u)
template <class Backend>
class spai0 {
  public:
    using value_type = typename Backend::value_type;
    using matrix = typename Backend::matrix;
    using vector = typename Backend::vector;
    using params = relaxation::params;

    spai0(const matrix &A, const params &, const Backend &) : m_(spai0_diagonal(A)) {}

    void apply_pre(const Backend &bk, const matrix &A, const vector &f, vector &u,
                   workspace<Backend> &w) const {
        apply(bk, A, f, u, w);
    }

    void apply_post(const Backend &bk, const matrix &A, const vector &f, vector &u,
                    workspace<Backend> &w) const {
        apply(bk, A, f, u, w);
    }

    const vector &diagonal() const { return m_; }

  private:
    vector m_;

    void apply(const Backend &bk, const matrix &A, const vector &f, vector &u,
               workspace<Backend> &w) const {
        bk.residual(f, A, u, w.r);
        bk.vmul(1, m_, w.r, 1, u);
    }
};

} // namespace relaxation
} // namespace amgkit
