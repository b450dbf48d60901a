#pragma once

#include <amgkit/relaxation/params.hpp>
#include <amgkit/relaxation/spectral.hpp>

namespace amgkit {
namespace relaxation {

/// Sequential in-place Gauss-Seidel: forward sweep before the coarse
/// correction, backward sweep after it.
template <class Backend>
class gauss_seidel {
  public:
    using value_type = typename Backend::value_type;
    using matrix = typename Backend::matrix;
    using vector = typename Backend::vector;
    using params = relaxation::params;

    gauss_seidel(const matrix &A, const params &, const Backend &)
        : inv_diag_(detail::inverse_diagonal(A, "gauss_seidel")) {}

    void apply_pre(const Backend &, const matrix &A, const vector &f, vector &u,
                   workspace<Backend> &) const {
        amgkit::detail::check_dims(f.size() == A.nrows && u.size() == A.nrows, "gauss_seidel");
        for (std::size_t i = 0; i < A.nrows; ++i) update(A, f, u, i);
    }

    void apply_post(const Backend &, const matrix &A, const vector &f, vector &u,
                    workspace<Backend> &) const {
        amgkit::detail::check_dims(f.size() == A.nrows && u.size() == A.nrows, "gauss_seidel");
        for (std::size_t i = A.nrows; i-- > 0;) update(A, f, u, i);
    }

  private:
    vector inv_diag_;

    void update(const matrix &A, const vector &f, vector &u, std::size_t i) const {
        value_type s = f[i];
        for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            const std::size_t j = A.col_idx[k];
            if (j != i) s -= A.values[k] * u[j];
        }
        u[i] = s * inv_diag_[i];
    }
};

} // namespace relaxation
} // namespace amgkit
