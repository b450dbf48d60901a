#pragma once

#include <amgkit/relaxation/params.hpp>
#include <amgkit/relaxation/spectral.hpp>

namespace amgkit {
namespace relaxation {

/// u <- u + omega D^-1 (f - A u)
template <class Backend>
class damped_jacobi {
  public:
    using value_type = typename Backend::value_type;
    using matrix = typename Backend::matrix;
    using vector = typename Backend::vector;
    using params = relaxation::params;

    damped_jacobi(const matrix &A, const params &prm, const Backend &)
        : omega_(static_cast<value_type>(prm.omega)),
          inv_diag_(detail::inverse_diagonal(A, "damped_jacobi")) {
        prm.validate();
    }

    void apply_pre(const Backend &bk, const matrix &A, const vector &f, vector &u,
                   workspace<Backend> &w) const {
        apply(bk, A, f, u, w);
    }

    void apply_post(const Backend &bk, const matrix &A, const vector &f, vector &u,
                    workspace<Backend> &w) const {
        apply(bk, A, f, u, w);
    }

    const vector &inverse_diagonal() const { return inv_diag_; }
    value_type omega() const { return omega_; }

  private:
    value_type omega_;
    vector inv_diag_;

    void apply(const Backend &bk, const matrix &A, const vector &f, vector &u,
               workspace<Backend> &w) const {
        bk.residual(f, A, u, w.r);
        bk.vmul(omega_, inv_diag_, w.r, 1, u);
    }
};

} // namespace relaxation
} // namespace amgkit
