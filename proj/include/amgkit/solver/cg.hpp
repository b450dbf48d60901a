#pragma once

/**
 * \file   amgkit/solver/cg.hpp
 * \brief  Preconditioned conjugate gradient method.
 *
 * Requires A symmetric positive definite and a self-adjoint positive
 * definite preconditioner; a non-positive r^T M r or p^T A p is reported
 * as a breakdown instead of silently producing garbage.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include <amgkit/error.hpp>
#include <amgkit/solver/params.hpp>

namespace amgkit {
namespace solver {

template <class Backend>
class cg {
  public:
    using value_type = typename Backend::value_type;
    using matrix = typename Backend::matrix;
    using vector = typename Backend::vector;
    using params = solver::params;

    cg(std::size_t n, const params &prm = params(), const Backend &bk = Backend())
        : prm_(prm), bk_(bk), r_(bk.make_vector(n)), z_(bk.make_vector(n)), p_(bk.make_vector(n)),
          q_(bk.make_vector(n)) {
        prm_.validate();
    }

    /// Solves A u = f in place of u. `M` needs `apply(const vector &r, vector &z)`.
    template <class Precond>
    solve_result operator()(const matrix &A, Precond &M, const vector &f, vector &u) {
        amgkit::detail::check_dims(A.nrows == A.ncols && f.size() == A.nrows &&
                                       u.size() == A.nrows && r_.size() == A.nrows,
                                   "cg");
        solve_result res;
        const value_type norm_f = bk_.norm2(f);
        if (norm_f == value_type(0)) {
            bk_.set_zero(u);
            res.converged = true;
            return res;
        }
        const value_type eps =
            std::max(static_cast<value_type>(prm_.tol) * norm_f, static_cast<value_type>(prm_.abstol));

        bk_.residual(f, A, u, r_);
        value_type norm_r = bk_.norm2(r_);
        value_type rho_prev = 1;

        std::size_t it = 0;
        while (norm_r > eps && it < prm_.maxiter) {
            ++it;
            M.apply(r_, z_);
            const value_type rho = bk_.dot(r_, z_);
            if (!(rho > value_type(0))) {
                res.breakdown = "r^T M r = " + std::to_string(rho) + " (preconditioner not positive definite?)";
                break;
            }
            if (it == 1) bk_.copy(z_, p_);
            else bk_.axpby(1, z_, rho / rho_prev, p_);

            bk_.spmv(1, A, p_, 0, q_);
            const value_type pq = bk_.dot(p_, q_);
            if (!(pq > value_type(0))) {
                res.breakdown = "p^T A p = " + std::to_string(pq) + " (matrix not positive definite?)";
                break;
            }
            const value_type alpha = rho / pq;
            bk_.axpby(alpha, p_, 1, u);
            bk_.axpby(-alpha, q_, 1, r_);
            rho_prev = rho;

            if (it % residual_replacement_interval == 0) bk_.residual(f, A, u, r_);
            norm_r = bk_.norm2(r_);
            if (norm_r <= eps) {
                bk_.residual(f, A, u, r_);
                norm_r = bk_.norm2(r_);
            }
        }

        bk_.residual(f, A, u, r_);
        norm_r = bk_.norm2(r_);
        res.iterations = it;
        res.relative_residual = static_cast<double>(norm_r / norm_f);
        res.converged = !res.breakdown && norm_r <= eps;
        return res;
    }

    const params &get_params() const { return prm_; }

  private:
    params prm_;
    Backend bk_;
    vector r_, z_, p_, q_;
};

} // namespace solver
} // namespace amgkit
