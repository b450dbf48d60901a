#pragma once

/**
 * \file   amgkit/solver/bicgstab.hpp
 * \brief  Right-preconditioned BiCGStab with shadow residual r0.
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
class bicgstab {
  public:
    using value_type = typename Backend::value_type;
    using matrix = typename Backend::matrix;
    using vector = typename Backend::vector;
    using params = solver::params;

    /// Breakdown threshold relative to the natural scale of each quantity.
    static constexpr double breakdown_tol = 1e-30;

    bicgstab(std::size_t n, const params &prm = params(), const Backend &bk = Backend())
        : prm_(prm), bk_(bk), r_(bk.make_vector(n)), rh_(bk.make_vector(n)),
          p_(bk.make_vector(n)), v_(bk.make_vector(n)), s_(bk.make_vector(n)),
          t_(bk.make_vector(n)), ph_(bk.make_vector(n)), sh_(bk.make_vector(n)) {
        prm_.validate();
    }

    template <class Precond>
    solve_result operator()(const matrix &A, Precond &M, const vector &f, vector &u) {
        amgkit::detail::check_dims(A.nrows == A.ncols && f.size() == A.nrows &&
                                       u.size() == A.nrows && r_.size() == A.nrows,
                                   "bicgstab");
        solve_result res;
        const value_type norm_f = bk_.norm2(f);
        if (norm_f == value_type(0)) {
            bk_.set_zero(u);
            res.converged = true;
            return res;
        }
        const value_type eps =
            std::max(static_cast<value_type>(prm_.tol) * norm_f, static_cast<value_type>(prm_.abstol));
        const value_type tiny = static_cast<value_type>(breakdown_tol);

        bk_.residual(f, A, u, r_);
        value_type norm_r = bk_.norm2(r_);
        bk_.copy(r_, rh_);
        const value_type norm_rh = norm_r;

        value_type rho_prev = 1, alpha = 1, omega = 1;
        std::size_t it = 0;
        bool restart = true;
        while (norm_r > eps && it < prm_.maxiter) {
            ++it;
            const value_type rho = bk_.dot(rh_, r_);
            if (std::abs(rho) <= tiny * norm_rh * norm_r) {
                res.breakdown = "rho = (r0, r) vanished";
                break;
            }

            if (restart) {
                bk_.copy(r_, p_);
                restart = false;
            } else {
                const value_type beta = (rho / rho_prev) * (alpha / omega);
                // p = r + beta * (p - omega * v)
                bk_.axpbypcz(1, r_, -beta * omega, v_, beta, p_);
            }

            M.apply(p_, ph_);
            bk_.spmv(1, A, ph_, 0, v_);
            const value_type rv = bk_.dot(rh_, v_);
            if (std::abs(rv) <= tiny * norm_rh * bk_.norm2(v_)) {
                res.breakdown = "(r0, v) vanished";
                break;
            }
            alpha = rho / rv;

            bk_.copy(r_, s_);
            bk_.axpby(-alpha, v_, 1, s_);
            const value_type norm_s = bk_.norm2(s_);
            if (norm_s <= eps) {
                bk_.axpby(alpha, ph_, 1, u);
                bk_.residual(f, A, u, r_);
                norm_r = bk_.norm2(r_);
                if (norm_r <= eps) break;
                // The true residual disagrees; restart from it.
                restart = true;
                continue;
            }

            M.apply(s_, sh_);
            bk_.spmv(1, A, sh_, 0, t_);
            const value_type tt = bk_.dot(t_, t_);
            if (tt == value_type(0)) {
                res.breakdown = "A M s vanished";
                break;
            }
            omega = bk_.dot(t_, s_) / tt;
            if (std::abs(omega) <= tiny) {
                res.breakdown = "omega vanished";
                break;
            }

            bk_.axpbypcz(alpha, ph_, omega, sh_, 1, u);
            bk_.copy(s_, r_);
            bk_.axpby(-omega, t_, 1, r_);
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
    vector r_, rh_, p_, v_, s_, t_, ph_, sh_;
};

} // namespace solver
} // namespace amgkit
