#pragma once

/**
 * \file   amgkit/relaxation/chebyshev.hpp
 * \brief  Chebyshev polynomial smoother.
 *
 * One application adds p(A) (f - A u) to u, where p is the degree-k
 * Chebyshev polynomial damping the spectrum on [lambda_min, lambda_max].
 * The upper bound is a power iteration estimate of rho(A) inflated by 2%
 * and capped by the Gershgorin bound; if the power iteration has not
 * settled, the Gershgorin bound is used directly.
 */

#include <algorithm>

#include <amgkit/relaxation/params.hpp>
#include <amgkit/relaxation/spectral.hpp>

namespace amgkit {
namespace relaxation {

template <class Backend>
class chebyshev {
  public:
    using value_type = typename Backend::value_type;
    using matrix = typename Backend::matrix;
    using vector = typename Backend::vector;
    using params = relaxation::params;

    static constexpr double safety_factor = 1.02;

    chebyshev(const matrix &A, const params &prm, const Backend &) : degree_(prm.degree) {
        prm.validate();
        auto est = power_iteration(A, false, prm.power_iters);
        const value_type gersh = gershgorin_bound(A, false);
        if (est.converged) {
            lmax_ = std::min(static_cast<value_type>(safety_factor) * est.value, gersh);
        } else {
            lmax_ = gersh;
            fallback_ = true;
        }
        lmin_ = lmax_ * static_cast<value_type>(prm.lower_fraction);
        if (!(lmax_ > lmin_ && lmin_ > 0))
            throw setup_error("chebyshev: degenerate spectral bounds");
    }

    void apply_pre(const Backend &bk, const matrix &A, const vector &f, vector &u,
                   workspace<Backend> &w) const {
        apply(bk, A, f, u, w);
    }

    void apply_post(const Backend &bk, const matrix &A, const vector &f, vector &u,
                    workspace<Backend> &w) const {
        apply(bk, A, f, u, w);
    }

    value_type lambda_min() const { return lmin_; }
    value_type lambda_max() const { return lmax_; }
    std::size_t degree() const { return degree_; }
    /// True when the Gershgorin bound replaced the power iteration estimate.
    bool used_fallback() const { return fallback_; }

  private:
    std::size_t degree_;
    value_type lmin_ = 0;
    value_type lmax_ = 0;
    bool fallback_ = false;

    void apply(const Backend &bk, const matrix &A, const vector &f, vector &u,
               workspace<Backend> &w) const {
        const value_type theta = (lmax_ + lmin_) / 2;
        const value_type delta = (lmax_ - lmin_) / 2;
        const value_type sigma = theta / delta;
        value_type rho = 1 / sigma;

        bk.residual(f, A, u, w.r);
        bk.axpby(1 / theta, w.r, 0, w.d);
        for (std::size_t k = 1; k <= degree_; ++k) {
            bk.axpby(1, w.d, 1, u);
            if (k == degree_) break;
            bk.spmv(-1, A, w.d, 1, w.r);
            const value_type rho_next = 1 / (2 * sigma - rho);
            bk.axpby(2 * rho_next / delta, w.r, rho_next * rho, w.d);
            rho = rho_next;
        }
    }
};

} // namespace relaxation
} // namespace amgkit
