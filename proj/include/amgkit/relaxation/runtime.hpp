#pragma once

/**
 * \file   amgkit/relaxation/runtime.hpp
 * \brief  Smoother chosen at run time from relaxation::params::type.
 */

#include <variant>

#include <amgkit/relaxation/chebyshev.hpp>
#include <amgkit/relaxation/damped_jacobi.hpp>
#include <amgkit/relaxation/gauss_seidel.hpp>
#include <amgkit/relaxation/params.hpp>
#include <amgkit/relaxation/spai0.hpp>

namespace amgkit {
namespace relaxation {

template <class Backend>
class runtime {
  public:
    using matrix = typename Backend::matrix;
    using vector = typename Backend::vector;
    using params = relaxation::params;

    runtime(const matrix &A, const params &prm, const Backend &bk)
        : kind_(prm.type), impl_(make(A, prm, bk)) {}

    void apply_pre(const Backend &bk, const matrix &A, const vector &f, vector &u,
                   workspace<Backend> &w) const {
        std::visit([&](const auto &s) { s.apply_pre(bk, A, f, u, w); }, impl_);
    }

    void apply_post(const Backend &bk, const matrix &A, const vector &f, vector &u,
                    workspace<Backend> &w) const {
        std::visit([&](const auto &s) { s.apply_post(bk, A, f, u, w); }, impl_);
    }

    void apply(direction dir, const Backend &bk, const matrix &A, const vector &f, vector &u,
               workspace<Backend> &w) const {
        if (dir == direction::pre) apply_pre(bk, A, f, u, w);
        else apply_post(bk, A, f, u, w);
    }

    type kind() const { return kind_; }

    /// Concrete smoother, e.g. `get<chebyshev<Backend>>()` to inspect its bounds.
    template <class S>
    const S *get() const {
        return std::get_if<S>(&impl_);
    }

  private:
    using variant = std::variant<damped_jacobi<Backend>, spai0<Backend>, gauss_seidel<Backend>,
                                 chebyshev<Backend>>;
    type kind_;
    variant impl_;

    static variant make(const matrix &A, const params &prm, const Backend &bk) {
        prm.validate();
        switch (prm.type) {
        case type::damped_jacobi: return damped_jacobi<Backend>(A, prm, bk);
        case type::spai0: return spai0<Backend>(A, prm, bk);
        case type::gauss_seidel: return gauss_seidel<Backend>(A, prm, bk);
        case type::chebyshev: return chebyshev<Backend>(A, prm, bk);
        }
        throw config_error("precond.relax.type: invalid value");
    }
};

/// Builds the smoother selected by prm.type.
template <class Backend>
runtime<Backend> build_smoother(const typename Backend::matrix &A, const params &prm,
                                const Backend &bk = Backend()) {
    amgkit::detail::check_dims(A.nrows == A.ncols, "smoother requires a square matrix");
    return runtime<Backend>(A, prm, bk);
}

/// One smoothing step in the given direction.
template <class Backend>
void relax(const runtime<Backend> &s, const Backend &bk, const typename Backend::matrix &A,
           const typename Backend::vector &f, typename Backend::vector &u, direction dir,
           workspace<Backend> &w) {
    s.apply(dir, bk, A, f, u, w);
}

} // namespace relaxation
} // namespace amgkit
