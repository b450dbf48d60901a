#pragma once

#include <variant>

#include <amgkit/solver/bicgstab.hpp>
#include <amgkit/solver/cg.hpp>
#include <amgkit/solver/params.hpp>

namespace amgkit {
namespace solver {

/// Krylov method chosen at run time from params::type.
template <class Backend>
class runtime {
  public:
    using matrix = typename Backend::matrix;
    using vector = typename Backend::vector;
    using params = solver::params;

    runtime(std::size_t n, const params &prm = params(), const Backend &bk = Backend())
        : impl_(make(n, prm, bk)) {}

    template <class Precond>
    solve_result operator()(const matrix &A, Precond &M, const vector &f, vector &u) {
        return std::visit([&](auto &s) { return s(A, M, f, u); }, impl_);
    }

    type kind() const { return impl_.index() == 0 ? type::cg : type::bicgstab; }

  private:
    using variant = std::variant<cg<Backend>, bicgstab<Backend>>;
    variant impl_;

    static variant make(std::size_t n, const params &prm, const Backend &bk) {
        if (prm.type == type::cg) return cg<Backend>(n, prm, bk);
        return bicgstab<Backend>(n, prm, bk);
    }
};

} // namespace solver
} // namespace amgkit
