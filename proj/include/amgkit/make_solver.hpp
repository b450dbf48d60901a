#pragma once

/**
 * \file   amgkit/make_solver.hpp
 * \brief  Binds a preconditioner and an iterative solver into one object.
 *
 * \code
 * using Backend = amgkit::backend::builtin<double>;
 * using Solver = amgkit::make_solver<
 *     amgkit::amg<Backend, amgkit::coarsening::smoothed_aggregation,
 *                 amgkit::relaxation::spai0>,
 *     amgkit::solver::bicgstab<Backend>>;
 *
 * Solver solve(A);              // setup
 * auto res = solve(rhs, x);     // solve
 * \endcode
 */

#include <utility>

#include <amgkit/solver/params.hpp>

namespace amgkit {

template <class Precond, class Solver>
class make_solver {
  public:
    using backend_type = typename Precond::backend_type;
    using matrix = typename Precond::matrix;
    using vector = typename Precond::vector;

    struct params {
        typename Precond::params precond;
        typename Solver::params solver;
    };

    explicit make_solver(matrix A, const params &prm = params(),
                         const backend_type &bk = backend_type())
        : prm_(prm), P_(std::move(A), prm.precond, bk), S_(P_.size(), prm.solver, bk) {}

    /// Solves the system with the initial guess (and result) in u.
    solver::solve_result operator()(const vector &f, vector &u) {
        return S_(P_.system_matrix(), P_, f, u);
    }

    std::size_t size() const { return P_.size(); }
    const matrix &system_matrix() const { return P_.system_matrix(); }
    Precond &precond() { return P_; }
    const Precond &precond() const { return P_; }
    Solver &solver() { return S_; }
    const params &get_params() const { return prm_; }

  private:
    params prm_;
    Precond P_;
    Solver S_;
};

} // namespace amgkit
