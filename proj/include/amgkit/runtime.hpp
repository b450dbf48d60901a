#pragma once

/**
 * \file   amgkit/runtime.hpp
 * \brief  Solver composed at run time from a parameter tree.
 *
 * \code
 * amgkit::param_tree prm;
 * prm.put("solver.type", "bicgstab");
 * prm.put("solver.tol", 1e-6);
 * prm.put("precond.coarsening.type", "smoothed_aggregation");
 * prm.put("precond.relax.type", "spai0");
 *
 * auto built = amgkit::build_runtime_solver(A, prm);
 * auto res = (*built.solver)(rhs, x);
 * \endcode
 *
 * Every key the reader understands is listed by known_keys(); keys under
 * "solver." or "precond." that are not listed come back as warnings.
 */

#include <memory>
#include <string>
#include <vector>

#include <amgkit/amg.hpp>
#include <amgkit/backend/builtin.hpp>
#include <amgkit/coarsening/aggregation.hpp>
#include <amgkit/config.hpp>
#include <amgkit/make_solver.hpp>
#include <amgkit/relaxation/runtime.hpp>
#include <amgkit/solver/runtime.hpp>

namespace amgkit {

template <class T = double>
using runtime_solver = make_solver<
    amg<backend::builtin<T>, coarsening::runtime, relaxation::runtime>,
    solver::runtime<backend::builtin<T>>>;

struct key_info {
    const char *path;
    const char *type;
    const char *default_value;
    const char *description;
};

inline const std::vector<key_info> &known_keys() {
    static const std::vector<key_info> keys = {
        {"solver.type", "string", "cg", "Krylov method: cg | bicgstab"},
        {"solver.tol", "real", "1e-8", "relative residual target ||f - Au|| / ||f||"},
        {"solver.abstol", "real", "0", "absolute residual target"},
        {"solver.maxiter", "integer", "100", "iteration limit"},
        {"precond.coarsening.type", "string", "smoothed_aggregation",
         "aggregation | smoothed_aggregation"},
        {"precond.coarsening.eps_strong", "real", "0.08", "strength of connection threshold"},
        {"precond.coarsening.omega", "real", "0.666667", "prolongation smoothing weight"},
        {"precond.coarsening.estimate_omega", "boolean", "false",
         "use omega = 4/3 / rho(D^-1 A_F) instead of the fixed weight"},
        {"precond.coarsening.power_iters", "integer", "20",
         "power iterations for estimate_omega"},
        {"precond.relax.type", "string", "spai0",
         "spai0 | damped_jacobi | gauss_seidel | chebyshev"},
        {"precond.relax.omega", "real", "0.72", "damped Jacobi weight"},
        {"precond.relax.degree", "integer", "5", "Chebyshev polynomial degree"},
        {"precond.relax.lower_fraction", "real", "0.0333333",
         "Chebyshev lower bound as a fraction of lambda_max"},
        {"precond.relax.power_iters", "integer", "20",
         "power iterations for the Chebyshev upper bound"},
        {"precond.npre", "integer", "1", "pre-smoothing sweeps"},
        {"precond.npost", "integer", "1", "post-smoothing sweeps"},
        {"precond.coarse_enough", "integer", "3000", "largest level solved directly"},
        {"precond.max_levels", "integer", "30", "maximum number of levels"},
    };
    return keys;
}

inline coarsening::params read_coarsening_params(const param_tree &t) {
    coarsening::params p;
    const std::string kind = t.get<std::string>("precond.coarsening.type", "smoothed_aggregation");
    if (kind == "smoothed_aggregation") p.smooth = true;
    else if (kind == "aggregation") p.smooth = false;
    else throw config_error("precond.coarsening.type: unknown coarsening '" + kind + "'");
    p.eps_strong = t.get("precond.coarsening.eps_strong", p.eps_strong);
    p.omega = t.get("precond.coarsening.omega", p.omega);
    p.estimate_omega = t.get("precond.coarsening.estimate_omega", p.estimate_omega);
    p.power_iters = t.get("precond.coarsening.power_iters", p.power_iters);
    return p;
}

inline relaxation::params read_relaxation_params(const param_tree &t) {
    relaxation::params p;
    p.type = relaxation::type_from_string(t.get<std::string>("precond.relax.type", "spai0"));
    p.omega = t.get("precond.relax.omega", p.omega);
    p.degree = t.get("precond.relax.degree", p.degree);
    p.lower_fraction = t.get("precond.relax.lower_fraction", p.lower_fraction);
    p.power_iters = t.get("precond.relax.power_iters", p.power_iters);
    return p;
}

inline solver::params read_solver_params(const param_tree &t) {
    solver::params p;
    p.type = solver::type_from_string(t.get<std::string>("solver.type", "cg"));
    p.tol = t.get("solver.tol", p.tol);
    p.abstol = t.get("solver.abstol", p.abstol);
    p.maxiter = t.get("solver.maxiter", p.maxiter);
    return p;
}

/// Reads every known key (defaults where absent) and validates the result.
template <class T = double>
typename runtime_solver<T>::params read_params(const param_tree &t) {
    typename runtime_solver<T>::params p;
    p.solver = read_solver_params(t);
    p.precond.coarsening = read_coarsening_params(t);
    p.precond.relax = read_relaxation_params(t);
    p.precond.npre = t.get("precond.npre", p.precond.npre);
    p.precond.npost = t.get("precond.npost", p.precond.npost);
    p.precond.coarse_enough = t.get("precond.coarse_enough", p.precond.coarse_enough);
    p.precond.max_levels = t.get("precond.max_levels", p.precond.max_levels);
    p.solver.validate();
    p.precond.validate();
    return p;
}

/// Keys under the recognized prefixes that no reader understands.
inline std::vector<std::string> unknown_keys(const param_tree &t) {
    std::vector<std::string> out;
    for (const auto &[path, leaf] : t.leaves()) {
        if (path.rfind("solver.", 0) != 0 && path.rfind("precond.", 0) != 0) continue;
        bool known = false;
        for (const auto &k : known_keys()) known = known || path == k.path;
        if (!known) out.push_back("unknown parameter '" + path + "' ignored");
    }
    return out;
}

template <class T>
struct built_solver {
    std::unique_ptr<runtime_solver<T>> solver;
    std::vector<std::string> warnings;
};

/// Builds the preconditioner and Krylov method described by `t`.
template <class T>
built_solver<T> build_runtime_solver(csr_matrix<T> A, const param_tree &t,
                                     typename backend::builtin<T>::params bprm = {}) {
    built_solver<T> out;
    auto prm = read_params<T>(t);
    out.warnings = unknown_keys(t);
    out.solver = std::make_unique<runtime_solver<T>>(std::move(A), prm, backend::builtin<T>(bprm));
    return out;
}

} // namespace amgkit
