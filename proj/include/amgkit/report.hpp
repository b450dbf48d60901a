#pragma once

/**
 * \file   amgkit/report.hpp
 * \brief  Timed setup + solve runs and the benchmark table.
 *
 * Times are wall-clock seconds from std::chrono::steady_clock. The total
 * is measured across both phases with a single pair of clock reads.
 */

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <amgkit/config.hpp>
#include <amgkit/poisson.hpp>
#include <amgkit/runtime.hpp>

namespace amgkit {

/// Parameter tree with every known key set to the value in effect.
template <class T>
param_tree effective_config(const typename runtime_solver<T>::params &p) {
    param_tree t;
    t.put("solver.type", solver::to_string(p.solver.type));
    t.put("solver.tol", p.solver.tol);
    t.put("solver.abstol", p.solver.abstol);
    t.put("solver.maxiter", p.solver.maxiter);
    const auto &c = p.precond.coarsening;
    t.put("precond.coarsening.type", c.smooth ? "smoothed_aggregation" : "aggregation");
    t.put("precond.coarsening.eps_strong", c.eps_strong);
    t.put("precond.coarsening.omega", c.omega);
    t.put("precond.coarsening.estimate_omega", c.estimate_omega);
    t.put("precond.coarsening.power_iters", c.power_iters);
    const auto &r = p.precond.relax;
    t.put("precond.relax.type", relaxation::to_string(r.type));
    t.put("precond.relax.omega", r.omega);
    t.put("precond.relax.degree", r.degree);
    t.put("precond.relax.lower_fraction", r.lower_fraction);
    t.put("precond.relax.power_iters", r.power_iters);
    t.put("precond.npre", p.precond.npre);
    t.put("precond.npost", p.precond.npost);
    t.put("precond.coarse_enough", p.precond.coarse_enough);
    t.put("precond.max_levels", p.precond.max_levels);
    return t;
}

struct solve_report {
    std::size_t unknowns = 0;
    std::size_t nonzeros = 0;
    double setup_seconds = 0;
    double solve_seconds = 0;
    double total_seconds = 0;
    std::size_t iterations = 0;
    double relative_residual = 0;
    bool converged = false;
    std::optional<std::string> breakdown;
    hierarchy_report hierarchy;
    param_tree config;
    std::vector<std::string> warnings;
};

/// Builds the runtime solver for (A, t), solves A u = rhs from u = 0 and
/// times both phases. `solution`, when given, receives u.
template <class T>
solve_report run_solve(csr_matrix<T> A, const std::vector<T> &rhs, const param_tree &t,
                       int workers = 0, std::vector<T> *solution = nullptr) {
    using clock = std::chrono::steady_clock;
    amgkit::detail::check_dims(rhs.size() == A.nrows, "right-hand side length != matrix rows");

    solve_report rep;
    rep.unknowns = A.nrows;
    rep.nonzeros = A.nnz();

    typename backend::builtin<T>::params bprm;
    bprm.workers = workers;

    const auto t0 = clock::now();
    auto built = build_runtime_solver<T>(std::move(A), t, bprm);
    const auto t1 = clock::now();
    std::vector<T> u(rhs.size(), T(0));
    auto res = (*built.solver)(rhs, u);
    const auto t2 = clock::now();

    auto secs = [](clock::duration d) { return std::chrono::duration<double>(d).count(); };
    rep.setup_seconds = secs(t1 - t0);
    rep.solve_seconds = secs(t2 - t1);
    rep.total_seconds = secs(t2 - t0);
    rep.iterations = res.iterations;
    rep.relative_residual = res.relative_residual;
    rep.converged = res.converged;
    rep.breakdown = res.breakdown;
    rep.hierarchy = built.solver->precond().report();
    rep.config = effective_config<T>(built.solver->get_params());
    rep.warnings = std::move(built.warnings);
    if (solution) *solution = std::move(u);
    return rep;
}

inline std::ostream &operator<<(std::ostream &os, const solve_report &r) {
    os << "Unknowns:          " << r.unknowns << "\n"
       << "Nonzeros:          " << r.nonzeros << "\n"
       << "Iterations:        " << r.iterations << "\n"
       << "Relative residual: " << std::setprecision(6) << std::scientific << r.relative_residual
       << std::defaultfloat << "\n"
       << "Converged:         " << (r.converged ? "yes" : "no") << "\n";
    if (r.breakdown) os << "Breakdown:         " << *r.breakdown << "\n";
    os << std::fixed << std::setprecision(6)
       << "Setup time [s]:    " << r.setup_seconds << "\n"
       << "Solve time [s]:    " << r.solve_seconds << "\n"
       << "Total time [s]:    " << r.total_seconds << "\n"
       << std::defaultfloat << std::setprecision(6) << "\n"
       << r.hierarchy << "\nConfiguration:\n"
       << serialize_config(r.config);
    for (const auto &w : r.warnings) os << "warning: " << w << "\n";
    return os;
}

struct bench_row {
    std::size_t n = 0;
    std::size_t unknowns = 0;
    std::size_t nonzeros = 0;
    double setup_seconds = 0;
    double solve_seconds = 0;
    double total_seconds = 0;
    std::size_t iterations = 0;
    double relative_residual = 0;
    bool converged = false;
    /// Iteration count and residual were identical in every repeat.
    bool deterministic = true;
};

/// Solves the n^3 Poisson problem for each size, `repeats` times each.
/// Timings come from the repeat with the smallest total time.
template <class T = double>
std::vector<bench_row> run_bench(const std::vector<std::size_t> &sizes, const param_tree &t,
                                 std::size_t repeats = 1, int workers = 0) {
    if (sizes.empty()) throw config_error("bench: no problem sizes given");
    repeats = std::max<std::size_t>(repeats, 1);

    std::vector<bench_row> rows;
    for (std::size_t n : sizes) {
        auto pb = generate_poisson<T>(n);
        bench_row row;
        row.n = n;
        row.total_seconds = std::numeric_limits<double>::infinity();
        for (std::size_t rep = 0; rep < repeats; ++rep) {
            auto r = run_solve<T>(pb.A, pb.rhs, t, workers);
            if (rep == 0) {
                row.unknowns = r.unknowns;
                row.nonzeros = r.nonzeros;
                row.iterations = r.iterations;
                row.relative_residual = r.relative_residual;
                row.converged = r.converged;
            } else if (r.iterations != row.iterations ||
                       r.relative_residual != row.relative_residual) {
                row.deterministic = false;
            }
            row.converged = row.converged && r.converged;
            if (r.total_seconds < row.total_seconds) {
                row.setup_seconds = r.setup_seconds;
                row.solve_seconds = r.solve_seconds;
                row.total_seconds = r.total_seconds;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

/// Header line plus one tab-separated line per row.
inline void write_bench_table(std::ostream &os, const std::vector<bench_row> &rows) {
    os << "n\tunknowns\tnnz\tsetup_s\tsolve_s\ttotal_s\titerations\tresidual\tstatus\n";
    for (const auto &r : rows) {
        os << r.n << "\t" << r.unknowns << "\t" << r.nonzeros << "\t" << std::fixed
           << std::setprecision(6) << r.setup_seconds << "\t" << r.solve_seconds << "\t"
           << r.total_seconds << "\t" << r.iterations << "\t" << std::scientific
           << std::setprecision(3) << r.relative_residual << std::defaultfloat << "\t"
           << (!r.converged ? "not_converged" : !r.deterministic ? "nondeterministic" : "ok")
           << "\n";
    }
}

} // namespace amgkit
