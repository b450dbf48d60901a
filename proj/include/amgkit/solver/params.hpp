#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <amgkit/error.hpp>

namespace amgkit {
namespace solver {

enum class type { cg, bicgstab };

inline const char *to_string(type t) { return t == type::cg ? "cg" : "bicgstab"; }

inline type type_from_string(const std::string &s) {
    if (s == "cg") return type::cg;
    if (s == "bicgstab") return type::bicgstab;
    throw config_error("solver.type: unknown solver '" + s + "'");
}

/// Convergence means ||f - A u|| <= max(tol * ||f||, abstol).
struct params {
    /// Only consulted by the runtime wrapper.
    solver::type type = solver::type::cg;
    double tol = 1e-8;
    double abstol = 0;
    std::size_t maxiter = 100;

    void validate() const {
        if (!(tol >= 0)) throw config_error("solver.tol must be >= 0");
        if (!(abstol >= 0)) throw config_error("solver.abstol must be >= 0");
        if (tol == 0 && abstol == 0) throw config_error("solver.tol and solver.abstol are both zero");
        if (maxiter < 1) throw config_error("solver.maxiter must be >= 1");
    }
};

struct solve_result {
    std::size_t iterations = 0;
    /// ||f - A u|| / ||f||, recomputed from the returned u (0 when f = 0).
    double relative_residual = 0;
    bool converged = false;
    std::optional<std::string> breakdown;
};

/// Every recomputation interval iterations the recurrence residual is
/// replaced by the true residual f - A u.
inline constexpr std::size_t residual_replacement_interval = 50;

} // namespace solver

namespace preconditioner {

/// M = I.
template <class Backend>
struct identity {
    Backend bk;
    void apply(const typename Backend::vector &r, typename Backend::vector &z) const {
        bk.copy(r, z);
    }
};

} // namespace preconditioner
} // namespace amgkit
