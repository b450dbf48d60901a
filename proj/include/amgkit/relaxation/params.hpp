#pragma once

#include <cstddef>
#include <string>

#include <amgkit/error.hpp>

namespace amgkit {
namespace relaxation {

enum class type { damped_jacobi, spai0, gauss_seidel, chebyshev };

enum class direction { pre, post };

inline const char *to_string(type t) {
    switch (t) {
    case type::damped_jacobi: return "damped_jacobi";
    case type::spai0: return "spai0";
    case type::gauss_seidel: return "gauss_seidel";
    case type::chebyshev: return "chebyshev";
    }
    return "?";
}

inline type type_from_string(const std::string &s) {
    if (s == "damped_jacobi") return type::damped_jacobi;
    if (s == "spai0") return type::spai0;
    if (s == "gauss_seidel") return type::gauss_seidel;
    if (s == "chebyshev") return type::chebyshev;
    throw config_error("precond.relax.type: unknown relaxation '" + s + "'");
}

/// Parameters shared by every smoother; each one reads the fields it needs.
struct params {
    /// Only consulted by the runtime wrapper.
    relaxation::type type = relaxation::type::spai0;
    /// Damped Jacobi weight.
    double omega = 0.72;
    std::size_t degree = 5;
    /// Chebyshev interval is [lower_fraction * lambda_max, lambda_max].
    double lower_fraction = 1.0 / 30.0;
    std::size_t power_iters = 20;

    void validate() const {
        if (!(omega > 0 && omega < 2)) throw config_error("precond.relax.omega must lie in (0, 2)");
        if (degree < 1) throw config_error("precond.relax.degree must be >= 1");
        if (!(lower_fraction > 0 && lower_fraction < 1))
            throw config_error("precond.relax.lower_fraction must lie in (0, 1)");
        if (power_iters < 1) throw config_error("precond.relax.power_iters must be >= 1");
    }
};

/// Scratch vectors a smoother may overwrite during one application.
template <class Backend>
struct workspace {
    typename Backend::vector r;
    typename Backend::vector d;

    workspace(std::size_t n, const Backend &bk) : r(bk.make_vector(n)), d(bk.make_vector(n)) {}
};

} // namespace relaxation
} // namespace amgkit
