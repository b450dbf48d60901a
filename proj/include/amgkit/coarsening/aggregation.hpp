#pragma once

/**
 * \file   amgkit/coarsening/aggregation.hpp
 * \brief  Non-smoothed and smoothed aggregation coarsening.
 *
 * A coarsening policy takes the system matrix of a level and returns the
 * prolongation P together with the restriction R = P^T.
 */

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <amgkit/coarsening/aggregates.hpp>
#include <amgkit/error.hpp>
#include <amgkit/relaxation/spectral.hpp>
#include <amgkit/sparse.hpp>

namespace amgkit {
namespace coarsening {

struct params {
    /// Strength of connection threshold, 0 <= eps_strong < 1.
    double eps_strong = 0.08;
    /// Damping of the prolongation smoother, 0 < omega < 2.
    double omega = 2.0 / 3.0;
    /// Smoothed (true) or plain (false) aggregation.
    bool smooth = true;
    /// Replace omega by (4/3) / rho(D^-1 A_F), rho from power iteration.
    bool estimate_omega = false;
    std::size_t power_iters = 20;

    void validate() const {
        if (!(eps_strong >= 0 && eps_strong < 1))
            throw config_error("precond.coarsening.eps_strong must lie in [0, 1)");
        if (!(omega > 0 && omega < 2))
            throw config_error("precond.coarsening.omega must lie in (0, 2)");
        if (estimate_omega && power_iters < 1)
            throw config_error("precond.coarsening.power_iters must be >= 1");
    }
};

/// A filtered to its strong connections; weak off-diagonals are lumped
/// onto the diagonal so that row sums are preserved.
template <class T>
csr_matrix<T> filtered_matrix(const csr_matrix<T> &A, const strength_graph<T> &S) {
    amgkit::detail::check_dims(S.size() == A.nrows && A.nrows == A.ncols,
                               "strength graph does not match matrix");
    const std::size_t n = A.nrows;
    csr_matrix<T> F;
    F.nrows = F.ncols = n;
    F.row_ptr.assign(n + 1, 0);
    F.col_idx.reserve(S.graph.nnz());
    F.values.reserve(S.graph.nnz());

    for (std::size_t i = 0; i < n; ++i) {
        T lumped = 0;
        auto scols = S.graph.row_cols(i);
        auto sit = scols.begin();
        std::size_t diag_pos = static_cast<std::size_t>(-1);
        for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            const std::size_t j = A.col_idx[k];
            while (sit != scols.end() && *sit < j) ++sit;
            const bool strong = sit != scols.end() && *sit == j;
            if (j == i) {
                diag_pos = F.col_idx.size();
                F.col_idx.push_back(j);
                F.values.push_back(A.values[k]);
            } else if (strong) {
                F.col_idx.push_back(j);
                F.values.push_back(A.values[k]);
            } else {
                lumped += A.values[k];
            }
        }
        if (diag_pos == static_cast<std::size_t>(-1))
            throw coarsening_error("filtered matrix: missing diagonal in row " + std::to_string(i));
        F.values[diag_pos] += lumped;
        if (F.values[diag_pos] == T(0))
            throw coarsening_error("smooth_prolongation: zero diagonal in filtered matrix, row " +
                                   std::to_string(i));
        F.row_ptr[i + 1] = F.col_idx.size();
    }
    return F;
}

/// P = (I - omega D^-1 A_F) Pt with A_F = filtered_matrix(A, S), D = diag(A_F).
template <class T>
csr_matrix<T> smooth_prolongation(const csr_matrix<T> &A, const strength_graph<T> &S,
                                  const csr_matrix<T> &Pt, T omega) {
    amgkit::detail::check_dims(Pt.nrows == A.ncols, "smooth_prolongation: Pt.nrows != A.ncols");
    csr_matrix<T> M = filtered_matrix(A, S);

    // M <- I - omega D^-1 A_F, in place.
    for (std::size_t i = 0; i < M.nrows; ++i) {
        T d = M.at(i, i);
        for (std::size_t k = M.row_ptr[i]; k < M.row_ptr[i + 1]; ++k) {
            M.values[k] *= -omega / d;
            if (M.col_idx[k] == i) M.values[k] += T(1);
        }
    }
    return spgemm(M, Pt);
}

/// Builds (P, R) for one level. Throws stagnation_error when the aggregate
/// count equals the row count.
template <class T>
std::pair<csr_matrix<T>, csr_matrix<T>> coarsen(const csr_matrix<T> &A, const params &prm) {
    amgkit::detail::check_dims(A.nrows == A.ncols, "coarsen requires a square matrix");
    prm.validate();

    auto S = strength_graph_of(A, static_cast<T>(prm.eps_strong));
    auto agg = aggregate(S);
    if (agg.count >= A.nrows)
        throw stagnation_error("coarsening stagnated: " + std::to_string(agg.count) +
                               " aggregates for " + std::to_string(A.nrows) + " rows");

    auto Pt = tentative_prolongation<T>(agg, A.nrows);
    csr_matrix<T> P;
    if (prm.smooth) {
        T omega = static_cast<T>(prm.omega);
        if (prm.estimate_omega) {
            auto F = filtered_matrix(A, S);
            T rho = relaxation::estimate_spectral_radius(F, true, prm.power_iters);
            omega = T(4) / (T(3) * rho);
        }
        P = smooth_prolongation(A, S, Pt, omega);
    } else {
        P = std::move(Pt);
    }
    auto R = transpose(P);
    return {std::move(P), std::move(R)};
}

/// Plain (non-smoothed) aggregation policy.
struct aggregation {
    using params = coarsening::params;

    template <class T>
    static std::pair<csr_matrix<T>, csr_matrix<T>> transfer_operators(const csr_matrix<T> &A,
                                                                      params prm) {
        prm.smooth = false;
        return coarsen(A, prm);
    }
};

struct smoothed_aggregation {
    using params = coarsening::params;

    template <class T>
    static std::pair<csr_matrix<T>, csr_matrix<T>> transfer_operators(const csr_matrix<T> &A,
                                                                      params prm) {
        prm.smooth = true;
        return coarsen(A, prm);
    }
};

/// Runtime-selected coarsening: the `smooth` flag of params decides.
struct runtime {
    using params = coarsening::params;

    template <class T>
    static std::pair<csr_matrix<T>, csr_matrix<T>> transfer_operators(const csr_matrix<T> &A,
                                                                      const params &prm) {
        return coarsen(A, prm);
    }
};

} // namespace coarsening
} // namespace amgkit
