#pragma once

/**
 * \file   amgkit/coarsening/aggregates.hpp
 * \brief  Strength of connection, greedy aggregation and the tentative
 *         (piecewise-constant) prolongation built from the aggregates.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <amgkit/error.hpp>
#include <amgkit/sparse.hpp>

namespace amgkit {
namespace coarsening {

/// Strong connections of a square matrix.
/**
 * `graph` holds the entries of A that are strong (with their values); the
 * diagonal is always included. Its pattern is a subset of the pattern of A
 * and it is symmetric whenever A is.
 */
template <class T>
struct strength_graph {
    csr_matrix<T> graph;

    std::size_t size() const { return graph.nrows; }
    bool is_strong(std::size_t i, std::size_t j) const {
        auto cols = graph.row_cols(i);
        return std::binary_search(cols.begin(), cols.end(), j);
    }
};

struct aggregates {
    /// Aggregate index of every row.
    std::vector<std::size_t> id;
    std::size_t count = 0;
};

/// Off-diagonal (i, j) is strong iff a_ij^2 > eps^2 * a_ii * a_jj.
template <class T>
strength_graph<T> strength_graph_of(const csr_matrix<T> &A, T eps_strong) {
    amgkit::detail::check_dims(A.nrows == A.ncols, "strength graph requires a square matrix");
    const std::size_t n = A.nrows;

    std::vector<T> d = A.diagonal();
    for (std::size_t i = 0; i < n; ++i)
        if (!(d[i] > T(0)))
            throw coarsening_error("strength graph: non-positive diagonal entry in row " +
                                   std::to_string(i));

    const T eps2 = eps_strong * eps_strong;

    strength_graph<T> S;
    auto &G = S.graph;
    G.nrows = G.ncols = n;
    G.row_ptr.assign(n + 1, 0);
    G.col_idx.reserve(A.nnz());
    G.values.reserve(A.nnz());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            const std::size_t j = A.col_idx[k];
            const T v = A.values[k];
            if (j == i || v * v > eps2 * d[i] * d[j]) {
                G.col_idx.push_back(j);
                G.values.push_back(v);
            }
        }
        G.row_ptr[i + 1] = G.col_idx.size();
    }
    return S;
}

/// Greedy aggregation over the strength graph.
/**
 * 1. Rows are scanned in ascending order. A row that is not yet aggregated
 *    and whose strong neighbours are all unaggregated becomes a root; it
 *    forms a new aggregate with its whole strong neighbourhood.
 * 2. Each remaining row joins the aggregate of its strongest neighbour
 *    aggregated in step 1 (largest |a_ij|, ties broken by the lowest column).
 * 3. Rows left over become singletons.
 *
 * A row without strong neighbours passes the root test vacuously and ends
 * up as a singleton.
 */
template <class T>
aggregates aggregate(const strength_graph<T> &S) {
    const std::size_t n = S.size();
    const auto &G = S.graph;
    constexpr std::size_t undefined = std::numeric_limits<std::size_t>::max();

    aggregates agg;
    agg.id.assign(n, undefined);

    for (std::size_t i = 0; i < n; ++i) {
        if (agg.id[i] != undefined) continue;
        bool free = true;
        for (std::size_t j : G.row_cols(i)) {
            if (j != i && agg.id[j] != undefined) {
                free = false;
                break;
            }
        }
        if (!free) continue;
        const std::size_t cur = agg.count++;
        agg.id[i] = cur;
        for (std::size_t j : G.row_cols(i)) agg.id[j] = cur;
    }

    const std::vector<std::size_t> phase1 = agg.id;
    for (std::size_t i = 0; i < n; ++i) {
        if (phase1[i] != undefined) continue;
        T best = -1;
        std::size_t best_id = undefined;
        for (std::size_t k = G.row_ptr[i]; k < G.row_ptr[i + 1]; ++k) {
            const std::size_t j = G.col_idx[k];
            if (j == i || phase1[j] == undefined) continue;
            const T w = std::abs(G.values[k]);
            // Columns are visited in ascending order, so strict > keeps the
            // lowest column on ties.
            if (w > best) {
                best = w;
                best_id = phase1[j];
            }
        }
        agg.id[i] = best_id;
    }

    for (auto &id : agg.id)
        if (id == undefined) id = agg.count++;

    return agg;
}

/// nrows x count indicator matrix: one unit entry per row at column id[row].
template <class T>
csr_matrix<T> tentative_prolongation(const aggregates &agg, std::size_t nrows) {
    amgkit::detail::check_dims(agg.id.size() == nrows, "aggregate ids do not match row count");
    csr_matrix<T> P;
    P.nrows = nrows;
    P.ncols = agg.count;
    P.row_ptr.resize(nrows + 1);
    P.col_idx.resize(nrows);
    P.values.assign(nrows, T(1));
    for (std::size_t i = 0; i <= nrows; ++i) P.row_ptr[i] = i;
    for (std::size_t i = 0; i < nrows; ++i) P.col_idx[i] = agg.id[i];
    return P;
}

} // namespace coarsening
} // namespace amgkit
