#pragma once

/**
 * \file   amgkit/poisson.hpp
 * \brief  Finite difference Poisson problem -Lap(u) = 1 on the unit cube
 *         with homogeneous Dirichlet boundary conditions.
 *
 * The n^3 interior nodes of a uniform grid with h = 1/(n+1) are the
 * unknowns; boundary nodes are eliminated. Each row carries the scaled
 * 7-point stencil: 6/h^2 on the diagonal and -1/h^2 for every interior
 * neighbour, so nnz = 7 n^3 - 6 n^2.
 */

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <amgkit/error.hpp>
#include <amgkit/sparse.hpp>

namespace amgkit {

template <class T>
struct problem_bundle {
    csr_matrix<T> A;
    std::vector<T> rhs;
    std::optional<std::vector<T>> reference;
};

/// Row and nonzero counts of the n^3 problem; throws sizing_error if the
/// arrays would not fit in addressable memory.
inline std::pair<std::size_t, std::size_t> poisson_size(std::size_t n) {
    if (n < 1) throw sizing_error("poisson grid size must be >= 1");
    constexpr std::size_t max = std::numeric_limits<std::size_t>::max();
    // rows = n^3, nnz = 7 n^3 - 6 n^2, bytes ~ nnz * (index + value)
    if (n > max / n || n * n > max / n) throw sizing_error("poisson grid " + std::to_string(n) + "^3 overflows");
    const std::size_t rows = n * n * n;
    if (rows > max / 7) throw sizing_error("poisson grid " + std::to_string(n) + "^3 overflows");
    const std::size_t nnz = 7 * rows - 6 * n * n;
    const std::size_t per_entry = sizeof(std::size_t) + sizeof(double);
    if (nnz > max / per_entry || nnz > std::vector<std::size_t>().max_size())
        throw sizing_error("poisson grid " + std::to_string(n) + "^3 needs more than addressable memory");
    return {rows, nnz};
}

template <class T = double>
problem_bundle<T> generate_poisson(std::size_t n) {
    const auto [rows, nnz] = poisson_size(n);
    const T h = T(1) / static_cast<T>(n + 1);
    const T h2i = T(1) / (h * h);

    problem_bundle<T> pb;
    csr_matrix<T> &A = pb.A;
    A.nrows = A.ncols = rows;
    A.row_ptr.assign(rows + 1, 0);
    A.col_idx.resize(nnz);
    A.values.resize(nnz);

    const std::size_t n2 = n * n;
    std::size_t pos = 0;
    std::size_t row = 0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i, ++row) {
                auto put = [&](std::size_t c, T v) {
                    A.col_idx[pos] = c;
                    A.values[pos] = v;
                    ++pos;
                };
                if (k > 0) put(row - n2, -h2i);
                if (j > 0) put(row - n, -h2i);
                if (i > 0) put(row - 1, -h2i);
                put(row, 6 * h2i);
                if (i + 1 < n) put(row + 1, -h2i);
                if (j + 1 < n) put(row + n, -h2i);
                if (k + 1 < n) put(row + n2, -h2i);
                A.row_ptr[row + 1] = pos;
            }
        }
    }
    pb.rhs.assign(rows, T(1));
    return pb;
}

} // namespace amgkit
