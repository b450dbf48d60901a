#pragma once

/**
 * \file   amgkit/sparse.hpp
 * \brief  Compressed sparse row storage and the structural kernels used
 *         while building the multigrid hierarchy.
 *
 * Every operator in the library (system matrix, transfer operators, coarse
 * level matrices) is a csr_matrix. Kernels here are setup-phase code: they
 * may allocate freely and parallelize over rows, but the result never
 * depends on the number of threads.
 */

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <amgkit/error.hpp>

namespace amgkit {

template <class T>
struct triplet {
    std::size_t row;
    std::size_t col;
    T value;
};

/// Compressed sparse row matrix.
/**
 * Invariants: row_ptr has nrows+1 non-decreasing entries starting at zero
 * and ending at nnz; column indices inside a row are strictly increasing
 * and smaller than ncols. Empty rows are allowed.
 */
template <class T = double>
struct csr_matrix {
    using value_type = T;

    std::size_t nrows = 0;
    std::size_t ncols = 0;
    std::vector<std::size_t> row_ptr{0};
    std::vector<std::size_t> col_idx;
    std::vector<T> values;

    csr_matrix() = default;

    csr_matrix(std::size_t n, std::size_t m,
               std::vector<std::size_t> ptr,
               std::vector<std::size_t> col,
               std::vector<T> val)
        : nrows(n), ncols(m), row_ptr(std::move(ptr)), col_idx(std::move(col)),
          values(std::move(val)) {}

    std::size_t nnz() const { return col_idx.size(); }

    std::span<const std::size_t> row_cols(std::size_t i) const {
        return {col_idx.data() + row_ptr[i], row_ptr[i + 1] - row_ptr[i]};
    }

    std::span<const T> row_vals(std::size_t i) const {
        return {values.data() + row_ptr[i], row_ptr[i + 1] - row_ptr[i]};
    }

    /// Stored value at (i, j), or zero when (i, j) is not in the pattern.
    T at(std::size_t i, std::size_t j) const {
        auto cols = row_cols(i);
        auto it = std::lower_bound(cols.begin(), cols.end(), j);
        if (it == cols.end() || *it != j) return T(0);
        return values[row_ptr[i] + static_cast<std::size_t>(it - cols.begin())];
    }

    /// Diagonal entries (zero where the diagonal is not stored).
    std::vector<T> diagonal() const {
        std::vector<T> d(std::min(nrows, ncols), T(0));
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
        return d;
    }

    /// Checks the structural invariants; returns an empty string when valid.
    std::string check() const {
        if (row_ptr.size() != nrows + 1) return "row_ptr has wrong length";
        if (row_ptr.front() != 0) return "row_ptr[0] != 0";
        if (row_ptr.back() != col_idx.size()) return "row_ptr[nrows] != nnz";
        if (values.size() != col_idx.size()) return "values/col_idx length differ";
        for (std::size_t i = 0; i < nrows; ++i) {
            if (row_ptr[i] > row_ptr[i + 1]) return "row_ptr decreases at row " + std::to_string(i);
            for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
                if (col_idx[k] >= ncols) return "column out of range in row " + std::to_string(i);
                if (k > row_ptr[i] && col_idx[k] <= col_idx[k - 1])
                    return "columns not strictly increasing in row " + std::to_string(i);
            }
        }
        return {};
    }

    friend bool operator==(const csr_matrix &, const csr_matrix &) = default;
};

template <class T>
csr_matrix<T> identity(std::size_t n) {
    std::vector<std::size_t> ptr(n + 1), col(n);
    std::iota(ptr.begin(), ptr.end(), std::size_t(0));
    std::iota(col.begin(), col.end(), std::size_t(0));
    return {n, n, std::move(ptr), std::move(col), std::vector<T>(n, T(1))};
}

/// Assembles a CSR matrix from an unordered list of triplets.
/**
 * Duplicate (row, col) pairs are summed. Throws assembly_error naming the
 * first triplet that falls outside the nrows x ncols shape.
 */
template <class T>
csr_matrix<T> csr_from_triplets(std::span<const triplet<T>> trip,
                                std::size_t nrows, std::size_t ncols) {
    for (std::size_t k = 0; k < trip.size(); ++k) {
        const auto &t = trip[k];
        if (t.row >= nrows || t.col >= ncols)
            throw assembly_error("triplet #" + std::to_string(k) + " (" +
                                 std::to_string(t.row) + ", " + std::to_string(t.col) +
                                 ") is outside a " + std::to_string(nrows) + "x" +
                                 std::to_string(ncols) + " matrix");
    }

    // Bucket by row, then sort each row by column and merge duplicates.
    // Sorting by (col, value) makes the duplicate sum independent of the
    // input order.
    std::vector<std::size_t> count(nrows + 1, 0);
    for (const auto &t : trip) ++count[t.row + 1];
    std::partial_sum(count.begin(), count.end(), count.begin());

    std::vector<std::pair<std::size_t, T>> bucket(trip.size());
    {
        std::vector<std::size_t> pos(count.begin(), count.end() - 1);
        for (const auto &t : trip) bucket[pos[t.row]++] = {t.col, t.value};
    }

    csr_matrix<T> A;
    A.nrows = nrows;
    A.ncols = ncols;
    A.row_ptr.assign(nrows + 1, 0);
    A.col_idx.reserve(trip.size());
    A.values.reserve(trip.size());

    for (std::size_t i = 0; i < nrows; ++i) {
        auto beg = bucket.begin() + static_cast<std::ptrdiff_t>(count[i]);
        auto end = bucket.begin() + static_cast<std::ptrdiff_t>(count[i + 1]);
        std::sort(beg, end);
        for (auto it = beg; it != end; ++it) {
            if (!A.col_idx.empty() && A.row_ptr[i] < A.col_idx.size() &&
                A.col_idx.back() == it->first) {
                A.values.back() += it->second;
            } else {
                A.col_idx.push_back(it->first);
                A.values.push_back(it->second);
            }
        }
        A.row_ptr[i + 1] = A.col_idx.size();
    }
    return A;
}

template <class T>
csr_matrix<T> csr_from_triplets(const std::vector<triplet<T>> &trip,
                                std::size_t nrows, std::size_t ncols) {
    return csr_from_triplets(std::span<const triplet<T>>(trip), nrows, ncols);
}

template <class T>
csr_matrix<T> transpose(const csr_matrix<T> &A) {
    csr_matrix<T> B;
    B.nrows = A.ncols;
    B.ncols = A.nrows;
    B.row_ptr.assign(A.ncols + 1, 0);
    B.col_idx.resize(A.nnz());
    B.values.resize(A.nnz());

    for (std::size_t c : A.col_idx) ++B.row_ptr[c + 1];
    std::partial_sum(B.row_ptr.begin(), B.row_ptr.end(), B.row_ptr.begin());

    // Scanning A row by row keeps the columns of B sorted.
    std::vector<std::size_t> pos(B.row_ptr.begin(), B.row_ptr.end() - 1);
    for (std::size_t i = 0; i < A.nrows; ++i) {
        for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            std::size_t dst = pos[A.col_idx[k]]++;
            B.col_idx[dst] = i;
            B.values[dst] = A.values[k];
        }
    }
    return B;
}

/// Sparse matrix product A * B (row-wise Gustavson algorithm).
/**
 * Entries that cancel to zero stay in the pattern. Accumulation order in
 * every row is fixed by the input structure, so the result is bit-identical
 * for any thread count.
 */
template <class T>
csr_matrix<T> spgemm(const csr_matrix<T> &A, const csr_matrix<T> &B) {
    detail::check_dims(A.ncols == B.nrows, "spgemm requires A.ncols == B.nrows");

    const std::size_t n = A.nrows;
    const std::size_t m = B.ncols;

    csr_matrix<T> C;
    C.nrows = n;
    C.ncols = m;
    C.row_ptr.assign(n + 1, 0);

    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);

    // Pass 1: row sizes.
#pragma omp parallel
    {
        std::vector<std::size_t> marker(m, static_cast<std::size_t>(-1));
#pragma omp for
        for (std::ptrdiff_t si = 0; si < sn; ++si) {
            const std::size_t i = static_cast<std::size_t>(si);
            std::size_t cnt = 0;
            for (std::size_t ka = A.row_ptr[i]; ka < A.row_ptr[i + 1]; ++ka) {
                const std::size_t j = A.col_idx[ka];
                for (std::size_t kb = B.row_ptr[j]; kb < B.row_ptr[j + 1]; ++kb) {
                    const std::size_t c = B.col_idx[kb];
                    if (marker[c] != i) {
                        marker[c] = i;
                        ++cnt;
                    }
                }
            }
            C.row_ptr[i + 1] = cnt;
        }
    }
    std::partial_sum(C.row_ptr.begin(), C.row_ptr.end(), C.row_ptr.begin());
    C.col_idx.resize(C.row_ptr.back());
    C.values.resize(C.row_ptr.back());

    // Pass 2: fill, then sort each row by column.
#pragma omp parallel
    {
        std::vector<std::size_t> slot(m, static_cast<std::size_t>(-1));
        std::vector<std::pair<std::size_t, T>> row;
#pragma omp for
        for (std::ptrdiff_t si = 0; si < sn; ++si) {
            const std::size_t i = static_cast<std::size_t>(si);
            row.clear();
            for (std::size_t ka = A.row_ptr[i]; ka < A.row_ptr[i + 1]; ++ka) {
                const std::size_t j = A.col_idx[ka];
                const T a = A.values[ka];
                for (std::size_t kb = B.row_ptr[j]; kb < B.row_ptr[j + 1]; ++kb) {
                    const std::size_t c = B.col_idx[kb];
                    // slot[] may hold stale positions from earlier rows.
                    if (slot[c] < row.size() && row[slot[c]].first == c) {
                        row[slot[c]].second += a * B.values[kb];
                    } else {
                        slot[c] = row.size();
                        row.emplace_back(c, a * B.values[kb]);
                    }
                }
            }
            std::sort(row.begin(), row.end(),
                      [](const auto &x, const auto &y) { return x.first < y.first; });
            std::size_t dst = C.row_ptr[i];
            for (const auto &[c, v] : row) {
                C.col_idx[dst] = c;
                C.values[dst] = v;
                ++dst;
            }
        }
    }
    return C;
}

/// Galerkin coarse operator R * A * P.
template <class T>
csr_matrix<T> galerkin_product(const csr_matrix<T> &R, const csr_matrix<T> &A,
                               const csr_matrix<T> &P) {
    detail::check_dims(R.ncols == A.nrows, "galerkin_product requires R.ncols == A.nrows");
    detail::check_dims(A.ncols == P.nrows, "galerkin_product requires A.ncols == P.nrows");
    return spgemm(spgemm(R, A), P);
}

} // namespace amgkit
