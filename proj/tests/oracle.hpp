#pragma once

// Dense reference implementations used as independent oracles in the tests.
// Nothing here calls into the library except to convert a csr_matrix to a
// dense array.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include <amgkit/sparse.hpp>

namespace oracle {

template <class T = double>
struct dense {
    std::size_t n = 0, m = 0;
    std::vector<T> a;

    dense() = default;
    dense(std::size_t rows, std::size_t cols) : n(rows), m(cols), a(rows * cols, T(0)) {}

    T &operator()(std::size_t i, std::size_t j) { return a[i * m + j]; }
    T operator()(std::size_t i, std::size_t j) const { return a[i * m + j]; }

    T max_abs() const {
        T r = 0;
        for (T v : a) r = std::max(r, std::abs(v));
        return r;
    }
};

template <class T>
dense<T> to_dense(const amgkit::csr_matrix<T> &A) {
    dense<T> D(A.nrows, A.ncols);
    for (std::size_t i = 0; i < A.nrows; ++i)
        for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) D(i, A.col_idx[k]) += A.values[k];
    return D;
}

template <class T>
dense<T> multiply(const dense<T> &A, const dense<T> &B) {
    dense<T> C(A.n, B.m);
    for (std::size_t i = 0; i < A.n; ++i)
        for (std::size_t k = 0; k < A.m; ++k)
            for (std::size_t j = 0; j < B.m; ++j) C(i, j) += A(i, k) * B(k, j);
    return C;
}

template <class T>
dense<T> transpose(const dense<T> &A) {
    dense<T> B(A.m, A.n);
    for (std::size_t i = 0; i < A.n; ++i)
        for (std::size_t j = 0; j < A.m; ++j) B(j, i) = A(i, j);
    return B;
}

template <class T>
std::vector<T> matvec(const dense<T> &A, const std::vector<T> &x) {
    std::vector<T> y(A.n, T(0));
    for (std::size_t i = 0; i < A.n; ++i)
        for (std::size_t j = 0; j < A.m; ++j) y[i] += A(i, j) * x[j];
    return y;
}

template <class T>
T max_abs_diff(const dense<T> &A, const dense<T> &B) {
    T r = 0;
    for (std::size_t k = 0; k < A.a.size(); ++k) r = std::max(r, std::abs(A.a[k] - B.a[k]));
    return r;
}

/// Gaussian elimination with partial pivoting; returns x = A^-1 b.
inline std::vector<double> solve(dense<double> A, std::vector<double> b) {
    const std::size_t n = A.n;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > std::abs(A(p, k))) p = i;
        for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
        std::swap(b[k], b[p]);
        for (std::size_t i = k + 1; i < n; ++i) {
            double l = A(i, k) / A(k, k);
            for (std::size_t j = k; j < n; ++j) A(i, j) -= l * A(k, j);
            b[i] -= l * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
        x[i] = s / A(i, i);
    }
    return x;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(dense<double> A) {
    const std::size_t n = A.n;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(A(p, q)) < 1e-300) continue;
                double theta = (A(q, q) - A(p, p)) / (2 * A(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = A(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Random sparse matrix with roughly `density` fill, values in [-1, 1].
template <class T = double>
amgkit::csr_matrix<T> random_sparse(std::size_t n, std::size_t m, double density, std::mt19937 &gen) {
    std::uniform_real_distribution<double> val(-1.0, 1.0), coin(0.0, 1.0);
    std::vector<amgkit::triplet<T>> trip;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (coin(gen) < density) trip.push_back({i, j, static_cast<T>(val(gen))});
    return amgkit::csr_from_triplets(trip, n, m);
}

/// Random symmetric positive definite sparse matrix (diagonally dominant).
inline amgkit::csr_matrix<double> random_spd(std::size_t n, double density, std::mt19937 &gen) {
    std::uniform_real_distribution<double> val(-1.0, 0.0), coin(0.0, 1.0);
    std::vector<amgkit::triplet<double>> trip;
    std::vector<double> rowsum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(gen) < density) {
                double v = val(gen);
                trip.push_back({i, j, v});
                trip.push_back({j, i, v});
                rowsum[i] += std::abs(v);
                rowsum[j] += std::abs(v);
            }
    for (std::size_t i = 0; i < n; ++i) trip.push_back({i, i, rowsum[i] + 1.0});
    return amgkit::csr_from_triplets(trip, n, n);
}

inline amgkit::csr_matrix<double> poisson1d(std::size_t n) {
    std::vector<amgkit::triplet<double>> trip;
    for (std::size_t i = 0; i < n; ++i) {
        trip.push_back({i, i, 2.0});
        if (i > 0) trip.push_back({i, i - 1, -1.0});
        if (i + 1 < n) trip.push_back({i, i + 1, -1.0});
    }
    return amgkit::csr_from_triplets(trip, n, n);
}

inline amgkit::csr_matrix<double> poisson2d(std::size_t n) {
    std::vector<amgkit::triplet<double>> trip;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = j * n + i;
            trip.push_back({r, r, 4.0});
            if (i > 0) trip.push_back({r, r - 1, -1.0});
            if (i + 1 < n) trip.push_back({r, r + 1, -1.0});
            if (j > 0) trip.push_back({r, r - n, -1.0});
            if (j + 1 < n) trip.push_back({r, r + n, -1.0});
        }
    return amgkit::csr_from_triplets(trip, n * n, n * n);
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937 &gen) {
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto &x : v) x = val(gen);
    return v;
}

inline double norm(const std::vector<double> &v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double dot(const std::vector<double> &a, const std::vector<double> &b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace oracle
