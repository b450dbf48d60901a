#pragma once

/**
 * \file   amgkit/io/matrix_market.hpp
 * \brief  MatrixMarket reader and writer.
 *
 * Matrices: `coordinate` format, `real` or `integer` field, `general` or
 * `symmetric` storage (the missing triangle is filled in). Vectors:
 * `array` format with a single column.
 */

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <amgkit/error.hpp>
#include <amgkit/sparse.hpp>

namespace amgkit {
namespace io {

namespace detail {

struct mm_header {
    std::string object, format, field, symmetry;
};

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

inline mm_header read_header(std::istream &in, const std::string &name) {
    std::string line;
    if (!std::getline(in, line)) throw io_error(name + ": empty file");
    std::istringstream hs(line);
    std::string banner;
    mm_header h;
    hs >> banner >> h.object >> h.format >> h.field >> h.symmetry;
    if (banner != "%%MatrixMarket" || h.symmetry.empty())
        throw io_error(name + ": malformed MatrixMarket header");
    h.object = lower(h.object);
    h.format = lower(h.format);
    h.field = lower(h.field);
    h.symmetry = lower(h.symmetry);
    if (h.object != "matrix") throw io_error(name + ": unsupported object '" + h.object + "'");
    if (h.field != "real" && h.field != "integer" && h.field != "double")
        throw io_error(name + ": unsupported field '" + h.field + "'");
    if (h.symmetry != "general" && h.symmetry != "symmetric")
        throw io_error(name + ": unsupported symmetry '" + h.symmetry + "'");
    return h;
}

/// Next line that is neither a comment nor blank.
inline bool data_line(std::istream &in, std::string &line) {
    while (std::getline(in, line)) {
        auto p = line.find_first_not_of(" \t\r");
        if (p == std::string::npos || line[p] == '%') continue;
        return true;
    }
    return false;
}

} // namespace detail

template <class T = double>
csr_matrix<T> read_matrix_market(std::istream &in, const std::string &name = "<stream>") {
    auto h = detail::read_header(in, name);
    if (h.format != "coordinate")
        throw io_error(name + ": expected coordinate format, found '" + h.format + "'");

    std::string line;
    if (!detail::data_line(in, line)) throw io_error(name + ": missing size line");
    std::size_t n = 0, m = 0, nnz = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> n >> m >> nnz)) throw io_error(name + ": malformed size line");
    }
    const bool sym = h.symmetry == "symmetric";
    if (sym && n != m) throw io_error(name + ": symmetric matrix must be square");

    std::vector<triplet<T>> trip;
    trip.reserve(sym ? 2 * nnz : nnz);
    for (std::size_t k = 0; k < nnz; ++k) {
        if (!detail::data_line(in, line))
            throw io_error(name + ": expected " + std::to_string(nnz) + " entries, found " +
                           std::to_string(k));
        std::istringstream ss(line);
        long long i = 0, j = 0;
        double v = 0;
        if (!(ss >> i >> j >> v)) throw io_error(name + ": malformed entry #" + std::to_string(k + 1));
        if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > m)
            throw io_error(name + ": entry #" + std::to_string(k + 1) + " (" + std::to_string(i) +
                           ", " + std::to_string(j) + ") out of bounds");
        const std::size_t r = static_cast<std::size_t>(i - 1), c = static_cast<std::size_t>(j - 1);
        trip.push_back({r, c, static_cast<T>(v)});
        if (sym && r != c) trip.push_back({c, r, static_cast<T>(v)});
    }
    return csr_from_triplets(trip, n, m);
}

template <class T = double>
csr_matrix<T> read_matrix_market(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");
    return read_matrix_market<T>(in, path);
}

/// Dense vector stored as a one-column `array` file.
template <class T = double>
std::vector<T> read_vector(std::istream &in, const std::string &name = "<stream>") {
    auto h = detail::read_header(in, name);
    if (h.format != "array")
        throw io_error(name + ": expected array format, found '" + h.format + "'");
    std::string line;
    if (!detail::data_line(in, line)) throw io_error(name + ": missing size line");
    std::size_t n = 0, m = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> n >> m)) throw io_error(name + ": malformed size line");
    }
    if (m != 1) throw io_error(name + ": vector file must have exactly one column");
    std::vector<T> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!detail::data_line(in, line))
            throw io_error(name + ": expected " + std::to_string(n) + " values, found " +
                           std::to_string(i));
        std::istringstream ss(line);
        double x = 0;
        if (!(ss >> x)) throw io_error(name + ": malformed value #" + std::to_string(i + 1));
        v[i] = static_cast<T>(x);
    }
    return v;
}

template <class T = double>
std::vector<T> read_vector(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");
    return read_vector<T>(in, path);
}

template <class T>
void write_matrix_market(std::ostream &out, const csr_matrix<T> &A) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << A.nrows << " " << A.ncols << " " << A.nnz() << "\n";
    out << std::setprecision(std::numeric_limits<T>::max_digits10);
    for (std::size_t i = 0; i < A.nrows; ++i)
        for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
            out << i + 1 << " " << A.col_idx[k] + 1 << " " << A.values[k] << "\n";
}

template <class T>
void write_matrix_market(const std::string &path, const csr_matrix<T> &A) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write '" + path + "'");
    write_matrix_market(out, A);
    if (!out) throw io_error("error while writing '" + path + "'");
}

template <class T>
void write_vector(std::ostream &out, const std::vector<T> &v) {
    out << "%%MatrixMarket matrix array real general\n";
    out << v.size() << " 1\n";
    out << std::setprecision(std::numeric_limits<T>::max_digits10);
    for (const T &x : v) out << x << "\n";
}

template <class T>
void write_vector(const std::string &path, const std::vector<T> &v) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write '" + path + "'");
    write_vector(out, v);
    if (!out) throw io_error("error while writing '" + path + "'");
}

} // namespace io
} // namespace amgkit
