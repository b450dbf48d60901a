#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amgkit {

/// Base class for every error raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid triplet during matrix assembly.
struct assembly_error : error {
    using error::error;
};

/// Operand shapes do not agree.
struct dimension_error : error {
    using error::error;
};

struct coarsening_error : error {
    using error::error;
};

/// Coarsening produced as many aggregates as there are rows.
struct stagnation_error : coarsening_error {
    using coarsening_error::coarsening_error;
};

/// Hierarchy construction failed (e.g. singular coarsest matrix).
struct setup_error : error {
    using error::error;
};

/// Bad parameter value, type or key.
struct config_error : error {
    using error::error;
};

/// Malformed line in a configuration file.
struct parse_error : error {
    parse_error(std::size_t line, const std::string &msg)
        : error("line " + std::to_string(line) + ": " + msg), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

struct io_error : error {
    using error::error;
};

/// Requested problem does not fit in addressable memory.
struct sizing_error : error {
    using error::error;
};

namespace detail {

inline void check_dims(bool ok, const char *what) {
    if (!ok) throw dimension_error(std::string("dimension mismatch: ") + what);
}

} // namespace detail
} // namespace amgkit
