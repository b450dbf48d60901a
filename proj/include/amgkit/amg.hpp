#pragma once

/**
 * \file   amgkit/amg.hpp
 * \brief  Algebraic multigrid hierarchy and the V-cycle preconditioner.
 *
 * Setup runs on the host CSR structures:
 *
 *   A_0 = A
 *   while A_i is larger than coarse_enough:
 *       (P_i, R_i) = Coarsening::transfer_operators(A_i)
 *       A_{i+1}    = R_i A_i P_i
 *       S_i        = Relax(A_i)
 *   factorize A_L densely
 *
 * The finished hierarchy is immutable and held by shared pointer. The
 * vectors used during a V-cycle live in a per-instance workspace, so
 * concurrent callers each need their own instance (see clone()).
 */

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <amgkit/dense_lu.hpp>
#include <amgkit/error.hpp>
#include <amgkit/relaxation/params.hpp>
#include <amgkit/sparse.hpp>

namespace amgkit {

struct level_info {
    std::size_t rows;
    std::size_t nnz;
};

/// Per-level sizes plus operator complexity sum(nnz_i)/nnz_0 and grid
/// complexity sum(rows_i)/rows_0.
struct hierarchy_report {
    std::vector<level_info> levels;
    double operator_complexity = 0;
    double grid_complexity = 0;
    bool stagnated = false;
};

inline hierarchy_report make_hierarchy_report(std::vector<level_info> levels, bool stagnated) {
    hierarchy_report r;
    r.levels = std::move(levels);
    r.stagnated = stagnated;
    double rows = 0, nnz = 0;
    for (const auto &l : r.levels) {
        rows += static_cast<double>(l.rows);
        nnz += static_cast<double>(l.nnz);
    }
    if (!r.levels.empty()) {
        r.grid_complexity = r.levels[0].rows ? rows / static_cast<double>(r.levels[0].rows) : 1.0;
        r.operator_complexity = r.levels[0].nnz ? nnz / static_cast<double>(r.levels[0].nnz) : 1.0;
    }
    return r;
}

inline std::ostream &operator<<(std::ostream &os, const hierarchy_report &r) {
    os << "Number of levels:    " << r.levels.size() << (r.stagnated ? " (stagnated)" : "") << "\n"
       << "Operator complexity: " << r.operator_complexity << "\n"
       << "Grid complexity:     " << r.grid_complexity << "\n\n"
       << "level     unknowns       nonzeros\n"
       << "---------------------------------\n";
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
        std::string lv = std::to_string(i);
        std::string rows = std::to_string(r.levels[i].rows);
        std::string nnz = std::to_string(r.levels[i].nnz);
        os << std::string(5 - std::min<std::size_t>(5, lv.size()), ' ') << lv
           << std::string(13 - std::min<std::size_t>(13, rows.size()), ' ') << rows
           << std::string(15 - std::min<std::size_t>(15, nnz.size()), ' ') << nnz << "\n";
    }
    return os;
}

template <class Backend, class Coarsening, template <class> class Relax>
class amg {
  public:
    using backend_type = Backend;
    using value_type = typename Backend::value_type;
    using matrix = typename Backend::matrix;
    using vector = typename Backend::vector;
    using smoother_type = Relax<Backend>;

    struct params {
        typename Coarsening::params coarsening;
        typename smoother_type::params relax;
        std::size_t npre = 1;
        std::size_t npost = 1;
        /// Levels at or below this size are solved directly.
        std::size_t coarse_enough = 3000;
        std::size_t max_levels = 30;

        void validate() const {
            if (npre + npost < 1) throw config_error("precond.npre + precond.npost must be >= 1");
            if (coarse_enough < 1) throw config_error("precond.coarse_enough must be >= 1");
            if (max_levels < 1) throw config_error("precond.max_levels must be >= 1");
            coarsening.validate();
            relax.validate();
        }
    };

    struct level {
        matrix A;
        matrix P; // empty on the coarsest level
        matrix R; // empty on the coarsest level
        std::optional<smoother_type> smoother;
    };

    struct hierarchy {
        std::vector<level> levels;
        dense_lu<value_type> coarse;
        /// Setup stopped because coarsening no longer reduced the size.
        bool stagnated = false;
        params prm;
    };

    /// Coarse/fine size ratio above which a coarsening step counts as slow;
    /// two slow steps in a row end the setup.
    static constexpr double stagnation_ratio = 0.95;

    explicit amg(matrix A, const params &prm = params(), const Backend &bk = Backend())
        : bk_(bk), h_(setup(std::move(A), prm, bk)) {
        init_workspace();
    }

    /// Another instance over the same hierarchy with its own workspace.
    amg clone() const { return amg(h_, bk_); }

    /// z = M r: one V-cycle with zero initial guess.
    void apply(const vector &r, vector &z) {
        amgkit::detail::check_dims(r.size() == size() && z.size() == size(),
                                   "apply_preconditioner");
        bk_.set_zero(z);
        vcycle(0, r, z);
    }

    /// One V-cycle on level `lvl` for the system A_lvl u = f, updating u.
    void vcycle(std::size_t lvl, const vector &f, vector &u) {
        const auto &L = h_->levels;
        amgkit::detail::check_dims(lvl < L.size(), "vcycle level out of range");
        amgkit::detail::check_dims(f.size() == L[lvl].A.nrows && u.size() == L[lvl].A.nrows,
                                   "vcycle");
        cycle(lvl, f, u);
    }

    std::size_t size() const { return h_->levels.front().A.nrows; }
    std::size_t num_levels() const { return h_->levels.size(); }
    const matrix &system_matrix() const { return h_->levels.front().A; }
    const hierarchy &get_hierarchy() const { return *h_; }
    const params &get_params() const { return h_->prm; }
    const Backend &backend() const { return bk_; }

    hierarchy_report report() const {
        std::vector<level_info> info;
        for (const auto &l : h_->levels) info.push_back({l.A.nrows, l.A.nnz()});
        return make_hierarchy_report(std::move(info), h_->stagnated);
    }

  private:
    struct level_workspace {
        vector f;
        vector u;
        relaxation::workspace<Backend> relax;

        level_workspace(std::size_t n, const Backend &bk)
            : f(bk.make_vector(n)), u(bk.make_vector(n)), relax(n, bk) {}
    };

    Backend bk_;
    std::shared_ptr<const hierarchy> h_;
    std::vector<level_workspace> ws_;

    amg(std::shared_ptr<const hierarchy> h, const Backend &bk) : bk_(bk), h_(std::move(h)) {
        init_workspace();
    }

    void init_workspace() {
        ws_.clear();
        ws_.reserve(h_->levels.size());
        for (const auto &l : h_->levels) ws_.emplace_back(l.A.nrows, bk_);
    }

    static std::shared_ptr<const hierarchy> setup(matrix A, const params &prm, const Backend &bk) {
        amgkit::detail::check_dims(A.nrows == A.ncols, "amg requires a square matrix");
        prm.validate();

        auto h = std::make_shared<hierarchy>();
        h->prm = prm;
        h->levels.push_back(level{std::move(A), {}, {}, std::nullopt});

        // Coarse operators have wider, flatter stencils; the strength
        // threshold is halved on every level below the finest.
        auto cprm = prm.coarsening;
        int slow_steps = 0;
        while (h->levels.back().A.nrows > prm.coarse_enough &&
               h->levels.size() < prm.max_levels) {
            level &cur = h->levels.back();
            std::pair<matrix, matrix> PR;
            try {
                PR = Coarsening::transfer_operators(cur.A, cprm);
            } catch (const stagnation_error &) {
                h->stagnated = true;
                break;
            }
            matrix Ac = galerkin_product(PR.second, cur.A, PR.first);
            const double ratio =
                static_cast<double>(Ac.nrows) / static_cast<double>(cur.A.nrows);

            cur.P = std::move(PR.first);
            cur.R = std::move(PR.second);
            cur.smoother.emplace(cur.A, prm.relax, bk);
            cprm.eps_strong *= 0.5;
            h->levels.push_back(level{std::move(Ac), {}, {}, std::nullopt});

            if (ratio > stagnation_ratio) {
                if (++slow_steps >= 2) {
                    h->stagnated = true;
                    break;
                }
            } else {
                slow_steps = 0;
            }
        }

        h->coarse = dense_lu<value_type>(h->levels.back().A);
        return h;
    }

    void cycle(std::size_t i, const vector &f, vector &u) {
        const auto &levels = h_->levels;
        if (i + 1 == levels.size()) {
            h_->coarse.solve(f, u);
            return;
        }
        const level &L = levels[i];
        level_workspace &W = ws_[i];
        level_workspace &C = ws_[i + 1];
        const auto &prm = h_->prm;

        for (std::size_t k = 0; k < prm.npre; ++k) L.smoother->apply_pre(bk_, L.A, f, u, W.relax);

        bk_.residual(f, L.A, u, W.relax.r);
        bk_.spmv(1, L.R, W.relax.r, 0, C.f);
        bk_.set_zero(C.u);
        cycle(i + 1, C.f, C.u);
        bk_.spmv(1, L.P, C.u, 1, u);

        for (std::size_t k = 0; k < prm.npost; ++k) L.smoother->apply_post(bk_, L.A, f, u, W.relax);
    }
};

} // namespace amgkit
