#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include <amgkit/config.hpp>
#include <amgkit/io/matrix_market.hpp>
#include <amgkit/poisson.hpp>
#include <amgkit/report.hpp>

namespace {

struct common_opts {
    std::string config_path;
    std::vector<std::string> overrides;
    int threads = 0;
};

amgkit::param_tree load_config(const common_opts &o) {
    amgkit::param_tree t;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw amgkit::io_error("cannot open '" + o.config_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        t = amgkit::parse_config(ss.str());
    }
    for (const auto &s : o.overrides) amgkit::apply_override(t, s);
    return t;
}

void set_threads(int k) {
#ifdef _OPENMP
    if (k > 0) omp_set_num_threads(k);
#else
    (void)k;
#endif
}

nlohmann::json to_json(const amgkit::solve_report &r) {
    nlohmann::json j;
    j["unknowns"] = r.unknowns;
    j["nonzeros"] = r.nonzeros;
    j["setup_seconds"] = r.setup_seconds;
    j["solve_seconds"] = r.solve_seconds;
    j["total_seconds"] = r.total_seconds;
    j["iterations"] = r.iterations;
    j["relative_residual"] = r.relative_residual;
    j["converged"] = r.converged;
    if (r.breakdown) j["breakdown"] = *r.breakdown;
    j["operator_complexity"] = r.hierarchy.operator_complexity;
    j["grid_complexity"] = r.hierarchy.grid_complexity;
    auto &lv = j["levels"] = nlohmann::json::array();
    for (const auto &l : r.hierarchy.levels) lv.push_back({{"rows", l.rows}, {"nonzeros", l.nnz}});
    auto &cfg = j["config"] = nlohmann::json::object();
    for (const auto &[k, v] : r.config.leaves())
        std::visit([&, &k = k](const auto &x) { cfg[k] = x; }, v);
    j["warnings"] = r.warnings;
    return j;
}

nlohmann::json to_json(const std::vector<amgkit::bench_row> &rows) {
    auto j = nlohmann::json::array();
    for (const auto &r : rows)
        j.push_back({{"n", r.n},
                     {"unknowns", r.unknowns},
                     {"nnz", r.nonzeros},
                     {"setup_s", r.setup_seconds},
                     {"solve_s", r.solve_seconds},
                     {"total_s", r.total_seconds},
                     {"iterations", r.iterations},
                     {"residual", r.relative_residual},
                     {"converged", r.converged},
                     {"deterministic", r.deterministic}});
    return j;
}

void add_common(CLI::App *app, common_opts &o) {
    app->add_option("--config", o.config_path, "Parameter file (key = value lines)");
    app->add_option("--set", o.overrides, "Override a parameter, path=value (repeatable)");
    app->add_option("--threads", o.threads, "Worker count (0 = runtime default)")->check(CLI::NonNegativeNumber);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Algebraic multigrid preconditioned Krylov solver"};
    app.require_subcommand(1);

    common_opts solve_o, bench_o;
    std::string matrix_path, rhs_path, output_path;
    std::size_t poisson_n = 0;
    bool solve_json = false;

    auto *solve = app.add_subcommand("solve", "Solve A u = f and print a report");
    auto *mopt = solve->add_option("--matrix", matrix_path, "MatrixMarket coordinate file");
    auto *popt = solve->add_option("--poisson", poisson_n, "Generate the N^3 Poisson problem")
                     ->check(CLI::PositiveNumber);
    mopt->excludes(popt);
    solve->add_option("--rhs", rhs_path, "MatrixMarket array file (default: all ones)");
    solve->add_option("--output", output_path, "Write the solution vector here");
    solve->add_flag("--json", solve_json, "Print the report as JSON");
    add_common(solve, solve_o);

    std::vector<std::size_t> sizes{16, 32, 64};
    std::size_t repeats = 1;
    bool bench_json = false;
    std::string bench_output;
    auto *bench = app.add_subcommand("bench", "Poisson benchmark table");
    bench->add_option("--sizes", sizes, "Grid sizes N (N^3 unknowns)")->delimiter(',');
    bench->add_option("--repeats", repeats, "Runs per size")->check(CLI::PositiveNumber);
    bench->add_option("--output", bench_output, "Write the table here instead of stdout");
    bench->add_flag("--json", bench_json, "Emit JSON instead of a tab-separated table");
    add_common(bench, bench_o);

    std::size_t dump_n = 0;
    std::string dump_output;
    auto *dump = app.add_subcommand("poisson-dump", "Write the N^3 Poisson matrix and rhs");
    dump->add_option("--poisson", dump_n, "Grid size N")->required()->check(CLI::PositiveNumber);
    dump->add_option("--output", dump_output, "Output prefix: PREFIX.mtx and PREFIX_rhs.mtx")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            if (matrix_path.empty() && poisson_n == 0) {
                std::cerr << "error: solve needs --matrix PATH or --poisson N\n";
                return 2;
            }
            set_threads(solve_o.threads);
            auto tree = load_config(solve_o);
            amgkit::csr_matrix<double> A;
            std::vector<double> rhs;
            if (poisson_n > 0) {
                auto pb = amgkit::generate_poisson<double>(poisson_n);
                A = std::move(pb.A);
                rhs = std::move(pb.rhs);
            } else {
                A = amgkit::io::read_matrix_market<double>(matrix_path);
            }
            if (!rhs_path.empty()) rhs = amgkit::io::read_vector<double>(rhs_path);
            else if (rhs.empty()) rhs.assign(A.nrows, 1.0);

            std::vector<double> u;
            auto rep = amgkit::run_solve<double>(std::move(A), rhs, tree, solve_o.threads, &u);
            if (solve_json) std::cout << to_json(rep).dump(2) << "\n";
            else std::cout << rep;
            if (!output_path.empty()) amgkit::io::write_vector(output_path, u);
            return rep.converged ? 0 : 1;
        }
        if (*bench) {
            set_threads(bench_o.threads);
            auto tree = load_config(bench_o);
            auto rows = amgkit::run_bench<double>(sizes, tree, repeats, bench_o.threads);
            std::ofstream file;
            if (!bench_output.empty()) {
                file.open(bench_output);
                if (!file) throw amgkit::io_error("cannot write '" + bench_output + "'");
            }
            std::ostream &out = bench_output.empty() ? std::cout : file;
            if (bench_json) out << to_json(rows).dump(2) << "\n";
            else amgkit::write_bench_table(out, rows);
            for (const auto &r : rows)
                if (!r.converged || !r.deterministic) return 1;
            return 0;
        }
        if (*dump) {
            auto pb = amgkit::generate_poisson<double>(dump_n);
            amgkit::io::write_matrix_market(dump_output + ".mtx", pb.A);
            amgkit::io::write_vector(dump_output + "_rhs.mtx", pb.rhs);
            std::cout << "wrote " << dump_output << ".mtx (" << pb.A.nrows << " rows, " << pb.A.nnz()
                      << " nonzeros) and " << dump_output << "_rhs.mtx\n";
            return 0;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
