#include "harmonic/harness.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdio>
#include <exception>
#include <string>

namespace {

int finish_table(const harmonic::ConvergenceTable& table, const std::string& out) {
    harmonic::write_summary_csv(table, out);
    int failed = 0;
    for (const auto& row : table.rows) {
        std::printf("%-6s L=%-3d n=%-3d dof=%-4d err_rel=%-14.6e %s\n", row.backend.c_str(),
                    row.L, row.n, row.dof, row.l2_error_rel, row.status.c_str());
        if (row.status.rfind("failed", 0) == 0) ++failed;
    }
    std::printf("wrote %s\n", out.c_str());
    return failed == static_cast<int>(table.rows.size()) ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Layered harmonic approximation experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    int threads = 0;
    int seed = 0;  // reserved; nothing here is randomized
    int field_L = 8;

    app.add_option("--config", config_path, "JSON experiment config")->required();
    app.add_option("--out", out_path, "output path (overrides the config)");
    app.add_option("--threads", threads, "worker thread count (0 = library default)");
    app.add_option("--seed", seed, "reserved");

    CLI::App* sweep = app.add_subcommand("sweep", "convergence sweep over the layer counts");
    CLI::App* field = app.add_subcommand("field", "sample |u - xi_u| on a grid");
    field->add_option("--L", field_L, "layer count for the sampled approximation");
    CLI::App* trig = app.add_subcommand("trig", "single-domain trigonometric sweep");
    for (CLI::App* sub : {sweep, field, trig}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        const harmonic::ExperimentConfig cfg = harmonic::load_config(config_path);
        if (sweep->parsed()) {
            const auto table = harmonic::run_sweep(cfg);
            return finish_table(table, out_path.empty() ? cfg.summary_csv : out_path);
        }
        if (trig->parsed()) {
            const auto table = harmonic::run_trig(cfg, cfg.n_list);
            return finish_table(table, out_path.empty() ? cfg.summary_csv : out_path);
        }
        if (field->parsed()) {
            const std::string out = out_path.empty() ? cfg.grid_csv : out_path;
            harmonic::write_error_field(cfg, field_L, out);
            std::printf("wrote %s\n", out.c_str());
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
