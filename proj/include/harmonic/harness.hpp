#pragma once

#include "harmonic/projector.hpp"

#include <nlohmann/json_fwd.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace harmonic {

struct TestFunction {
    std::string name;
    std::function<double(const Vec2&)> value;
    bool known_harmonic = true;
};

/// Built-in targets: disk_u1, disk_u2, square_u1, square_u2, constant_one, zero.
const TestFunction& test_function(const std::string& name);
std::vector<std::string> test_function_names();

struct ExperimentConfig {
    DomainKind domain_kind = DomainKind::Disk;
    double K_extent = 0.5;
    double D_extent = 3.0;
    std::string test_function = "disk_u1";
    ExtensionBackend backend = ExtensionBackend::Mfs;
    std::vector<int> L_list{2, 4, 6, 8};
    std::vector<int> n_explicit;   // empty: n = 2L
    std::vector<int> n_list{2, 4, 8, 16};  // trig driver
    MfsConfig mfs;
    QuadConfig quad;
    std::string summary_csv = "summary.csv";
    std::string grid_csv = "error_grid.csv";
    int grid_resolution = 64;

    DomainSpec domain_K() const;
    DomainSpec domain_D() const;
    ApproxConfig approx_config() const;
};

/// Parses a JSON config; unknown keys are rejected, everything except
/// domain_kind and test_function has defaults.  Throws std::invalid_argument.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

struct SweepRow {
    std::string backend;
    int L = 0;
    int n = 0;
    int dof = 0;
    double l2_error_abs = 0.0;
    double l2_error_rel = 0.0;
    double theory_bound = 0.0;  // exp(-2 sqrt(dof))
    double runtime_ms = 0.0;
    std::string status = "ok";
};

struct ConvergenceTable {
    std::vector<SweepRow> rows;
};

/// Layered convergence sweep over cfg.L_list; failed rows carry the error in
/// the status column and the sweep continues.
ConvergenceTable run_sweep(const ExperimentConfig& cfg);

/// Single-domain trigonometric sweep over n_list (disk only); dof = n, the
/// number of frequencies (polynomial degree).
ConvergenceTable run_trig(const ExperimentConfig& cfg, const std::vector<int>& n_list);

void write_summary_csv(const ConvergenceTable& table, const std::string& path);

/// Samples |u - xi_u| on a uniform grid over K's bounding box and writes
/// x,y,abs_err rows; points outside K get an empty error cell.
void write_error_field(const ExperimentConfig& cfg, int L, const std::string& path);

}  // namespace harmonic
