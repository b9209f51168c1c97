#include "harmonic/harness.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <stdexcept>

namespace harmonic {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

const std::vector<TestFunction>& registry() {
    static const std::vector<TestFunction> fns = {
        {"disk_u1", [](const Vec2& p) { return 2.0 * p.x() * p.y(); }, true},
        {"disk_u2",
         [](const Vec2& p) { return std::exp(p.y()) * std::sin(p.x()); }, true},
        {"square_u1",
         [](const Vec2& p) { return p.x() * p.x() * p.x() - 3.0 * p.x() * p.y() * p.y(); },
         true},
        {"square_u2", [](const Vec2& p) { return std::exp(p.x()) * std::sin(p.y()); }, true},
        {"constant_one", [](const Vec2&) { return 1.0; }, true},
        {"zero", [](const Vec2&) { return 0.0; }, true},
    };
    return fns;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw std::invalid_argument("unknown config key '" + key + "' in " + where);
    }
}

}  // namespace

const TestFunction& test_function(const std::string& name) {
    for (const auto& f : registry())
        if (f.name == name) return f;
    throw std::invalid_argument("unknown test function '" + name + "'");
}

std::vector<std::string> test_function_names() {
    std::vector<std::string> names;
    for (const auto& f : registry()) names.push_back(f.name);
    return names;
}

DomainSpec ExperimentConfig::domain_K() const {
    return domain_kind == DomainKind::Disk ? DomainSpec::disk(K_extent)
                                           : DomainSpec::square(K_extent);
}

DomainSpec ExperimentConfig::domain_D() const {
    return domain_kind == DomainKind::Disk ? DomainSpec::disk(D_extent)
                                           : DomainSpec::square(D_extent);
}

ApproxConfig ExperimentConfig::approx_config() const {
    ApproxConfig ac;
    ac.backend = backend;
    ac.mfs = mfs;
    ac.quad = quad;
    return ac;
}

ExperimentConfig parse_config(const json& j) {
    try {
        ExperimentConfig cfg;
        check_keys(j,
                   {"domain_kind", "K_extent", "D_extent", "test_function", "backend", "L_list",
                    "n_rule", "n_list", "mfs", "quad", "outputs", "grid_resolution"},
                   "config");
        if (!j.contains("domain_kind") || !j.contains("test_function"))
            throw std::invalid_argument("config requires domain_kind and test_function");

        const std::string kind = j.at("domain_kind").get<std::string>();
        if (kind == "disk")
            cfg.domain_kind = DomainKind::Disk;
        else if (kind == "square")
            cfg.domain_kind = DomainKind::Square;
        else
            throw std::invalid_argument("domain_kind must be 'disk' or 'square'");

        cfg.test_function = j.at("test_function").get<std::string>();
        test_function(cfg.test_function);  // validate early

        if (cfg.domain_kind == DomainKind::Square) {
            cfg.K_extent = 0.25;
            cfg.D_extent = 1.5;
            cfg.mfs.collocation_factor = 4.0;
            cfg.quad.rule_1d = Rule1d::ClenshawCurtis;
        }
        cfg.K_extent = j.value("K_extent", cfg.K_extent);
        cfg.D_extent = j.value("D_extent", cfg.D_extent);
        if (!(cfg.K_extent > 0.0) || !(cfg.K_extent < cfg.D_extent))
            throw std::invalid_argument("need 0 < K_extent < D_extent");

        const std::string backend = j.value("backend", "mfs");
        if (backend == "mfs")
            cfg.backend = ExtensionBackend::Mfs;
        else if (backend == "green")
            cfg.backend = ExtensionBackend::Green;
        else if (backend == "trig")
            cfg.backend = ExtensionBackend::Trig;
        else
            throw std::invalid_argument("backend must be 'mfs', 'green', or 'trig'");

        if (j.contains("L_list")) cfg.L_list = j.at("L_list").get<std::vector<int>>();
        if (cfg.L_list.empty()) throw std::invalid_argument("L_list must be non-empty");
        for (int L : cfg.L_list)
            if (L < 1) throw std::invalid_argument("L_list entries must be positive");

        if (j.contains("n_rule")) {
            const json& nr = j.at("n_rule");
            if (nr.is_string()) {
                if (nr.get<std::string>() != "two_L")
                    throw std::invalid_argument("n_rule must be 'two_L' or an explicit list");
            } else {
                cfg.n_explicit = nr.get<std::vector<int>>();
            }
        }
        if (j.contains("n_list")) cfg.n_list = j.at("n_list").get<std::vector<int>>();

        if (j.contains("mfs")) {
            const json& m = j.at("mfs");
            check_keys(m, {"N", "offset", "collocation_factor", "ridge"}, "mfs");
            cfg.mfs.singularity_count = m.value("N", cfg.mfs.singularity_count);
            cfg.mfs.offset = m.value("offset", cfg.mfs.offset);
            cfg.mfs.collocation_factor =
                m.value("collocation_factor", cfg.mfs.collocation_factor);
            cfg.mfs.ridge = m.value("ridge", cfg.mfs.ridge);
            cfg.mfs.validate();
        }
        if (j.contains("quad")) {
            const json& q = j.at("quad");
            check_keys(q,
                       {"rel_tol", "abs_tol", "max_subdivisions", "rule_1d", "tensor_order",
                        "boundary_grading"},
                       "quad");
            cfg.quad.rel_tol = q.value("rel_tol", cfg.quad.rel_tol);
            cfg.quad.abs_tol = q.value("abs_tol", cfg.quad.abs_tol);
            cfg.quad.max_subdivisions = q.value("max_subdivisions", cfg.quad.max_subdivisions);
            cfg.quad.tensor_order = q.value("tensor_order", cfg.quad.tensor_order);
            cfg.quad.boundary_grading = q.value("boundary_grading", cfg.quad.boundary_grading);
            if (q.contains("rule_1d")) {
                const std::string r = q.at("rule_1d").get<std::string>();
                if (r == "gauss_kronrod_15")
                    cfg.quad.rule_1d = Rule1d::GaussKronrod15;
                else if (r == "clenshaw_curtis")
                    cfg.quad.rule_1d = Rule1d::ClenshawCurtis;
                else
                    throw std::invalid_argument(
                        "rule_1d must be 'gauss_kronrod_15' or 'clenshaw_curtis'");
            }
            if (!(cfg.quad.rel_tol > 0.0) || !(cfg.quad.abs_tol > 0.0) ||
                cfg.quad.max_subdivisions < 1)
                throw std::invalid_argument("invalid quadrature tolerances");
        }
        if (j.contains("outputs")) {
            const json& o = j.at("outputs");
            check_keys(o, {"summary_csv", "grid_csv"}, "outputs");
            cfg.summary_csv = o.value("summary_csv", cfg.summary_csv);
            cfg.grid_csv = o.value("grid_csv", cfg.grid_csv);
        }
        cfg.grid_resolution = j.value("grid_resolution", cfg.grid_resolution);
        if (cfg.grid_resolution < 2) throw std::invalid_argument("grid_resolution must be >= 2");
        return cfg;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

ConvergenceTable run_sweep(const ExperimentConfig& cfg) {
    if (cfg.backend == ExtensionBackend::Trig)
        throw std::invalid_argument("sweep supports mfs and green backends; use the trig driver");
    const TestFunction& tf = test_function(cfg.test_function);
    const DomainSpec K = cfg.domain_K();
    const DomainSpec D = cfg.domain_D();

    ConvergenceTable table;
    for (int L : cfg.L_list) {
        SweepRow row;
        row.backend = cfg.backend == ExtensionBackend::Mfs ? "mfs" : "green";
        row.L = L;
        ApproxConfig ac = cfg.approx_config();
        if (!cfg.n_explicit.empty()) {
            if (static_cast<int>(cfg.n_explicit.size()) != L) {
                row.status = "failed: explicit n list length differs from L";
                table.rows.push_back(row);
                continue;
            }
            ac.layer_basis_counts = cfg.n_explicit;
        }
        row.n = ac.layer_basis_counts.empty() ? 2 * L : ac.layer_basis_counts.front();
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const ApproximationResult res = approximate(tf.value, D, K, L, ac);
            row.dof = res.dimension;
            row.l2_error_abs = res.l2_error_abs;
            row.l2_error_rel = res.l2_error_rel;
            if (res.residual_growth_flag) row.status = "residual_increase";
        } catch (const std::exception& e) {
            row.dof = row.n * L;
            row.status = std::string("failed: ") + e.what();
        }
        row.theory_bound = std::exp(-2.0 * std::sqrt(static_cast<double>(row.dof)));
        row.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        table.rows.push_back(row);
    }
    return table;
}

ConvergenceTable run_trig(const ExperimentConfig& cfg, const std::vector<int>& n_list) {
    if (cfg.domain_kind != DomainKind::Disk)
        throw std::invalid_argument(
            "trigonometric approximation is limited to disks (highly smooth domains)");
    const TestFunction& tf = test_function(cfg.test_function);
    const DomainSpec K = cfg.domain_K();
    const DomainSpec D = cfg.domain_D();
    const double norm_u_D = std::sqrt(std::max(
        0.0, integrate_domain(
                 D, [&](const Vec2& p) { const double v = tf.value(p); return v * v; },
                 cfg.quad)));

    ConvergenceTable table;
    for (int n : n_list) {
        SweepRow row;
        row.backend = "trig";
        row.L = 0;
        row.n = n;
        row.dof = n;  // number of frequencies
        const auto t0 = std::chrono::steady_clock::now();
        try {
            // frequencies 1..n plus the constant mode
            const int freq_count = n + 1;
            const int samples = std::max(4 * freq_count, 512);
            auto trace = [&](double theta) { return tf.value(boundary_point(K, theta)); };
            const TrigCoeffs coeffs = fourier_coeffs(trace, freq_count, samples);
            const HarmonicField field = trig_extend(K, coeffs);
            const double err2 = integrate_domain(
                K,
                [&](const Vec2& p) {
                    const double d = tf.value(p) - field(p);
                    return d * d;
                },
                cfg.quad);
            row.l2_error_abs = std::sqrt(std::max(0.0, err2));
            row.l2_error_rel = norm_u_D > 0.0 ? row.l2_error_abs / norm_u_D : 0.0;
        } catch (const std::exception& e) {
            row.status = std::string("failed: ") + e.what();
        }
        row.theory_bound = std::exp(-2.0 * std::sqrt(static_cast<double>(row.dof)));
        row.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        table.rows.push_back(row);
    }
    return table;
}

void write_summary_csv(const ConvergenceTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "backend,L,n,dof,l2_error_abs,l2_error_rel,theory_bound,runtime_ms,status\n";
    for (const SweepRow& r : table.rows) {
        char runtime[32];
        std::snprintf(runtime, sizeof(runtime), "%.3f", r.runtime_ms);
        out << r.backend << ',' << r.L << ',' << r.n << ',' << r.dof << ','
            << fmt(r.l2_error_abs) << ',' << fmt(r.l2_error_rel) << ',' << fmt(r.theory_bound)
            << ',' << runtime << ',' << r.status << '\n';
    }
}

void write_error_field(const ExperimentConfig& cfg, int L, const std::string& path) {
    const TestFunction& tf = test_function(cfg.test_function);
    const DomainSpec K = cfg.domain_K();
    const DomainSpec D = cfg.domain_D();
    ApproxConfig ac = cfg.approx_config();
    if (!cfg.n_explicit.empty()) ac.layer_basis_counts = cfg.n_explicit;
    const ApproximationResult res = approximate(tf.value, D, K, L, ac);

    const int m = cfg.grid_resolution;
    std::vector<Vec2> inside;
    std::vector<int> index(static_cast<size_t>(m) * m, -1);
    std::vector<Vec2> all(static_cast<size_t>(m) * m);
    for (int iy = 0; iy < m; ++iy)
        for (int ix = 0; ix < m; ++ix) {
            const double x = K.center.x() - K.extent + 2.0 * K.extent * ix / (m - 1);
            const double y = K.center.y() - K.extent + 2.0 * K.extent * iy / (m - 1);
            const size_t flat = static_cast<size_t>(iy) * m + ix;
            all[flat] = Vec2{x, y};
            if (K.contains(all[flat])) {
                index[flat] = static_cast<int>(inside.size());
                inside.push_back(all[flat]);
            }
        }

    Eigen::VectorXd xi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(inside.size()));
    for (size_t s = 0; s < res.layers.size(); ++s)
        xi += evaluate_fields(res.layers[s].fields, inside) * res.layer_coeffs[s];

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "x,y,abs_err\n";
    for (size_t flat = 0; flat < all.size(); ++flat) {
        out << fmt(all[flat].x()) << ',' << fmt(all[flat].y()) << ',';
        if (index[flat] >= 0)
            out << fmt(std::abs(tf.value(all[flat]) - xi[index[flat]]));
        out << '\n';
    }
}

}  // namespace harmonic
