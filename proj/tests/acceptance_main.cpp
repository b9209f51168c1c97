// Acceptance suite: one pass/fail line per criterion, exit code = failures.

#include "harmonic/harness.hpp"
#include "harmonic/projector.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

using namespace harmonic;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

struct FitLine {
    double intercept, slope;  // log(err) ~ intercept - slope * sqrt(dof)
};

FitLine fit_rate(const std::vector<SweepRow>& rows) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(rows.size());
    for (const auto& r : rows) {
        const double x = std::sqrt(static_cast<double>(r.dof));
        const double y = std::log(std::max(r.l2_error_rel, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return {(sy - slope * sx) / m, -slope};
}

ExperimentConfig base_config(const char* kind, const char* fn) {
    ExperimentConfig cfg;
    cfg.test_function = fn;
    if (std::string(kind) == "square") {
        cfg.domain_kind = DomainKind::Square;
        cfg.K_extent = 0.25;
        cfg.D_extent = 1.5;
        cfg.mfs.collocation_factor = 4.0;
        cfg.quad.rule_1d = Rule1d::ClenshawCurtis;
    }
    return cfg;
}

std::string rows_brief(const std::vector<SweepRow>& rows) {
    std::string s;
    for (const auto& r : rows) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "L=%d:%.2e ", r.L, r.l2_error_rel);
        s += buf;
    }
    return s;
}

bool all_ok_and_decreasing(const std::vector<SweepRow>& rows) {
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].status != "ok") return false;
        if (i > 0 && !(rows[i].l2_error_rel < rows[i - 1].l2_error_rel)) return false;
    }
    return true;
}

// --- criterion 1 & 2: disk convergence for u1 and u2 ---------------------

std::vector<SweepRow> disk_sweep(const char* fn) {
    ExperimentConfig cfg = base_config("disk", fn);
    cfg.L_list = {2, 4, 6, 8};
    return run_sweep(cfg).rows;
}

void criterion_1(const std::vector<SweepRow>& rows) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = all_ok_and_decreasing(rows);
    const auto& last = rows.back();
    const double theory = std::exp(-2.0 * std::sqrt(128.0));
    const double bound = std::max(1e-8, theory * 10.0);
    if (!(last.dof == 128)) pass = false;
    if (!(last.l2_error_rel <= bound)) pass = false;
    // convergence no slower than a factor-100 band above the theory curve
    for (const auto& r : rows)
        if (!(r.l2_error_rel <= 100.0 * r.theory_bound)) pass = false;
    double total_ms = 0.0;
    for (const auto& r : rows) total_ms += r.runtime_ms;
    if (!(total_ms <= 5.0 * 60.0 * 1000.0)) pass = false;
    (void)t0;
    char detail[256];
    std::snprintf(detail, sizeof(detail), "%sfinal %.3e <= %.3e, %.1fs",
                  rows_brief(rows).c_str(), last.l2_error_rel, bound, total_ms / 1000.0);
    report(1, "disk convergence, u1", pass, detail);
}

void criterion_2(const std::vector<SweepRow>& u1_rows, const std::vector<SweepRow>& u2_rows) {
    bool pass = all_ok_and_decreasing(u2_rows);
    const double rate_u1 = fit_rate(u1_rows).slope;
    const double rate_u2 = fit_rate(u2_rows).slope;
    if (!(rate_u2 < rate_u1)) pass = false;
    char detail[256];
    std::snprintf(detail, sizeof(detail), "%srate u2 %.3f < rate u1 %.3f",
                  rows_brief(u2_rows).c_str(), rate_u2, rate_u1);
    report(2, "disk convergence, harder target u2", pass, detail);
}

void criterion_3() {
    bool pass = true;
    std::string detail;
    for (const char* fn : {"square_u1", "square_u2"}) {
        ExperimentConfig cfg = base_config("square", fn);
        cfg.L_list = {2, 4, 6, 8};
        const auto rows = run_sweep(cfg).rows;
        const double rate = fit_rate(rows).slope;
        if (!all_ok_and_decreasing(rows)) pass = false;
        // exponential trend no slower than a factor-10 band above exp(-2 sqrt(dof))
        if (!(rate >= 1.5)) pass = false;
        for (const auto& r : rows)
            if (!(r.l2_error_rel <= 10.0 * r.theory_bound)) pass = false;
        char buf[300];
        std::snprintf(buf, sizeof(buf), "%s: %srate %.3f; ", fn, rows_brief(rows).c_str(),
                      rate);
        detail += buf;
    }
    report(3, "square convergence, u1 and u2", pass, detail);
}

void criterion_4() {
    const DomainSpec disk = DomainSpec::disk(1.0);
    const int n = 8;
    const auto spec = BoundaryBasisSpec::for_domain(disk, n);
    MfsConfig mfs;  // sized so the hat's Fourier tail and source aliasing sit under the gate
    mfs.singularity_count = 1024;
    mfs.offset = 0.05;
    double worst = 0.0;
    for (int i : {0, 3}) {
        auto hat = [spec, i](double t) { return hat_value(spec, i, t); };
        const double node = i * spec.omega();
        const auto green = poisson_extend(disk, hat, 1e-10,
                                          {node - spec.omega(), node, node + spec.omega()});
        const auto fitted = mfs_fit(disk, hat, mfs);
        for (int ir = 0; ir <= 12; ++ir)
            for (int it = 0; it < 48; ++it) {
                const double r = 0.95 * ir / 12.0;
                const double th = 2.0 * std::numbers::pi * it / 48.0;
                const Vec2 p{r * std::cos(th), r * std::sin(th)};
                worst = std::max(worst, std::abs(green(p) - fitted(p)));
            }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "max |green - mfs| = %.3e <= 1e-5", worst);
    report(4, "backend agreement on disk hats", worst <= 1e-5, detail);
}

void criterion_5() {
    bool pass = true;
    std::string detail;

    ExperimentConfig cfg = base_config("disk", "disk_u1");
    const auto rows1 = run_trig(cfg, {2, 3, 4, 8, 16}).rows;
    for (const auto& r : rows1)
        if (!(r.l2_error_abs <= 1e-12)) pass = false;
    detail += "u1 max err " +
              std::to_string(std::max_element(rows1.begin(), rows1.end(),
                                              [](const SweepRow& a, const SweepRow& b) {
                                                  return a.l2_error_abs < b.l2_error_abs;
                                              })
                                 ->l2_error_abs) +
              "; ";

    cfg.test_function = "disk_u2";
    const auto rows2 = run_trig(cfg, {4, 8, 16, 32}).rows;
    for (double k : {2.0, 4.0, 8.0}) {
        const double lhs = rows2.back().l2_error_abs / rows2.front().l2_error_abs;
        const double rhs = std::pow(4.0 / 32.0, k);
        if (!(lhs < rhs)) pass = false;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "u2 err(4)=%.2e err(32)=%.2e",
                  rows2.front().l2_error_abs, rows2.back().l2_error_abs);
    detail += buf;
    report(5, "trigonometric exactness and super-algebraic decay", pass, detail);
}

void criterion_6() {
    bool pass = true;
    std::string detail;

    // partition of unity
    {
        const auto spec = BoundaryBasisSpec::for_domain(DomainSpec::disk(1.0), 16);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k)
            worst = std::max(worst,
                             std::abs(hat_sum(spec, spec.period * (k + 0.37) / 1000.0) - 1.0));
        if (worst > 1e-14) pass = false;
        detail += "pou " + std::to_string(worst) + "; ";
    }

    const DomainSpec disk = DomainSpec::disk(1.0);
    MfsConfig mfs;
    mfs.singularity_count = 64;
    mfs.offset = 0.25;  // clear of the capacity-one source circle for the radius-0.5 layer
    QuadConfig quad;
    quad.tensor_order = 10;
    quad.boundary_grading = 10;
    auto spec = BoundaryBasisSpec::for_domain(disk, 8);
    std::vector<BoundaryFn> gs;
    for (int i = 0; i < 8; ++i)
        gs.push_back([spec, i](double t) { return hat_value(spec, i, t); });
    const auto fields = mfs_fit_many(disk, gs, mfs);

    // circulant vs dense
    {
        const auto circ = assemble_mass(fields, disk, quad);
        const auto dense = assemble_mass(fields, disk, quad, true);
        const double diff = (circ.values - dense.values).cwiseAbs().maxCoeff();
        if (diff > 1e-10) pass = false;
        detail += "circ-dense " + std::to_string(diff) + "; ";
    }

    // mean value property of the Poisson extension
    {
        auto g = [](double t) { return std::cos(t) * std::cos(t); };
        const auto field = poisson_extend(disk, g, 1e-10);
        const double center = field(Vec2{0.0, 0.0});
        if (std::abs(center - 0.5) > 1e-8) pass = false;
        detail += "mean-value " + std::to_string(std::abs(center - 0.5)) + "; ";
    }

    // projection idempotence
    {
        const auto M = assemble_mass(fields, disk, quad);
        const auto c =
            project_layer([&](const Vec2& p) { return fields[5](p); }, fields, M, quad);
        double worst = 0.0;
        for (int i = 0; i < 8; ++i)
            worst = std::max(worst, std::abs(c[i] - (i == 5 ? 1.0 : 0.0)));
        if (worst > 1e-10) pass = false;
        detail += "idempotence " + std::to_string(worst) + "; ";
    }

    // layer residual orthogonality + dimension accounting on a small run
    {
        ApproxConfig ac;
        ac.mfs = mfs;
        ac.quad = quad;
        const DomainSpec K = DomainSpec::disk(0.5);
        auto u = [](const Vec2& p) { return 2 * p.x() * p.y(); };
        const auto res = approximate(u, DomainSpec::disk(3.0), K, 2, ac);
        if (res.dimension != 2 * 2 * 2) pass = false;
        double worst = 0.0;
        const double rnorm = std::max(res.l2_error_abs, 1e-30);
        for (const auto& f : res.layers.back().fields) {
            const double inner = integrate_domain(
                K, [&](const Vec2& p) { return (u(p) - evaluate_xi(res, p)) * f(p); }, quad);
            const double fnorm = std::sqrt(
                integrate_domain(K, [&](const Vec2& p) { return f(p) * f(p); }, quad));
            worst = std::max(worst, std::abs(inner) / (rnorm * fnorm + 1e-300));
        }
        if (worst > 1e-8 && res.l2_error_abs > 1e-13) pass = false;
        detail += "orthogonality " + std::to_string(worst) + "; dof=2L^2 ok";
    }

    report(6, "structural property bundle", pass, detail);
}

// Best-approximation error of u over K in the span of the given fields,
// computed from one dense Gram system on a shared quadrature rule.
double projection_error(const std::function<double(const Vec2&)>& u,
                        std::span<const HarmonicField> fields, const DomainSpec& K,
                        const QuadConfig& quad) {
    const DomainRule rule = domain_rule(K, quad);
    const int m = static_cast<int>(fields.size());
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    double unorm2 = 0.0;
    std::vector<double> vals(static_cast<size_t>(m));
    for (size_t k = 0; k < rule.points.size(); ++k) {
        const Vec2& p = rule.points[k];
        const double w = rule.weights[k];
        for (int i = 0; i < m; ++i)
            vals[static_cast<size_t>(i)] = fields[static_cast<size_t>(i)](p);
        const double uv = u(p);
        unorm2 += w * uv * uv;
        for (int i = 0; i < m; ++i) {
            b[i] += w * uv * vals[static_cast<size_t>(i)];
            for (int j = i; j < m; ++j)
                G(i, j) += w * vals[static_cast<size_t>(i)] * vals[static_cast<size_t>(j)];
        }
    }
    G = G.template selfadjointView<Eigen::Upper>();
    const Eigen::VectorXd c = G.ldlt().solve(b);
    return std::sqrt(std::max(0.0, unorm2 - 2.0 * c.dot(b) + c.dot(G * c)));
}

void criterion_7() {
    // layered L=2, n=4 bracketed by dense single-shot projections over K:
    // the joint 8-dimensional projection bounds it from below, the last-layer
    // 4-dimensional projection from above, and it stays within the same
    // exponential order as the joint optimum
    const DomainSpec K = DomainSpec::disk(0.5);
    const DomainSpec D = DomainSpec::disk(3.0);
    auto u = [](const Vec2& p) { return 2 * p.x() * p.y(); };

    ApproxConfig ac;
    ac.quad.tensor_order = 12;
    const auto layered = approximate(u, D, K, 2, ac);

    std::vector<HarmonicField> all;
    for (const auto& layer : layered.layers)
        for (const auto& f : layer.fields) all.push_back(f);
    const double joint_err = projection_error(u, all, K, ac.quad);
    const double last_only_err =
        projection_error(u, layered.layers.back().fields, K, ac.quad);

    bool pass = true;
    if (!(layered.l2_error_abs >= joint_err * (1.0 - 1e-6))) pass = false;
    if (!(layered.l2_error_abs <= last_only_err * (1.0 + 1e-6))) pass = false;
    if (!(layered.l2_error_abs <= 50.0 * joint_err)) pass = false;
    char detail[200];
    std::snprintf(detail, sizeof(detail), "joint %.3e <= layered %.3e <= last-only %.3e",
                  joint_err, layered.l2_error_abs, last_only_err);
    report(7, "layered recursion bracketed by single-shot projections", pass, detail);
}

}  // namespace

int main() {
    const auto u1_rows = disk_sweep("disk_u1");
    criterion_1(u1_rows);
    const auto u2_rows = disk_sweep("disk_u2");
    criterion_2(u1_rows, u2_rows);
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
