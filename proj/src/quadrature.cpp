#include "harmonic/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace harmonic {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Kronrod 15/7 pair on [-1, 1] (positive abscissae).
constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kGk15Weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kGauss7Weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
    double lo, hi;
    double value;
    double error;
};

PanelEstimate eval_gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double h = 0.5 * (hi - lo);
    const double c = 0.5 * (lo + hi);
    double kronrod = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double x = h * kGk15Nodes[i];
        const double fsum = (i == 7) ? f(c) : f(c - x) + f(c + x);
        kronrod += kGk15Weights[i] * fsum;
        if (i % 2 == 1) gauss += kGauss7Weights[i / 2] * fsum;  // Gauss-7 nodes are 1, 3, 5, 7
    }
    return {lo, hi, kronrod * h, std::abs(kronrod - gauss) * h};
}

double cc_sum(const std::function<double(double)>& f, double lo, double hi, int order) {
    std::vector<double> x, w;
    clenshaw_curtis(order, x, w);
    const double h = 0.5 * (hi - lo);
    const double c = 0.5 * (lo + hi);
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += w[i] * f(c + h * x[i]);
    return s * h;
}

PanelEstimate eval_cc(const std::function<double(double)>& f, double lo, double hi, int order) {
    const double fine = cc_sum(f, lo, hi, order);
    const double coarse = cc_sum(f, lo, hi, order / 2 + 1);
    return {lo, hi, fine, std::abs(fine - coarse)};
}

PanelEstimate eval_panel(const std::function<double(double)>& f, double lo, double hi,
                         const QuadConfig& cfg) {
    if (cfg.rule_1d == Rule1d::GaussKronrod15) return eval_gk15(f, lo, hi);
    return eval_cc(f, lo, hi, std::max(9, cfg.tensor_order | 1));
}

// Geometrically graded breakpoints on [0, top]: {0, top/2, 3 top/4, ...}.
std::vector<double> graded_breaks(double top, int levels) {
    std::vector<double> out{0.0};
    for (int k = 1; k <= levels; ++k) out.push_back(top * (1.0 - std::ldexp(1.0, -k)));
    out.push_back(top);
    return out;
}

void panel_rule(const QuadConfig& cfg, std::vector<double>& nodes, std::vector<double>& weights) {
    if (cfg.rule_1d == Rule1d::ClenshawCurtis)
        clenshaw_curtis(cfg.tensor_order, nodes, weights);
    else
        gauss_legendre(cfg.tensor_order, nodes, weights);
}

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-12; }),
            v.end());
    return v;
}

}  // namespace

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    if (order < 1) throw std::invalid_argument("quadrature order must be positive");
    nodes.assign(static_cast<size_t>(order), 0.0);
    weights.assign(static_cast<size_t>(order), 0.0);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= order; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<size_t>(order - 1 - i)] = x;
        nodes[static_cast<size_t>(i)] = -x;
        weights[static_cast<size_t>(order - 1 - i)] = w;
        weights[static_cast<size_t>(i)] = w;
    }
    if (order % 2 == 1) nodes[static_cast<size_t>(order / 2)] = 0.0;
}

void clenshaw_curtis(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    if (order < 2) order = 3;
    if (order % 2 == 0) ++order;  // even panel count keeps the closed-form weights simple
    const int N = order - 1;
    nodes.assign(static_cast<size_t>(order), 0.0);
    weights.assign(static_cast<size_t>(order), 0.0);
    for (int k = 0; k <= N; ++k) {
        nodes[static_cast<size_t>(k)] = -std::cos(kPi * k / N);
        double s = 1.0;
        for (int j = 1; j <= N / 2; ++j) {
            const double b = (j == N / 2) ? 1.0 : 2.0;
            s -= b * std::cos(2.0 * kPi * j * k / N) / (4.0 * j * j - 1.0);
        }
        const double c = (k == 0 || k == N) ? 1.0 : 2.0;
        weights[static_cast<size_t>(k)] = c * s / N;
    }
}

QuadResult integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                        const QuadConfig& cfg, std::span<const double> split_points) {
    if (!(lo < hi)) throw std::invalid_argument("integrate_1d requires lo < hi");
    std::vector<double> edges{lo, hi};
    for (double s : split_points) {
        if (s > lo && s < hi) edges.push_back(s);
    }
    edges = sorted_unique(std::move(edges));

    std::vector<PanelEstimate> panels;
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        panels.push_back(eval_panel(f, edges[i], edges[i + 1], cfg));

    int splits = 0;
    for (;;) {
        double total = 0.0, err = 0.0;
        size_t worst = 0;
        for (size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (err <= tol) return {total, err, true};
        if (splits >= cfg.max_subdivisions) return {total, err, false};
        const PanelEstimate p = panels[worst];
        const double mid = 0.5 * (p.lo + p.hi);
        panels[worst] = eval_panel(f, p.lo, mid, cfg);
        panels.push_back(eval_panel(f, mid, p.hi, cfg));
        ++splits;
    }
}

DomainRule domain_rule(const DomainSpec& domain, const QuadConfig& cfg,
                       std::span<const double> param_breaks, double boundary_cap) {
    std::vector<double> pn, pw;
    panel_rule(cfg, pn, pw);
    const size_t order = pn.size();

    DomainRule rule;
    if (domain.kind == DomainKind::Disk) {
        const double a = domain.extent * boundary_cap;
        std::vector<double> tb;
        for (double t : param_breaks) {
            double w = std::fmod(t, domain.period());
            if (w < 0.0) w += domain.period();
            tb.push_back(w);
        }
        if (tb.empty()) tb.push_back(0.0);
        tb = sorted_unique(std::move(tb));
        tb.push_back(tb.front() + domain.period());  // wrap panel
        // Gauss points on a full period resolve trigonometric integrands
        // poorly; keep angular panels no wider than an eighth of the period.
        const double max_width = domain.period() / 8.0;
        std::vector<double> refined{tb.front()};
        for (size_t it = 0; it + 1 < tb.size(); ++it) {
            const double width = tb[it + 1] - tb[it];
            const int pieces = std::max(1, static_cast<int>(std::ceil(width / max_width)));
            for (int k = 1; k <= pieces; ++k)
                refined.push_back(tb[it] + width * k / pieces);
        }
        tb = std::move(refined);

        const std::vector<double> rb = graded_breaks(a, cfg.boundary_grading);
        for (size_t ir = 0; ir + 1 < rb.size(); ++ir) {
            const double rc = 0.5 * (rb[ir] + rb[ir + 1]);
            const double rh = 0.5 * (rb[ir + 1] - rb[ir]);
            for (size_t it = 0; it + 1 < tb.size(); ++it) {
                const double tc = 0.5 * (tb[it] + tb[it + 1]);
                const double th = 0.5 * (tb[it + 1] - tb[it]);
                for (size_t i = 0; i < order; ++i) {
                    const double r = rc + rh * pn[i];
                    for (size_t j = 0; j < order; ++j) {
                        const double theta = tc + th * pn[j];
                        rule.points.push_back(domain.center +
                                              r * Vec2{std::cos(theta), std::sin(theta)});
                        rule.weights.push_back(pw[i] * rh * pw[j] * th * r);
                    }
                }
            }
        }
        return rule;
    }

    // Square: axis panels aligned to the images of the boundary-parameter
    // breaks, graded toward both boundary faces.
    const double a = domain.extent;
    std::vector<double> axis;
    for (double t : param_breaks) {
        double w = std::fmod(t, domain.period());
        if (w < 0.0) w += domain.period();
        const Vec2 p = boundary_point(domain, w) - domain.center;
        if (std::abs(p.x()) < a * (1.0 - 1e-12)) axis.push_back(p.x());
        if (std::abs(p.y()) < a * (1.0 - 1e-12)) axis.push_back(p.y());
    }
    for (int k = 0; k <= cfg.boundary_grading; ++k) {
        const double x = a * (1.0 - std::ldexp(1.0, -k));
        axis.push_back(x);
        axis.push_back(-x);
    }
    axis.push_back(a);
    axis.push_back(-a);
    axis = sorted_unique(std::move(axis));

    std::vector<double> n1, w1;  // flattened per-axis points/weights
    for (size_t ip = 0; ip + 1 < axis.size(); ++ip) {
        const double c = 0.5 * (axis[ip] + axis[ip + 1]);
        const double h = 0.5 * (axis[ip + 1] - axis[ip]);
        for (size_t i = 0; i < order; ++i) {
            n1.push_back(c + h * pn[i]);
            w1.push_back(h * pw[i]);
        }
    }
    for (size_t i = 0; i < n1.size(); ++i)
        for (size_t j = 0; j < n1.size(); ++j) {
            rule.points.push_back(domain.center + Vec2{n1[i], n1[j]});
            rule.weights.push_back(w1[i] * w1[j]);
        }
    return rule;
}

double integrate_domain(const DomainSpec& domain, const std::function<double(const Vec2&)>& f,
                        const QuadConfig& cfg, std::span<const double> param_breaks,
                        double boundary_cap) {
    const DomainRule rule = domain_rule(domain, cfg, param_breaks, boundary_cap);
    double s = 0.0;
    for (size_t i = 0; i < rule.points.size(); ++i) {
        const double v = f(rule.points[i]);
        if (!std::isfinite(v))
            throw std::runtime_error("non-finite integrand value at (" +
                                     std::to_string(rule.points[i].x()) + ", " +
                                     std::to_string(rule.points[i].y()) + ")");
        s += rule.weights[i] * v;
    }
    return s;
}

}  // namespace harmonic
