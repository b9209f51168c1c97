#include "harmonic/projector.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace harmonic {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Panel breaks covering hat nodes for both layer shifts (0 and omega/2).
std::vector<double> half_node_breaks(const DomainSpec& domain, int n) {
    std::vector<double> breaks(static_cast<size_t>(2 * n));
    const double step = domain.period() / (2 * n);
    for (int i = 0; i < 2 * n; ++i) breaks[static_cast<size_t>(i)] = i * step;
    return breaks;
}

bool any_green(std::span<const HarmonicField> fields) {
    for (const auto& f : fields)
        if (f.backend() == HarmonicField::Backend::Green) return true;
    return false;
}

DomainRule layer_rule(std::span<const HarmonicField> fields, const DomainSpec& layer,
                      const QuadConfig& cfg) {
    const double cap = any_green(fields) ? kGreenBoundaryMargin : 1.0;
    const auto breaks = half_node_breaks(layer, static_cast<int>(fields.size()));
    return domain_rule(layer, cfg, breaks, cap);
}

Eigen::MatrixXd cholesky_or_throw(const Eigen::MatrixXd& A) {
    const Eigen::Index n = A.rows();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = A(j, j) - L.row(j).head(j).squaredNorm();
        if (!(d > 0.0))
            throw std::runtime_error("mass matrix is not positive definite at pivot " +
                                     std::to_string(j) +
                                     " (quadrature too loose or near-dependent basis)");
        L(j, j) = std::sqrt(d);
        for (Eigen::Index i = j + 1; i < n; ++i)
            L(i, j) = (A(i, j) - L.row(i).head(j).dot(L.row(j).head(j))) / L(j, j);
    }
    return L;
}

MassMatrix mass_from_samples(const Eigen::MatrixXd& B, const Eigen::VectorXd& w,
                             const DomainSpec& layer, bool force_dense) {
    const int n = static_cast<int>(B.cols());
    MassMatrix M;
    M.size = n;
    M.domain = layer;
    M.circulant = layer.kind == DomainKind::Disk && !force_dense;
    const Eigen::MatrixXd G =
        0.5 * (B.transpose() * w.asDiagonal() * B +
               (B.transpose() * w.asDiagonal() * B).transpose());
    if (M.circulant) {
        // rotation invariance: entries depend only on the cyclic index distance;
        // average each distance class of the sampled Gram
        M.unique_values.assign(static_cast<size_t>(n / 2 + 1), 0.0);
        std::vector<int> hits(static_cast<size_t>(n / 2 + 1), 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int d = std::min(std::abs(i - j), n - std::abs(i - j));
                M.unique_values[static_cast<size_t>(d)] += G(i, j);
                ++hits[static_cast<size_t>(d)];
            }
        for (int d = 0; d <= n / 2; ++d)
            M.unique_values[static_cast<size_t>(d)] /= hits[static_cast<size_t>(d)];
        M.values.resize(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int d = std::abs(i - j);
                M.values(i, j) = M.unique_values[static_cast<size_t>(std::min(d, n - d))];
            }
    } else {
        M.values = G;
    }
    M.chol = cholesky_or_throw(M.values);
    return M;
}

}  // namespace

Eigen::VectorXd MassMatrix::solve(const Eigen::VectorXd& b) const {
    Eigen::VectorXd y = chol.triangularView<Eigen::Lower>().solve(b);
    return chol.transpose().triangularView<Eigen::Upper>().solve(y);
}

MassMatrix assemble_mass(std::span<const HarmonicField> fields, const DomainSpec& layer,
                         const QuadConfig& cfg, bool force_dense) {
    const int n = static_cast<int>(fields.size());
    if (n == 0) throw std::invalid_argument("assemble_mass: empty basis");
    for (const auto& f : fields)
        if (!(f.domain() == layer))
            throw std::invalid_argument("assemble_mass: field domain differs from the layer");

    const DomainRule rule = layer_rule(fields, layer, cfg);
    const Eigen::MatrixXd B = evaluate_fields(fields, rule.points);
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(
        rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size()));
    return mass_from_samples(B, w, layer, force_dense);
}

Eigen::VectorXd project_layer(const std::function<double(const Vec2&)>& residual,
                              std::span<const HarmonicField> fields, const MassMatrix& M,
                              const QuadConfig& cfg) {
    if (static_cast<int>(fields.size()) != M.size)
        throw std::invalid_argument("project_layer: basis size differs from the mass matrix");
    const DomainRule rule = layer_rule(fields, M.domain, cfg);
    const Eigen::MatrixXd B = evaluate_fields(fields, rule.points);
    Eigen::VectorXd wr(static_cast<Eigen::Index>(rule.points.size()));
    for (size_t k = 0; k < rule.points.size(); ++k) {
        const double v = residual(rule.points[k]);
        if (!std::isfinite(v))
            throw std::runtime_error("project_layer: non-finite residual value");
        wr[static_cast<Eigen::Index>(k)] = rule.weights[k] * v;
    }
    return M.solve(B.transpose() * wr);
}

ApproximationResult approximate(const std::function<double(const Vec2&)>& u,
                                const DomainSpec& D, const DomainSpec& K, int L,
                                const ApproxConfig& cfg) {
    if (cfg.backend == ExtensionBackend::Trig)
        throw std::invalid_argument(
            "layered approximation supports green and mfs backends; use the single-domain "
            "trigonometric driver for trig");
    const auto t_total = Clock::now();
    const LayerSystem sys = make_layers(K, D, L);

    std::vector<int> counts = cfg.layer_basis_counts;
    if (counts.empty()) counts.assign(static_cast<size_t>(L), 2 * L);
    if (static_cast<int>(counts.size()) != L)
        throw std::invalid_argument("approximate: need one basis count per layer");

    ApproximationResult result;
    result.norm_u_D = std::sqrt(std::max(0.0, integrate_domain(
        D, [&](const Vec2& p) { const double v = u(p); return v * v; }, cfg.quad)));

    double prev_norm = -1.0;
    for (int s = 1; s <= L; ++s) {
        const DomainSpec& Ks = sys.layers[static_cast<size_t>(s)];
        const int n = counts[static_cast<size_t>(s - 1)];
        BoundaryBasisSpec spec = BoundaryBasisSpec::for_domain(Ks, n);
        spec.shift = (s % 2) * spec.omega() / 2.0;  // alternating half-shift between layers

        // extend the hats harmonically
        const auto t_fit = Clock::now();
        std::vector<HarmonicField> fields;
        if (cfg.backend == ExtensionBackend::Mfs) {
            MfsConfig mfs = cfg.mfs;
            if (Ks.kind == DomainKind::Square && cfg.mfs.collocation_factor == 3.0)
                mfs.collocation_factor = 4.0;  // square default M = 4N
            std::vector<BoundaryFn> gs;
            gs.reserve(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                gs.push_back([spec, i](double t) { return hat_value(spec, i, t); });
            fields = mfs_fit_many(Ks, gs, mfs);
        } else {
            for (int i = 0; i < n; ++i) {
                const double node = i * spec.omega() + spec.shift;
                fields.push_back(poisson_extend(
                    Ks, [spec, i](double t) { return hat_value(spec, i, t); }, cfg.green_tol,
                    {node - spec.omega(), node, node + spec.omega()}));
            }
        }
        result.timings.fit_ms += ms_since(t_fit);

        // residual of the previous layers on this layer's quadrature grid
        const auto t_quad = Clock::now();
        const DomainRule rule = layer_rule(fields, Ks, cfg.quad);
        const Eigen::Index P = static_cast<Eigen::Index>(rule.points.size());
        const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), P);

        Eigen::VectorXd r(P);
        for (Eigen::Index k = 0; k < P; ++k) {
            const double v = u(rule.points[static_cast<size_t>(k)]);
            if (!std::isfinite(v)) throw std::runtime_error("approximate: non-finite target value");
            r[k] = v;
        }
        for (size_t l = 0; l + 1 < static_cast<size_t>(s); ++l) {
            const Eigen::MatrixXd Bl =
                evaluate_fields(result.layers[l].fields, rule.points);
            r -= Bl * result.layer_coeffs[l];
        }
        const Eigen::MatrixXd B = evaluate_fields(fields, rule.points);
        result.timings.quadrature_ms += ms_since(t_quad);

        // project and update
        const auto t_solve = Clock::now();
        // dense Gram keeps the solve exactly consistent with the sampled basis;
        // the circulant shortcut is exposed through assemble_mass for diagnostics
        MassMatrix M;
        try {
            M = mass_from_samples(B, w, Ks, true);
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("layer " + std::to_string(s) + ": " + e.what());
        }
        const Eigen::VectorXd b = B.transpose() * w.cwiseProduct(r);
        const Eigen::VectorXd c = M.solve(b);
        result.timings.solve_ms += ms_since(t_solve);

        r -= B * c;
        const double norm = std::sqrt(std::max(0.0, r.dot(w.cwiseProduct(r))));
        if (prev_norm >= 0.0 && norm > 1.1 * prev_norm) result.residual_growth_flag = true;
        prev_norm = norm;

        result.per_layer_residual_norms.push_back(norm);
        result.layer_coeffs.push_back(c);
        result.layers.push_back(LayerBasis{spec, Ks, std::move(fields)});
        result.dimension += n;
    }

    // the last layer equals K, so its post-projection residual norm is the error
    result.l2_error_abs = result.per_layer_residual_norms.back();
    result.l2_error_rel =
        result.norm_u_D > 0.0 ? result.l2_error_abs / result.norm_u_D : 0.0;
    result.timings.total_ms = ms_since(t_total);
    return result;
}

double evaluate_xi(const ApproximationResult& result, const Vec2& p) {
    double v = 0.0;
    for (size_t s = 0; s < result.layers.size(); ++s) {
        const auto& fields = result.layers[s].fields;
        const auto& c = result.layer_coeffs[s];
        for (size_t i = 0; i < fields.size(); ++i)
            v += c[static_cast<Eigen::Index>(i)] * fields[i](p);
    }
    return v;
}

}  // namespace harmonic
