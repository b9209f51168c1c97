#include "harmonic/extension.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace harmonic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double fundamental_solution(const Vec2& x) { return std::log(x.norm()) / kTwoPi; }

void check_inside(const DomainSpec& domain, const Vec2& p, double slack) {
    const Vec2 d = p - domain.center;
    const double reach = domain.kind == DomainKind::Disk
                             ? d.norm()
                             : std::max(std::abs(d.x()), std::abs(d.y()));
    if (reach > domain.extent * (1.0 + slack))
        throw std::domain_error("evaluation point outside the field's domain");
}

double green_eval(const DomainSpec& disk, const GreenPayload& payload, const Vec2& p) {
    const Vec2 d = p - disk.center;
    const double a = disk.extent;
    const double r = d.norm();
    if (r >= a * kGreenBoundaryMargin)
        throw std::domain_error("Poisson-kernel evaluation too close to the boundary");
    const double theta = std::atan2(d.y(), d.x());

    auto integrand = [&](double tt) {
        const double denom = a * a + r * r - 2.0 * a * r * std::cos(theta - tt);
        return (a * a - r * r) / denom * payload.boundary_data(tt);
    };
    QuadConfig cfg;
    cfg.rel_tol = payload.quad_tol;
    cfg.abs_tol = payload.quad_tol * 1e-2;
    cfg.max_subdivisions = 200;

    std::vector<double> splits = payload.support_breaks;
    double peak = std::fmod(theta, kTwoPi);
    if (peak < 0.0) peak += kTwoPi;
    splits.push_back(peak);
    const QuadResult res = integrate_1d(integrand, 0.0, kTwoPi, cfg, splits);
    return res.value / kTwoPi;
}

std::shared_ptr<const std::vector<Vec2>> make_sources(const DomainSpec& domain,
                                                      const MfsConfig& cfg) {
    DomainSpec ring = domain;
    ring.extent = domain.extent + cfg.offset;
    auto pts = std::make_shared<std::vector<Vec2>>();
    pts->reserve(static_cast<size_t>(cfg.singularity_count));
    const double period = ring.period();
    for (int j = 0; j < cfg.singularity_count; ++j)
        pts->push_back(boundary_point(ring, period * j / cfg.singularity_count));
    return pts;
}

std::vector<double> collocation_params(const DomainSpec& domain, int M) {
    std::vector<double> ts(static_cast<size_t>(M));
    const double period = domain.period();
    for (int k = 0; k < M; ++k) ts[static_cast<size_t>(k)] = period * (k + 0.5) / M;
    return ts;
}

}  // namespace

void MfsConfig::validate() const {
    if (singularity_count < 4) throw std::invalid_argument("mfs: need at least 4 singularities");
    if (!(offset > 0.0)) throw std::invalid_argument("mfs: offset must be positive");
    if (!(collocation_factor >= 1.0))
        throw std::invalid_argument("mfs: collocation factor must be >= 1");
    if (ridge < 0.0) throw std::invalid_argument("mfs: ridge must be non-negative");
}

HarmonicField::HarmonicField(DomainSpec domain, GreenPayload payload)
    : backend_(Backend::Green), domain_(domain), payload_(std::move(payload)) {
    if (domain_.kind != DomainKind::Disk)
        throw std::invalid_argument("Poisson-kernel backend requires a disk");
}

HarmonicField::HarmonicField(DomainSpec domain, MfsPayload payload)
    : backend_(Backend::Mfs), domain_(domain), payload_(std::move(payload)) {
    const auto& mp = std::get<MfsPayload>(payload_);
    if (!mp.sources || mp.sources->empty())
        throw std::invalid_argument("mfs payload needs at least one singularity");
    for (const Vec2& q : *mp.sources)
        if (domain_.contains(q))
            throw std::invalid_argument("mfs singularity inside the domain");
}

HarmonicField::HarmonicField(DomainSpec domain, TrigPayload payload)
    : backend_(Backend::Trig), domain_(domain), payload_(std::move(payload)) {
    if (domain_.kind != DomainKind::Disk)
        throw std::invalid_argument("trigonometric backend requires a disk");
}

const MfsPayload& HarmonicField::mfs() const { return std::get<MfsPayload>(payload_); }
const TrigPayload& HarmonicField::trig() const { return std::get<TrigPayload>(payload_); }

double HarmonicField::boundary_residual_rms() const { return mfs().boundary_residual_rms; }

double HarmonicField::operator()(const Vec2& p) const {
    switch (backend_) {
        case Backend::Green:
            return green_eval(domain_, std::get<GreenPayload>(payload_), p);
        case Backend::Mfs: {
            check_inside(domain_, p, 1e-9);
            const auto& mp = std::get<MfsPayload>(payload_);
            double s = 0.0;
            const auto& qs = *mp.sources;
            for (size_t j = 0; j < qs.size(); ++j)
                s += mp.coeffs[static_cast<Eigen::Index>(j)] * fundamental_solution(p - qs[j]);
            return s;
        }
        case Backend::Trig: {
            check_inside(domain_, p, 1e-9);
            const auto& tc = std::get<TrigPayload>(payload_).coeffs;
            const Vec2 d = p - domain_.center;
            const std::complex<double> z{d.x() / domain_.extent, d.y() / domain_.extent};
            double v = tc.a0;
            std::complex<double> zp{1.0, 0.0};
            for (size_t j = 0; j < tc.a.size(); ++j) {
                zp *= z;  // (z/a)^{j+1}
                v += tc.a[j] * zp.real() + tc.b[j] * zp.imag();
            }
            return v;
        }
    }
    throw std::logic_error("unreachable");
}

Vec2 HarmonicField::gradient(const Vec2& p) const {
    switch (backend_) {
        case Backend::Green:
            throw std::runtime_error("gradient is not supported for the Poisson-kernel backend");
        case Backend::Mfs: {
            check_inside(domain_, p, 1e-9);
            const auto& mp = std::get<MfsPayload>(payload_);
            Vec2 g = Vec2::Zero();
            const auto& qs = *mp.sources;
            for (size_t j = 0; j < qs.size(); ++j) {
                const Vec2 d = p - qs[j];
                g += mp.coeffs[static_cast<Eigen::Index>(j)] / (kTwoPi * d.squaredNorm()) * d;
            }
            return g;
        }
        case Backend::Trig: {
            check_inside(domain_, p, 1e-9);
            const auto& tc = std::get<TrigPayload>(payload_).coeffs;
            const double a = domain_.extent;
            const Vec2 d = p - domain_.center;
            const std::complex<double> z{d.x() / a, d.y() / a};
            // field = Re[sum_j (a_j - i b_j) (z/a)^j]; gradient of Re[w] is (Re w', -Im w')
            std::complex<double> deriv{0.0, 0.0};
            std::complex<double> zp{1.0, 0.0};  // (z/a)^j at loop entry with exponent j
            for (size_t j = 0; j < tc.a.size(); ++j) {
                const std::complex<double> cj{tc.a[j], -tc.b[j]};
                deriv += cj * (static_cast<double>(j + 1) / a) * zp;
                zp *= z;
            }
            return Vec2{deriv.real(), -deriv.imag()};
        }
    }
    throw std::logic_error("unreachable");
}

HarmonicField poisson_extend(const DomainSpec& disk, BoundaryFn g, double quad_tol,
                             std::vector<double> support_breaks) {
    if (disk.kind != DomainKind::Disk)
        throw std::invalid_argument("poisson_extend requires a disk domain");
    return HarmonicField(disk, GreenPayload{std::move(g), quad_tol, std::move(support_breaks)});
}

std::vector<HarmonicField> mfs_fit_many(const DomainSpec& domain,
                                        std::span<const BoundaryFn> gs, const MfsConfig& cfg) {
    cfg.validate();
    if (domain.kind == DomainKind::Square && cfg.singularity_count % 4 != 0)
        throw std::invalid_argument("mfs on squares requires N divisible by 4");
    const int N = cfg.singularity_count;
    const int M = static_cast<int>(std::lround(cfg.collocation_factor * N));
    if (M < N) throw std::invalid_argument("mfs: fewer collocation points than singularities");

    auto sources = make_sources(domain, cfg);
    const std::vector<double> ts = collocation_params(domain, M);

    const bool ridged = cfg.ridge > 0.0;
    const int rows = ridged ? M + N : M;
    Eigen::MatrixXd A(rows, N);
    std::vector<Vec2> xs(static_cast<size_t>(M));
    for (int k = 0; k < M; ++k) {
        xs[static_cast<size_t>(k)] = boundary_point(domain, ts[static_cast<size_t>(k)]);
        for (int j = 0; j < N; ++j)
            A(k, j) = fundamental_solution(xs[static_cast<size_t>(k)] -
                                           (*sources)[static_cast<size_t>(j)]);
    }
    if (ridged) {
        A.bottomRows(N).setZero();
        A.bottomRows(N).diagonal().setConstant(std::sqrt(cfg.ridge));
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (!(sv[0] > 0.0) || !std::isfinite(sv[0]))
        throw std::runtime_error("mfs fit failed: singular collocation system");
    const double cond = sv[0] / std::max(sv[sv.size() - 1], 1e-300);

    std::vector<HarmonicField> out;
    out.reserve(gs.size());
    for (const BoundaryFn& g : gs) {
        Eigen::VectorXd b(rows);
        for (int k = 0; k < M; ++k) b[k] = g(ts[static_cast<size_t>(k)]);
        if (ridged) b.tail(N).setZero();
        Eigen::VectorXd c = svd.solve(b);
        const double rms = (A.topRows(M) * c - b.head(M)).norm() / std::sqrt(double(M));
        if (!std::isfinite(rms))
            throw std::runtime_error("mfs fit failed: non-finite residual (cond ~ " +
                                     std::to_string(cond) + ")");
        out.emplace_back(domain, MfsPayload{sources, std::move(c), rms, cond});
    }
    return out;
}

HarmonicField mfs_fit(const DomainSpec& domain, const BoundaryFn& g, const MfsConfig& cfg) {
    std::vector<BoundaryFn> gs{g};
    auto fields = mfs_fit_many(domain, gs, cfg);
    return std::move(fields.front());
}

TrigCoeffs fourier_coeffs(const BoundaryFn& g, int freq_count, int samples) {
    if (freq_count < 1) throw std::invalid_argument("fourier_coeffs: need at least one frequency");
    if (samples < 4 * freq_count)
        throw std::invalid_argument("fourier_coeffs: samples must be >= 4 * freq_count");
    TrigCoeffs tc;
    tc.a.assign(static_cast<size_t>(freq_count - 1), 0.0);
    tc.b.assign(static_cast<size_t>(freq_count - 1), 0.0);
    for (int k = 0; k < samples; ++k) {
        const double theta = kTwoPi * k / samples;
        const double v = g(theta);
        tc.a0 += v;
        for (int j = 1; j < freq_count; ++j) {
            tc.a[static_cast<size_t>(j - 1)] += 2.0 * v * std::cos(j * theta);
            tc.b[static_cast<size_t>(j - 1)] += 2.0 * v * std::sin(j * theta);
        }
    }
    tc.a0 /= samples;
    for (double& v : tc.a) v /= samples;
    for (double& v : tc.b) v /= samples;
    return tc;
}

HarmonicField trig_extend(const DomainSpec& disk, TrigCoeffs coeffs) {
    return HarmonicField(disk, TrigPayload{std::move(coeffs)});
}

Eigen::MatrixXd evaluate_fields(std::span<const HarmonicField> fields,
                                std::span<const Vec2> points) {
    const Eigen::Index P = static_cast<Eigen::Index>(points.size());
    const Eigen::Index n = static_cast<Eigen::Index>(fields.size());
    Eigen::MatrixXd B(P, n);
    if (n == 0 || P == 0) return B;

    // Group MFS fields by shared singularity set; one kernel block serves all
    // of them.
    std::vector<bool> done(fields.size(), false);
    for (size_t i = 0; i < fields.size(); ++i) {
        if (done[i]) continue;
        if (fields[i].backend() != HarmonicField::Backend::Mfs) {
            for (Eigen::Index k = 0; k < P; ++k)
                B(k, static_cast<Eigen::Index>(i)) = fields[i](points[static_cast<size_t>(k)]);
            done[i] = true;
            continue;
        }
        const auto sources = fields[i].mfs().sources;
        std::vector<size_t> group;
        for (size_t j = i; j < fields.size(); ++j)
            if (!done[j] && fields[j].backend() == HarmonicField::Backend::Mfs &&
                fields[j].mfs().sources == sources)
                group.push_back(j);

        const Eigen::Index N = static_cast<Eigen::Index>(sources->size());
        Eigen::MatrixXd C(N, static_cast<Eigen::Index>(group.size()));
        for (size_t gi = 0; gi < group.size(); ++gi) C.col(static_cast<Eigen::Index>(gi)) =
            fields[group[gi]].mfs().coeffs;

        constexpr Eigen::Index kChunk = 4096;
        Eigen::MatrixXd G;
        for (Eigen::Index row0 = 0; row0 < P; row0 += kChunk) {
            const Eigen::Index rows = std::min(kChunk, P - row0);
            G.resize(rows, N);
#pragma omp parallel for schedule(static)
            for (Eigen::Index k = 0; k < rows; ++k) {
                const Vec2& p = points[static_cast<size_t>(row0 + k)];
                for (Eigen::Index j = 0; j < N; ++j)
                    G(k, j) = fundamental_solution(p - (*sources)[static_cast<size_t>(j)]);
            }
            const Eigen::MatrixXd V = G * C;
            for (size_t gi = 0; gi < group.size(); ++gi)
                B.block(row0, static_cast<Eigen::Index>(group[gi]), rows, 1) =
                    V.col(static_cast<Eigen::Index>(gi));
        }
        for (size_t j : group) done[j] = true;
    }
    return B;
}

}  // namespace harmonic
