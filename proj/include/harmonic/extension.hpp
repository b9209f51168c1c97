#pragma once

#include "harmonic/boundary_basis.hpp"
#include "harmonic/geometry.hpp"
#include "harmonic/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace harmonic {

using BoundaryFn = std::function<double(double)>;  // boundary parameter -> value

/// Configuration for the method-of-fundamental-solutions fit.
struct MfsConfig {
    int singularity_count = 256;     // N
    double offset = 0.01;            // distance of the singularity ring/square
    double collocation_factor = 3.0; // M = round(factor * N)
    double ridge = 0.0;              // optional Tikhonov parameter, 0 = off

    void validate() const;
};

struct GreenPayload {
    BoundaryFn boundary_data;
    double quad_tol = 1e-10;
    std::vector<double> support_breaks;  // known kinks of the boundary data
};

struct MfsPayload {
    std::shared_ptr<const std::vector<Vec2>> sources;
    Eigen::VectorXd coeffs;
    double boundary_residual_rms = 0.0;
    double condition_estimate = 0.0;
};

struct TrigPayload {
    TrigCoeffs coeffs;
};

/// An evaluable harmonic function on a domain.  Backends: Poisson-kernel
/// closure (disk only), fundamental-solution expansion, or trigonometric
/// polynomial extension (disk only).
class HarmonicField {
public:
    enum class Backend { Green, Mfs, Trig };

    HarmonicField(DomainSpec domain, GreenPayload payload);
    HarmonicField(DomainSpec domain, MfsPayload payload);
    HarmonicField(DomainSpec domain, TrigPayload payload);

    Backend backend() const { return backend_; }
    const DomainSpec& domain() const { return domain_; }

    double operator()(const Vec2& p) const;
    Vec2 gradient(const Vec2& p) const;  // mfs and trig only

    const MfsPayload& mfs() const;
    const TrigPayload& trig() const;

    /// RMS boundary residual over the collocation points (mfs only).
    double boundary_residual_rms() const;

private:
    Backend backend_;
    DomainSpec domain_;
    std::variant<GreenPayload, MfsPayload, TrigPayload> payload_;
};

/// Fraction of the radius beyond which Poisson-kernel evaluation is refused.
inline constexpr double kGreenBoundaryMargin = 0.999;

/// Harmonic extension of g into a disk via the Poisson integral, evaluated
/// lazily with adaptive quadrature to quad_tol.  support_breaks are parameter
/// values where g has kinks (hat support endpoints); the quadrature splits
/// there and at the kernel peak.
HarmonicField poisson_extend(const DomainSpec& disk, BoundaryFn g, double quad_tol = 1e-10,
                             std::vector<double> support_breaks = {});

/// Fits sum_j c_j S(x - q_j), S(x) = log|x| / (2 pi), to g on the boundary by
/// collocation least squares.  Singularities sit on the concentric ring
/// (disk) or square of extent + offset; collocation points are uniform in the
/// boundary parameter, staggered by half a spacing.
HarmonicField mfs_fit(const DomainSpec& domain, const BoundaryFn& g, const MfsConfig& cfg);

/// Same fit for many boundary functions sharing one factorization.
std::vector<HarmonicField> mfs_fit_many(const DomainSpec& domain,
                                        std::span<const BoundaryFn> gs, const MfsConfig& cfg);

/// Trapezoidal Fourier analysis of a periodic function over `samples` uniform
/// points; requires samples >= 4 * freq_count.
TrigCoeffs fourier_coeffs(const BoundaryFn& g, int freq_count, int samples);

/// Wraps trigonometric coefficients as the harmonic field
/// a0 + sum_j (r/a)^j [a_j cos(j theta) + b_j sin(j theta)].
HarmonicField trig_extend(const DomainSpec& disk, TrigCoeffs coeffs);

/// Values of several fields at several points, as a points x fields matrix.
/// MFS fields sharing one singularity set are evaluated through a common
/// kernel matrix.
Eigen::MatrixXd evaluate_fields(std::span<const HarmonicField> fields,
                                std::span<const Vec2> points);

}  // namespace harmonic
