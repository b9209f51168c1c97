#include "harmonic/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace harmonic {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Piecewise-linear profile driving the square parametrization: a trapezoid
// wave clamped to [-1/2, 1/2].
double square_profile(double z) {
    return std::max(-0.5, std::min(0.5, 1.0 - std::abs(z)));
}
}  // namespace

DomainSpec DomainSpec::disk(double radius, const Vec2& center) {
    if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
    return DomainSpec{DomainKind::Disk, center, radius};
}

DomainSpec DomainSpec::square(double half_side, const Vec2& center) {
    if (!(half_side > 0.0)) throw std::invalid_argument("square half-side must be positive");
    return DomainSpec{DomainKind::Square, center, half_side};
}

double DomainSpec::period() const {
    return kind == DomainKind::Disk ? kTwoPi : 4.0;
}

double DomainSpec::boundary_speed() const {
    return kind == DomainKind::Disk ? extent : 2.0 * extent;
}

bool DomainSpec::contains(const Vec2& p) const {
    const Vec2 d = p - center;
    if (kind == DomainKind::Disk) return d.norm() < extent;
    return std::max(std::abs(d.x()), std::abs(d.y())) < extent;
}

Vec2 boundary_point(const DomainSpec& domain, double t) {
    if (t < 0.0 || t > domain.period())
        throw std::domain_error("boundary parameter outside [0, period]");
    if (domain.kind == DomainKind::Disk) {
        return domain.center + domain.extent * Vec2{std::cos(t), std::sin(t)};
    }
    const double s = 2.0 * domain.extent;
    return domain.center + s * Vec2{square_profile(t - 1.5), square_profile(t - 2.5)};
}

LayerSystem make_layers(const DomainSpec& K, const DomainSpec& D, int L) {
    if (K.kind != D.kind)
        throw std::invalid_argument("layer construction requires K and D of the same kind");
    if ((K.center - D.center).norm() > 0.0)
        throw std::invalid_argument("layer construction requires concentric K and D");
    if (!(K.extent < D.extent))
        throw std::invalid_argument("K must be strictly contained in D");
    if (L < 1) throw std::invalid_argument("layer count must be positive");

    LayerSystem sys;
    sys.layer_count = L;
    sys.dist_K_D = D.extent - K.extent;
    sys.layers.reserve(static_cast<size_t>(L) + 1);
    for (int j = 0; j <= L; ++j) {
        const double rho = (1.0 - static_cast<double>(j) / L) * sys.dist_K_D;
        DomainSpec layer = K;
        layer.extent = K.extent + rho;
        sys.layers.push_back(layer);
    }
    sys.layers.back() = K;  // K_L is K exactly, no rounding residue
    return sys;
}

}  // namespace harmonic
