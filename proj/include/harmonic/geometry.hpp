#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <vector>

namespace harmonic {

using Vec2 = Eigen::Vector2d;

enum class DomainKind { Disk, Square };

/// A disk (center, radius) or axis-aligned square (center, half-side).
/// The same type describes the target domain K, the surrounding domain D,
/// and every layer in between.
struct DomainSpec {
    DomainKind kind = DomainKind::Disk;
    Vec2 center{0.0, 0.0};
    double extent = 1.0;  // radius for disks, half-side for squares

    static DomainSpec disk(double radius, const Vec2& center = Vec2::Zero());
    static DomainSpec square(double half_side, const Vec2& center = Vec2::Zero());

    /// Period of the boundary parameter: 2*pi for disks, 4 for squares.
    double period() const;

    /// |dx/dt| of the boundary parametrization (constant by construction).
    double boundary_speed() const;

    /// Strict interior test.
    bool contains(const Vec2& p) const;

    bool operator==(const DomainSpec&) const = default;
};

/// Maps a boundary parameter to a point on the boundary.
/// Disk: t is the polar angle in [0, 2*pi].  Square: t in [0, 4], one unit
/// per edge, starting at the bottom-left corner and running counterclockwise.
/// t outside the closed parameter interval throws std::domain_error; callers
/// wrap modulo the period first.
Vec2 boundary_point(const DomainSpec& domain, double t);

/// Nested concentric layers K_0 > K_1 > ... > K_L = K with equal shell widths.
struct LayerSystem {
    std::vector<DomainSpec> layers;  // size L+1, outermost first
    int layer_count = 0;             // L
    double dist_K_D = 0.0;           // dist(K, boundary of D)
};

/// Builds the layer sequence between concentric K and D of the same kind.
/// Layer j has extent(K) + (1 - j/L) * dist(K, dD).
LayerSystem make_layers(const DomainSpec& K, const DomainSpec& D, int L);

}  // namespace harmonic
