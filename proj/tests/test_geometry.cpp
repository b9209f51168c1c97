#include "harmonic/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace harmonic;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("disk boundary parametrization") {
    const DomainSpec disk = DomainSpec::disk(1.0);
    const Vec2 p0 = boundary_point(disk, 0.0);
    CHECK(p0.x() == doctest::Approx(1.0));
    CHECK(p0.y() == doctest::Approx(0.0));

    const Vec2 q = boundary_point(disk, std::numbers::pi / 2);
    CHECK(q.x() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(q.y() == doctest::Approx(1.0));

    CHECK_THROWS_AS(boundary_point(disk, -0.1), std::domain_error);
    CHECK_THROWS_AS(boundary_point(disk, kTwoPi + 0.1), std::domain_error);
}

TEST_CASE("square boundary parametrization") {
    const DomainSpec sq = DomainSpec::square(0.5);
    const Vec2 p0 = boundary_point(sq, 0.0);
    CHECK(p0.x() == doctest::Approx(-0.5));
    CHECK(p0.y() == doctest::Approx(-0.5));

    const Vec2 p1 = boundary_point(sq, 1.0);
    CHECK(p1.x() == doctest::Approx(0.5));
    CHECK(p1.y() == doctest::Approx(-0.5));

    // constant-speed traversal: |dx/dt| = 2a
    const double h = 1e-6;
    for (double t : {0.3, 1.2, 2.7, 3.9}) {
        const Vec2 d = (boundary_point(sq, t + h) - boundary_point(sq, t - h)) / (2 * h);
        CHECK(d.norm() == doctest::Approx(2 * sq.extent).epsilon(1e-6));
    }
}

TEST_CASE("boundary parametrization is periodic") {
    for (const DomainSpec& dom : {DomainSpec::disk(1.3), DomainSpec::square(0.7)}) {
        const Vec2 a = boundary_point(dom, 0.0);
        const Vec2 b = boundary_point(dom, dom.period());
        CHECK((a - b).norm() == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("layer radii for concentric disks") {
    const auto sys = make_layers(DomainSpec::disk(0.5), DomainSpec::disk(3.0), 2);
    REQUIRE(sys.layers.size() == 3);
    CHECK(sys.layers[0].extent == doctest::Approx(3.0));
    CHECK(sys.layers[1].extent == doctest::Approx(1.75));
    CHECK(sys.layers[2].extent == doctest::Approx(0.5));
    CHECK(sys.dist_K_D == doctest::Approx(2.5));
}

TEST_CASE("single-shell layer system") {
    const auto sys = make_layers(DomainSpec::disk(0.5), DomainSpec::disk(3.0), 1);
    REQUIRE(sys.layers.size() == 2);
    CHECK(sys.layers[0].extent == doctest::Approx(3.0));
    CHECK(sys.layers[1].extent == doctest::Approx(0.5));
}

TEST_CASE("square layer half-sides follow the shell formula") {
    const auto sys = make_layers(DomainSpec::square(0.25), DomainSpec::square(1.5), 5);
    REQUIRE(sys.layers.size() == 6);
    for (int j = 0; j <= 5; ++j)
        CHECK(sys.layers[static_cast<size_t>(j)].extent ==
              doctest::Approx(0.25 + (1.0 - j / 5.0) * 1.25));
}

TEST_CASE("equal shell widths to machine precision") {
    const auto sys = make_layers(DomainSpec::disk(0.5), DomainSpec::disk(3.0), 7);
    const double width = sys.dist_K_D / 7;
    for (size_t j = 1; j < sys.layers.size(); ++j)
        CHECK(sys.layers[j - 1].extent - sys.layers[j].extent ==
              doctest::Approx(width).epsilon(1e-14));
}

TEST_CASE("layer boundaries are strictly nested") {
    for (const auto& [K, D] : {std::pair{DomainSpec::disk(0.5), DomainSpec::disk(3.0)},
                               std::pair{DomainSpec::square(0.25), DomainSpec::square(1.5)}}) {
        const auto sys = make_layers(K, D, 4);
        for (size_t j = 1; j < sys.layers.size(); ++j) {
            for (int k = 0; k < 200; ++k) {
                const double t = sys.layers[j].period() * k / 200.0;
                CHECK(sys.layers[j - 1].contains(boundary_point(sys.layers[j], t)));
            }
        }
    }
}

TEST_CASE("layer construction rejects bad input") {
    const DomainSpec K = DomainSpec::disk(0.5);
    CHECK_THROWS_AS(make_layers(K, DomainSpec::square(3.0), 2), std::invalid_argument);
    CHECK_THROWS_AS(make_layers(K, DomainSpec::disk(3.0, Vec2{1.0, 0.0}), 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_layers(K, DomainSpec::disk(0.4), 2), std::invalid_argument);
    CHECK_THROWS_AS(make_layers(K, DomainSpec::disk(3.0), 0), std::invalid_argument);
}
