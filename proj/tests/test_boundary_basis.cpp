#include "harmonic/boundary_basis.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace harmonic;

namespace {
const DomainSpec kDisk = DomainSpec::disk(1.0);
}

TEST_CASE("hat values at canonical points") {
    const auto spec = BoundaryBasisSpec::for_domain(kDisk, 8);
    const double w = spec.omega();
    CHECK(w == doctest::Approx(std::numbers::pi / 4));
    CHECK(hat_value(spec, 2, 2 * w) == doctest::Approx(1.0));
    CHECK(hat_value(spec, 2, 1.5 * w) == doctest::Approx(0.5));
    CHECK(hat_value(spec, 2, 5 * w) == doctest::Approx(0.0));
    CHECK_THROWS_AS(hat_value(spec, 8, 0.0), std::domain_error);
    CHECK_THROWS_AS(hat_value(spec, -1, 0.0), std::domain_error);
}

TEST_CASE("hat 0 wraps around the parameter origin") {
    const auto spec = BoundaryBasisSpec::for_domain(kDisk, 8);
    const double w = spec.omega();
    CHECK(hat_value(spec, 0, spec.period - 0.5 * w) == doctest::Approx(0.5));
    CHECK(hat_value(spec, 0, 0.5 * w) == doctest::Approx(0.5));
}

TEST_CASE("partition of unity") {
    std::mt19937 rng(12345);
    for (const DomainSpec& dom : {DomainSpec::disk(1.0), DomainSpec::square(0.5)}) {
        for (double shift_frac : {0.0, 0.5}) {
            for (int n : {5, 8, 16}) {
                auto spec = BoundaryBasisSpec::for_domain(dom, n);
                spec.shift = shift_frac * spec.omega();
                std::uniform_real_distribution<double> dist(0.0, spec.period);
                for (int k = 0; k < 1000; ++k)
                    CHECK(hat_sum(spec, dist(rng)) == doctest::Approx(1.0).epsilon(1e-14));
                CHECK(hat_sum(spec, 0.3 * spec.period) == doctest::Approx(1.0).epsilon(1e-14));
                CHECK(hat_sum(spec, spec.shift + 3 * spec.omega()) ==
                      doctest::Approx(1.0).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("translation structure between neighbouring hats") {
    const auto spec = BoundaryBasisSpec::for_domain(kDisk, 12);
    const double w = spec.omega();
    for (int i = 0; i + 1 < spec.count; ++i)
        for (int k = 0; k < 100; ++k) {
            const double t = spec.period * k / 100.0;
            CHECK(hat_value(spec, i + 1, t) ==
                  doctest::Approx(hat_value(spec, i, t - w)).epsilon(1e-14));
        }
}

TEST_CASE("hats are piecewise linear on their support") {
    const auto spec = BoundaryBasisSpec::for_domain(kDisk, 8);
    const double w = spec.omega();
    // second differences vanish on each linear piece
    for (double base : {2 * w - 0.9 * w, 2 * w + 0.1 * w}) {
        const double h = 0.05 * w;
        const double d2 = hat_value(spec, 2, base + h) - 2 * hat_value(spec, 2, base) +
                          hat_value(spec, 2, base - h);
        CHECK(d2 == doctest::Approx(0.0).epsilon(1e-13));
    }
}

TEST_CASE("trig coefficient bookkeeping") {
    TrigCoeffs tc;
    tc.a0 = 1.0;
    tc.a = {0.0, 2.0};
    tc.b = {0.0, 0.0};
    CHECK(tc.freq_count() == 3);
    CHECK(tc.dimension() == 5);
    CHECK(tc.eval(0.0) == doctest::Approx(3.0));
}
