#pragma once

#include "harmonic/geometry.hpp"

#include <vector>

namespace harmonic {

/// Uniform mesh of n piecewise-linear hat functions on the parametrized
/// boundary.  Node i sits at parameter (i * omega + shift) mod period.
struct BoundaryBasisSpec {
    int count = 0;       // n
    double period = 0.0; // 2*pi (disk) or 4 (square)
    double shift = 0.0;  // parametric offset in [0, period)

    double omega() const { return period / count; }

    static BoundaryBasisSpec for_domain(const DomainSpec& domain, int n, double shift = 0.0);

    /// Node parameters, wrapped into [0, period).
    std::vector<double> nodes() const;
};

/// Value of hat i at boundary parameter t (any real t; wrapped internally).
/// Peaks at 1 on its own node, supported on the two adjacent mesh intervals.
double hat_value(const BoundaryBasisSpec& spec, int i, double t);

/// Sum of all hats at t; identically 1 (partition of unity).
double hat_sum(const BoundaryBasisSpec& spec, double t);

/// Coefficients of a real trigonometric polynomial
/// a0 + sum_{j=1}^{n-1} a_j cos(j t) + b_j sin(j t)  (dimension 2n-1).
struct TrigCoeffs {
    double a0 = 0.0;
    std::vector<double> a;  // a_1 .. a_{n-1}
    std::vector<double> b;  // b_1 .. b_{n-1}

    int freq_count() const { return static_cast<int>(a.size()) + 1; }
    int dimension() const { return 2 * freq_count() - 1; }

    double eval(double theta) const;
};

}  // namespace harmonic
