#pragma once

#include "harmonic/geometry.hpp"

#include <functional>
#include <span>
#include <vector>

namespace harmonic {

enum class Rule1d { GaussKronrod15, ClenshawCurtis };

struct QuadConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 60;
    Rule1d rule_1d = Rule1d::GaussKronrod15;
    int tensor_order = 12;      // points per dimension per panel of the 2D rules
    int boundary_grading = 12;  // geometric panel refinement levels toward the boundary
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

/// Adaptive 1D quadrature on [lo, hi].  The initial partition honors
/// split_points (kernel peaks, hat kinks); panels with the largest embedded
/// error estimate are bisected until the tolerance or the subdivision budget
/// is reached.  Non-convergence is flagged, never thrown.
QuadResult integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                        const QuadConfig& cfg, std::span<const double> split_points = {});

/// Fixed node/weight set covering a domain.
struct DomainRule {
    std::vector<Vec2> points;
    std::vector<double> weights;
};

/// Tensor-product rule over a disk (polar coordinates, Jacobian r) or square.
/// param_breaks are boundary-parameter values whose images align the panel
/// edges (hat nodes); radial/axis panels are geometrically graded toward the
/// boundary.  boundary_cap < 1 stops the outermost panels short of the
/// boundary (used for Green-backed fields, which degrade there).
DomainRule domain_rule(const DomainSpec& domain, const QuadConfig& cfg,
                       std::span<const double> param_breaks = {}, double boundary_cap = 1.0);

/// Integral of f over the domain with the tensor rule above.  Non-finite
/// integrand values throw std::runtime_error naming the evaluation point.
double integrate_domain(const DomainSpec& domain, const std::function<double(const Vec2&)>& f,
                        const QuadConfig& cfg, std::span<const double> param_breaks = {},
                        double boundary_cap = 1.0);

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// Clenshaw-Curtis nodes/weights on [-1, 1] (order forced odd).
void clenshaw_curtis(int order, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace harmonic
