#include "harmonic/boundary_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace harmonic {

namespace {
double wrap(double t, double period) {
    double r = std::fmod(t, period);
    if (r < 0.0) r += period;
    return r;
}
}  // namespace

BoundaryBasisSpec BoundaryBasisSpec::for_domain(const DomainSpec& domain, int n, double shift) {
    if (n < 1) throw std::invalid_argument("basis count must be positive");
    BoundaryBasisSpec spec;
    spec.count = n;
    spec.period = domain.period();
    spec.shift = wrap(shift, spec.period);
    return spec;
}

std::vector<double> BoundaryBasisSpec::nodes() const {
    std::vector<double> out(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<size_t>(i)] = wrap(i * omega() + shift, period);
    return out;
}

double hat_value(const BoundaryBasisSpec& spec, int i, double t) {
    if (i < 0 || i >= spec.count) throw std::domain_error("hat index out of range");
    const double w = spec.omega();
    // distance to node i in the periodic parameter, folded into [-period/2, period/2]
    double u = wrap(t - spec.shift - i * w, spec.period);
    if (u > 0.5 * spec.period) u -= spec.period;
    const double d = std::abs(u);
    return d >= w ? 0.0 : 1.0 - d / w;
}

double hat_sum(const BoundaryBasisSpec& spec, double t) {
    double s = 0.0;
    for (int i = 0; i < spec.count; ++i) s += hat_value(spec, i, t);
    return s;
}

double TrigCoeffs::eval(double theta) const {
    double v = a0;
    for (size_t j = 0; j < a.size(); ++j) {
        const double jt = static_cast<double>(j + 1) * theta;
        v += a[j] * std::cos(jt) + b[j] * std::sin(jt);
    }
    return v;
}

}  // namespace harmonic
