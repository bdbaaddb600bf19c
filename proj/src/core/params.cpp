#include "nlwrad/core/params.hpp"

#include <cmath>
#include <numbers>

#include "nlwrad/core/error.hpp"

namespace nlwrad {

namespace {

// Γ(d/2) for integer d >= 1 without a general Gamma implementation.
double half_integer_gamma(int d) {
    if (d % 2 == 0) {
        double g = 1.0;
        for (int k = 2; k < d / 2; ++k) g *= k;
        return g;
    }
    // Γ(d/2) = √π (d-2)!! / 2^{(d-1)/2}
    double g = std::sqrt(std::numbers::pi);
    for (int k = d - 2; k > 0; k -= 2) g *= 0.5 * k;
    return g;
}

}  // namespace

double sphere_area(int d) {
    if (d < 1) throw InvalidParameter("sphere dimension must be positive");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / half_integer_gamma(d);
}

double ModelParams::sphere_area() const { return nlwrad::sphere_area(d); }

ModelParams make_params(int d, double p) {
    if (d < 3) throw InvalidParameter("dimension must be at least 3");
    if (!(p > 1.0) || !std::isfinite(p)) throw InvalidParameter("exponent must satisfy p > 1");

    ModelParams m;
    m.d = d;
    m.p = p;
    const double dm1 = d - 1;
    m.lambda = 0.5 * (4.0 - dm1 * (p - 1.0));
    m.beta = (dm1 * (p - 1.0) - 2.0) / (p + 1.0);
    m.kappa_max = 0.5 * (dm1 * (p - 1.0) - 2.0);
    m.kappa_scatter = ((2.0 - d) * p + (d + 2.0)) / (p + 1.0);
    m.p_scatter_min = (3.0 - d + 2.0 * std::sqrt(double(d) * d - d + 1.0)) / dm1;

    m.sub_conformal = p < 1.0 + 4.0 / dm1;
    m.in_theorem11_range = m.sub_conformal && p > 1.0 + 2.0 / dm1;
    m.in_scattering_range = m.sub_conformal && p > m.p_scatter_min;
    return m;
}

}  // namespace nlwrad
