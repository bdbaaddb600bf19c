#include "nlwrad/functionals/diagnostics.hpp"

#include <cmath>

#include "nlwrad/core/error.hpp"
#include "nlwrad/core/quadrature.hpp"
#include "nlwrad/functionals/energy.hpp"

namespace nlwrad {

double weighted_interior_energy(const RadialFields& f, const ModelParams& params, const RadialGrid& grid,
                                double t) {
    if (!(t > 0.0)) throw InvalidParameter("weighted interior energy needs t > 0");
    const Eigen::ArrayXd weight = ((t - grid.nodes()) / t).max(0.0);
    return RadialQuadrature<double>(grid, params.d).integrate(weight * energy_density(f, params));
}

double weighted_interior_energy(const FieldState& s) {
    return weighted_interior_energy(reconstruct_u(s), s.params, s.grid, s.t);
}

double flux_energy(const RadialFields& f, const ModelParams& params, const RadialGrid& grid, FluxSign sign) {
    const double sg = sign == FluxSign::plus ? 1.0 : -1.0;
    const Eigen::ArrayXd density = (f.u_r + sg * f.u_t).square() + f.u.abs().pow(params.p + 1.0);
    return RadialQuadrature<double>(grid, params.d).integrate(density);
}

double flux_energy(const FieldState& s, FluxSign sign) {
    return flux_energy(reconstruct_u(s), s.params, s.grid, sign);
}

double exterior_mass_tail(const RadialFields& f, const ModelParams& params, const RadialGrid& grid, double t) {
    if (params.d != 3) throw NotApplicable("exterior mass tail is defined for d = 3 only");
    if (!(t > 0.0)) throw InvalidParameter("exterior mass tail needs t > 0");
    const Eigen::Index J = grid.nearest(t);
    if (J >= grid.n()) return 0.0;
    Eigen::ArrayXd inv_r2 = grid.nodes().square().inverse();
    inv_r2[0] = 0.0;
    return RadialQuadrature<double>(grid, params.d).integrate(f.u.square() * inv_r2, J, grid.n());
}

double exterior_mass_tail(const FieldState& s) {
    return exterior_mass_tail(reconstruct_u(s), s.params, s.grid, s.t);
}

double exterior_tail_exponent(double p, double kappa) { return (-2.0 * kappa + p - 5.0) / (p + 1.0); }

PointwiseRatios pointwise_bound_check(const RadialFields& f, const ModelParams& params, const RadialGrid& grid) {
    const int d = params.d;
    const double p = params.p;
    const RadialQuadrature<double> quad(grid, d);
    const double h1 = std::sqrt(quad.integrate(f.u_r.square()));
    const double lp = quad.integrate(f.u.abs().pow(p + 1.0));
    if (!(h1 > 0.0) || !(lp > 0.0)) throw InvalidParameter("pointwise bound needs a nonzero state");

    const Eigen::ArrayXd r = grid.nodes();
    const double m1 = (r.pow(0.5 * (d - 2)) * f.u.abs()).maxCoeff();
    const double m2 = (r.pow(2.0 * (d - 1) / (p + 3.0)) * f.u.abs()).maxCoeff();
    PointwiseRatios out;
    out.ratio1 = m1 / h1;
    out.ratio2 = m2 / (std::pow(h1, 2.0 / (p + 3.0)) * std::pow(lp, 1.0 / (p + 3.0)));
    return out;
}

PointwiseRatios pointwise_bound_check(const FieldState& s) {
    return pointwise_bound_check(reconstruct_u(s), s.params, s.grid);
}

double pointwise_sharp_constant(int d) { return 1.0 / std::sqrt((d - 2) * sphere_area(d)); }

}  // namespace nlwrad
