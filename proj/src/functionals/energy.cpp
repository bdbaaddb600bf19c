#include "nlwrad/functionals/energy.hpp"

#include <cmath>

#include "nlwrad/core/quadrature.hpp"

namespace nlwrad {

Eigen::ArrayXd energy_density(const RadialFields& f, const ModelParams& params, SourceMode mode) {
    const double p = params.p;
    if (mode == SourceMode::linear) return 0.5 * f.u_r.square() + 0.5 * f.u_t.square();
    return 0.5 * f.u_r.square() + 0.5 * f.u_t.square() + f.u.abs().pow(p + 1.0) / (p + 1.0);
}

EnergyBreakdown energy(const RadialFields& f, const ModelParams& params, const RadialGrid& grid,
                       double kappa, SourceMode mode) {
    const RadialQuadrature<double> quad(grid, params.d);
    const double p = params.p;
    EnergyBreakdown e;
    e.kinetic = 0.5 * quad.integrate(f.u_t.square());
    e.gradient = 0.5 * quad.integrate(f.u_r.square());
    if (mode == SourceMode::nonlinear) e.potential = quad.integrate(f.u.abs().pow(p + 1.0)) / (p + 1.0);
    e.total = e.kinetic + e.gradient + e.potential;
    e.kappa = kappa;
    const Eigen::ArrayXd weight = grid.nodes().pow(kappa) + 1.0;
    e.e_kappa = quad.integrate(weight * energy_density(f, params, mode));
    return e;
}

// The quadratic part in characteristic variables: after one integration by
// parts r^{d-1}(u_t² + u_r²) becomes w_t² + w_r² + c w²/r², and w_t² + w_r²
// = (v₊² + v₋²)/2 is left unchanged by the node-to-node shift.
EnergyBreakdown energy(const FieldState& state, double kappa, SourceMode mode) {
    EnergyBreakdown e = energy(reconstruct_u(state), state.params, state.grid, kappa, mode);
    const double h = state.grid.dr(), cd = sphere_area(state.params.d);
    const Eigen::ArrayXd wt = state.w_t(), wr = state.w_r();
    Eigen::ArrayXd inv_r2 = state.grid.nodes().square().inverse();
    inv_r2[0] = 0.0;
    const Eigen::ArrayXd grad = wr.square() + state.params.potential_coefficient() * state.w.square() * inv_r2;
    e.kinetic = 0.5 * cd * trapezoid(wt.square().eval(), h);
    e.gradient = 0.5 * cd * trapezoid(grad, h);
    e.total = e.kinetic + e.gradient + e.potential;
    return e;
}

}  // namespace nlwrad
