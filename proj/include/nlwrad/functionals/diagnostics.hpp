#pragma once

#include "nlwrad/solver/field_state.hpp"

namespace nlwrad {

/// ∫_{|x|<t} (t-|x|)/t e(x,t) dx; requires t > 0.
double weighted_interior_energy(const FieldState& state);
double weighted_interior_energy(const RadialFields& f, const ModelParams& params,
                                const RadialGrid& grid, double t);

enum class FluxSign { plus, minus };

/// ∫ |u_r ± u_t|² + |u|^{p+1} dx. The + part is the incoming share, which
/// vanishes as t → +∞.
double flux_energy(const FieldState& state, FluxSign sign);
double flux_energy(const RadialFields& f, const ModelParams& params, const RadialGrid& grid,
                   FluxSign sign);

/// ∫_{|x|>t} |u|²/|x|² dx, defined for d = 3 only (NotApplicable otherwise).
double exterior_mass_tail(const FieldState& state);
double exterior_mass_tail(const RadialFields& f, const ModelParams& params, const RadialGrid& grid,
                          double t);

/// Exponent (-2κ + p - 5)/(p+1) of the exterior-tail bound.
double exterior_tail_exponent(double p, double kappa);

struct PointwiseRatios {
    double ratio1 = 0.0;  ///< max r^{(d-2)/2}|u| / ‖u‖_{Ḣ¹}
    double ratio2 = 0.0;  ///< max r^{2(d-1)/(p+3)}|u| / (‖u‖_{Ḣ¹}^{2/(p+3)} ‖u‖_{L^{p+1}}^{(p+1)/(p+3)})
};

/// Throws InvalidParameter when either norm vanishes.
PointwiseRatios pointwise_bound_check(const FieldState& state);
PointwiseRatios pointwise_bound_check(const RadialFields& f, const ModelParams& params,
                                      const RadialGrid& grid);

/// Sharp constant ((d-2) c_d)^{-1/2} of the Ḣ¹ pointwise bound.
double pointwise_sharp_constant(int d);

}  // namespace nlwrad
