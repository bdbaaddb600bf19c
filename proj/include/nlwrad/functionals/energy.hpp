#pragma once

#include "nlwrad/solver/field_state.hpp"
#include "nlwrad/solver/source.hpp"

namespace nlwrad {

/// Parts of E = ∫ ½|∇u|² + ½|u_t|² + |u|^{p+1}/(p+1) dx for a radial state
/// (the angular gradient vanishes), plus the weighted energy E_κ with
/// weight |x|^κ + 1. The linear mode drops the |u|^{p+1} part, leaving the
/// energy conserved by the free flow. For a FieldState the quadratic part is
/// taken from w and v±; the field overload integrates u_r and u_t directly.
struct EnergyBreakdown {
    double kinetic = 0.0;
    double gradient = 0.0;
    double potential = 0.0;
    double total = 0.0;
    double kappa = 0.0;
    double e_kappa = 0.0;
};

EnergyBreakdown energy(const FieldState& state, double kappa = 0.0,
                       SourceMode mode = SourceMode::nonlinear);
EnergyBreakdown energy(const RadialFields& fields, const ModelParams& params,
                       const RadialGrid& grid, double kappa = 0.0,
                       SourceMode mode = SourceMode::nonlinear);

/// Node values of the energy density e(x,t).
Eigen::ArrayXd energy_density(const RadialFields& fields, const ModelParams& params,
                              SourceMode mode = SourceMode::nonlinear);

}  // namespace nlwrad
