#pragma once

#include <Eigen/Core>

#include <cmath>

#include "nlwrad/solver/field_state.hpp"

namespace nlwrad {

enum class SourceMode { nonlinear, linear };

/// |u|^{p-1} u evaluated as sign(u) |u|^p.
inline double defocusing_power(double u, double p) {
    if (u == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(u), p), u);
}

/// Node values of f(r,t) = -(d-1)(d-3)/4 r^{(d-5)/2} u - r^{(d-1)/2}|u|^{p-1}u,
/// the right-hand side of (∂t ± ∂r) v± = f. The linear mode drops the power
/// term; f(0) is set to 0.
Eigen::ArrayXd source_term(const FieldState& state, SourceMode mode);

}  // namespace nlwrad
