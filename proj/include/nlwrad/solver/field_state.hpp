#pragma once

#include <Eigen/Core>

#include <functional>
#include <optional>

#include "nlwrad/core/grid.hpp"
#include "nlwrad/core/params.hpp"

namespace nlwrad {

/// One time slice of the reduced 1D system for w = r^{(d-1)/2} u together
/// with the characteristic variables v± = w_t ∓ w_r.
struct FieldState {
    double t = 0.0;
    Eigen::ArrayXd w;
    Eigen::ArrayXd v_plus;   ///< w_t - w_r, transported outward
    Eigen::ArrayXd v_minus;  ///< w_t + w_r, transported inward
    ModelParams params;
    RadialGrid grid;

    Eigen::ArrayXd w_t() const { return 0.5 * (v_plus + v_minus); }
    Eigen::ArrayXd w_r() const { return 0.5 * (v_minus - v_plus); }
};

/// Zero fields on `grid` at time t.
FieldState zero_state(const ModelParams& params, const RadialGrid& grid, double t = 0.0);

/// A radial profile r ↦ f(r), optionally with its exact derivative.
struct RadialProfile {
    std::function<double(double)> value;
    std::function<double(double)> derivative;  ///< may be empty
};

/// Samples (u0, u1) and builds w, v±. Without an exact derivative u0' is
/// taken by centred differences, even reflection at r = 0 and a one-sided
/// second-order stencil at r_max. Throws InvalidParameter on non-finite samples.
FieldState init_from_profile(const RadialProfile& u0, const RadialProfile& u1,
                             const RadialGrid& grid, const ModelParams& params);

/// Node samples of u, u_r, u_t.
struct RadialFields {
    Eigen::ArrayXd u;
    Eigen::ArrayXd u_r;
    Eigen::ArrayXd u_t;
};

/// Recovers (u, u_r, u_t) from (w, v±) through r^q u_r = w_r - q w / r and
/// r^q u_t = w_t. The origin values come from quadratic extrapolation of
/// nodes 1..3; u_r(0) = 0 by symmetry.
RadialFields reconstruct_u(const FieldState& state);

/// Max-norm of (v_minus - v_plus)/2 minus the centred difference of w over
/// interior nodes.
double consistency_residual(const FieldState& state);

/// Ḣ¹ × L² distance between two states on the same grid.
double hdot1_l2_distance(const FieldState& a, const FieldState& b);

/// Ḣ¹ × L² norm of a state.
double hdot1_l2_norm(const FieldState& s);

}  // namespace nlwrad
