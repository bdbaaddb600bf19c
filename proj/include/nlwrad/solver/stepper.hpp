#pragma once

#include <Eigen/Core>

#include "nlwrad/solver/field_state.hpp"
#include "nlwrad/solver/source.hpp"

namespace nlwrad {

/// Unit-CFL characteristic integrator (dt = dr).
///
/// v+ at node j is carried from node j-1 and v- from node j+1, each
/// corrected by the integral of f along the connecting light ray. That
/// integral uses product trapezoid weights: u (and |u|^{p-1}u) is taken
/// linear along the segment while the singular weights r^{(d-5)/2} and
/// r^{(d-1)/2} are integrated exactly. The inverse-square potential acts
/// implicitly at the new endpoint; the power nonlinearity uses a Heun
/// predictor. w advances by the trapezoid rule on w_t = (v+ + v-)/2.
/// Boundary conditions: w(0) = 0 with v+(0) = -v-(0); zero inflow v-(r_max) = 0.
///
/// The evolver owns its state so that u and |u|^{p-1}u caches stay in sync.
class Evolver {
public:
    Evolver(FieldState initial, SourceMode mode);

    /// Advances one step of length dr. Throws NumericAbort on non-finite
    /// values or when max|w| exceeds 1e12.
    void step();
    void step(long count) {
        for (long k = 0; k < count; ++k) step();
    }

    const FieldState& state() const { return state_; }
    SourceMode mode() const { return mode_; }
    long steps_taken() const { return steps_; }
    /// Largest node index that may carry nonzero data.
    Eigen::Index front() const { return front_; }
    /// True once the support has touched r_max, after which the zero-inflow
    /// condition is no longer exact.
    bool boundary_reached() const { return boundary_reached_; }

    static constexpr double blowup_threshold = 1e12;

private:
    void refresh_cache();

    FieldState state_;
    SourceMode mode_;
    long steps_ = 0;
    Eigen::Index front_ = 0;
    bool boundary_reached_ = false;

    double c_ = 0.0;  // potential coefficient (d-1)(d-3)/4
    double p_ = 1.0;
    bool nonlinear_ = true;

    Eigen::ArrayXd rq_;      // r_j^q
    Eigen::ArrayXd inv_rq_;  // r_j^{-q}, 0 at the origin
    // Product weights on interval [r_i, r_{i+1}] against the left/right hat
    // functions, for the potential weight r^{(d-5)/2} and the power weight r^q.
    Eigen::ArrayXd pot_l_, pot_r_, pow_l_, pow_r_;

    Eigen::ArrayXd u_, g_;  // cached u and |u|^{p-1}u of the current state
    Eigen::ArrayXd w_new_, vp_new_, vm_new_, u_new_, g_new_;
};

/// One step of a fresh evolver; convenient for tests, slow in loops.
FieldState step(const FieldState& state, SourceMode mode);

}  // namespace nlwrad
