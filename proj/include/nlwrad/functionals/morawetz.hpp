#pragma once

#include <array>
#include <memory>
#include <vector>

#include "nlwrad/solver/evolve.hpp"
#include "nlwrad/solver/field_state.hpp"
#include "nlwrad/solver/source.hpp"

namespace nlwrad {

/// Spatial integrals entering the Morawetz identity at one time for one
/// sphere radius R (radial case, angular terms identically zero).
struct MorawetzSample {
    double t = 0.0;
    double interior_quadratic = 0.0;  ///< ∫_{|x|<R} |∇u|² + |u_t|²
    double interior_potential = 0.0;  ///< ∫_{|x|<R} |u|^{p+1}
    double sphere = 0.0;              ///< ∫_{|x|=R} |u|² dσ
    double exterior = 0.0;  ///< ∫_{|x|>R} (d-1)(p-1)/(2(p+1)) |u|^{p+1}/|x| + (d-3)(d-1)/4 |u|²/|x|³
    /// Completed-square terms; "minus" carries -u_t, "plus" carries +u_t.
    double boundary_interior_minus = 0.0;
    double boundary_interior_plus = 0.0;
    double boundary_exterior_minus = 0.0;
    double boundary_exterior_plus = 0.0;

    double boundary_minus() const { return boundary_interior_minus + boundary_exterior_minus; }
    double boundary_plus() const { return boundary_interior_plus + boundary_exterior_plus; }
};

/// R is snapped to the nearest grid node (must be an interior node). The
/// linear mode drops every |u|^{p+1} term, giving the free-wave identity.
MorawetzSample morawetz_sample(const RadialFields& fields, const ModelParams& params,
                               const RadialGrid& grid, double R, double t,
                               SourceMode mode = SourceMode::nonlinear);

/// Snapped radius actually used for R.
double snapped_radius(const RadialGrid& grid, double R);

/// The multiplier functional ∫ u_t (∇u·∇Ψ + u(ΔΨ/2 - φ)) dx for the
/// piecewise Ψ, φ attached to R.
double morawetz_multiplier(const FieldState& state, double R);

/// -d/dt of the multiplier evaluated directly as I₁ + I₂ + I₃.
double morawetz_rate(const FieldState& state, double R);

/// Checkpoint observer collecting samples for a fixed set of radii.
class MorawetzRecorder {
public:
    explicit MorawetzRecorder(std::vector<double> radii, SourceMode mode = SourceMode::nonlinear);

    void record(const FieldState& state);
    CheckpointObserver observer();

    const std::vector<double>& radii() const { return radii_; }
    const std::vector<MorawetzSample>& samples(std::size_t k) const { return samples_.at(k); }
    SourceMode mode() const { return mode_; }

private:
    std::vector<double> radii_;
    SourceMode mode_;
    std::vector<std::vector<MorawetzSample>> samples_;
};

/// Samples on [-T_b, T_f] for one radius. Backward-run samples describe
/// u(·,-t): their time is negated and the ± boundary terms swap.
struct MorawetzSeries {
    double R = 0.0;
    SourceMode mode = SourceMode::nonlinear;
    std::vector<MorawetzSample> samples;  ///< strictly increasing t
};

MorawetzSeries stitch_morawetz(double R, const std::vector<MorawetzSample>& forward,
                               const std::vector<MorawetzSample>& backward,
                               SourceMode mode = SourceMode::nonlinear);

struct MorawetzLedger {
    double R = 0.0, t1 = 0.0, t2 = 0.0;
    double interior_bulk = 0.0;
    double sphere_trace = 0.0;
    double exterior_bulk = 0.0;
    std::array<double, 2> boundary_interior{};  ///< at t1 (with -u_t) and t2 (with +u_t)
    std::array<double, 2> boundary_exterior{};
    double sum = 0.0;
    double two_energy = 0.0;
    double residual = 0.0;  ///< |sum - 2E|
    double relative_residual() const { return two_energy > 0.0 ? residual / two_energy : residual; }
};

/// Terms of the Morawetz identity over [t1, t2] with time integrals by the
/// checkpoint trapezoid. t1 and t2 must be sample times (RangeError otherwise).
MorawetzLedger morawetz_identity(const MorawetzSeries& series, const ModelParams& params, double energy,
                                 double t1, double t2);

struct CorollaryLedger {
    double R = 0.0, r = 0.0;
    std::array<double, 6> M{};
    double rhs = 0.0;
    double slack = 0.0;           ///< rhs - ΣM
    double inner_core = 0.0;      ///< 1/(2R) ∫_{-R}^{R}∫_{|x|<R} |∇u|²+|u_t|²+2|u|^{p+1}/(p+1)
    double balance_residual = 0.0;   ///< inner_core + ΣM - 2E
    double sum() const { return M[0] + M[1] + M[2] + M[3] + M[4] + M[5]; }
};

/// ∫ min{|x|/R, 1}(|∇u₀|² + |u₁|² + 2|u₀|^{p+1}/(p+1)) dx.
double corollary_rhs(const RadialFields& initial, const ModelParams& params, const RadialGrid& grid,
                     double R, SourceMode mode = SourceMode::nonlinear);

/// M₁..M₆ over the window [-(R+r), R+r]; RangeError when the series does
/// not span it or ±R, ±(R+r) are not sample times.
CorollaryLedger corollary_inequality(const MorawetzSeries& series, const ModelParams& params,
                                     const RadialFields& initial, const RadialGrid& grid,
                                     double energy, double R, double r);

}  // namespace nlwrad
