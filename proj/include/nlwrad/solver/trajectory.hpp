#pragma once

#include <vector>

#include "nlwrad/functionals/energy.hpp"
#include "nlwrad/solver/field_state.hpp"
#include "nlwrad/solver/source.hpp"

namespace nlwrad {

struct RunMetadata {
    int scheme_order = 2;
    double dr = 0.0;
    SourceMode mode = SourceMode::nonlinear;
    long steps = 0;
    long checkpoint_stride = 1;
    double wall_seconds = 0.0;
    bool boundary_reached = false;  ///< zero-inflow outer condition violated
};

/// Checkpointed record of one evolution. Energies are kept at every
/// checkpoint; full states only at the requested retain times.
struct Trajectory {
    std::vector<double> times;
    std::vector<EnergyBreakdown> energy;
    std::vector<FieldState> retained;
    RunMetadata meta;

    /// Retained state at time t (matched to half a step). Throws RangeError.
    const FieldState& state_at(double t) const;
    bool has_state(double t) const;
    const FieldState& final_state() const;

    /// max_t |E(t) - E(0)| / E(0); 0 for zero energy.
    double relative_energy_drift() const;
};

}  // namespace nlwrad
