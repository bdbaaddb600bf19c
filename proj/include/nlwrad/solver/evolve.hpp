#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nlwrad/solver/stepper.hpp"
#include "nlwrad/solver/trajectory.hpp"

namespace nlwrad {

struct EvolveOptions {
    double t_end = 1.0;
    double checkpoint_every = 1.0;  ///< rounded to a whole number of steps
    SourceMode mode = SourceMode::nonlinear;
    std::vector<double> retain_times;  ///< snapped to the step grid
    bool retain_final = true;
    double energy_kappa = 0.0;
};

/// Called on the state at every checkpoint, t = start included.
using CheckpointObserver = std::function<void(const FieldState&)>;

/// Evolves `state` to t_end. Emits a warning through `warnings` when the
/// data reach r_max, since the zero-inflow outer condition is then no
/// longer exact. Step errors propagate as NumericAbort.
Trajectory evolve(FieldState state, const EvolveOptions& options,
                  std::span<const CheckpointObserver> observers = {},
                  std::vector<std::string>* warnings = nullptr);

}  // namespace nlwrad
