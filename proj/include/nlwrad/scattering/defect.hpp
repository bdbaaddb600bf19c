#pragma once

#include <vector>

#include "nlwrad/solver/trajectory.hpp"

namespace nlwrad {

struct ScatterDefectSeries {
    double t2 = 0.0;
    std::vector<double> t1;
    std::vector<double> delta;
};

/// δ(T₁) = ‖u(T₂) - S(T₂ - T₁)u(T₁)‖_{Ḣ¹×L²}, S the free flow on the same
/// grid. The trajectory must retain every T₁ and T₂; T₂ ≥ max T₁ + 10.
ScatterDefectSeries scatter_defect(const Trajectory& nonlinear, const std::vector<double>& t1_list,
                                   double t2);

}  // namespace nlwrad
