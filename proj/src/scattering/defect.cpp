#include "nlwrad/scattering/defect.hpp"

#include <algorithm>
#include <cmath>

#include "nlwrad/core/error.hpp"
#include "nlwrad/solver/stepper.hpp"

namespace nlwrad {

ScatterDefectSeries scatter_defect(const Trajectory& nonlinear, const std::vector<double>& t1_list, double t2) {
    if (t1_list.empty()) throw InvalidParameter("defect ladder needs at least one release time");
    const double latest = *std::max_element(t1_list.begin(), t1_list.end());
    if (t2 < latest + 10.0) throw RangeError("defect horizon must exceed every release time by 10");
    const FieldState& target = nonlinear.state_at(t2);

    ScatterDefectSeries out;
    out.t2 = t2;
    for (double t1 : t1_list) {
        Evolver free(nonlinear.state_at(t1), SourceMode::linear);
        free.step(std::lround((target.t - free.state().t) / target.grid.dr()));
        out.t1.push_back(t1);
        out.delta.push_back(hdot1_l2_distance(target, free.state()));
    }
    return out;
}

}  // namespace nlwrad
