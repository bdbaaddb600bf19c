#include "nlwrad/solver/evolve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "nlwrad/core/error.hpp"

namespace nlwrad {

namespace {

bool same_time(double a, double b, double dt) { return std::abs(a - b) <= 0.5 * dt; }

}  // namespace

const FieldState& Trajectory::state_at(double t) const {
    for (const auto& s : retained)
        if (same_time(s.t, t, meta.dr)) return s;
    throw RangeError("no retained state at t = " + std::to_string(t));
}

bool Trajectory::has_state(double t) const {
    return std::any_of(retained.begin(), retained.end(),
                       [&](const FieldState& s) { return same_time(s.t, t, meta.dr); });
}

const FieldState& Trajectory::final_state() const {
    if (retained.empty()) throw RangeError("trajectory retained no states");
    return *std::max_element(retained.begin(), retained.end(),
                             [](const FieldState& a, const FieldState& b) { return a.t < b.t; });
}

double Trajectory::relative_energy_drift() const {
    if (energy.empty() || energy.front().total == 0.0) return 0.0;
    const double e0 = energy.front().total;
    double worst = 0.0;
    for (const auto& e : energy) worst = std::max(worst, std::abs(e.total - e0));
    return worst / e0;
}

Trajectory evolve(FieldState state, const EvolveOptions& options,
                  std::span<const CheckpointObserver> observers,
                  std::vector<std::string>* warnings) {
    const double h = state.grid.dr();
    if (!(options.t_end > state.t)) throw InvalidParameter("t_end must exceed the start time");
    if (!(options.checkpoint_every > 0.0)) throw InvalidParameter("checkpoint spacing must be positive");

    const long total_steps = std::lround((options.t_end - state.t) / h);
    const long stride = std::max(1L, std::lround(options.checkpoint_every / h));

    std::set<long> retain_steps;
    for (double t : options.retain_times) {
        const long k = std::lround((t - state.t) / h);
        if (k < 0 || k > total_steps) throw RangeError("retain time outside the run");
        retain_steps.insert(k);
    }
    if (options.retain_final) retain_steps.insert(total_steps);

    Trajectory traj;
    traj.meta.dr = h;
    traj.meta.mode = options.mode;
    traj.meta.checkpoint_stride = stride;

    const auto start = std::chrono::steady_clock::now();
    Evolver ev(std::move(state), options.mode);

    auto checkpoint = [&](long k) {
        const auto& s = ev.state();
        if (k % stride == 0 || k == total_steps) {
            traj.times.push_back(s.t);
            traj.energy.push_back(energy(s, options.energy_kappa, options.mode));
            for (const auto& obs : observers) obs(s);
        }
        if (retain_steps.count(k)) traj.retained.push_back(s);
    };

    checkpoint(0);
    for (long k = 1; k <= total_steps; ++k) {
        ev.step();
        checkpoint(k);
    }

    traj.meta.steps = ev.steps_taken();
    traj.meta.boundary_reached = ev.boundary_reached();
    traj.meta.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (traj.meta.boundary_reached && warnings)
        warnings->push_back("data reached r_max; outer zero-inflow condition not exact");
    return traj;
}

}  // namespace nlwrad
