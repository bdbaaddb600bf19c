#pragma once

#include <vector>

#include "nlwrad/solver/evolve.hpp"
#include "nlwrad/solver/field_state.hpp"

namespace nlwrad {

/// Sampled g₊(η) = lim v₊(t - η, t)/2 on retarded times η = t - r.
struct RadiationProfile {
    std::vector<double> eta;     ///< increasing
    std::vector<double> g_plus;
    std::vector<double> tail;    ///< |v₊ at t_max - v₊ at t_max/2| along each characteristic
    double t_max = 0.0;
    double t_half = 0.0;
    int d = 3;

    /// Linear interpolation; zero outside the sampled range.
    double at(double eta) const;
};

/// Profile read off the states at t_max and t_max/2. Every η must satisfy
/// 10 ≤ t_max - η ≤ r_max and t_max/2 - η ≥ 0; RangeError otherwise.
RadiationProfile extract_radiation(const FieldState& at_t_max, const FieldState& at_half,
                                   const std::vector<double>& eta);

/// η grid of every node with r ≥ r_min at time t_max that is still
/// reachable at t_max/2, in increasing order.
std::vector<double> node_eta_grid(const FieldState& at_t_max, double r_min = 10.0);

/// c_d ∫ g₊² dη by the trapezoid rule on the profile's η grid.
double radiated_energy(const RadiationProfile& profile);

/// ∫_{t - c t^β}^{t + R} |v₊(r,t) - 2 g₊(t - r)|² dr; RangeError when the
/// window leaves the grid.
double characteristic_l2_window(const FieldState& state, const RadiationProfile& profile, double c,
                                double beta, double R);

/// Records v₊(t - η, t) along a set of outgoing characteristics at every
/// checkpoint. Each η should be a multiple of dr so that t - η stays on nodes.
class CharacteristicRecorder {
public:
    explicit CharacteristicRecorder(std::vector<double> eta);

    void record(const FieldState& state);
    CheckpointObserver observer();

    const std::vector<double>& eta() const { return eta_; }
    /// Times and values along characteristic k (only t ≥ η).
    const std::vector<double>& times(std::size_t k) const { return times_.at(k); }
    const std::vector<double>& values(std::size_t k) const { return values_.at(k); }

    /// v₊(t - η_k, t) at a recorded checkpoint; RangeError otherwise.
    double value_at(std::size_t k, double t) const;

private:
    std::vector<double> eta_;
    std::vector<std::vector<double>> times_, values_;
};

struct VariationSample {
    double eta = 0.0, t1 = 0.0, t2 = 0.0;
    double delta = 0.0;  ///< |v₊(t2-η, t2) - v₊(t1-η, t1)|
};

/// Measured |Δv₊| for a single window; needs t2 > t1 > η + 1.
VariationSample variation_bound_check(const CharacteristicRecorder& rec, std::size_t k, double t1,
                                      double t2);

struct VariationSweep {
    std::vector<double> tau;       ///< t1 - η
    std::vector<double> sup_delta; ///< sup over η of |Δv₊| at fixed τ
    double slope = 0.0;            ///< log-log fit of sup_delta against τ
    double required_slope = 0.0;   ///< -min(1/2, β/2)
    double envelope_a = 0.0;       ///< smallest (A, B) with A τ^{-1/2} + B τ^{-β/2} ≥ sup_delta
    double envelope_b = 0.0;
};

/// Fills slope and envelope of a sweep whose tau and sup_delta are set.
void fit_variation(VariationSweep& sweep, double beta, double fit_min = 10.0, double fit_max = 100.0);

/// Sweep over τ ∈ taus with t2 fixed, sup over every recorded η for which
/// the window is valid; fit on [fit_min, fit_max].
VariationSweep variation_sweep(const CharacteristicRecorder& rec, const std::vector<double>& taus, double t2,
                               double beta, double fit_min = 10.0, double fit_max = 100.0);

}  // namespace nlwrad
