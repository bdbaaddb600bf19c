#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nlwrad/experiments/data_family.hpp"
#include "nlwrad/solver/source.hpp"

namespace nlwrad {

/// How u(·,-t) is obtained: a second run with u₁ → -u₁, reuse of the forward
/// run when u₁ ≡ 0 (then u(·,-t) = u(·,t)), or by picking one automatically.
enum class Backward { automatic, run, symmetric, none };

struct IdentityWindow {
    double R = 5.0, t1 = -10.0, t2 = 10.0;
};
struct CorollaryWindow {
    double R = 5.0, r = 0.0;
};

struct VariationSpec {
    bool enabled = false;
    double eta_min = -8.0, eta_max = 12.0, eta_step = 1.0;
    std::vector<double> taus;  ///< default: 21 integer points log-spaced on [10, 100]
    double t2 = 0.0;           ///< 0 means t_end
};

struct DefectSpec {
    std::vector<double> t1;  ///< empty disables the ladder
    double t2 = 0.0;
};

/// Pass/fail thresholds; the defaults are the acceptance values.
struct Thresholds {
    double energy_drift = 1e-4;
    double morawetz_residual = 0.01;    ///< residual / 2E
    double corollary_slack = -0.02;     ///< slack / E lower bound
    double flux_ratio = 0.05;           ///< incoming flux at t_end over t = 1
    double decay_drop = 0.2;            ///< t^κQ at t_end over its value at t = 10
    double decay_tail_start = 50.0;
    double variation_margin = 0.1;      ///< allowed slope excess over -min(1/2, β/2)
    double defect_ratio = 0.5;          ///< δ(max T₁) over δ(min T₁)
    double radiation_deficit = 0.1;     ///< (E - c_d‖g₊‖²)/E
    double pointwise_margin = 1.02;     ///< ratio₁ over the sharp constant
};

struct ExperimentConfig {
    std::string name = "custom";
    int d = 3;
    double p = 2.5;
    double dr = 1.0 / 128.0;
    double r_max = 0.0;  ///< 0: support + t_end + 2
    DataSpec data;
    double t_end = 10.0;
    double checkpoint_every = 1.0;
    SourceMode mode = SourceMode::nonlinear;
    Backward backward = Backward::automatic;
    std::vector<double> kappa;
    std::vector<IdentityWindow> identity_windows;
    std::vector<CorollaryWindow> corollary_windows;
    bool q_series = false;
    bool flux_check = false;
    bool radiation = false;
    double radiation_r_min = 10.0;
    VariationSpec variation;
    DefectSpec defect;
    Thresholds thresholds;
    std::string output_dir = "nlwrad-out";
};

/// Parses and validates a JSON config; unknown keys and invalid values raise
/// InvalidParameter.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& c);

/// Range checks that do not need a run: dimensions, grid, windows, horizons.
void validate(const ExperimentConfig& c);

}  // namespace nlwrad
