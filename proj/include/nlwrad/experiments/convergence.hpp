#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nlwrad/experiments/config.hpp"

namespace nlwrad {

struct ConvergenceLevel {
    double dr = 0.0;
    double energy_drift = 0.0;
    double morawetz_residual = 0.0;  ///< max relative identity residual; NaN without windows
    double self_difference = 0.0;    ///< max |Δv±| against the next level on shared nodes; NaN for the finest
    double wall_seconds = 0.0;
};

struct ObservedOrder {
    std::string quantity;
    std::vector<double> errors;
    std::vector<double> orders;  ///< log2 of successive error ratios
    bool exact = false;          ///< every error at roundoff
};

struct ConvergenceTable {
    std::vector<ConvergenceLevel> levels;
    std::vector<ObservedOrder> orders;

    const ObservedOrder& order(const std::string& quantity) const;
};

/// Runs the configuration at dr, dr/2, ..., dr/2^{levels-1} with the
/// checkpoint spacing halved alongside. Needs levels >= 3.
ConvergenceTable convergence_study(const ExperimentConfig& config, int levels);

nlohmann::json to_json(const ConvergenceTable& table);

}  // namespace nlwrad
