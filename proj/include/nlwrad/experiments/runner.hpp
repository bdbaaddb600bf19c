#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlwrad/experiments/config.hpp"
#include "nlwrad/experiments/csv.hpp"
#include "nlwrad/solver/field_state.hpp"

namespace nlwrad {

/// Series produced by one experiment. Every number in the summary is derived
/// from these tables (plus the config), so re-reading the CSV files
/// reproduces the summary exactly.
struct ExperimentResult {
    ExperimentConfig config;
    CsvTable energy;     ///< t, kinetic, gradient, potential, total, kappa, e_kappa, ratio1, ratio2
    CsvTable q_series;   ///< t, Q, potential, interior, flux, tkQ_<i> per κ
    CsvTable morawetz;   ///< corollary ledgers
    CsvTable identity;   ///< identity ledgers
    CsvTable radiation;  ///< eta, g_plus, tail
    CsvTable defect;     ///< T1, delta
    CsvTable flux;       ///< t, incoming, outgoing (incoming carries the sign of t)
    CsvTable variation;  ///< tau, sup_delta
    std::string backward_source = "none";  ///< run | symmetric | none
    std::vector<std::string> warnings;
    double wall_seconds = 0.0;
    std::optional<FieldState> final_state;  ///< forward state at t_end (not persisted)
};

/// Runs the evolutions and diagnostics in memory.
ExperimentResult execute(const ExperimentConfig& config);

/// Fits, ledger residuals and pass/fail flags ("checks", "passed").
nlohmann::json summarize(const ExperimentResult& result);

/// Writes the CSV files and summary.json into `dir` (created if needed).
void write_artifacts(const ExperimentResult& result, const nlohmann::json& summary, const std::string& dir);

/// Reads back an artifact directory written by write_artifacts.
ExperimentResult read_artifacts(const std::string& dir);

struct RunOutcome {
    nlohmann::json summary;
    bool passed = false;
    std::string directory;
};

/// execute + summarize + write_artifacts into config.output_dir (or `dir`).
RunOutcome run_experiment(const ExperimentConfig& config, const std::string& dir = "");

}  // namespace nlwrad
