#include "nlwrad/experiments/convergence.hpp"

#include <cmath>
#include <limits>

#include "nlwrad/core/error.hpp"
#include "nlwrad/experiments/runner.hpp"

namespace nlwrad {

namespace {

constexpr double roundoff = 1e-12;

double max_identity_residual(const ExperimentResult& r) {
    if (r.identity.empty()) return std::numeric_limits<double>::quiet_NaN();
    const std::size_t res = r.identity.index("residual"), two_e = r.identity.index("two_energy");
    double worst = 0.0;
    for (const auto& row : r.identity.rows) worst = std::max(worst, row[two_e] > 0.0 ? row[res] / row[two_e] : row[res]);
    return worst;
}

double coarse_difference(const FieldState& coarse, const FieldState& fine) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < coarse.grid.size(); ++j) {
        const Eigen::Index f = 2 * j;
        if (f >= fine.grid.size()) break;
        worst = std::max({worst, std::abs(coarse.v_plus[j] - fine.v_plus[f]), std::abs(coarse.v_minus[j] - fine.v_minus[f])});
    }
    return worst;
}

ObservedOrder observe(const std::string& name, std::vector<double> errors) {
    ObservedOrder o;
    o.quantity = name;
    o.errors = std::move(errors);
    o.exact = true;
    for (double e : o.errors) o.exact = o.exact && std::isfinite(e) && e <= roundoff;
    if (o.exact) return o;
    for (std::size_t k = 0; k + 1 < o.errors.size(); ++k) {
        const double a = o.errors[k], b = o.errors[k + 1];
        o.orders.push_back(a > 0.0 && b > 0.0 ? std::log2(a / b) : std::numeric_limits<double>::quiet_NaN());
    }
    return o;
}

}  // namespace

const ObservedOrder& ConvergenceTable::order(const std::string& quantity) const {
    for (const auto& o : orders)
        if (o.quantity == quantity) return o;
    throw InvalidParameter("no convergence data for " + quantity);
}

ConvergenceTable convergence_study(const ExperimentConfig& config, int levels) {
    if (levels < 3) throw InvalidParameter("a convergence study needs at least three levels");
    validate(config);

    std::vector<ExperimentResult> results;
    for (int k = 0; k < levels; ++k) {
        ExperimentConfig c = config;
        c.dr = config.dr / std::ldexp(1.0, k);
        c.checkpoint_every = std::max(c.dr, config.checkpoint_every / std::ldexp(1.0, k));
        results.push_back(execute(c));
    }

    ConvergenceTable table;
    std::vector<double> drift, residual, diff;
    for (int k = 0; k < levels; ++k) {
        const auto& r = results[k];
        ConvergenceLevel lv;
        lv.dr = r.config.dr;
        const auto total = r.energy.column("total");
        const std::size_t t = r.energy.index("t");
        double e0 = 0.0;
        for (std::size_t i = 0; i < r.energy.rows.size(); ++i)
            if (r.energy.rows[i][t] == 0.0) e0 = total[i];
        for (double e : total) lv.energy_drift = std::max(lv.energy_drift, std::abs(e - e0));
        if (e0 > 0.0) lv.energy_drift /= e0;
        lv.morawetz_residual = max_identity_residual(r);
        lv.self_difference = k + 1 < levels ? coarse_difference(*r.final_state, *results[k + 1].final_state)
                                            : std::numeric_limits<double>::quiet_NaN();
        lv.wall_seconds = r.wall_seconds;
        table.levels.push_back(lv);
        drift.push_back(lv.energy_drift);
        residual.push_back(lv.morawetz_residual);
        if (k + 1 < levels) diff.push_back(lv.self_difference);
    }
    table.orders.push_back(observe("energy_drift", drift));
    if (!config.identity_windows.empty()) table.orders.push_back(observe("morawetz_residual", residual));
    table.orders.push_back(observe("self_difference", diff));
    return table;
}

nlohmann::json to_json(const ConvergenceTable& table) {
    using nlohmann::json;
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json out;
    out["levels"] = json::array();
    for (const auto& lv : table.levels)
        out["levels"].push_back({{"dr", lv.dr},
                                 {"energy_drift", num(lv.energy_drift)},
                                 {"morawetz_residual", num(lv.morawetz_residual)},
                                 {"self_difference", num(lv.self_difference)},
                                 {"wall_seconds", lv.wall_seconds}});
    out["orders"] = json::object();
    for (const auto& o : table.orders) {
        json orders = json::array();
        for (double v : o.orders) orders.push_back(num(v));
        out["orders"][o.quantity] = {{"exact", o.exact}, {"orders", orders}};
    }
    return out;
}

}  // namespace nlwrad
