#include "nlwrad/experiments/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "nlwrad/core/error.hpp"
#include "nlwrad/functionals/decay.hpp"
#include "nlwrad/functionals/diagnostics.hpp"
#include "nlwrad/functionals/morawetz.hpp"
#include "nlwrad/functionals/q_functional.hpp"
#include "nlwrad/scattering/defect.hpp"
#include "nlwrad/scattering/radiation.hpp"
#include "nlwrad/solver/evolve.hpp"

namespace nlwrad {

using nlohmann::json;

namespace {

constexpr const char* energy_csv = "energy.csv";
constexpr const char* q_csv = "q_series.csv";
constexpr const char* morawetz_csv = "morawetz.csv";
constexpr const char* identity_csv = "identity.csv";
constexpr const char* radiation_csv = "radiation.csv";
constexpr const char* defect_csv = "defect.csv";
constexpr const char* flux_csv = "flux.csv";
constexpr const char* variation_csv = "variation.csv";

std::vector<std::string> q_columns(std::size_t kappas) {
    std::vector<std::string> c{"t", "Q", "potential", "interior", "flux"};
    for (std::size_t i = 0; i < kappas; ++i) c.push_back("tkQ_" + std::to_string(i));
    return c;
}

void init_columns(ExperimentResult& r) {
    r.energy.columns = {"t", "kinetic", "gradient", "potential", "total", "kappa", "e_kappa", "ratio1", "ratio2"};
    r.q_series.columns = q_columns(r.config.kappa.size());
    r.morawetz.columns = {"R", "r", "M1", "M2", "M3", "M4", "M5", "M6", "rhs", "slack", "inner_core", "balance_residual"};
    r.identity.columns = {"R", "t1", "t2", "interior_bulk", "sphere_trace", "exterior_bulk", "boundary_interior_1",
                          "boundary_interior_2", "boundary_exterior_1", "boundary_exterior_2", "sum", "two_energy",
                          "residual"};
    r.radiation.columns = {"eta", "g_plus", "tail"};
    r.defect.columns = {"T1", "delta"};
    r.flux.columns = {"t", "incoming", "outgoing"};
    r.variation.columns = {"tau", "sup_delta"};
}

std::vector<double> default_taus() {
    std::vector<double> taus;
    for (int k = 0; k <= 20; ++k) {
        const double tau = std::round(10.0 * std::pow(10.0, k / 20.0));
        if (taus.empty() || tau > taus.back()) taus.push_back(tau);
    }
    return taus;
}

struct PointRow {
    double ratio1 = 0.0, ratio2 = 0.0, incoming = 0.0, outgoing = 0.0;
};

// Everything one time direction records.
struct DirectionRun {
    Trajectory traj;
    MorawetzRecorder morawetz;
    QRecorder q;
    std::vector<PointRow> points;
    std::optional<CharacteristicRecorder> characteristics;

    explicit DirectionRun(std::vector<double> radii, SourceMode mode) : morawetz(std::move(radii), mode) {}
};

void run_direction(DirectionRun& run, const FieldState& init, const EvolveOptions& opts, bool q_series,
                   std::vector<std::string>& warnings, const std::string& label) {
    std::vector<CheckpointObserver> obs;
    if (!run.morawetz.radii().empty()) obs.push_back(run.morawetz.observer());
    if (q_series) obs.push_back(run.q.observer());
    if (run.characteristics) obs.push_back(run.characteristics->observer());
    obs.push_back([&run](const FieldState& s) {
        const auto f = reconstruct_u(s);
        PointRow row;
        try {
            const auto pr = pointwise_bound_check(f, s.params, s.grid);
            row.ratio1 = pr.ratio1;
            row.ratio2 = pr.ratio2;
        } catch (const InvalidParameter&) {
            // zero state: both ratios are recorded as 0
        }
        row.incoming = flux_energy(f, s.params, s.grid, FluxSign::plus);
        row.outgoing = flux_energy(f, s.params, s.grid, FluxSign::minus);
        run.points.push_back(row);
    });
    std::vector<std::string> w;
    run.traj = evolve(init, opts, obs, &w);
    for (auto& m : w) warnings.push_back(label + ": " + m);
}

double energy_at_zero(const CsvTable& energy) {
    const std::size_t t = energy.index("t"), tot = energy.index("total");
    for (const auto& row : energy.rows)
        if (row[t] == 0.0) return row[tot];
    throw InvalidParameter("energy table has no t = 0 row");
}

}  // namespace

ExperimentResult execute(const ExperimentConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    validate(cfg);
    const ModelParams params = make_params(cfg.d, cfg.p);
    const InitialData data = make_initial_data(cfg.data, params);

    ExperimentResult res;
    res.config = cfg;
    init_columns(res);

    double r_max = cfg.r_max;
    if (r_max == 0.0) {
        if (!std::isfinite(data.support))
            throw InvalidParameter("data without compact support need an explicit grid.r_max");
        r_max = data.support + cfg.t_end + 2.0;
    } else if (r_max < data.support + cfg.t_end + 1.0) {
        res.warnings.push_back("r_max < support + t_end + 1: the outer zero-inflow condition may be violated");
    }
    const RadialGrid grid = RadialGrid::covering(cfg.dr, r_max);

    Backward backward = cfg.backward;
    if (backward == Backward::automatic) backward = data.time_symmetric ? Backward::symmetric : Backward::run;
    if (backward == Backward::symmetric && !data.time_symmetric)
        throw InvalidParameter("backward = symmetric needs data with u1 = 0");
    bool needs_negative = cfg.q_series || !cfg.corollary_windows.empty() || cfg.flux_check;
    for (const auto& w : cfg.identity_windows) needs_negative = needs_negative || w.t1 < 0.0;
    if (backward == Backward::none && needs_negative)
        throw InvalidParameter("Q, corollary and negative-time windows need backward data");
    res.backward_source = backward == Backward::run ? "run" : backward == Backward::symmetric ? "symmetric" : "none";

    for (double k : cfg.kappa)
        if (!weighted_energy_finite(cfg.data, params, k))
            res.warnings.push_back("E_kappa is infinite for kappa = " + format_double(k));

    std::vector<double> radii;
    for (const auto& w : cfg.identity_windows) radii.push_back(snapped_radius(grid, w.R));
    for (const auto& w : cfg.corollary_windows) radii.push_back(snapped_radius(grid, w.R));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    EvolveOptions opts;
    opts.t_end = cfg.t_end;
    opts.checkpoint_every = cfg.checkpoint_every;
    opts.mode = cfg.mode;
    opts.energy_kappa = cfg.kappa.empty() ? 0.0 : cfg.kappa.front();
    if (cfg.radiation) {
        opts.retain_times.push_back(cfg.t_end);
        opts.retain_times.push_back(0.5 * cfg.t_end);
    }
    for (double t : cfg.defect.t1) opts.retain_times.push_back(t);
    if (!cfg.defect.t1.empty()) opts.retain_times.push_back(cfg.defect.t2);

    const FieldState init = init_from_profile(data.u0, data.u1, grid, params);
    const RadialFields init_fields = reconstruct_u(init);

    DirectionRun fwd(radii, cfg.mode);
    if (cfg.variation.enabled) {
        std::vector<double> eta;
        for (double e = cfg.variation.eta_min; e <= cfg.variation.eta_max + 1e-9; e += cfg.variation.eta_step)
            eta.push_back(std::round(e / grid.dr()) * grid.dr());
        fwd.characteristics.emplace(eta);
    }
    run_direction(fwd, init, opts, cfg.q_series, res.warnings, "forward");

    std::optional<DirectionRun> bwd_run;
    if (backward == Backward::run) {
        RadialProfile u1_rev{[u1 = data.u1.value](double r) { return -u1(r); }, {}};
        const FieldState binit = init_from_profile(data.u0, u1_rev, grid, params);
        EvolveOptions bopts = opts;
        bopts.retain_times.clear();
        bopts.retain_final = false;
        bwd_run.emplace(radii, cfg.mode);
        run_direction(*bwd_run, binit, bopts, cfg.q_series, res.warnings, "backward");
    }
    const DirectionRun* bwd = backward == Backward::run ? &*bwd_run : backward == Backward::symmetric ? &fwd : nullptr;

    // Energy and per-checkpoint tables; backward rows carry negative times.
    auto add_rows = [&](const DirectionRun& run, bool negative) {
        const auto& tr = run.traj;
        for (std::size_t i = 0; i < tr.times.size(); ++i) {
            const std::size_t k = negative ? tr.times.size() - 1 - i : i;
            const double t = negative ? -tr.times[k] : tr.times[k];
            if (negative && tr.times[k] == 0.0) continue;
            const auto& e = tr.energy[k];
            const auto& pr = run.points[k];
            res.energy.add({t, e.kinetic, e.gradient, e.potential, e.total, e.kappa, e.e_kappa, pr.ratio1, pr.ratio2});
            res.flux.add({t, pr.incoming, pr.outgoing});
        }
    };
    if (backward == Backward::run) add_rows(*bwd, true);
    add_rows(fwd, false);

    const double E0 = energy_at_zero(res.energy);

    if (cfg.q_series) {
        const auto qs = combine_q(fwd.q.halves(), bwd->q.halves(), q_constants(cfg.d));
        for (std::size_t k = 0; k < qs.t.size(); ++k) {
            std::vector<double> row{qs.t[k], qs.q[k], qs.potential[k], qs.interior[k], qs.flux[k]};
            for (double kap : cfg.kappa) row.push_back(std::pow(qs.t[k], kap) * qs.q[k]);
            res.q_series.add(std::move(row));
        }
    }

    auto series_for = [&](double R) {
        const double Rs = snapped_radius(grid, R);
        const std::size_t k = std::size_t(std::lower_bound(radii.begin(), radii.end(), Rs) - radii.begin());
        static const std::vector<MorawetzSample> none;
        return stitch_morawetz(Rs, fwd.morawetz.samples(k), bwd ? bwd->morawetz.samples(k) : none, cfg.mode);
    };
    for (const auto& w : cfg.identity_windows) {
        const auto L = morawetz_identity(series_for(w.R), params, E0, w.t1, w.t2);
        res.identity.add({L.R, L.t1, L.t2, L.interior_bulk, L.sphere_trace, L.exterior_bulk, L.boundary_interior[0],
                          L.boundary_interior[1], L.boundary_exterior[0], L.boundary_exterior[1], L.sum,
                          L.two_energy, L.residual});
    }
    for (const auto& w : cfg.corollary_windows) {
        const auto C = corollary_inequality(series_for(w.R), params, init_fields, grid, E0, w.R, w.r);
        res.morawetz.add({C.R, C.r, C.M[0], C.M[1], C.M[2], C.M[3], C.M[4], C.M[5], C.rhs, C.slack, C.inner_core,
                          C.balance_residual});
    }

    if (cfg.radiation) {
        const auto& fin = fwd.traj.state_at(cfg.t_end);
        const auto prof = extract_radiation(fin, fwd.traj.state_at(0.5 * cfg.t_end),
                                            node_eta_grid(fin, cfg.radiation_r_min));
        for (std::size_t k = 0; k < prof.eta.size(); ++k)
            res.radiation.add({prof.eta[k], prof.g_plus[k], prof.tail[k]});
    }
    if (!cfg.defect.t1.empty()) {
        const auto def = scatter_defect(fwd.traj, cfg.defect.t1, cfg.defect.t2);
        for (std::size_t k = 0; k < def.t1.size(); ++k) res.defect.add({def.t1[k], def.delta[k]});
    }
    if (cfg.variation.enabled) {
        const double t2 = cfg.variation.t2 > 0.0 ? cfg.variation.t2 : cfg.t_end;
        const auto taus = cfg.variation.taus.empty() ? default_taus() : cfg.variation.taus;
        const auto& rec = *fwd.characteristics;
        for (double tau : taus) {
            double sup = 0.0;
            bool any = false;
            for (std::size_t k = 0; k < rec.eta().size(); ++k) {
                const double t1 = rec.eta()[k] + tau;
                if (!(t2 > t1) || !(tau > 1.0)) continue;
                sup = std::max(sup, variation_bound_check(rec, k, t1, t2).delta);
                any = true;
            }
            if (!any) throw RangeError("no characteristic admits tau = " + format_double(tau));
            res.variation.add({tau, sup});
        }
    }

    res.final_state = fwd.traj.final_state();
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

json summarize(const ExperimentResult& r) {
    const auto& cfg = r.config;
    const auto& th = cfg.thresholds;
    const ModelParams params = make_params(cfg.d, cfg.p);

    json s;
    s["name"] = cfg.name;
    s["config"] = config_to_json(cfg);
    s["params"] = {{"lambda", params.lambda},
                   {"beta", params.beta},
                   {"kappa_max", params.kappa_max},
                   {"kappa_scatter", params.kappa_scatter},
                   {"p_scatter_min", params.p_scatter_min},
                   {"sub_conformal", params.sub_conformal},
                   {"in_theorem11_range", params.in_theorem11_range},
                   {"in_scattering_range", params.in_scattering_range}};
    s["backward_source"] = r.backward_source;
    json checks = json::object();

    // Energy conservation and the pointwise bound over every checkpoint.
    const double E0 = energy_at_zero(r.energy);
    double drift = 0.0;
    for (double e : r.energy.column("total")) drift = std::max(drift, std::abs(e - E0));
    drift = E0 > 0.0 ? drift / E0 : 0.0;
    s["energy"] = {{"E0", E0}, {"relative_drift", drift}};
    checks["energy_drift"] = drift <= th.energy_drift;

    const auto r1 = r.energy.column("ratio1"), r2 = r.energy.column("ratio2");
    const double worst1 = r1.empty() ? 0.0 : *std::max_element(r1.begin(), r1.end());
    const double worst2 = r2.empty() ? 0.0 : *std::max_element(r2.begin(), r2.end());
    const double sharp = pointwise_sharp_constant(cfg.d);
    s["pointwise"] = {{"max_ratio1", worst1}, {"max_ratio2", worst2}, {"sharp_constant", sharp}};
    checks["pointwise"] = worst1 <= sharp * th.pointwise_margin;

    if (!r.identity.empty()) {
        json items = json::array();
        bool ok = true;
        for (const auto& row : r.identity.rows) {
            const double two_e = row[r.identity.index("two_energy")];
            const double res = row[r.identity.index("residual")];
            const double rel = two_e > 0.0 ? res / two_e : res;
            ok = ok && rel <= th.morawetz_residual;
            items.push_back({{"R", row[0]}, {"t1", row[1]}, {"t2", row[2]}, {"relative_residual", rel}});
        }
        s["identity"] = items;
        checks["morawetz_identity"] = ok;
    }
    if (!r.morawetz.empty()) {
        json items = json::array();
        bool ok = true;
        for (const auto& row : r.morawetz.rows) {
            const double slack = row[r.morawetz.index("slack")];
            const double rel = E0 > 0.0 ? slack / E0 : slack;
            const double balance = row[r.morawetz.index("balance_residual")];
            ok = ok && rel >= th.corollary_slack;
            items.push_back({{"R", row[0]}, {"r", row[1]}, {"slack_over_E", rel},
                             {"balance_over_E", E0 > 0.0 ? balance / E0 : balance}});
        }
        s["corollary"] = items;
        checks["corollary"] = ok;
    }

    if (cfg.flux_check) {
        const auto t = r.flux.column("t"), in = r.flux.column("incoming");
        double early = 0.0, late = 0.0;
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (std::abs(std::abs(t[k]) - 1.0) < 1e-9) early += in[k];
            if (std::abs(std::abs(t[k]) - cfg.t_end) < 1e-9 * cfg.t_end) late += in[k];
        }
        const double ratio = early > 0.0 ? late / early : 0.0;
        s["flux"] = {{"incoming_t1", early}, {"incoming_t_end", late}, {"ratio", ratio}};
        checks["flux_decay"] = ratio <= th.flux_ratio;
    }

    if (cfg.q_series && !cfg.kappa.empty()) {
        const auto t = r.q_series.column("t"), q = r.q_series.column("Q");
        const bool trivial = std::none_of(q.begin(), q.end(), [](double v) { return v > 0.0; });
        json items = json::array();
        for (std::size_t i = 0; i < cfg.kappa.size(); ++i) {
            const double kap = cfg.kappa[i];
            json item{{"kappa", kap}, {"e_kappa_finite", weighted_energy_finite(cfg.data, params, kap)}};
            bool ok = true;
            if (!trivial) {
                DecayOptions opt;
                opt.tail_start = th.decay_tail_start;
                opt.drop_ratio = th.decay_drop;
                try {
                    const auto rep = decay_report(t, q, kap, opt);
                    item["slope"] = rep.fit.slope;
                    item["tail_decreasing"] = rep.tail_decreasing;
                    item["reference_value"] = rep.reference_value;
                    item["final_value"] = rep.final_value;
                    item["final_ratio"] = rep.final_ratio;
                    ok = rep.tail_decreasing && rep.dropped;
                } catch (const Error& e) {
                    item["error"] = e.what();
                    ok = false;
                }
            }
            items.push_back(item);
            checks["decay_kappa_" + std::to_string(i)] = ok;
        }
        s["decay"] = items;
        double qmax = 0.0;
        for (double v : q) qmax = std::max(qmax, v);
        s["q_max_over_E"] = E0 > 0.0 ? qmax / E0 : 0.0;
    }

    if (cfg.variation.enabled) {
        VariationSweep sw;
        sw.tau = r.variation.column("tau");
        sw.sup_delta = r.variation.column("sup_delta");
        const bool trivial = std::none_of(sw.sup_delta.begin(), sw.sup_delta.end(), [](double v) { return v > 0.0; });
        json item{{"required_slope", -std::min(0.5, 0.5 * params.beta)}};
        bool ok = true;
        if (!trivial) {
            try {
                fit_variation(sw, params.beta);
                item["slope"] = sw.slope;
                item["envelope_a"] = sw.envelope_a;
                item["envelope_b"] = sw.envelope_b;
                ok = sw.slope <= sw.required_slope + th.variation_margin;
            } catch (const Error& e) {
                item["error"] = e.what();
                ok = false;
            }
        }
        s["variation"] = item;
        checks["variation"] = ok;
    }

    if (!r.defect.empty()) {
        const auto t1 = r.defect.column("T1"), delta = r.defect.column("delta");
        const std::size_t lo = std::size_t(std::min_element(t1.begin(), t1.end()) - t1.begin());
        const std::size_t hi = std::size_t(std::max_element(t1.begin(), t1.end()) - t1.begin());
        const double ratio = delta[lo] > 0.0 ? delta[hi] / delta[lo] : (delta[hi] > 0.0 ? INFINITY : 0.0);
        s["defect"] = {{"t2", cfg.defect.t2}, {"t1", t1}, {"delta", delta}, {"ratio", ratio}};
        checks["defect"] = ratio <= th.defect_ratio;
    }

    if (cfg.radiation) {
        const auto eta = r.radiation.column("eta"), g = r.radiation.column("g_plus");
        double acc = 0.0;
        for (std::size_t k = 1; k < eta.size(); ++k) acc += 0.5 * (eta[k] - eta[k - 1]) * (g[k] * g[k] + g[k - 1] * g[k - 1]);
        const double radiated = sphere_area(cfg.d) * acc;
        const double deficit = E0 > 0.0 ? (E0 - radiated) / E0 : 0.0;
        s["radiation"] = {{"radiated_energy", radiated}, {"deficit", deficit}};
        checks["radiation"] = deficit <= th.radiation_deficit && deficit >= -th.radiation_deficit;
    }

    bool passed = true;
    for (const auto& [k, v] : checks.items()) passed = passed && v.get<bool>();
    s["checks"] = checks;
    s["passed"] = passed;
    s["warnings"] = r.warnings;
    s["runtime_seconds"] = r.wall_seconds;
    return s;
}

void write_artifacts(const ExperimentResult& r, const json& summary, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InvalidParameter("cannot create output directory " + dir + ": " + ec.message());
    const fs::path base(dir);
    write_csv((base / energy_csv).string(), r.energy);
    write_csv((base / q_csv).string(), r.q_series);
    write_csv((base / morawetz_csv).string(), r.morawetz);
    write_csv((base / identity_csv).string(), r.identity);
    write_csv((base / radiation_csv).string(), r.radiation);
    write_csv((base / defect_csv).string(), r.defect);
    write_csv((base / flux_csv).string(), r.flux);
    write_csv((base / variation_csv).string(), r.variation);
    std::ofstream out(base / "summary.json", std::ios::binary);
    if (!out) throw InvalidParameter("cannot write summary.json in " + dir);
    out << summary.dump(2) << '\n';
}

ExperimentResult read_artifacts(const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path base(dir);
    std::ifstream in(base / "summary.json");
    if (!in) throw InvalidParameter("no summary.json in " + dir);
    json summary;
    try {
        in >> summary;
    } catch (const json::parse_error& e) {
        throw InvalidParameter(std::string("malformed summary.json: ") + e.what());
    }
    ExperimentResult r;
    r.config = config_from_json(summary.at("config"));
    r.backward_source = summary.value("backward_source", "none");
    r.warnings = summary.value("warnings", std::vector<std::string>{});
    r.wall_seconds = summary.value("runtime_seconds", 0.0);
    r.energy = read_csv((base / energy_csv).string());
    r.q_series = read_csv((base / q_csv).string());
    r.morawetz = read_csv((base / morawetz_csv).string());
    r.identity = read_csv((base / identity_csv).string());
    r.radiation = read_csv((base / radiation_csv).string());
    r.defect = read_csv((base / defect_csv).string());
    r.flux = read_csv((base / flux_csv).string());
    r.variation = read_csv((base / variation_csv).string());
    return r;
}

RunOutcome run_experiment(const ExperimentConfig& config, const std::string& dir) {
    const ExperimentResult r = execute(config);
    RunOutcome out;
    out.summary = summarize(r);
    out.passed = out.summary["passed"].get<bool>();
    out.directory = dir.empty() ? config.output_dir : dir;
    write_artifacts(r, out.summary, out.directory);
    return out;
}

}  // namespace nlwrad
