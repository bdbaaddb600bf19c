#include "nlwrad/experiments/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "nlwrad/core/error.hpp"
#include "nlwrad/core/params.hpp"

namespace nlwrad {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
    if (!j.is_object()) throw InvalidParameter(where + " must be an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw InvalidParameter("unknown key '" + k + "' in " + where);
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidParameter("bad value for '" + std::string(key) + "' in " + where);
    }
}

std::string mode_name(SourceMode m) { return m == SourceMode::linear ? "linear" : "nonlinear"; }

SourceMode parse_mode(const std::string& s) {
    if (s == "nonlinear") return SourceMode::nonlinear;
    if (s == "linear") return SourceMode::linear;
    throw InvalidParameter("mode must be 'nonlinear' or 'linear'");
}

std::string backward_name(Backward b) {
    switch (b) {
        case Backward::automatic: return "auto";
        case Backward::run: return "run";
        case Backward::symmetric: return "symmetric";
        case Backward::none: return "none";
    }
    return "auto";
}

Backward parse_backward(const std::string& s) {
    for (Backward b : {Backward::automatic, Backward::run, Backward::symmetric, Backward::none})
        if (backward_name(b) == s) return b;
    throw InvalidParameter("backward must be one of auto, run, symmetric, none");
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    only_keys(j, "config",
              {"name", "d", "p", "grid", "data", "t_end", "checkpoint_every", "mode", "backward", "kappa",
               "identity_windows", "corollary_windows", "q_series", "flux_check", "radiation", "variation",
               "defect", "thresholds", "output_dir"});
    ExperimentConfig c;
    read(j, "name", c.name, "config");
    read(j, "d", c.d, "config");
    read(j, "p", c.p, "config");
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        only_keys(g, "grid", {"dr", "r_max"});
        read(g, "dr", c.dr, "grid");
        read(g, "r_max", c.r_max, "grid");
    }
    if (j.contains("data")) {
        const auto& d = j["data"];
        only_keys(d, "data", {"kind", "amplitude", "width", "center", "tail_exponent", "file", "velocity_file"});
        std::string kind = to_string(c.data.kind);
        read(d, "kind", kind, "data");
        c.data.kind = parse_data_kind(kind);
        read(d, "amplitude", c.data.amplitude, "data");
        read(d, "width", c.data.width, "data");
        read(d, "center", c.data.center, "data");
        read(d, "tail_exponent", c.data.tail_exponent, "data");
        read(d, "file", c.data.file, "data");
        read(d, "velocity_file", c.data.velocity_file, "data");
    }
    read(j, "t_end", c.t_end, "config");
    read(j, "checkpoint_every", c.checkpoint_every, "config");
    std::string mode = mode_name(c.mode), backward = backward_name(c.backward);
    read(j, "mode", mode, "config");
    read(j, "backward", backward, "config");
    c.mode = parse_mode(mode);
    c.backward = parse_backward(backward);
    read(j, "kappa", c.kappa, "config");
    if (j.contains("identity_windows")) {
        if (!j["identity_windows"].is_array()) throw InvalidParameter("identity_windows must be an array");
        for (const auto& w : j["identity_windows"]) {
            only_keys(w, "identity window", {"R", "t1", "t2"});
            IdentityWindow iw;
            read(w, "R", iw.R, "identity window");
            read(w, "t1", iw.t1, "identity window");
            read(w, "t2", iw.t2, "identity window");
            c.identity_windows.push_back(iw);
        }
    }
    if (j.contains("corollary_windows")) {
        if (!j["corollary_windows"].is_array()) throw InvalidParameter("corollary_windows must be an array");
        for (const auto& w : j["corollary_windows"]) {
            only_keys(w, "corollary window", {"R", "r"});
            CorollaryWindow cw;
            read(w, "R", cw.R, "corollary window");
            read(w, "r", cw.r, "corollary window");
            c.corollary_windows.push_back(cw);
        }
    }
    read(j, "q_series", c.q_series, "config");
    read(j, "flux_check", c.flux_check, "config");
    if (j.contains("radiation")) {
        const auto& r = j["radiation"];
        only_keys(r, "radiation", {"enabled", "r_min"});
        read(r, "enabled", c.radiation, "radiation");
        read(r, "r_min", c.radiation_r_min, "radiation");
    }
    if (j.contains("variation")) {
        const auto& v = j["variation"];
        only_keys(v, "variation", {"enabled", "eta_min", "eta_max", "eta_step", "taus", "t2"});
        read(v, "enabled", c.variation.enabled, "variation");
        read(v, "eta_min", c.variation.eta_min, "variation");
        read(v, "eta_max", c.variation.eta_max, "variation");
        read(v, "eta_step", c.variation.eta_step, "variation");
        read(v, "taus", c.variation.taus, "variation");
        read(v, "t2", c.variation.t2, "variation");
    }
    if (j.contains("defect")) {
        const auto& d = j["defect"];
        only_keys(d, "defect", {"t1", "t2"});
        read(d, "t1", c.defect.t1, "defect");
        read(d, "t2", c.defect.t2, "defect");
    }
    if (j.contains("thresholds")) {
        const auto& t = j["thresholds"];
        only_keys(t, "thresholds",
                  {"energy_drift", "morawetz_residual", "corollary_slack", "flux_ratio", "decay_drop",
                   "decay_tail_start", "variation_margin", "defect_ratio", "radiation_deficit",
                   "pointwise_margin"});
        auto& th = c.thresholds;
        read(t, "energy_drift", th.energy_drift, "thresholds");
        read(t, "morawetz_residual", th.morawetz_residual, "thresholds");
        read(t, "corollary_slack", th.corollary_slack, "thresholds");
        read(t, "flux_ratio", th.flux_ratio, "thresholds");
        read(t, "decay_drop", th.decay_drop, "thresholds");
        read(t, "decay_tail_start", th.decay_tail_start, "thresholds");
        read(t, "variation_margin", th.variation_margin, "thresholds");
        read(t, "defect_ratio", th.defect_ratio, "thresholds");
        read(t, "radiation_deficit", th.radiation_deficit, "thresholds");
        read(t, "pointwise_margin", th.pointwise_margin, "thresholds");
    }
    read(j, "output_dir", c.output_dir, "config");
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InvalidParameter("malformed JSON in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["name"] = c.name;
    j["d"] = c.d;
    j["p"] = c.p;
    j["grid"] = {{"dr", c.dr}, {"r_max", c.r_max}};
    j["data"] = {{"kind", to_string(c.data.kind)},
                 {"amplitude", c.data.amplitude},
                 {"width", c.data.width},
                 {"center", c.data.center},
                 {"tail_exponent", c.data.tail_exponent},
                 {"file", c.data.file},
                 {"velocity_file", c.data.velocity_file}};
    j["t_end"] = c.t_end;
    j["checkpoint_every"] = c.checkpoint_every;
    j["mode"] = mode_name(c.mode);
    j["backward"] = backward_name(c.backward);
    j["kappa"] = c.kappa;
    j["identity_windows"] = json::array();
    for (const auto& w : c.identity_windows) j["identity_windows"].push_back({{"R", w.R}, {"t1", w.t1}, {"t2", w.t2}});
    j["corollary_windows"] = json::array();
    for (const auto& w : c.corollary_windows) j["corollary_windows"].push_back({{"R", w.R}, {"r", w.r}});
    j["q_series"] = c.q_series;
    j["flux_check"] = c.flux_check;
    j["radiation"] = {{"enabled", c.radiation}, {"r_min", c.radiation_r_min}};
    j["variation"] = {{"enabled", c.variation.enabled}, {"eta_min", c.variation.eta_min},
                      {"eta_max", c.variation.eta_max}, {"eta_step", c.variation.eta_step},
                      {"taus", c.variation.taus},       {"t2", c.variation.t2}};
    j["defect"] = {{"t1", c.defect.t1}, {"t2", c.defect.t2}};
    const auto& th = c.thresholds;
    j["thresholds"] = {{"energy_drift", th.energy_drift},
                       {"morawetz_residual", th.morawetz_residual},
                       {"corollary_slack", th.corollary_slack},
                       {"flux_ratio", th.flux_ratio},
                       {"decay_drop", th.decay_drop},
                       {"decay_tail_start", th.decay_tail_start},
                       {"variation_margin", th.variation_margin},
                       {"defect_ratio", th.defect_ratio},
                       {"radiation_deficit", th.radiation_deficit},
                       {"pointwise_margin", th.pointwise_margin}};
    j["output_dir"] = c.output_dir;
    return j;
}

void validate(const ExperimentConfig& c) {
    const ModelParams params = make_params(c.d, c.p);
    if (!(c.dr > 0.0) || !std::isfinite(c.dr)) throw InvalidParameter("grid.dr must be positive");
    if (c.r_max < 0.0) throw InvalidParameter("grid.r_max must be nonnegative");
    if (!(c.t_end > 0.0)) throw InvalidParameter("t_end must be positive");
    if (!(c.checkpoint_every > 0.0)) throw InvalidParameter("checkpoint_every must be positive");
    if (c.checkpoint_every < c.dr) throw InvalidParameter("checkpoint_every must be at least dr");
    for (double k : c.kappa)
        if (!(k > 0.0)) throw InvalidParameter("every kappa must be positive");
    for (const auto& w : c.identity_windows) {
        if (!(w.R > 0.0) || !(w.t1 < w.t2)) throw InvalidParameter("identity window needs R > 0 and t1 < t2");
        if (w.t2 > c.t_end || -w.t1 > c.t_end) throw InvalidParameter("identity window exceeds t_end");
    }
    for (const auto& w : c.corollary_windows) {
        if (!(w.R > 0.0) || !(w.r >= 0.0)) throw InvalidParameter("corollary window needs R > 0 and r >= 0");
        if (w.R + w.r > c.t_end) throw InvalidParameter("corollary window exceeds t_end");
    }
    if (c.variation.enabled) {
        if (!(c.variation.eta_step > 0.0) || c.variation.eta_max < c.variation.eta_min)
            throw InvalidParameter("variation η grid is empty");
        if (c.variation.t2 > c.t_end) throw InvalidParameter("variation t2 exceeds t_end");
    }
    if (!c.defect.t1.empty()) {
        double latest = 0.0;
        for (double t : c.defect.t1) {
            if (!(t > 0.0)) throw InvalidParameter("defect release times must be positive");
            latest = std::max(latest, t);
        }
        if (c.defect.t2 < latest + 10.0) throw InvalidParameter("defect t2 must exceed every T1 by 10");
        if (c.defect.t2 > c.t_end) throw InvalidParameter("defect t2 exceeds t_end");
    }
    if (c.radiation && c.t_end < 2.0 * c.radiation_r_min)
        throw InvalidParameter("radiation extraction needs t_end >= 2 r_min");
    (void)params;
}

}  // namespace nlwrad
