#include "nlwrad/experiments/presets.hpp"

#include "nlwrad/core/error.hpp"
#include "nlwrad/core/params.hpp"

namespace nlwrad {

namespace {

ExperimentConfig base(const std::string& name, int d, double p, double t_end) {
    ExperimentConfig c;
    c.name = name;
    c.d = d;
    c.p = p;
    c.t_end = t_end;
    c.output_dir = "out/" + name;
    return c;
}

ExperimentConfig morawetz(const std::string& name, int d, double p) {
    ExperimentConfig c = base(name, d, p, 15.0);
    c.dr = 1.0 / 256;
    c.checkpoint_every = 1.0 / 16;
    for (double R : {5.0, 10.0}) c.identity_windows.push_back({R, -15.0, 15.0});
    c.corollary_windows = {{2, 0}, {2, 4}, {4, 0}, {4, 4}, {6, 2}, {8, 0}, {8, 4}, {10, 0}, {10, 5}, {12, 3}};
    return c;
}

ExperimentConfig long_run(const std::string& name, int d, double p) {
    ExperimentConfig c = base(name, d, p, 200.0);
    c.dr = 1.0 / 128;
    return c;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"energy-d3",     "linear-d3",      "morawetz-d3",    "morawetz-d4",  "morawetz-d5",
            "theorem11b-d3", "theorem11b-d4",  "theorem11c-d3",  "lemma51-d3",   "scatter-d3"};
}

ExperimentConfig preset(const std::string& name) {
    if (name == "energy-d3") {
        ExperimentConfig c = base(name, 3, 2.5, 100.0);
        c.dr = 1.0 / 256;
        c.backward = Backward::none;
        return c;
    }
    if (name == "linear-d3") {
        ExperimentConfig c = base(name, 3, 2.5, 40.0);
        c.mode = SourceMode::linear;
        c.data.kind = DataKind::outgoing_pulse;
        c.data.center = 10.0;
        c.backward = Backward::none;
        c.radiation = true;
        return c;
    }
    if (name == "morawetz-d3") return morawetz(name, 3, 2.5);
    if (name == "morawetz-d4") return morawetz(name, 4, 2.2);
    if (name == "morawetz-d5") return morawetz(name, 5, 1.6);
    if (name == "theorem11b-d3" || name == "theorem11b-d4") {
        ExperimentConfig c = name == "theorem11b-d3" ? long_run(name, 3, 2.8) : long_run(name, 4, 2.2);
        c.flux_check = true;
        c.q_series = true;
        return c;
    }
    if (name == "theorem11c-d3") {
        ExperimentConfig c = long_run(name, 3, 2.8);
        c.data.kind = DataKind::compact_bump;
        c.data.width = 2.0;
        c.q_series = true;
        c.kappa = {0.4, 0.8 * make_params(3, 2.8).kappa_scatter};
        return c;
    }
    if (name == "lemma51-d3") {
        ExperimentConfig c = long_run(name, 3, 2.8);
        c.variation.enabled = true;
        return c;
    }
    if (name == "scatter-d3") {
        ExperimentConfig c = long_run(name, 3, 2.8);
        c.defect = {{20.0, 40.0, 80.0}, 160.0};
        c.radiation = true;
        return c;
    }
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw InvalidParameter("unknown preset '" + name + "'; available: " + known);
}

}  // namespace nlwrad
