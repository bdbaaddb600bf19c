// One line per acceptance criterion; exit status 1 when any of them fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "nlwrad/experiments/presets.hpp"
#include "nlwrad/experiments/runner.hpp"
#include "nlwrad/functionals/diagnostics.hpp"
#include "nlwrad/solver/stepper.hpp"

using namespace nlwrad;
using nlohmann::json;

namespace {

int failures = 0, criteria = 0;

void verdict(const std::string& name, bool pass, const std::string& detail) {
    ++criteria;
    if (!pass) ++failures;
    std::printf("%s  %-28s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string join(const std::vector<double>& v, const char* f) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ",") + fmt(f, x);
    return s;
}

// Worst pointwise ratio over every checkpoint of every run, per dimension.
double worst_pointwise_excess = 0.0;

json run(const ExperimentConfig& c) {
    const auto r = execute(c);
    const json s = summarize(r);
    const double sharp = pointwise_sharp_constant(c.d);
    worst_pointwise_excess = std::max(worst_pointwise_excess, s["pointwise"]["max_ratio1"].get<double>() / sharp);
    std::printf("  ran %-16s d=%d p=%.2f dr=1/%d in %.1f s\n", c.name.c_str(), c.d, c.p, int(std::lround(1 / c.dr)),
                r.wall_seconds);
    std::fflush(stdout);
    return s;
}

ExperimentConfig refined(ExperimentConfig c, double dr, double checkpoint) {
    c.dr = dr;
    c.checkpoint_every = checkpoint;
    return c;
}

void energy_conservation() {
    std::vector<double> drift, wall, orders;
    for (int k = 0; k < 3; ++k) {
        const auto c = refined(preset("energy-d3"), 1.0 / (64 << k), 1.0);
        const auto s = run(c);
        drift.push_back(s["energy"]["relative_drift"].get<double>());
        wall.push_back(s["runtime_seconds"].get<double>());
    }
    for (int k = 0; k + 1 < 3; ++k) orders.push_back(std::log2(drift[k] / drift[k + 1]));
    const double slowest = *std::max_element(wall.begin(), wall.end());
    const bool pass = drift.back() <= 1e-4 && *std::min_element(orders.begin(), orders.end()) >= 1.8 && slowest <= 60;
    verdict("energy-conservation", pass,
            "drift(1/256)=" + fmt("%.3e", drift.back()) + " (<=1e-4) orders=" + join(orders, "%.3f") +
                " (>=1.8) slowest level " + fmt("%.1f", slowest) + " s (<=60)");
}

void linear_exactness() {
    const auto P = make_params(3, 2.5);
    const auto G = RadialGrid::covering(1.0 / 128, 40.0);
    auto F = [](double x) { return std::abs(x - 12) < 6 ? std::exp(-(x - 12) * (x - 12)) : 0.0; };
    auto dF = [&](double x) { return -2 * (x - 12) * F(x); };
    const RadialProfile u0{[&](double r) { return r > 0 ? F(r) / r : 0.0; },
                           [&](double r) { return r > 0 ? dF(r) / r - F(r) / (r * r) : 0.0; }};
    double err = 0.0;
    for (double sign : {1.0, -1.0}) {
        // sign +1: outgoing, v+ = -2F'(r - t); sign -1: incoming, v- = 2F'(r + t)
        const RadialProfile u1{[&, sign](double r) { return r > 0 ? -sign * dF(r) / r : 0.0; }, {}};
        Evolver ev(init_from_profile(u0, u1, G, P), SourceMode::linear);
        const long steps = sign > 0 ? 128 * 20 : 128 * 5;
        for (long n = 0; n <= steps; ++n) {
            if (n % 128 == 0) {
                const auto& s = ev.state();
                for (Eigen::Index j = 0; j < G.size(); ++j) {
                    const double r = G.r(j);
                    const double vp = sign > 0 ? -2 * dF(r - s.t) : 0.0;
                    const double vm = sign > 0 ? 0.0 : 2 * dF(r + s.t);
                    err = std::max({err, std::abs(s.v_plus[j] - vp), std::abs(s.v_minus[j] - vm)});
                }
                worst_pointwise_excess =
                    std::max(worst_pointwise_excess, pointwise_bound_check(s).ratio1 / pointwise_sharp_constant(3));
            }
            if (n < steps) ev.step();
        }
    }
    verdict("linear-exactness-d3", err <= 1e-12, "max |v - exact| = " + fmt("%.3e", err) + " (<=1e-12)");
}

void morawetz_family() {
    struct Case {
        const char* preset;
        int d;
        double p;
    };
    std::string identity_detail, corollary_detail;
    bool identity_ok = true, corollary_ok = true;
    for (const Case& cs : {Case{"morawetz-d3", 3, 2.5}, Case{"morawetz-d4", 4, 2.2}, Case{"morawetz-d5", 5, 1.6}}) {
        std::vector<std::vector<double>> residual(2);
        json finest;
        for (int k = 0; k < 3; ++k) {
            const auto s = run(refined(preset(cs.preset), 1.0 / (64 << k), 1.0 / (4 << k)));
            for (std::size_t w = 0; w < 2; ++w) residual[w].push_back(s["identity"][w]["relative_residual"].get<double>());
            finest = s;
        }
        for (std::size_t w = 0; w < 2; ++w) {
            const double R = finest["identity"][w]["R"].get<double>();
            std::vector<double> orders;
            for (int k = 0; k + 1 < 3; ++k) orders.push_back(std::log2(residual[w][k] / residual[w][k + 1]));
            const bool ok = residual[w].back() <= 0.01 &&
                            std::all_of(orders.begin(), orders.end(), [](double o) { return std::abs(o - 2) <= 0.3; });
            identity_ok = identity_ok && ok;
            identity_detail += " (" + std::to_string(cs.d) + "," + fmt("%.1f", cs.p) + ",R=" + fmt("%g", R) +
                               ")=" + fmt("%.2e", residual[w].back()) + "/o" + join(orders, "%.2f");
        }
        double worst = INFINITY;
        for (const auto& item : finest["corollary"]) worst = std::min(worst, item["slack_over_E"].get<double>());
        corollary_ok = corollary_ok && worst >= -0.02 && finest["corollary"].size() == 10;
        corollary_detail += " (" + std::to_string(cs.d) + "," + fmt("%.1f", cs.p) + ")=" + fmt("%.3f", worst);
    }
    verdict("morawetz-identity", identity_ok, "residual/2E at 1/256 (<=1%), orders |o-2|<=0.3:" + identity_detail);
    verdict("corollary-sweep", corollary_ok, "min slack/E over 10 (R,r) (>=-0.02):" + corollary_detail);
}

void long_runs() {
    auto a = preset("theorem11b-d3");
    a.name = "scatter-all-d3";
    a.variation.enabled = true;
    a.defect = {{20.0, 40.0, 80.0}, 160.0};
    a.radiation = true;
    const json sa = run(a);
    const json sc = run(preset("theorem11b-d4"));
    const auto b = preset("theorem11c-d3");
    const json sb = run(b);

    const double fa = sa["flux"]["ratio"].get<double>(), fc = sc["flux"]["ratio"].get<double>();
    verdict("flux-decay", fa <= 0.05 && fc <= 0.05,
            "flux+(200)/flux+(1): d3 p2.8 " + fmt("%.2e", fa) + ", d4 p2.2 " + fmt("%.2e", fc) + " (<=0.05)");

    const double kappa = 0.8 * make_params(3, 2.8).kappa_scatter;
    bool decay_ok = false;
    std::string decay_detail = "no decay entry for kappa " + fmt("%.4f", kappa);
    for (const auto& item : sb["decay"])
        if (std::abs(item["kappa"].get<double>() - kappa) < 1e-12) {
            const double ratio = item.value("final_ratio", INFINITY);
            const bool dec = item.value("tail_decreasing", false);
            decay_ok = dec && ratio <= 0.2;
            decay_detail = "kappa=" + fmt("%.4f", kappa) + " compact bump: decreasing on [50,200]=" +
                           (dec ? "yes" : "no") + ", t^kQ(200)/t^kQ(10)=" + fmt("%.4f", ratio) + " (<=0.2)";
        }
    verdict("weighted-Q-decay", decay_ok, decay_detail);

    const double slope = sa["variation"].value("slope", INFINITY);
    const double required = sa["variation"]["required_slope"].get<double>();
    verdict("characteristic-variation", slope <= required + 0.1,
            "slope=" + fmt("%.3f", slope) + " (<=" + fmt("%.3f", required + 0.1) + ")");

    const auto delta = sa["defect"]["delta"].get<std::vector<double>>();
    const double ratio = sa["defect"]["ratio"].get<double>();
    const double deficit = sa["radiation"]["deficit"].get<double>();
    verdict("scattering-proxy", ratio <= 0.5 && deficit <= 0.1,
            "delta(20,40,80)=" + join(delta, "%.3e") + " ratio=" + fmt("%.3f", ratio) +
                " (<=0.5), (E-c3|g+|^2)/E=" + fmt("%.2e", deficit) + " (<=0.1)");
}

}  // namespace

int main() {
    try {
        linear_exactness();
        morawetz_family();
        energy_conservation();
        long_runs();
        verdict("pointwise-bound", worst_pointwise_excess <= 1.02,
                "max ratio1/((d-2)c_d)^(-1/2) over all runs = " + fmt("%.4f", worst_pointwise_excess) + " (<=1.02)");
    } catch (const std::exception& e) {
        std::printf("FAIL  acceptance aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%d/%d criteria passed\n", criteria - failures, criteria);
    return failures == 0 ? 0 : 1;
}
