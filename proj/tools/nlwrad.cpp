#include <CLI11.hpp>

#include <iostream>

#include "nlwrad/core/error.hpp"
#include "nlwrad/experiments/convergence.hpp"
#include "nlwrad/experiments/presets.hpp"
#include "nlwrad/experiments/runner.hpp"

namespace {

enum Exit { ok = 0, check_failed = 1, bad_input = 2, numeric_abort = 3 };

int report(const nlwrad::RunOutcome& out) {
    const auto& s = out.summary;
    for (const auto& [name, value] : s["checks"].items())
        std::cout << (value.get<bool>() ? "pass  " : "FAIL  ") << name << '\n';
    for (const auto& w : s["warnings"]) std::cerr << "warning: " << w.get<std::string>() << '\n';
    std::cout << "artifacts in " << out.directory << " (" << s["runtime_seconds"].get<double>() << " s)\n";
    return out.passed ? ok : check_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial defocusing semilinear wave simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir, name;
    int levels = 3;
    bool dump = false;

    auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "artifact directory (default: the config's output_dir)");

    auto* pre = app.add_subcommand("preset", "Run a named preset");
    pre->add_option("name", name, "preset name")->required();
    pre->add_option("--out", out_dir, "artifact directory");
    pre->add_flag("--dump", dump, "print the preset config as JSON instead of running it");

    auto* conv = app.add_subcommand("converge", "Self-convergence study over successive halvings of dr");
    conv->add_option("--config", config_path, "config file")->required();
    conv->add_option("--levels", levels, "number of grid levels (>= 3)")->required();

    auto* list = app.add_subcommand("list-presets", "List preset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : bad_input;
    }

    try {
        if (*list) {
            for (const auto& n : nlwrad::preset_names()) std::cout << n << '\n';
            return ok;
        }
        if (*run) return report(nlwrad::run_experiment(nlwrad::load_config(config_path), out_dir));
        if (*pre) {
            const auto cfg = nlwrad::preset(name);
            if (dump) {
                std::cout << nlwrad::config_to_json(cfg).dump(2) << '\n';
                return ok;
            }
            return report(nlwrad::run_experiment(cfg, out_dir));
        }
        if (*conv) {
            const auto table = nlwrad::convergence_study(nlwrad::load_config(config_path), levels);
            std::cout << nlwrad::to_json(table).dump(2) << '\n';
            return ok;
        }
    } catch (const nlwrad::NumericAbort& e) {
        std::cerr << "numeric abort: " << e.what() << '\n';
        return numeric_abort;
    } catch (const nlwrad::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bad_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bad_input;
    }
    return ok;
}
