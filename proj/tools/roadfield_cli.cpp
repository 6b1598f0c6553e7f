// roadfield: spreading speeds and simulations of the road-field KPP model.
//
//   roadfield speed    [--config F] [--set k=v]... [--out DIR] [--tol T]
//   roadfield sweep    --D-list 4,16,64
//   roadfield strip    --L 40
//   roadfield limit
//   roadfield simulate --preset kpp|enhanced|conservation|longtime
//   roadfield validate
//
// Exit codes: 0 success, 1 a check failed, 2 bad configuration, 3 runtime error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "roadfield/config.hpp"
#include "roadfield/csv.hpp"
#include "roadfield/errors.hpp"
#include "roadfield/experiments.hpp"
#include "roadfield/kernels.hpp"

namespace {

using namespace roadfield;

struct Common {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
    double tol = kDefaultSpeedTol;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--config", c.config_path, "key = value configuration file");
    app->add_option("--set", c.overrides, "override a key (key=value), repeatable");
    app->add_option("--out", c.out_dir, "output directory")->capture_default_str();
    app->add_option("--tol", c.tol, "bisection tolerance on c")->capture_default_str();
}

// Layers: base (preset) < config file < --set overrides.
Config build_config(Config base, const Common& c, std::vector<std::string_view> extra_keys) {
    if (!c.config_path.empty()) {
        const Config file = Config::load(c.config_path);
        for (const auto& [k, v] : file.entries()) base.set(k, v);
    }
    for (const auto& o : c.overrides) base.apply_override(o);
    const auto params = param_keys();
    extra_keys.insert(extra_keys.end(), params.begin(), params.end());
    base.require_known(extra_keys);
    return base;
}

void emit(const Common& c, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(c.out_dir);
    csv::write_file(std::filesystem::path(c.out_dir) / name, text);
    std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"road-field KPP spreading speeds and simulations"};
    app.require_subcommand(1);

    Common common;
    std::vector<double> D_list;
    double L = 0.0;
    std::string preset;

    auto* speed = app.add_subcommand("speed", "critical spreading speed c*");
    auto* sweep = app.add_subcommand("sweep", "c* over a list of road diffusivities");
    auto* strip = app.add_subcommand("strip", "critical speed with the field cut to a strip");
    auto* limit = app.add_subcommand("limit", "large-D limit of c*/sqrt(D)");
    auto* sim = app.add_subcommand("simulate", "explicit finite-difference run");
    auto* validate = app.add_subcommand("validate", "discrete property suites");
    for (auto* s : {speed, sweep, strip, limit, sim, validate}) add_common(s, common);
    sweep->add_option("--D-list", D_list, "increasing D values")->required()->delimiter(',');
    strip->add_option("--L", L, "strip height")->required();
    sim->add_option("--preset", preset, "kpp | enhanced | conservation | longtime");

    CLI11_PARSE(app, argc, argv);

    try {
        if (speed->parsed()) {
            const Config cfg = build_config({}, common, {});
            emit(common, "speed.csv", cli::speed_csv(cli::cmd_speed(params_from_config(cfg), common.tol)));
        } else if (sweep->parsed()) {
            const Config cfg = build_config({}, common, {});
            const auto rows = cli::cmd_sweep(params_from_config(cfg), D_list, common.tol);
            emit(common, "sweep.csv", cli::sweep_csv(rows));
        } else if (strip->parsed()) {
            const Config cfg = build_config({}, common, {});
            emit(common, "strip.csv", cli::strip_csv(cli::cmd_strip(params_from_config(cfg), L, common.tol)));
        } else if (limit->parsed()) {
            const Config cfg = build_config({}, common, {});
            emit(common, "limit.csv", cli::limit_csv(cli::cmd_limit(params_from_config(cfg), common.tol)));
        } else if (sim->parsed()) {
            const Config base = preset.empty() ? Config{} : cli::preset_config(preset);
            const Config cfg = build_config(base, common, cli::simulation_keys());
            const ModelParams params = params_from_config(cfg);
            const auto settings = cli::simulation_settings(cfg, params);
            std::cerr << "isa " << kernels::to_string(kernels::active_isa()) << ", threads "
                      << worker_count() << "\n";
            const auto outcome = cli::simulate(params, settings);
            cli::write_simulation(outcome, params, settings, common.out_dir);
            std::cout << "predicted c*  " << csv::fmt(outcome.predicted_speed) << "\n";
            if (outcome.road_speed) std::cout << "road speed    " << csv::fmt(outcome.road_speed->speed) << "\n";
            if (outcome.field_speed) std::cout << "field speed   " << csv::fmt(outcome.field_speed->speed) << "\n";
            std::cout << "mass drift    " << csv::fmt(outcome.mass_drift) << "\n"
                      << "steps         " << outcome.record.steps << " (dt " << csv::fmt(outcome.record.dt)
                      << ")\n";
        } else if (validate->parsed()) {
            const Config cfg = build_config({}, common, cli::validation_keys());
            const auto results = cli::cmd_validate(params_from_config(cfg), cli::validation_settings(cfg));
            emit(common, "validate.csv", cli::validation_csv(results));
            bool ok = true;
            for (const auto& r : results) {
                if (!r.passed) {
                    std::cerr << "FAIL " << r.name << ": " << r.detail << "\n";
                    ok = false;
                }
            }
            return ok ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const BlowUpError& e) {
        std::cerr << "blow-up at step " << e.step_index() << " (t = " << e.time() << "): " << e.what()
                  << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
