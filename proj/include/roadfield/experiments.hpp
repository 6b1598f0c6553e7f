#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "roadfield/analysis.hpp"
#include "roadfield/config.hpp"
#include "roadfield/core_types.hpp"
#include "roadfield/dispersion.hpp"
#include "roadfield/simulator.hpp"

// Batch experiments behind the `roadfield` command line tool. Every function
// is deterministic in its inputs; the CSV helpers render 17 significant digits
// with a fixed column order.

namespace roadfield::cli {

// -- speed / sweep ------------------------------------------------------------

struct SpeedRow {
    double D = 0.0, d = 0.0, mu = 0.0, fp0 = 0.0;
    double c_kpp = 0.0;
    double c_star = 0.0;
    Regime regime = Regime::SubThreshold;
};

SpeedRow cmd_speed(const ModelParams& params, double tol = kDefaultSpeedTol);
std::string speed_csv(const SpeedRow& row);

/// One speed row per D (evaluated in parallel, emitted in input order) plus c*/sqrt(D).
/// Throws ConfigError if the list is empty or not sorted increasingly.
std::vector<SpeedRow> cmd_sweep(const ModelParams& params, const std::vector<double>& D_list,
                                double tol = kDefaultSpeedTol);
std::string sweep_csv(const std::vector<SpeedRow>& rows);

// -- strip / limit ------------------------------------------------------------

struct StripRow {
    double D = 0.0, d = 0.0, mu = 0.0, fp0 = 0.0, L = 0.0;
    double c_kpp = 0.0;
    double c_star_L = 0.0;
    double c_star = 0.0;
};

StripRow cmd_strip(const ModelParams& params, double L, double tol = kDefaultSpeedTol);
std::string strip_csv(const StripRow& row);

struct LimitRow {
    double d = 0.0, mu = 0.0, fp0 = 0.0;
    double c_limit = 0.0;  ///< lim c*/sqrt(D)
    double low = 0.0, high = 0.0;
};

LimitRow cmd_limit(const ModelParams& params, double tol = kDefaultSpeedTol);
std::string limit_csv(const LimitRow& row);

// -- simulate -------------------------------------------------------------------

struct SimulationSettings {
    double x_min = -100.0, x_max = 100.0, y_max = 30.0;
    double dx = 0.25, dy = 0.25;
    double safety = 0.8;
    double t_end = 50.0;
    double snapshot_every = 0.5;
    double profile_every = 10.0;  ///< cadence of road/field profile CSV dumps
    double window_fraction = 0.5;
    InitialDatum datum;
};

/// Simulation keys accepted on top of the model keys.
std::vector<std::string_view> simulation_keys();

/// Preset names: kpp, enhanced, conservation, longtime.
std::vector<std::string> preset_names();

/// Preset defaults as config entries (model and simulation keys).
Config preset_config(const std::string& name);

/// Reads simulation keys; missing domain extents follow the sizing rule
/// x_max ≥ c·t_end + 20 (c = predicted speed), y_max ≥ 4·sqrt(d·t_end).
SimulationSettings simulation_settings(const Config& config, const ModelParams& params);

struct SimulationOutcome {
    RunRecord record;
    Grid grid;
    double predicted_speed = 0.0;
    std::optional<SpeedEstimate> road_speed;
    std::optional<SpeedEstimate> field_speed;
    double mass_drift = 0.0;  ///< max_t |m(t) − m(0)| / m(0)
};

SimulationOutcome simulate(const ModelParams& params, const SimulationSettings& settings);

/// Writes mass.csv, fronts.csv, fronts_field.csv, speed.csv, speed_field.csv,
/// road_profiles.csv and field_trace.csv into out_dir.
void write_simulation(const SimulationOutcome& outcome, const ModelParams& params,
                      const SimulationSettings& settings, const std::filesystem::path& out_dir);

// -- validate -------------------------------------------------------------------

struct SuiteResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double limit = 0.0;
    std::string detail;
};

struct ValidationSettings {
    double safety = 0.4;
    int ordering_seeds = 20;
    int ordering_steps = 100;
};

std::vector<std::string_view> validation_keys();

/// Seeded pair (a, b) with 0 ≤ a ≤ b componentwise: u_a ~ U(0, ν/μ),
/// v_a ~ U(0, 1), and b adds U(0, ν/(2μ)) resp. U(0, 1/2).
std::pair<FieldState, FieldState> ordered_random_pair(const Grid& grid, const ModelParams& params,
                                                      std::uint64_t seed);
ValidationSettings validation_settings(const Config& config);

/// Runs the kpp, cfl, equilibrium, ordering, conservation and steady suites.
std::vector<SuiteResult> cmd_validate(const ModelParams& params, const ValidationSettings& settings);
std::string validation_csv(const std::vector<SuiteResult>& results);

}  // namespace roadfield::cli
