#pragma once

#include <map>
#include <string>
#include <vector>

#include "kinklab/model.hpp"

namespace kinklab {

enum class RunMode { evolve, statics, sweep, collective, spectrum };

RunMode parse_mode(const std::string& s);
std::string to_string(RunMode m);

/// One experiment, parsed from a flat key-value file with [section] headers.
struct RunConfig {
    RunMode mode = RunMode::evolve;

    // [physics]
    ModelParams params;
    Impurity imp;
    bool has_impurity = false;

    // [numerics]
    double x_min = -20.0;
    double x_max = 20.0;
    double dx = 0.05;
    double dt = 0.0; // 0 -> 0.5 dx
    double t_end = 100.0;
    double cfl_factor = 0.5;
    double tol = 1e-10;

    // [initial]
    std::string ic_kind = "boosted_kink"; // boosted_kink | static_profile | vacuum_plus_pulse
    double x0 = 0.0;
    double v = 0.0;
    double displacement = 0.0;
    double amplitude = 0.0;
    double pulse_width = 1.0;
    double pulse_center = 0.0;

    // [static]
    double kink_center = 0.0;

    // [collective]
    double cc_x0 = 0.0;
    double cc_v = 0.0;
    std::string cc_rule = "standard";

    // [sweep] "h:w:c1,c2,..." blocks separated by ';', or "default"
    std::string sweep_cells = "default";

    // [io]
    std::string out_dir = "out";
    int record_every = 10;
    std::vector<double> probes;
    std::vector<double> snapshots;
    int workers = 0;
    bool sponge = false;

    Grid make_grid() const { return Grid(x_min, x_max, dx); }
    double effective_dt() const { return dt > 0.0 ? dt : cfl_factor * dx; }
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

struct ValidationReport {
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
};

/// Static checks only (CFL, impurity tail coverage, probe placement); never
/// executes physics.
ValidationReport validate_config(const RunConfig& config);

} // namespace kinklab
