#include "kinklab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "kinklab/errors.hpp"

namespace kinklab {

RunMode parse_mode(const std::string& s) {
    if (s == "evolve") return RunMode::evolve;
    if (s == "static") return RunMode::statics;
    if (s == "sweep") return RunMode::sweep;
    if (s == "collective") return RunMode::collective;
    if (s == "spectrum") return RunMode::spectrum;
    throw ConfigError("unknown mode '" + s + "'");
}

std::string to_string(RunMode m) {
    switch (m) {
        case RunMode::evolve: return "evolve";
        case RunMode::statics: return "static";
        case RunMode::sweep: return "sweep";
        case RunMode::collective: return "collective";
        default: return "spectrum";
    }
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError("bad numeric value '" + v + "' for key '" + key + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        int d = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError("bad integer value '" + v + "' for key '" + key + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw ConfigError("bad boolean value '" + v + "' for key '" + key + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(key, item));
    }
    return out;
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_a = false, have_w = false;
    double w_value = 0.0;

    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(origin + ":" + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            static const std::set<std::string> known = {"run", "physics", "numerics", "initial",
                                                        "static", "collective", "sweep", "io"};
            if (!known.count(section)) throw ConfigError("unknown section '" + section + "'");
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        std::string full = section + "." + key;

        if (full == "run.mode") cfg.mode = parse_mode(val);
        else if (full == "physics.m") cfg.params.m = to_double(key, val);
        else if (full == "physics.lambda") cfg.params.lambda = to_double(key, val);
        else if (full == "physics.gamma") cfg.params.gamma = to_double(key, val);
        else if (full == "physics.h") { cfg.imp.h = to_double(key, val); cfg.has_impurity = true; }
        else if (full == "physics.a") { cfg.imp.a = to_double(key, val); have_a = true; }
        else if (full == "physics.w") { w_value = to_double(key, val); have_w = true; }
        else if (full == "physics.x_c") cfg.imp.x_c = to_double(key, val);
        else if (full == "numerics.x_min") cfg.x_min = to_double(key, val);
        else if (full == "numerics.x_max") cfg.x_max = to_double(key, val);
        else if (full == "numerics.dx") cfg.dx = to_double(key, val);
        else if (full == "numerics.dt") cfg.dt = to_double(key, val);
        else if (full == "numerics.t_end") cfg.t_end = to_double(key, val);
        else if (full == "numerics.cfl_factor") cfg.cfl_factor = to_double(key, val);
        else if (full == "numerics.tol") cfg.tol = to_double(key, val);
        else if (full == "initial.kind") cfg.ic_kind = val;
        else if (full == "initial.x0") cfg.x0 = to_double(key, val);
        else if (full == "initial.v") cfg.v = to_double(key, val);
        else if (full == "initial.displacement") cfg.displacement = to_double(key, val);
        else if (full == "initial.amplitude") cfg.amplitude = to_double(key, val);
        else if (full == "initial.width") cfg.pulse_width = to_double(key, val);
        else if (full == "initial.center") cfg.pulse_center = to_double(key, val);
        else if (full == "static.kink_center") cfg.kink_center = to_double(key, val);
        else if (full == "collective.x0") cfg.cc_x0 = to_double(key, val);
        else if (full == "collective.v") cfg.cc_v = to_double(key, val);
        else if (full == "collective.rule") cfg.cc_rule = val;
        else if (full == "sweep.cells") cfg.sweep_cells = val;
        else if (full == "io.out") cfg.out_dir = val;
        else if (full == "io.record_every") cfg.record_every = to_int(key, val);
        else if (full == "io.probes") cfg.probes = to_list(key, val);
        else if (full == "io.snapshots") cfg.snapshots = to_list(key, val);
        else if (full == "io.workers") cfg.workers = to_int(key, val);
        else if (full == "io.sponge") cfg.sponge = to_bool(key, val);
        else throw ConfigError("unknown key '" + full + "'");
    }

    if (have_a && have_w) throw ConfigError("specify either 'a' or 'w', not both");
    if (have_w) {
        if (!(w_value > 0.0)) throw ConfigError("width w must be > 0");
        cfg.imp.a = 6.0 / w_value;
    }
    if (!(cfg.imp.a > 0.0)) throw ConfigError("impurity parameter a must be > 0");
    if (!(cfg.params.m > 0.0)) throw ConfigError("m must be > 0");
    if (!(cfg.params.lambda > 0.0)) throw ConfigError("lambda must be > 0");
    if (cfg.params.gamma < 0.0) throw ConfigError("gamma must be >= 0");
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

ValidationReport validate_config(const RunConfig& cfg) {
    ValidationReport rep;
    auto fail = [&](const std::string& msg) { rep.errors.push_back(msg); };

    if (!(cfg.dx > 0.0)) fail("dx must be > 0");
    if (cfg.x_max <= cfg.x_min) fail("x_max must exceed x_min");
    if (!rep.ok()) return rep;

    Grid grid;
    try {
        grid = cfg.make_grid();
    } catch (const std::exception& e) {
        fail(e.what());
        return rep;
    }

    double dt = cfg.effective_dt();
    if (!(dt > 0.0)) fail("dt must be > 0");
    else if (dt > cfg.cfl_factor * cfg.dx + 1e-12)
        fail("CFL violation: dt = " + std::to_string(dt) + " exceeds cfl_factor * dx = " +
             std::to_string(cfg.cfl_factor * cfg.dx));

    if (cfg.mode == RunMode::evolve || cfg.mode == RunMode::spectrum) {
        if (!(cfg.t_end > 0.0)) fail("t_end must be > 0");
        if (cfg.ic_kind == "boosted_kink") {
            if (!(std::abs(cfg.v) < 1.0)) fail("|v| must be < 1");
            if (!grid.contains(cfg.x0)) fail("initial kink center x0 is outside the grid");
        } else if (cfg.ic_kind != "vacuum_plus_pulse" && cfg.ic_kind != "static_profile") {
            fail("unknown initial condition kind '" + cfg.ic_kind + "'");
        }
    }

    for (double p : cfg.probes)
        if (!grid.contains(p))
            fail("probe at x = " + std::to_string(p) + " is outside the grid");

    if (cfg.has_impurity) {
        double tail = std::max(std::abs(impurity_value(cfg.imp, grid.x_min)),
                               std::abs(impurity_value(cfg.imp, grid.x_max())));
        if (tail > 1e-8)
            fail("impurity tail not covered: |V| = " + std::to_string(tail) + " at the domain edge");
    }
    return rep;
}

} // namespace kinklab
