#include "kinklab/runner.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kinklab/collective.hpp"
#include "kinklab/diagnostics.hpp"
#include "kinklab/dynamics.hpp"
#include "kinklab/errors.hpp"
#include "kinklab/statics.hpp"

namespace fs = std::filesystem;

namespace kinklab {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

uint64_t fnv1a(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

struct Output {
    fs::path dir;
    std::vector<std::string> files;

    std::ofstream open(const std::string& name) {
        fs::create_directories(dir);
        files.push_back((dir / name).string());
        return std::ofstream(dir / name);
    }
};

void write_trajectory(Output& out, const RunConfig& cfg, const Trajectory& traj) {
    auto f = out.open("trajectory.csv");
    f << "t";
    for (double p : cfg.probes) f << ",probe_" << fmt(p);
    f << ",energy,kink_x\n";
    for (size_t i = 0; i < traj.times.size(); ++i) {
        f << fmt(traj.times[i]);
        for (const auto& series : traj.probe_series) f << "," << fmt(series[i]);
        f << "," << fmt(traj.energy_series[i]) << "," << fmt(traj.position_series[i]) << "\n";
    }
}

void write_snapshots(Output& out, const Grid& grid, const Trajectory& traj) {
    for (const auto& snap : traj.snapshots) {
        std::ostringstream name;
        name << "snapshot_t" << fmt(snap.t) << ".csv";
        auto f = out.open(name.str());
        f << "x,phi,phi_t\n";
        for (int i = 0; i < grid.n; ++i)
            f << fmt(grid.x(i)) << "," << fmt(snap.phi[i]) << "," << fmt(snap.phi_t[i]) << "\n";
    }
}

EvolveConfig make_evolve_config(const RunConfig& cfg) {
    EvolveConfig ec;
    ec.params = cfg.params;
    ec.imp = cfg.imp;
    ec.grid = cfg.make_grid();
    ec.dt = cfg.effective_dt();
    ec.t_end = cfg.t_end;
    ec.probes = cfg.probes;
    ec.record_every = cfg.record_every;
    ec.sponge = cfg.sponge;
    ec.snapshot_times = cfg.snapshots;
    if (cfg.ic_kind == "boosted_kink") {
        ec.initial = BoostedKinkIC{cfg.x0, cfg.v};
    } else if (cfg.ic_kind == "vacuum_plus_pulse") {
        ec.initial = VacuumPulseIC{cfg.amplitude, cfg.pulse_width, cfg.pulse_center};
    } else if (cfg.ic_kind == "static_profile") {
        StaticProblem pr;
        pr.params = ModelParams(cfg.params.m, cfg.params.lambda, 0.0);
        pr.imp = cfg.imp;
        pr.grid = ec.grid;
        pr.kink_center_guess = cfg.kink_center;
        pr.tol = cfg.tol;
        ec.initial = StaticProfileIC{solve_newton(pr).phi, cfg.displacement};
    } else {
        throw ConfigError("unknown initial condition kind '" + cfg.ic_kind + "'");
    }
    return ec;
}

std::string run_evolve(const RunConfig& cfg, Output& out, bool with_spectrum) {
    EvolveConfig ec = make_evolve_config(cfg);
    Trajectory traj = evolve(ec);
    write_trajectory(out, cfg, traj);
    write_snapshots(out, ec.grid, traj);

    std::string omega = "n/a", turning = "none", outcome = "n/a";
    if (!cfg.probes.empty()) {
        ProbeSeries series{traj.times, traj.probe_series[0]};
        try {
            omega = fmt(leading_frequency(series));
        } catch (const std::exception&) {
        }
        try {
            EnvelopeReport rep = envelope(series);
            if (rep.turning_time) turning = fmt(*rep.turning_time);
            auto f = out.open("envelope.csv");
            f << "t,magnitude\n";
            for (size_t i = 0; i < rep.extrema_times.size(); ++i)
                f << fmt(rep.extrema_times[i]) << "," << fmt(rep.extrema_magnitudes[i]) << "\n";
        } catch (const std::exception&) {
        }
        if (with_spectrum) {
            auto f = out.open("spectrum.csv");
            f << "omega,magnitude\n";
            for (auto [w, m] : magnitude_spectrum(series)) f << fmt(w) << "," << fmt(m) << "\n";
        }
    }
    if (cfg.has_impurity && cfg.ic_kind == "boosted_kink")
        outcome = to_string(classify_outcome(traj, cfg.imp));
    std::string summary =
        outcome + "," + omega + "," + turning + "," + fmt(traj.energy_series.back());
    if (with_spectrum && cfg.has_impurity && cfg.imp.h < 0.0) {
        // measured leading frequency vs the quadratic-well estimate sqrt(2 mu)
        try {
            summary += "," + fmt(small_osc_frequency(WellQuadratic::from_impurity(cfg.imp)));
        } catch (const std::exception&) {
            summary += ",n/a";
        }
    }
    return summary;
}

std::string run_static(const RunConfig& cfg, Output& out) {
    StaticProblem pr;
    pr.params = ModelParams(cfg.params.m, cfg.params.lambda, 0.0);
    pr.imp = cfg.imp;
    pr.grid = cfg.make_grid();
    pr.kink_center_guess = cfg.kink_center;
    pr.tol = cfg.tol;

    StaticProfile prof;
    if (cfg.imp.h > 0.0)
        prof = solve_barrier(pr);
    else if (std::abs(cfg.imp.x_c - cfg.kink_center) > cfg.dx)
        prof = solve_off_center(pr);
    else
        prof = solve_newton(pr);

    auto f = out.open("profile.csv");
    f << "x,phi\n";
    for (int i = 0; i < pr.grid.n; ++i) f << fmt(pr.grid.x(i)) << "," << fmt(prof.phi[i]) << "\n";

    auto g = out.open("statics.csv");
    g << "h,w,x_c,energy,residual,iters\n";
    g << fmt(cfg.imp.h) << "," << fmt(cfg.imp.width()) << "," << fmt(cfg.imp.x_c) << ","
      << fmt(prof.energy) << "," << fmt(prof.residual_inf) << "," << prof.newton_iters << "\n";
    return "static," + fmt(prof.energy) + "," + fmt(prof.residual_inf) + "," +
           std::to_string(prof.newton_iters);
}

std::string run_sweep(const RunConfig& cfg, Output& out) {
    std::vector<std::tuple<double, double, std::vector<double>>> blocks;
    if (cfg.sweep_cells == "default") {
        blocks = {{-1.0, 5.0, {0.0, 1.0, 3.0, 5.0}},
                  {-5.0, 1.0, {0.0, 1.0, 3.0, 5.0}},
                  {-5.0, 5.0, {0.0, 1.0, 2.0, 4.0, 5.0}}};
    } else {
        std::stringstream ss(cfg.sweep_cells);
        std::string block;
        while (std::getline(ss, block, ';')) {
            std::stringstream bs(block);
            std::string h, w, centers;
            if (!std::getline(bs, h, ':') || !std::getline(bs, w, ':') || !std::getline(bs, centers))
                throw ConfigError("bad sweep block '" + block + "' (want h:w:c1,c2,...)");
            std::vector<double> cs;
            std::stringstream cstream(centers);
            std::string c;
            while (std::getline(cstream, c, ',')) cs.push_back(std::stod(c));
            blocks.emplace_back(std::stod(h), std::stod(w), cs);
        }
    }
    auto cells = table1_sweep(blocks, cfg.dx, cfg.workers);

    for (const auto& cell : cells) {
        if (!cell.profile) continue;
        std::ostringstream name;
        name << "profile_h" << fmt(cell.h) << "_w" << fmt(cell.w) << "_c" << fmt(cell.center) << ".csv";
        auto pf = out.open(name.str());
        pf << "x,phi\n";
        Impurity imp = Impurity::from_width(cell.h, cell.w, cell.center);
        StaticProblem pr = StaticProblem::standard(ModelParams(1.0, 1.0, 0.0), imp, 0.0, cfg.dx);
        for (int i = 0; i < pr.grid.n; ++i)
            pf << fmt(pr.grid.x(i)) << "," << fmt(cell.profile->phi[i]) << "\n";
    }

    auto f = out.open("table1.csv");
    f << "h,w,x_c,energy,residual,iters,branches,error\n";
    int failures = 0;
    for (const auto& cell : cells) {
        f << fmt(cell.h) << "," << fmt(cell.w) << "," << fmt(cell.center) << ",";
        if (cell.profile) {
            f << fmt(cell.profile->energy) << "," << fmt(cell.profile->residual_inf) << ","
              << cell.profile->newton_iters << "," << cell.distinct_branches << ",\n";
        } else {
            ++failures;
            f << ",,,," << cell.error << "\n";
        }
    }
    return "sweep," + std::to_string(cells.size()) + " cells," + std::to_string(failures) +
           " failures,seed 12345";
}

std::string run_collective(const RunConfig& cfg, Output& out) {
    CcRule rule = cfg.cc_rule == "reversed" ? CcRule::reversed : CcRule::standard;
    double dt = cfg.dt > 0.0 ? cfg.dt : 0.01;
    auto traj = integrate_cc(cfg.params, cfg.imp, {cfg.cc_x0, cfg.cc_v}, cfg.t_end, dt, rule);
    auto f = out.open("cc.csv");
    f << "t,x0,x0_dot\n";
    for (const auto& s : traj) f << fmt(s.t) << "," << fmt(s.x0) << "," << fmt(s.x0_dot) << "\n";

    std::string omega = "n/a";
    try {
        omega = fmt(small_osc_frequency(WellQuadratic::from_impurity(cfg.imp)));
    } catch (const std::exception&) {
    }
    return "collective," + omega + "," + fmt(traj.back().x0) + "," + fmt(traj.back().x0_dot);
}

} // namespace

RunResult run(const RunConfig& cfg, const std::string& origin) {
    RunResult res;
    Output out{fs::path(cfg.out_dir), {}};

    ValidationReport rep = validate_config(cfg);
    if (!rep.ok()) {
        std::ostringstream msg;
        for (const auto& e : rep.errors) msg << "error: " << e << "\n";
        res.exit_code = 2;
        res.summary = msg.str();
        return res;
    }

    switch (cfg.mode) {
        case RunMode::evolve: res.summary = run_evolve(cfg, out, false); break;
        case RunMode::spectrum: res.summary = run_evolve(cfg, out, true); break;
        case RunMode::statics: res.summary = run_static(cfg, out); break;
        case RunMode::sweep: res.summary = run_sweep(cfg, out); break;
        case RunMode::collective: res.summary = run_collective(cfg, out); break;
    }

    {
        auto f = out.open("summary.txt");
        f << res.summary << "\n";
    }
    // Manifest goes last so it can checksum every other output.
    std::vector<std::string> produced = out.files;
    auto mf = out.open("manifest.txt");
    mf << "kinklab 0.1.0\n";
    mf << "config: " << origin << "\n";
    mf << "mode: " << to_string(cfg.mode) << "\n";
    for (const auto& file : produced) {
        char buf[24];
        std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(file));
        mf << fs::path(file).filename().string() << " fnv1a:" << buf << "\n";
    }
    res.files = out.files;
    return res;
}

RunResult run_file(const std::string& path, const std::string& out_override, int workers_override) {
    RunConfig cfg = parse_config(path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (workers_override >= 0) cfg.workers = workers_override;
    return run(cfg, path);
}

} // namespace kinklab
