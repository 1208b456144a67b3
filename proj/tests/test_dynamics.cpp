#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kinklab/dynamics.hpp"
#include "kinklab/errors.hpp"

using namespace kinklab;

namespace {

EvolveConfig base_config() {
    EvolveConfig cfg;
    cfg.params = ModelParams(1.0, 1.0, 0.0);
    cfg.imp = Impurity(0.0, 1.0, 0.0);
    cfg.grid = Grid(-40.0, 40.0, 0.1);
    cfg.dt = 0.05;
    cfg.t_end = 10.0;
    cfg.record_every = 10;
    return cfg;
}

} // namespace

TEST_CASE("initialize: vacuum_plus_pulse with zero amplitude is the vacuum") {
    EvolveConfig cfg = base_config();
    cfg.initial = VacuumPulseIC{0.0, 1.0, 0.0};
    StartupPair s = initialize(cfg);
    for (int i = 0; i < cfg.grid.n; ++i) {
        CHECK(s.state.phi[i] == doctest::Approx(1.0));
        CHECK(s.state.phi_t[i] == 0.0);
        CHECK(s.prior[i] == doctest::Approx(1.0));
    }
}

TEST_CASE("initialize: boosted kink has antisymmetric phi_t about the center") {
    EvolveConfig cfg = base_config();
    cfg.initial = BoostedKinkIC{-3.0, 0.025};
    StartupPair s = initialize(cfg);
    int ic = static_cast<int>(std::lround((-3.0 - cfg.grid.x_min) / cfg.grid.dx));
    CHECK(s.state.phi[ic] == doctest::Approx(0.0).epsilon(1e-12));
    for (int k = 1; k < 20; ++k)
        CHECK(s.state.phi_t[ic - k] == doctest::Approx(s.state.phi_t[ic + k]).epsilon(1e-10));
    // moving right: the field drops with time on the right flank's leading edge
    CHECK(s.state.phi_t[ic + 5] < 0.0);
}

TEST_CASE("initialize rejects a kink center outside the grid") {
    EvolveConfig cfg = base_config();
    cfg.initial = BoostedKinkIC{-100.0, 0.0};
    CHECK_THROWS_AS(initialize(cfg), ConfigError);
}

TEST_CASE("vacuum is an exact fixed point of step") {
    EvolveConfig cfg = base_config();
    cfg.initial = VacuumPulseIC{0.0, 1.0, 0.0};
    StartupPair s = initialize(cfg);
    std::vector<double> prior = s.prior;
    FieldState st = s.state;
    for (int n = 0; n < 50; ++n) st = step(st, prior, cfg);
    for (int i = 0; i < cfg.grid.n; ++i) CHECK(st.phi[i] == 1.0);
}

TEST_CASE("static free kink stays put for 1000 steps") {
    EvolveConfig cfg = base_config();
    cfg.t_end = 50.0;
    cfg.initial = BoostedKinkIC{0.0, 0.0};
    Trajectory traj = evolve(cfg);
    StartupPair s = initialize(cfg);
    double max_dev = 0.0;
    for (int i = 0; i < cfg.grid.n; ++i)
        max_dev = std::max(max_dev, std::abs(traj.final_state.phi[i] - s.state.phi[i]));
    // bounded by twice the O(dx^2) distance to the discrete equilibrium
    CHECK(max_dev <= 5e-4);
}

TEST_CASE("traveling kink moves at its launch velocity") {
    EvolveConfig cfg = base_config();
    cfg.t_end = 50.0;
    cfg.record_every = 20;
    cfg.initial = BoostedKinkIC{0.0, 0.2};
    Trajectory traj = evolve(cfg);
    // linear fit of position vs time through the origin
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < traj.times.size(); ++i) {
        num += traj.times[i] * (traj.position_series[i]);
        den += traj.times[i] * traj.times[i];
    }
    CHECK(num / den == doctest::Approx(0.2).epsilon(0.01));
}

TEST_CASE("energy conservation without forcing") {
    EvolveConfig cfg = base_config();
    cfg.t_end = 50.0;
    cfg.initial = BoostedKinkIC{0.0, 0.0};
    Trajectory traj = evolve(cfg);
    double e0 = traj.energy_series.front();
    for (double e : traj.energy_series) CHECK(std::abs(e - e0) / std::abs(e0) <= 1e-3);
}

TEST_CASE("dissipation makes the energy non-increasing") {
    EvolveConfig cfg = base_config();
    cfg.params = ModelParams(1.0, 1.0, 0.1);
    cfg.imp = Impurity(-3.0, 2.0, 3.0);
    cfg.t_end = 40.0;
    cfg.initial = BoostedKinkIC{-3.0, 0.025};
    Trajectory traj = evolve(cfg);
    for (size_t i = 1; i < traj.energy_series.size(); ++i)
        CHECK(traj.energy_series[i] <= traj.energy_series[i - 1] + 1e-6);
}

TEST_CASE("topological charge is exactly conserved") {
    EvolveConfig cfg = base_config();
    cfg.imp = Impurity(-3.0, 2.0, 3.0);
    cfg.t_end = 30.0;
    cfg.initial = BoostedKinkIC{-3.0, 0.025};
    Trajectory traj = evolve(cfg);
    StartupPair s = initialize(cfg);
    double q0 = s.state.phi.back() - s.state.phi.front();
    double q1 = traj.final_state.phi.back() - traj.final_state.phi.front();
    CHECK(q1 == q0);
}

TEST_CASE("antisymmetric data stays antisymmetric") {
    EvolveConfig cfg = base_config();
    cfg.imp = Impurity(-1.0, 1.2, 0.0);
    cfg.t_end = 10.0;
    cfg.initial = BoostedKinkIC{0.0, 0.0};
    Trajectory traj = evolve(cfg);
    const int n = cfg.grid.n;
    double dev = 0.0;
    for (int i = 0; i < n; ++i)
        dev = std::max(dev, std::abs(traj.final_state.phi[i] + traj.final_state.phi[n - 1 - i]));
    CHECK(dev <= 1e-10);
}

TEST_CASE("localized pulse respects the signal-speed bound") {
    EvolveConfig cfg = base_config();
    cfg.grid = Grid(-60.0, 60.0, 0.1);
    cfg.t_end = 28.0;
    cfg.initial = VacuumPulseIC{0.02, 1.0, 0.0};
    cfg.probes = {30.0, -30.0};
    cfg.record_every = 2;
    Trajectory traj = evolve(cfg);
    double t_front = 30.0 - 3.0 * cfg.grid.dx;
    for (size_t i = 0; i < traj.times.size(); ++i) {
        if (traj.times[i] >= t_front) break;
        CHECK(std::abs(traj.probe_series[0][i] - 1.0) <= 1e-6);
        CHECK(std::abs(traj.probe_series[1][i] - 1.0) <= 1e-6);
    }
}

TEST_CASE("kink position error drops ~4x when dx and dt are halved") {
    auto position_error = [](double dx) {
        EvolveConfig cfg = base_config();
        cfg.grid = Grid(-40.0, 40.0, dx);
        cfg.dt = 0.5 * dx;
        cfg.t_end = 50.0;
        cfg.record_every = 1000000; // final record only
        cfg.initial = BoostedKinkIC{0.0, 0.2};
        Trajectory traj = evolve(cfg);
        double t = traj.times.back();
        return std::abs(traj.position_series.back() - 0.2 * t);
    };
    double coarse = position_error(0.1);
    double fine = position_error(0.05);
    CHECK(coarse / fine > 2.5);
    CHECK(coarse / fine < 7.0);
}

TEST_CASE("sponge layer drains radiated energy") {
    // Small-amplitude pulse so the energy actually propagates out instead of
    // settling into a long-lived nonlinear oscillation at the center.
    EvolveConfig cfg = base_config();
    cfg.grid = Grid(-30.0, 30.0, 0.1);
    cfg.t_end = 300.0;
    cfg.record_every = 100;
    cfg.initial = VacuumPulseIC{0.01, 1.0, 0.0};
    cfg.sponge = true;
    Trajectory sponged = evolve(cfg);
    cfg.sponge = false;
    Trajectory reflecting = evolve(cfg);
    CHECK(sponged.energy_series.back() < 0.5 * reflecting.energy_series.back());
}

TEST_CASE("OpenMP kernel is bitwise identical to the serial reference") {
    EvolveConfig cfg = base_config();
    cfg.imp = Impurity(-3.0, 2.0, 3.0);
    cfg.t_end = 20.0;
    cfg.initial = BoostedKinkIC{-3.0, 0.025};
    cfg.use_openmp = false;
    Trajectory serial = evolve(cfg);
    cfg.use_openmp = true;
    Trajectory omp = evolve(cfg);
    for (int i = 0; i < cfg.grid.n; ++i) CHECK(serial.final_state.phi[i] == omp.final_state.phi[i]);
}

TEST_CASE("CFL violation is rejected") {
    EvolveConfig cfg = base_config();
    cfg.dt = 0.2; // 2 dx
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
