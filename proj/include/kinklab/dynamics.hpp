#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kinklab/model.hpp"

namespace kinklab {

struct BoostedKinkIC {
    double x0 = 0.0;
    double v = 0.0;
};

struct StaticProfileIC {
    std::vector<double> phi;   // converged static solution on the run grid
    double displacement = 0.0; // rigid shift applied to the profile
};

struct VacuumPulseIC {
    double amplitude = 0.0;
    double width = 1.0;
    double center = 0.0;
};

using InitialCondition = std::variant<BoostedKinkIC, StaticProfileIC, VacuumPulseIC>;

struct EvolveConfig {
    ModelParams params;
    Impurity imp;
    Grid grid;
    double dt = 0.0; // 0 -> default 0.5 dx
    double t_end = 0.0;
    InitialCondition initial = BoostedKinkIC{};
    std::vector<double> probes;
    int record_every = 10;
    bool sponge = false;        // taper phi_t over the outer 10% of the grid
    bool use_openmp = true;     // stencil kernel selection; results are bitwise identical
    std::vector<double> snapshot_times;

    double effective_dt() const { return dt > 0.0 ? dt : 0.5 * grid.dx; }
    void validate() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> probe_series; // one inner vector per probe
    std::vector<double> energy_series;
    std::vector<double> position_series; // tracked kink center
    FieldState final_state;
    std::vector<FieldState> snapshots;
};

/// Initial field plus the prior-step field the three-level scheme starts from.
struct StartupPair {
    FieldState state;
    std::vector<double> prior; // phi at t = -dt
};

StartupPair initialize(const EvolveConfig& config);

/// One leapfrog update. next must be sized like cur. Serial reference kernel.
void step_serial(const EvolveConfig& config, const std::vector<double>& lam,
                 const std::vector<double>& prior, const std::vector<double>& cur,
                 std::vector<double>& next, double dt);

/// Same update with an OpenMP-parallel inner loop; bitwise identical to step_serial.
void step_omp(const EvolveConfig& config, const std::vector<double>& lam,
              const std::vector<double>& prior, const std::vector<double>& cur,
              std::vector<double>& next, double dt);

/// Single convenience step matching the spec surface: advances state by dt
/// and returns the new state; prior is updated to the old field.
FieldState step(const FieldState& state, std::vector<double>& prior, const EvolveConfig& config);

Trajectory evolve(const EvolveConfig& config);

/// Linearly interpolated zero crossing of phi nearest to x_prev.
std::optional<double> track_kink(const Grid& grid, const std::vector<double>& phi, double x_prev);

} // namespace kinklab
