#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kinklab/model.hpp"

namespace kinklab {

struct StaticProblem {
    ModelParams params;
    Impurity imp;
    Grid grid;
    double kink_center_guess = 0.0;
    double tol = 1e-10;
    int max_iters = 100;

    /// Grid with vacuum tails: V and the kink tail below 1e-8 at both ends,
    /// domain +-20 around the kink/well complex, dx = 0.05 by default.
    static StaticProblem standard(const ModelParams& params, const Impurity& imp,
                                  double kink_center = 0.0, double dx = 0.05);
};

struct StaticProfile {
    std::vector<double> phi;
    double residual_inf = 0.0;
    double energy = 0.0;
    int newton_iters = 0;
};

std::vector<double> kink_guess(const StaticProblem& problem);

/// Damped Newton on the finite-difference system phi_xx - Lambda phi (phi^2 - m^2/lambda) = 0
/// with Dirichlet boundaries at -+ m/sqrt(lambda).
StaticProfile solve_newton(const StaticProblem& problem, const std::vector<double>& initial_guess);
StaticProfile solve_newton(const StaticProblem& problem);

/// Off-center well: verifies the converged zero crossing stayed within one unit
/// of the requested kink center (throws ConvergedToWrongBranch otherwise).
StaticProfile solve_off_center(const StaticProblem& problem);

/// Repulsive impurity (h > 0), kink centered on the barrier.
StaticProfile solve_barrier(const StaticProblem& problem);

struct ShootResult {
    double slope = 0.0;           // d(phi)/dx at the kink center
    std::vector<double> phi;      // profile on the problem grid, NaN past divergence
    std::vector<bool> bounded;    // per grid point: integration still tracking
};

/// Centered symmetric case: phi(center) = 0, RK4 outward, bisection on the
/// center slope between divergence-up and overturn behavior.
ShootResult shoot_centered(const StaticProblem& problem);

struct SweepCell {
    double h = 0.0;
    double w = 0.0;
    double center = 0.0; // well center; kink at 0
    std::optional<StaticProfile> profile;
    std::string error;
    int distinct_branches = 1; // from the perturbed-guess probe
};

/// Energy table over (depth, width, center) triples; per-cell failures are
/// recorded and the sweep continues. Cells run concurrently.
std::vector<SweepCell> table1_sweep(const std::vector<std::tuple<double, double, std::vector<double>>>& blocks,
                                    double dx = 0.05, int workers = 0);

/// The paper's 13-row table: (-1,5), (-5,1) at centers {0,1,3,5} and (-5,5)
/// at centers {0,1,2,4,5}.
std::vector<SweepCell> table1_sweep_default(double dx = 0.05, int workers = 0);

double zero_crossing(const Grid& grid, const std::vector<double>& phi, double near);
double center_slope(const Grid& grid, const std::vector<double>& phi, double center);

} // namespace kinklab
