#include "kinklab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kinklab/errors.hpp"

namespace kinklab {

void EvolveConfig::validate() const {
    double dt_eff = effective_dt();
    if (!(dt_eff > 0.0)) throw ConfigError("dt must be > 0");
    if (dt_eff > grid.dx + 1e-15)
        throw ConfigError("CFL violation: dt = " + std::to_string(dt_eff) + " exceeds dx = " +
                          std::to_string(grid.dx));
    if (!(t_end > 0.0)) throw ConfigError("t_end must be > 0");
    for (double p : probes)
        if (!grid.contains(p)) throw ConfigError("probe at x = " + std::to_string(p) + " is outside the grid");
    if (auto* k = std::get_if<BoostedKinkIC>(&initial)) {
        if (!(std::abs(k->v) < 1.0)) throw ConfigError("|v| must be < 1");
        if (!grid.contains(k->x0)) throw ConfigError("initial kink center outside grid");
    }
}

namespace {

double interp(const Grid& grid, const std::vector<double>& phi, double x) {
    double s = (x - grid.x_min) / grid.dx;
    int i = std::clamp(static_cast<int>(std::floor(s)), 0, grid.n - 2);
    double f = s - i;
    return (1.0 - f) * phi[i] + f * phi[i + 1];
}

std::vector<double> rhs_accel(const EvolveConfig& config, const std::vector<double>& lam,
                              const std::vector<double>& phi) {
    const int n = config.grid.n;
    const double dx2 = config.grid.dx * config.grid.dx;
    const double v2 = config.params.m * config.params.m / config.params.lambda;
    std::vector<double> acc(n, 0.0);
    for (int i = 1; i < n - 1; ++i) {
        double lap = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / dx2;
        acc[i] = lap - lam[i] * phi[i] * (phi[i] * phi[i] - v2);
    }
    return acc;
}

std::vector<double> lambda_on_grid(const EvolveConfig& config) {
    std::vector<double> lam(config.grid.n);
    for (int i = 0; i < config.grid.n; ++i)
        lam[i] = lambda_eff(config.params, config.imp, config.grid.x(i));
    return lam;
}

void check_finite(const std::vector<double>& phi, double t) {
    for (int i = 0; i < static_cast<int>(phi.size()); ++i)
        if (!std::isfinite(phi[i])) throw UnstableField(i, t);
}

void apply_sponge(const EvolveConfig& config, const std::vector<double>& cur,
                  std::vector<double>& next, double dt) {
    // Gentle velocity damping ramped over the outer 10% of the grid; a smooth
    // ramp keeps the impedance mismatch (and hence re-reflection) small.
    const int n = config.grid.n;
    const int layer = std::max(2, n / 10);
    const double sigma_max = 2.0;
    for (int i = 1; i < layer; ++i) {
        double s = 1.0 - static_cast<double>(i) / layer; // 1 at boundary, 0 at inner edge
        double factor = std::max(0.0, 1.0 - sigma_max * s * s * dt);
        next[i] = cur[i] + factor * (next[i] - cur[i]);
        int j = n - 1 - i;
        next[j] = cur[j] + factor * (next[j] - cur[j]);
    }
}

template <bool Parallel>
void step_impl(const EvolveConfig& config, const std::vector<double>& lam,
               const std::vector<double>& prior, const std::vector<double>& cur,
               std::vector<double>& next, double dt) {
    const int n = config.grid.n;
    const double dx2 = config.grid.dx * config.grid.dx;
    const double v2 = config.params.m * config.params.m / config.params.lambda;
    const double g2 = 0.5 * config.params.gamma * dt;
    const double dt2 = dt * dt;
    const double* p = prior.data();
    const double* c = cur.data();
    const double* l = lam.data();
    double* nx = next.data();

    nx[0] = c[0];
    nx[n - 1] = c[n - 1];
#pragma omp parallel for schedule(static) if (Parallel)
    for (int i = 1; i < n - 1; ++i) {
        double lap = (c[i + 1] - 2.0 * c[i] + c[i - 1]) / dx2;
        double force = lap - l[i] * c[i] * (c[i] * c[i] - v2);
        nx[i] = (2.0 * c[i] - (1.0 - g2) * p[i] + dt2 * force) / (1.0 + g2);
    }
    if (config.sponge) apply_sponge(config, cur, next, dt);
}

} // namespace

void step_serial(const EvolveConfig& config, const std::vector<double>& lam,
                 const std::vector<double>& prior, const std::vector<double>& cur,
                 std::vector<double>& next, double dt) {
    step_impl<false>(config, lam, prior, cur, next, dt);
}

void step_omp(const EvolveConfig& config, const std::vector<double>& lam,
              const std::vector<double>& prior, const std::vector<double>& cur,
              std::vector<double>& next, double dt) {
    step_impl<true>(config, lam, prior, cur, next, dt);
}

StartupPair initialize(const EvolveConfig& config) {
    config.validate();
    const Grid& grid = config.grid;
    const double dt = config.effective_dt();
    StartupPair out;
    out.state.t = 0.0;
    out.state.phi.resize(grid.n);
    out.state.phi_t.resize(grid.n);
    out.prior.resize(grid.n);

    if (auto* k = std::get_if<BoostedKinkIC>(&config.initial)) {
        for (int i = 0; i < grid.n; ++i) {
            double x = grid.x(i);
            out.state.phi[i] = free_kink(config.params, k->x0, k->v, x, 0.0);
            out.state.phi_t[i] = free_kink_dt(config.params, k->x0, k->v, x, 0.0);
            out.prior[i] = free_kink(config.params, k->x0, k->v, x, -dt);
        }
        return out;
    }

    if (auto* s = std::get_if<StaticProfileIC>(&config.initial)) {
        if (static_cast<int>(s->phi.size()) != grid.n)
            throw ConfigError("static profile initial condition does not match the grid");
        for (int i = 0; i < grid.n; ++i) {
            out.state.phi[i] = interp(grid, s->phi, grid.x(i) - s->displacement);
            out.state.phi_t[i] = 0.0;
        }
    } else {
        auto* p = std::get_if<VacuumPulseIC>(&config.initial);
        double vac = config.params.vacuum();
        for (int i = 0; i < grid.n; ++i) {
            double y = (grid.x(i) - p->center) / p->width;
            out.state.phi[i] = vac + p->amplitude * std::exp(-y * y);
            out.state.phi_t[i] = 0.0;
        }
    }

    // Taylor start: phi(-dt) = phi - dt phi_t + dt^2/2 phi_tt.
    auto lam = lambda_on_grid(config);
    auto acc = rhs_accel(config, lam, out.state.phi);
    for (int i = 0; i < grid.n; ++i)
        out.prior[i] = out.state.phi[i] - dt * out.state.phi_t[i] + 0.5 * dt * dt * acc[i];
    return out;
}

FieldState step(const FieldState& state, std::vector<double>& prior, const EvolveConfig& config) {
    const double dt = config.effective_dt();
    auto lam = lambda_on_grid(config);
    FieldState next;
    next.phi.resize(config.grid.n);
    next.phi_t.resize(config.grid.n);
    next.t = state.t + dt;
    if (config.use_openmp)
        step_omp(config, lam, prior, state.phi, next.phi, dt);
    else
        step_serial(config, lam, prior, state.phi, next.phi, dt);
    for (int i = 0; i < config.grid.n; ++i)
        next.phi_t[i] = (next.phi[i] - prior[i]) / (2.0 * dt);
    check_finite(next.phi, next.t);
    prior = state.phi;
    return next;
}

std::optional<double> track_kink(const Grid& grid, const std::vector<double>& phi, double x_prev) {
    std::optional<double> best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.n - 1; ++i) {
        if ((phi[i] <= 0.0 && phi[i + 1] > 0.0) || (phi[i] >= 0.0 && phi[i + 1] < 0.0)) {
            double denom = phi[i] - phi[i + 1];
            double frac = denom != 0.0 ? phi[i] / denom : 0.0;
            double xz = grid.x(i) + frac * grid.dx;
            double d = std::abs(xz - x_prev);
            if (d < best_dist) {
                best_dist = d;
                best = xz;
            }
        }
    }
    return best;
}

Trajectory evolve(const EvolveConfig& config) {
    config.validate();
    const Grid& grid = config.grid;
    const double dt = config.effective_dt();
    const long nsteps = std::lround(config.t_end / dt);
    auto lam = lambda_on_grid(config);

    StartupPair start = initialize(config);
    std::vector<double> prior = std::move(start.prior);
    std::vector<double> cur = std::move(start.state.phi);
    std::vector<double> next(grid.n);

    double x_track = grid.x_min;
    if (auto* k = std::get_if<BoostedKinkIC>(&config.initial))
        x_track = k->x0;
    else if (auto z = track_kink(grid, cur, 0.5 * (grid.x_min + grid.x_max())))
        x_track = *z;

    Trajectory traj;
    traj.probe_series.resize(config.probes.size());
    std::vector<double> snap_left = config.snapshot_times;
    std::sort(snap_left.begin(), snap_left.end());

    FieldState rec;
    rec.phi.resize(grid.n);
    rec.phi_t.resize(grid.n);

    auto record = [&](long n) {
        double t = n * dt;
        rec.t = t;
        rec.phi = cur;
        for (int i = 0; i < grid.n; ++i) rec.phi_t[i] = (next[i] - prior[i]) / (2.0 * dt);
        check_finite(rec.phi, t);
        traj.times.push_back(t);
        for (size_t p = 0; p < config.probes.size(); ++p)
            traj.probe_series[p].push_back(interp(grid, rec.phi, config.probes[p]));
        traj.energy_series.push_back(total_energy(config.params, config.imp, grid, rec));
        if (auto z = track_kink(grid, rec.phi, x_track)) x_track = *z;
        traj.position_series.push_back(x_track);
        while (!snap_left.empty() && t >= snap_left.front() - 0.5 * dt) {
            traj.snapshots.push_back(rec);
            snap_left.erase(snap_left.begin());
        }
    };

    const int every = std::max(1, config.record_every);
    for (long n = 0; n < nsteps; ++n) {
        if (config.use_openmp)
            step_omp(config, lam, prior, cur, next, dt);
        else
            step_serial(config, lam, prior, cur, next, dt);
        if (n % every == 0 || n == nsteps - 1) record(n);
        std::swap(prior, cur);
        std::swap(cur, next); // cur <- new field, prior <- old field
    }

    traj.final_state.t = nsteps * dt;
    traj.final_state.phi = cur;
    traj.final_state.phi_t.resize(grid.n);
    for (int i = 0; i < grid.n; ++i)
        traj.final_state.phi_t[i] = (cur[i] - next[i]) / dt; // next holds phi^{n-1} after swap
    check_finite(traj.final_state.phi, traj.final_state.t);
    return traj;
}

} // namespace kinklab
