// Throughput of the leapfrog stencil: serial reference vs OpenMP kernel.
#include <chrono>
#include <cstdio>
#include <vector>

#include "kinklab/dynamics.hpp"

using namespace kinklab;

namespace {

double run_kernel(bool parallel, int n, int steps) {
    EvolveConfig cfg;
    cfg.params = ModelParams(1.0, 1.0, 0.0);
    cfg.imp = Impurity(-3.0, 2.0, 3.0);
    cfg.grid = Grid(-140.0, -140.0 + (n - 1) * 0.1, 0.1);
    cfg.dt = 0.05;
    cfg.t_end = steps * cfg.dt;
    cfg.initial = BoostedKinkIC{-3.0, 0.025};

    std::vector<double> lam(n);
    for (int i = 0; i < n; ++i) lam[i] = lambda_eff(cfg.params, cfg.imp, cfg.grid.x(i));
    StartupPair start = initialize(cfg);
    std::vector<double> prior = start.prior, cur = start.state.phi, next(n);

    auto t0 = std::chrono::steady_clock::now();
    for (int s = 0; s < steps; ++s) {
        if (parallel)
            step_omp(cfg, lam, prior, cur, next, cfg.dt);
        else
            step_serial(cfg, lam, prior, cur, next, cfg.dt);
        std::swap(prior, cur);
        std::swap(cur, next);
    }
    auto t1 = std::chrono::steady_clock::now();
    double sec = std::chrono::duration<double>(t1 - t0).count();
    return static_cast<double>(n) * steps / sec / 1e6;
}

} // namespace

int main() {
    const int steps = 4000;
    for (int n : {2801, 28001}) {
        double serial = run_kernel(false, n, steps);
        double omp = run_kernel(true, n, steps);
        std::printf("n=%6d  serial %8.1f Mupd/s   omp %8.1f Mupd/s   speedup %.2fx\n", n, serial,
                    omp, omp / serial);
    }
    return 0;
}
