#include "kinklab/collective.hpp"

#include <cmath>

#include "kinklab/errors.hpp"

namespace kinklab {

namespace {

double impurity_slope(const Impurity& imp, double x) {
    double y = imp.a * (x - imp.x_c);
    double s = 1.0 / std::cosh(y);
    return -2.0 * imp.a * imp.h * s * s * std::tanh(y);
}

} // namespace

double cc_acceleration(const ModelParams& params, const Impurity& imp, double x0, CcRule rule) {
    double lam = lambda_eff(params, imp, x0);
    if (std::abs(lam) < 1e-12) throw SingularLambda(x0);
    double sign = (lambda_eff(params, imp, imp.x_c) < 0.0) ? 1.0 : -1.0;
    if (rule == CcRule::reversed) sign = -sign;
    return sign * 2.0 * impurity_slope(imp, x0) / lam;
}

std::vector<CcSample> integrate_cc(const ModelParams& params, const Impurity& imp,
                                   CollectiveState initial, double t_end, double dt, CcRule rule) {
    auto acc = [&](double x) { return cc_acceleration(params, imp, x, rule); };
    std::vector<CcSample> out;
    double x = initial.x0, v = initial.x0_dot;
    long nsteps = std::lround(t_end / dt);
    out.push_back({0.0, x, v});
    for (long n = 0; n < nsteps; ++n) {
        double k1x = v, k1v = acc(x);
        double k2x = v + 0.5 * dt * k1v, k2v = acc(x + 0.5 * dt * k1x);
        double k3x = v + 0.5 * dt * k2v, k3v = acc(x + 0.5 * dt * k2x);
        double k4x = v + dt * k3v, k4v = acc(x + dt * k3x);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        out.push_back({(n + 1) * dt, x, v});
    }
    return out;
}

double small_osc_frequency(const WellQuadratic& wq) {
    if (wq.eps < 0.0) throw NoOscillation(wq.eps);
    double mu = std::sqrt(0.8 * wq.eps) + 0.9 * (wq.V0 - 1.0);
    if (!(mu > 0.0)) throw NoOscillation(mu);
    return std::sqrt(2.0 * mu);
}

Stability classify_stability(const ModelParams& params, const Impurity& imp, EquilibriumKind kind) {
    // Probe the selected sign rule just off the well center: restoring on both
    // sides means stable. The small offset keeps the h = -lambda crossover
    // (Lambda(x_c) = 0) evaluable.
    CcRule rule = (kind == EquilibriumKind::off_center_attractive) ? CcRule::reversed : CcRule::standard;
    double delta = 0.01 / imp.a;
    double right = cc_acceleration(params, imp, imp.x_c + delta, rule);
    double left = cc_acceleration(params, imp, imp.x_c - delta, rule);
    bool restoring = right < 0.0 && left > 0.0;
    return restoring ? Stability::stable : Stability::unstable;
}

} // namespace kinklab
