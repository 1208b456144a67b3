#pragma once

#include <vector>

#include "kinklab/model.hpp"

namespace kinklab {

struct CollectiveState {
    double x0 = 0.0;
    double x0_dot = 0.0;
};

/// Quadratic expansion of the well bottom: V(x) ~ -V0 + eps y^2, y = x - x_c.
struct WellQuadratic {
    double V0 = 0.0;
    double eps = 0.0;

    static WellQuadratic from_impurity(const Impurity& imp) {
        return WellQuadratic{-imp.h, -imp.h * imp.a * imp.a};
    }
};

/// Sign-rule selection for the reduced equation of motion: the tanh-ansatz
/// form, or the quadratic-ansatz variant with the opposite sign (the
/// off-center case).
enum class CcRule { standard, reversed };

/// d2(x0)/dt2 = sign * 2 V'(x0) / Lambda(x0); upper sign iff Lambda(x_c) < 0.
double cc_acceleration(const ModelParams& params, const Impurity& imp, double x0,
                       CcRule rule = CcRule::standard);

struct CcSample {
    double t = 0.0;
    double x0 = 0.0;
    double x0_dot = 0.0;
};

std::vector<CcSample> integrate_cc(const ModelParams& params, const Impurity& imp,
                                   CollectiveState initial, double t_end, double dt,
                                   CcRule rule = CcRule::standard);

/// omega = sqrt(2 mu), mu = sqrt(4 eps / 5) + (9/10)(V0 - 1); throws
/// NoOscillation when mu <= 0.
double small_osc_frequency(const WellQuadratic& wq);

enum class EquilibriumKind { centered_attractive, off_center_attractive, barrier_top };
enum class Stability { stable, unstable };

Stability classify_stability(const ModelParams& params, const Impurity& imp, EquilibriumKind kind);

} // namespace kinklab
