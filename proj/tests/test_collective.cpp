#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kinklab/collective.hpp"
#include "kinklab/errors.hpp"

using namespace kinklab;

namespace {
const ModelParams kUnit(1.0, 1.0, 0.0);
}

TEST_CASE("acceleration vanishes at the well center") {
    for (double h : {-0.5, -3.0, 1.0})
        CHECK(cc_acceleration(kUnit, Impurity(h, 2.0, 3.0), 3.0) == doctest::Approx(0.0));
}

TEST_CASE("shallow and deep wells are both restoring") {
    Impurity shallow(-0.5, 1.0, 0.0), deep(-3.0, 1.0, 0.0);
    CHECK(cc_acceleration(kUnit, shallow, 0.3) < 0.0);
    CHECK(cc_acceleration(kUnit, shallow, -0.3) > 0.0);
    CHECK(cc_acceleration(kUnit, deep, 0.3) < 0.0);
    CHECK(cc_acceleration(kUnit, deep, -0.3) > 0.0);
}

TEST_CASE("acceleration is odd about the center of a symmetric well") {
    Impurity imp(-0.5, 1.3, 2.0);
    for (double d : {0.1, 0.7, 1.9})
        CHECK(cc_acceleration(kUnit, imp, 2.0 + d) ==
              doctest::Approx(-cc_acceleration(kUnit, imp, 2.0 - d)).epsilon(1e-14));
}

TEST_CASE("singular coupling is reported, not regularized") {
    // lambda + h = 0 exactly at the well bottom
    Impurity imp(-1.0, 1.2, 0.0);
    CHECK_THROWS_AS(cc_acceleration(kUnit, imp, 0.0), SingularLambda);
}

TEST_CASE("resting at the well center stays there") {
    auto traj = integrate_cc(kUnit, Impurity(-0.5, 1.0, 1.0), {1.0, 0.0}, 20.0, 0.01);
    for (const auto& s : traj) CHECK(std::abs(s.x0 - 1.0) < 1e-12);
}

TEST_CASE("small oscillations match the linearized frequency") {
    Impurity imp(-0.5, 1.0, 0.0);
    double d = 1e-5;
    double omega2 = -(cc_acceleration(kUnit, imp, d) - cc_acceleration(kUnit, imp, -d)) / (2.0 * d);
    double omega = std::sqrt(omega2);
    auto traj = integrate_cc(kUnit, imp, {0.01, 0.0}, 50.0, 0.001);
    // released from rest: the velocity first crosses back through zero at T/2
    double period = 0.0;
    for (size_t i = 2; i < traj.size(); ++i) {
        if (traj[i - 1].x0_dot < 0.0 && traj[i].x0_dot >= 0.0) {
            period = 2.0 * traj[i].t;
            break;
        }
    }
    CHECK(period == doctest::Approx(2.0 * M_PI / omega).epsilon(0.01));
}

TEST_CASE("effective energy of the reduced ODE is conserved") {
    Impurity imp(-0.5, 1.0, 0.0);
    double d = 1e-5;
    double omega = std::sqrt(-(cc_acceleration(kUnit, imp, d) - cc_acceleration(kUnit, imp, -d)) / (2.0 * d));
    double t_end = 10.0 * 2.0 * M_PI / omega;
    auto traj = integrate_cc(kUnit, imp, {0.3, 0.0}, t_end, 0.002);

    // U_eff by trapezoid quadrature of -acceleration on a fine grid
    const double x_lo = -1.0, dxq = 1e-4;
    auto u_eff = [&](double x) {
        double u = 0.0;
        double xa = x_lo;
        double fa = -cc_acceleration(kUnit, imp, xa);
        while (xa + dxq <= x) {
            double fb = -cc_acceleration(kUnit, imp, xa + dxq);
            u += 0.5 * (fa + fb) * dxq;
            fa = fb;
            xa += dxq;
        }
        double fb = -cc_acceleration(kUnit, imp, x);
        u += 0.5 * (fa + fb) * (x - xa);
        return u;
    };
    double e0 = 0.5 * traj.front().x0_dot * traj.front().x0_dot + u_eff(traj.front().x0);
    double scale = std::abs(u_eff(0.0)) + 0.5 * 0.3 * 0.3;
    for (size_t i = 0; i < traj.size(); i += 500) {
        double e = 0.5 * traj[i].x0_dot * traj[i].x0_dot + u_eff(traj[i].x0);
        CHECK(std::abs(e - e0) / scale <= 1e-6);
    }
}

TEST_CASE("barrier: monotone escape from the top") {
    Impurity barrier(1.0, 1.2, 0.0);
    auto traj = integrate_cc(kUnit, barrier, {0.05, 0.0}, 20.0, 0.01);
    for (size_t i = 1; i < traj.size(); ++i) CHECK(traj[i].x0 >= traj[i - 1].x0);
    CHECK(traj.back().x0 > 1.0);
}

TEST_CASE("small-oscillation frequency formula") {
    CHECK(small_osc_frequency({1.0, 1.25}) == doctest::Approx(1.4142135623730951).epsilon(1e-12));
    // Fig. 1 well: V0 = 3, eps = 12 -> omega = sqrt(2 (sqrt(48/5) + 1.8))
    WellQuadratic fig1 = WellQuadratic::from_impurity(Impurity(-3.0, 2.0, 3.0));
    CHECK(fig1.V0 == doctest::Approx(3.0));
    CHECK(fig1.eps == doctest::Approx(12.0));
    CHECK(small_osc_frequency(fig1) == doctest::Approx(3.1299797689333180).epsilon(1e-12));
    CHECK_THROWS_AS(small_osc_frequency({1.0, 0.0}), NoOscillation);
}

TEST_CASE("frequency is monotone in eps and V0") {
    double prev = 0.0;
    for (double eps : {0.5, 1.0, 2.0, 4.0}) {
        double w = small_osc_frequency({1.5, eps});
        CHECK(w > prev);
        prev = w;
    }
    prev = 0.0;
    for (double v0 : {1.0, 1.5, 2.5, 4.0}) {
        double w = small_osc_frequency({v0, 2.0});
        CHECK(w > prev);
        prev = w;
    }
}

TEST_CASE("stability classification of the three canonical cases") {
    CHECK(classify_stability(kUnit, Impurity::from_width(-1.0, 5.0, 0.0),
                             EquilibriumKind::centered_attractive) == Stability::stable);
    CHECK(classify_stability(kUnit, Impurity::from_width(-1.0, 5.0, 5.0),
                             EquilibriumKind::off_center_attractive) == Stability::unstable);
    CHECK(classify_stability(kUnit, Impurity::from_width(1.0, 5.0, 0.0),
                             EquilibriumKind::barrier_top) == Stability::unstable);
    // deep wells too
    CHECK(classify_stability(kUnit, Impurity::from_width(-5.0, 5.0, 0.0),
                             EquilibriumKind::centered_attractive) == Stability::stable);
}
