#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace kinklab {

/// Field-theory constants of the quartic model. The paper's runs use
/// m = lambda = 1 and gamma in {0, 0.1}; the general forms are kept so
/// scaling can be probed.
struct ModelParams {
    double m = 1.0;
    double lambda = 1.0;
    double gamma = 0.0;

    ModelParams() = default;
    ModelParams(double m_, double lambda_, double gamma_ = 0.0) : m(m_), lambda(lambda_), gamma(gamma_) {
        if (!(m > 0.0)) throw std::invalid_argument("ModelParams: m must be > 0");
        if (!(lambda > 0.0)) throw std::invalid_argument("ModelParams: lambda must be > 0");
        if (!(gamma >= 0.0)) throw std::invalid_argument("ModelParams: gamma must be >= 0");
    }

    double vacuum() const { return m / std::sqrt(lambda); }
};

/// Bell-shaped impurity V(x) = h sech^2(a (x - x_c)). Negative h is an
/// attractive well, positive h a repulsive barrier. Stored canonically by
/// the inverse-width parameter a; the width convention is a = 6/w.
struct Impurity {
    double h = 0.0;
    double a = 1.0;
    double x_c = 0.0;

    Impurity() = default;
    Impurity(double h_, double a_, double x_c_) : h(h_), a(a_), x_c(x_c_) {
        if (!(a > 0.0)) throw std::invalid_argument("Impurity: a must be > 0");
    }

    static Impurity from_width(double h, double w, double x_c) { return Impurity(h, 6.0 / w, x_c); }

    double width() const { return 6.0 / a; }
};

/// Uniform 1D lattice x_i = x_min + i dx, i = 0..n-1.
struct Grid {
    double x_min = 0.0;
    double dx = 0.1;
    int n = 0;

    Grid() = default;
    Grid(double x_min_, double x_max_, double dx_) : x_min(x_min_), dx(dx_) {
        if (!(dx > 0.0)) throw std::invalid_argument("Grid: dx must be > 0");
        n = static_cast<int>(std::lround((x_max_ - x_min_) / dx)) + 1;
        if (n < 8) throw std::invalid_argument("Grid: need at least 8 points");
        double err = std::abs(x_min + (n - 1) * dx - x_max_);
        if (err > 1e-9 * (std::abs(x_max_) + std::abs(x_min) + 1.0))
            throw std::invalid_argument("Grid: extent is not an integer multiple of dx");
    }

    double x(int i) const { return x_min + i * dx; }
    double x_max() const { return x_min + (n - 1) * dx; }
    bool contains(double pos) const { return pos >= x_min && pos <= x_max(); }
};

/// Field and its time derivative on the grid at one instant.
struct FieldState {
    std::vector<double> phi;
    std::vector<double> phi_t;
    double t = 0.0;
};

double impurity_value(const Impurity& imp, double x);
double lambda_eff(const ModelParams& params, const Impurity& imp, double x);

/// Boosted kink: (m/sqrt(lambda)) tanh(m (x - x0 - v t) / (sqrt(2) sqrt(1 - v^2))).
double free_kink(const ModelParams& params, double x0, double v, double x, double t);
/// Time derivative of the boosted kink, -v d(phi)/dx.
double free_kink_dt(const ModelParams& params, double x0, double v, double x, double t);

/// E = integral of 1/2 phi_t^2 + 1/2 phi_x^2 + 1/4 Lambda(x) (phi^2 - m^2/lambda)^2,
/// trapezoid rule, centered differences for phi_x (one-sided at the ends).
double total_energy(const ModelParams& params, const Impurity& imp, const Grid& grid,
                    const FieldState& state);

/// Small-amplitude dispersion omega = sqrt(k^2 + 2 m^2).
double meson_dispersion(const ModelParams& params, double k);

} // namespace kinklab
