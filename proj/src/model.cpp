#include "kinklab/model.hpp"

#include <stdexcept>

namespace kinklab {

double impurity_value(const Impurity& imp, double x) {
    double c = std::cosh(imp.a * (x - imp.x_c));
    return imp.h / (c * c);
}

double lambda_eff(const ModelParams& params, const Impurity& imp, double x) {
    return params.lambda + impurity_value(imp, x);
}

double free_kink(const ModelParams& params, double x0, double v, double x, double t) {
    if (!(std::abs(v) < 1.0)) throw std::invalid_argument("free_kink: |v| must be < 1");
    double gamma_l = std::sqrt(1.0 - v * v);
    double arg = params.m * (x - x0 - v * t) / (std::sqrt(2.0) * gamma_l);
    return params.vacuum() * std::tanh(arg);
}

double free_kink_dt(const ModelParams& params, double x0, double v, double x, double t) {
    if (!(std::abs(v) < 1.0)) throw std::invalid_argument("free_kink: |v| must be < 1");
    double gamma_l = std::sqrt(1.0 - v * v);
    double b = params.m / (std::sqrt(2.0) * gamma_l);
    double s = 1.0 / std::cosh(b * (x - x0 - v * t));
    return -v * params.vacuum() * b * s * s;
}

double total_energy(const ModelParams& params, const Impurity& imp, const Grid& grid,
                    const FieldState& state) {
    const int n = grid.n;
    if (static_cast<int>(state.phi.size()) != n || static_cast<int>(state.phi_t.size()) != n)
        throw std::invalid_argument("total_energy: state size does not match grid");
    const double v2 = params.m * params.m / params.lambda;
    const double dx = grid.dx;

    auto density = [&](int i, double phi_x) {
        double dev = state.phi[i] * state.phi[i] - v2;
        double lam = lambda_eff(params, imp, grid.x(i));
        return 0.5 * state.phi_t[i] * state.phi_t[i] + 0.5 * phi_x * phi_x + 0.25 * lam * dev * dev;
    };

    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double phi_x;
        if (i == 0)
            phi_x = (state.phi[1] - state.phi[0]) / dx;
        else if (i == n - 1)
            phi_x = (state.phi[n - 1] - state.phi[n - 2]) / dx;
        else
            phi_x = (state.phi[i + 1] - state.phi[i - 1]) / (2.0 * dx);
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        sum += w * density(i, phi_x);
    }
    return sum * dx;
}

double meson_dispersion(const ModelParams& params, double k) {
    return std::sqrt(k * k + 2.0 * params.m * params.m);
}

} // namespace kinklab
