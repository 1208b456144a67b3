#include "kinklab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fftw3.h>

#include "kinklab/errors.hpp"

namespace kinklab {

ProbeSeries ProbeSeries::window(double t0, double t1) const {
    ProbeSeries out;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= t0 && t[i] <= t1) {
            out.t.push_back(t[i]);
            out.values.push_back(values[i]);
        }
    }
    return out;
}

namespace {

std::vector<double> windowed(const ProbeSeries& series) {
    const size_t n = series.values.size();
    double mean = std::accumulate(series.values.begin(), series.values.end(), 0.0) / n;
    double var = 0.0;
    for (double v : series.values) var += (v - mean) * (v - mean);
    if (var / n < 1e-20) throw DegenerateSeries();
    std::vector<double> w(n);
    for (size_t i = 0; i < n; ++i) {
        double hann = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (n - 1)));
        w[i] = (series.values[i] - mean) * hann;
    }
    return w;
}

std::vector<double> spectrum_mag(const std::vector<double>& w) {
    const int n = static_cast<int>(w.size());
    std::vector<double> in = w;
    std::vector<fftw_complex> out(n / 2 + 1);
    fftw_plan plan = fftw_plan_dft_r2c_1d(n, in.data(), out.data(), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    std::vector<double> mag(n / 2 + 1);
    for (int k = 0; k <= n / 2; ++k) mag[k] = std::hypot(out[k][0], out[k][1]);
    return mag;
}

} // namespace

double leading_frequency(const ProbeSeries& series) {
    const int n = static_cast<int>(series.values.size());
    if (n < 64) throw std::invalid_argument("leading_frequency: need at least 64 samples");
    auto mag = spectrum_mag(windowed(series));
    int peak = 1;
    for (int k = 2; k < static_cast<int>(mag.size()); ++k)
        if (mag[k] > mag[peak]) peak = k;
    double shift = 0.0;
    if (peak > 1 && peak < static_cast<int>(mag.size()) - 1) {
        double alpha = mag[peak - 1], beta = mag[peak], gamma = mag[peak + 1];
        double denom = alpha - 2.0 * beta + gamma;
        if (denom != 0.0) shift = 0.5 * (alpha - gamma) / denom;
    }
    double df = 1.0 / (n * series.dt());
    return 2.0 * M_PI * (peak + shift) * df;
}

std::vector<std::pair<double, double>> magnitude_spectrum(const ProbeSeries& series) {
    const int n = static_cast<int>(series.values.size());
    if (n < 64) throw std::invalid_argument("magnitude_spectrum: need at least 64 samples");
    auto mag = spectrum_mag(windowed(series));
    double df = 1.0 / (n * series.dt());
    std::vector<std::pair<double, double>> out;
    for (int k = 0; k < static_cast<int>(mag.size()); ++k)
        out.emplace_back(2.0 * M_PI * k * df, mag[k]);
    return out;
}

EnvelopeReport envelope(const ProbeSeries& series) {
    const int n = static_cast<int>(series.values.size());
    const auto& v = series.values;
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;

    EnvelopeReport rep;
    for (int i = 1; i < n - 1; ++i) {
        bool is_max = v[i] >= v[i - 1] && v[i] > v[i + 1];
        bool is_min = v[i] <= v[i - 1] && v[i] < v[i + 1];
        if (!is_max && !is_min) continue;
        // Parabolic refinement of the extremum.
        double denom = v[i - 1] - 2.0 * v[i] + v[i + 1];
        double shift = denom != 0.0 ? 0.5 * (v[i - 1] - v[i + 1]) / denom : 0.0;
        double val = v[i] - 0.25 * (v[i - 1] - v[i + 1]) * shift;
        rep.extrema_times.push_back(series.t[i] + shift * series.dt());
        rep.extrema_magnitudes.push_back(std::abs(val - mean));
    }
    if (rep.extrema_times.size() < 3) throw TooFewExtrema();

    // Smoothed envelope; the turning point must be interior and followed by a
    // real rise, so anharmonic ripple does not fake a revival.
    const int m = static_cast<int>(rep.extrema_magnitudes.size());
    std::vector<double> smooth(m);
    const int half = 3;
    for (int i = 0; i < m; ++i) {
        int lo = std::max(0, i - half), hi = std::min(m - 1, i + half);
        smooth[i] = std::accumulate(rep.extrema_magnitudes.begin() + lo,
                                    rep.extrema_magnitudes.begin() + hi + 1, 0.0) /
                    (hi - lo + 1);
    }
    int guard = std::max(2, m / 20);
    int k_min = guard;
    for (int i = guard; i < m - guard; ++i)
        if (smooth[i] < smooth[k_min]) k_min = i;
    double rise = *std::max_element(smooth.begin() + k_min, smooth.end());
    if (k_min > guard && k_min < m - guard - 1 && rise > 1.3 * smooth[k_min])
        rep.turning_time = rep.extrema_times[k_min];
    return rep;
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::trapped: return "trapped";
        case Outcome::reflected: return "reflected";
        default: return "transmitted";
    }
}

Outcome classify_outcome(const Trajectory& traj, const Impurity& imp, double escape_radius) {
    if (traj.position_series.size() < 2)
        throw std::invalid_argument("classify_outcome: trajectory has no position series");
    double radius = escape_radius > 0.0 ? escape_radius : imp.width() + 2.0;
    double x_final = traj.position_series.back();
    double x_prev = traj.position_series[traj.position_series.size() - 2];
    double v_final = x_final - x_prev;
    if (x_final > imp.x_c + radius && v_final > 0.0) return Outcome::transmitted;
    if (x_final < imp.x_c - radius && v_final < 0.0) return Outcome::reflected;
    return Outcome::trapped;
}

} // namespace kinklab
