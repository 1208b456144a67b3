#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kinklab/dynamics.hpp"
#include "kinklab/model.hpp"

namespace kinklab {

/// Uniformly sampled probe signal.
struct ProbeSeries {
    std::vector<double> t;
    std::vector<double> values;

    double dt() const { return t.size() > 1 ? t[1] - t[0] : 0.0; }

    /// Restrict to t in [t0, t1].
    ProbeSeries window(double t0, double t1) const;
};

struct EnvelopeReport {
    std::vector<double> extrema_times;
    std::vector<double> extrema_magnitudes;
    std::optional<double> turning_time;
};

/// Angular frequency of the dominant spectral peak: mean removal, Hann window,
/// magnitude peak over omega > 0 with 3-point parabolic refinement.
double leading_frequency(const ProbeSeries& series);

/// Magnitude spectrum (omega, |X|) for export.
std::vector<std::pair<double, double>> magnitude_spectrum(const ProbeSeries& series);

EnvelopeReport envelope(const ProbeSeries& series);

enum class Outcome { trapped, reflected, transmitted };

std::string to_string(Outcome o);

/// Escape-radius classification of the tracked kink position; default radius
/// is the well width + 2.
Outcome classify_outcome(const Trajectory& traj, const Impurity& imp, double escape_radius = 0.0);

} // namespace kinklab
