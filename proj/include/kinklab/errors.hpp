#pragma once

#include <stdexcept>
#include <string>

namespace kinklab {

struct MaxItersExceeded : std::runtime_error {
    double last_residual;
    explicit MaxItersExceeded(int iters, double residual)
        : std::runtime_error("MaxItersExceeded: " + std::to_string(iters) +
                             " iterations, last residual " + std::to_string(residual)),
          last_residual(residual) {}
};

struct DivergedGuess : std::runtime_error {
    explicit DivergedGuess(const std::string& what) : std::runtime_error("DivergedGuess: " + what) {}
};

struct ConvergedToWrongBranch : std::runtime_error {
    double zero_crossing;
    explicit ConvergedToWrongBranch(double crossing)
        : std::runtime_error("ConvergedToWrongBranch: zero crossing migrated to " +
                             std::to_string(crossing)),
          zero_crossing(crossing) {}
};

struct BracketNotFound : std::runtime_error {
    explicit BracketNotFound(const std::string& what) : std::runtime_error("BracketNotFound: " + what) {}
};

struct SingularLambda : std::runtime_error {
    double position;
    explicit SingularLambda(double x)
        : std::runtime_error("SingularLambda: effective coupling vanishes at x = " + std::to_string(x)),
          position(x) {}
};

struct NoOscillation : std::runtime_error {
    explicit NoOscillation(double mu)
        : std::runtime_error("NoOscillation: mu = " + std::to_string(mu) + " <= 0") {}
};

struct DegenerateSeries : std::runtime_error {
    DegenerateSeries() : std::runtime_error("DegenerateSeries: variance below 1e-20") {}
};

struct TooFewExtrema : std::runtime_error {
    TooFewExtrema() : std::runtime_error("TooFewExtrema: need at least 3 sign changes of the derivative") {}
};

struct UnstableField : std::runtime_error {
    int index;
    double time;
    UnstableField(int i, double t)
        : std::runtime_error("UnstableField: non-finite field value at index " + std::to_string(i) +
                             ", t = " + std::to_string(t)),
          index(i), time(t) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error("ConfigError: " + what) {}
};

} // namespace kinklab
