#ifndef EDLAB_DECAY_HPP
#define EDLAB_DECAY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace edlab {

struct TracePoint {
    double t = 0.0;
    double value = 0.0;
    double err = 0.0;  // numerical-error estimate of the metric backend
};

/// Time series of metric values with provenance; times strictly increasing,
/// values nonnegative.
struct DecayTrace {
    std::string metric;  // "cramer", "energy", ...
    double alpha = 0.0;
    int dim = 1;
    std::string provenance;
    std::uint64_t config_hash = 0;
    std::vector<TracePoint> points;

    void validate() const;
};

enum class FitKind { exponential, power };

struct RateFit {
    FitKind kind = FitKind::exponential;
    double slope = 0.0;      // d log(value) / d t  (or / d log t)
    double intercept = 0.0;  // log(value) at t = 0 (or log t = 0)
    double t_lo = 0.0;
    double t_hi = 0.0;
    double residual_rms = 0.0;
    int n_used = 0;
};

struct FitOptions {
    /// Points before t_lo are excluded (one relaxation time by default at the
    /// caller's choice); points below floor_multiplier x err are excluded.
    double t_lo = 0.0;
    double floor_multiplier = 10.0;
};

/// Least squares of log(value) against t (exponential) or log t (power).
RateFit fit_rate(const DecayTrace& trace, FitKind kind, FitOptions opts = {});

/// A paper prediction: either "decays at least at rate r" (fitted slope must
/// satisfy slope <= -r (1 - tol)) or an explicit envelope curve (value must
/// stay below envelope (1 + tol) at every sample).
struct Prediction {
    enum class Kind { min_rate, envelope };
    Kind kind = Kind::min_rate;
    double rate = 0.0;
    std::function<double(double)> envelope;
    double tol = 0.1;  // 0.1 default for PDE traces, 0.02 for exact traces

    static Prediction min_rate_of(double rate, double tol = 0.1);
    static Prediction envelope_of(std::function<double(double)> env, double tol = 0.1);
};

struct PredictionReport {
    bool pass = false;
    double margin = 0.0;  // positive margin = pass with room
    double fitted_slope = 0.0;
    std::string details;
};

PredictionReport check_prediction(const DecayTrace& trace, const Prediction& prediction);

std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace edlab

#endif
