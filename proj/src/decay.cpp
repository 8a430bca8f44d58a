#include "edlab/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "edlab/errors.hpp"

namespace edlab {

void DecayTrace::validate() const {
    double prev_t = -std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
        require(p.t > prev_t, ErrorCode::InvalidArgument, "trace times must strictly increase");
        require(p.value >= 0.0, ErrorCode::InvalidArgument, "trace values must be nonnegative");
        prev_t = p.t;
    }
}

Prediction Prediction::min_rate_of(double rate, double tol) {
    Prediction p;
    p.kind = Kind::min_rate;
    p.rate = rate;
    p.tol = tol;
    return p;
}

Prediction Prediction::envelope_of(std::function<double(double)> env, double tol) {
    Prediction p;
    p.kind = Kind::envelope;
    p.envelope = std::move(env);
    p.tol = tol;
    return p;
}

RateFit fit_rate(const DecayTrace& trace, FitKind kind, FitOptions opts) {
    std::vector<double> xs, ys;
    for (const auto& p : trace.points) {
        if (p.t < opts.t_lo) continue;
        if (p.value <= 0.0) continue;
        if (p.value < opts.floor_multiplier * p.err) continue;
        if (kind == FitKind::power && p.t <= 0.0) continue;
        xs.push_back(kind == FitKind::exponential ? p.t : std::log(p.t));
        ys.push_back(std::log(p.value));
    }
    require(xs.size() >= 5, ErrorCode::InsufficientPoints,
            "rate fit needs at least 5 usable points, got " + std::to_string(xs.size()));

    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    RateFit fit;
    fit.kind = kind;
    const double denom = n * sxx - sx * sx;
    require(std::abs(denom) > 1e-30, ErrorCode::InsufficientPoints, "degenerate fit window");
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.n_used = static_cast<int>(xs.size());
    fit.t_lo = trace.points.empty() ? 0.0 : std::max(opts.t_lo, trace.points.front().t);
    fit.t_hi = trace.points.empty() ? 0.0 : trace.points.back().t;
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        rss += r * r;
    }
    fit.residual_rms = std::sqrt(rss / n);
    return fit;
}

PredictionReport check_prediction(const DecayTrace& trace, const Prediction& prediction) {
    PredictionReport rep;
    std::ostringstream details;
    if (prediction.kind == Prediction::Kind::min_rate) {
        require(prediction.rate > 0.0, ErrorCode::IncompatiblePrediction,
                "min-rate prediction needs a positive rate");
        FitOptions opts;
        opts.t_lo = 1.0 / prediction.rate;  // skip one relaxation time
        const RateFit fit = fit_rate(trace, FitKind::exponential, opts);
        rep.fitted_slope = fit.slope;
        rep.pass = fit.slope <= -prediction.rate * (1.0 - prediction.tol);
        rep.margin = -fit.slope / prediction.rate - 1.0;
        details << "fitted slope " << fit.slope << " vs required -" << prediction.rate << " (tol "
                << prediction.tol << "), window [" << opts.t_lo << ", " << fit.t_hi << "], "
                << fit.n_used << " points, residual rms " << fit.residual_rms;
    } else {
        require(static_cast<bool>(prediction.envelope), ErrorCode::IncompatiblePrediction,
                "envelope prediction carries no envelope");
        rep.pass = true;
        rep.margin = std::numeric_limits<double>::infinity();
        for (const auto& p : trace.points) {
            const double env = prediction.envelope(p.t);
            if (p.value > env * (1.0 + prediction.tol)) rep.pass = false;
            if (p.value > 0.0)
                rep.margin = std::min(rep.margin, env * (1.0 + prediction.tol) / p.value - 1.0);
        }
        details << "envelope check at " << trace.points.size() << " samples (tol "
                << prediction.tol << ")";
    }
    rep.details = details.str();
    return rep;
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace edlab
