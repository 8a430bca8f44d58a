#include "edlab/exact_nd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "edlab/errors.hpp"
#include "edlab/metrics.hpp"
#include "edlab/special.hpp"

namespace edlab {

namespace {

bool has_point_mass(const ExactState& s) {
    return std::any_of(s.begin(), s.end(), [](const GaussComponent& c) { return c.var <= 0.0; });
}

double min_variance(const ExactState& s) {
    double v = std::numeric_limits<double>::infinity();
    for (const auto& c : s) v = std::min(v, c.var);
    return v;
}

FourierGrid grid_for_states(const ExactState& f, const ExactState& g) {
    const double v = std::min(min_variance(f), min_variance(g));
    // |dphi|^2 carries e^{-v rho^2}; 8/sqrt(v) reaches the 1e-28 range
    const double xi_max = std::max(10.0, 8.0 / std::sqrt(std::max(v, 1e-6)));
    return FourierGrid::make(xi_max, 1536, 12);
}

double pair_kernel(const GaussComponent& a, const GaussComponent& b, int n, double q) {
    const double s2 = a.var + b.var;
    double gap2 = 0.0;
    for (std::size_t k = 0; k < a.mean.size(); ++k) {
        const double d = a.mean[k] - b.mean[k];
        gap2 += d * d;
    }
    if (s2 <= 0.0) {
        if (gap2 == 0.0) {
            require(q >= 0.0, ErrorCode::OrderNotAdmissible,
                    "singular kernel between coincident point masses");
            return 0.0;
        }
        return std::pow(gap2, 0.5 * q);
    }
    const double s = std::sqrt(s2);
    return gaussian_abs_moment(n, q, s, std::sqrt(gap2) / s);
}

}  // namespace

ExactState make_gaussian_state(std::vector<double> mean, double variance) {
    require(variance > 0.0, ErrorCode::InvalidArgument, "variance must be positive");
    return {GaussComponent{1.0, std::move(mean), variance}};
}

ExactState state_from_dirac(const DiracMixture& d) {
    ExactState s;
    for (std::size_t i = 0; i < d.points.size(); ++i)
        s.push_back(GaussComponent{d.weights[i], d.points[i], 0.0});
    return s;
}

int state_dim(const ExactState& s) {
    require(!s.empty(), ErrorCode::InvalidArgument, "empty state");
    return static_cast<int>(s.front().mean.size());
}

ExactState evolve_exact(LinearFlow flow, const ExactState& s, double t) {
    require(t >= 0.0, ErrorCode::InvalidArgument, "time must be nonnegative");
    ExactState out = s;
    const double shrink = std::exp(-t);
    for (auto& c : out) {
        switch (flow) {
            case LinearFlow::drift:
                for (double& m : c.mean) m *= shrink;
                c.var *= shrink * shrink;
                break;
            case LinearFlow::heat:
                c.var += 2.0 * t;
                break;
            case LinearFlow::full_fp:
                for (double& m : c.mean) m *= shrink;
                c.var = 1.0 + (c.var - 1.0) * shrink * shrink;
                break;
        }
    }
    return out;
}

double energy_closed_form(const ExactState& f, const ExactState& g, double exponent) {
    const int n = state_dim(f);
    require(state_dim(g) == n, ErrorCode::DimensionMismatch, "states must share one dimension");
    // signed weights of f - g; quadratic form sum dw_i dw_j E|Z_ij|^q
    std::vector<GaussComponent> all;
    std::vector<double> sw;
    for (const auto& c : f) {
        all.push_back(c);
        sw.push_back(c.weight);
    }
    for (const auto& c : g) {
        all.push_back(c);
        sw.push_back(-c.weight);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j)
            acc += sw[i] * sw[j] * pair_kernel(all[i], all[j], n, exponent);
    // E_alpha = -Q_alpha for positive order, E_{-(2-alpha)} = +Q for negative
    return exponent >= 0.0 ? -acc : acc;
}

double state_energy_alpha(const ExactState& f, const ExactState& g, double alpha) {
    require(alpha > 0.0 && alpha < 2.0, ErrorCode::AlphaOutOfRange, "alpha must lie in (0,2)");
    if (has_point_mass(f) || has_point_mass(g)) return energy_closed_form(f, g, alpha);
    GaussianMixCharFn cf(f), cg(g);
    return energy_alpha_fourier(cf, cg, alpha, grid_for_states(f, g)).value;
}

double state_energy_negative(const ExactState& f, const ExactState& g, double alpha) {
    const int n = state_dim(f);
    require(n - 2.0 + alpha > 0.0, ErrorCode::OrderNotAdmissible,
            "negative order needs n - 2 + alpha > 0");
    if (has_point_mass(f) || has_point_mass(g))
        return energy_closed_form(f, g, -(2.0 - alpha));
    GaussianMixCharFn cf(f), cg(g);
    return energy_negative_order_fourier(cf, cg, alpha, grid_for_states(f, g)).value;
}

double state_d1(const ExactState& f, const ExactState& g) {
    GaussianMixCharFn cf(f), cg(g);
    return d1_metric(cf, cg, grid_for_states(f, g)).value;
}

namespace {

DecayTrace base_trace(const char* metric, double alpha, int dim, const std::string& prov) {
    DecayTrace tr;
    tr.metric = metric;
    tr.alpha = alpha;
    tr.dim = dim;
    tr.provenance = prov;
    tr.config_hash = fnv1a_hash(prov);
    return tr;
}

}  // namespace

DecayTrace drift_decay_check(double alpha, const ExactState& f0, const ExactState& g0,
                             const std::vector<double>& times) {
    const int n = state_dim(f0);
    std::ostringstream prov;
    prov << "drift n=" << n << " alpha=" << alpha;
    DecayTrace tr = base_trace("energy", alpha, n, prov.str());
    for (double t : times) {
        const ExactState ft = evolve_exact(LinearFlow::drift, f0, t);
        const ExactState gt = evolve_exact(LinearFlow::drift, g0, t);
        const double v = state_energy_alpha(ft, gt, alpha);
        tr.points.push_back({t, v, 1e-10 * std::max(1.0, v)});
    }
    tr.validate();
    return tr;
}

FpDecayResult fp_decay_check(double alpha, const ExactState& f0,
                             const std::vector<double>& times) {
    const int n = state_dim(f0);
    require(n >= 2, ErrorCode::OrderNotAdmissible,
            "the combined identity needs the negative-order term (n >= 2)");
    const ExactState eq = make_gaussian_state(std::vector<double>(n, 0.0), 1.0);

    std::ostringstream prov;
    prov << "full_fp n=" << n << " alpha=" << alpha;
    FpDecayResult out;
    out.trace = base_trace("energy", alpha, n, prov.str());

    for (double t : times) {
        const ExactState ft = evolve_exact(LinearFlow::full_fp, f0, t);
        const double e_a = state_energy_alpha(ft, eq, alpha);
        out.trace.points.push_back({t, e_a, 1e-9 * std::max(1.0, e_a)});

        const double dt = std::max(1e-6, 1e-3 * t);
        const ExactState fp = evolve_exact(LinearFlow::full_fp, f0, t + dt);
        const ExactState fm = evolve_exact(LinearFlow::full_fp, f0, std::max(0.0, t - dt));
        const double ep = state_energy_alpha(fp, eq, alpha);
        const double em = state_energy_alpha(fm, eq, alpha);
        out.measured_derivative.push_back((ep - em) / (dt + std::min(t, dt)));

        const double e_neg = state_energy_negative(ft, eq, alpha);
        out.identity_rhs.push_back(-2.0 * alpha * (n - 2.0 + alpha) * e_neg - alpha * e_a);
    }
    out.trace.validate();
    return out;
}

HeatDecayResult heat_decay_check(double alpha, const ExactState& f0, const ExactState& g0,
                                 const std::vector<double>& times) {
    const int n = state_dim(f0);
    require(n >= 2, ErrorCode::OrderNotAdmissible, "heat envelope needs n >= 2");
    const MetricConstants mc = MetricConstants::make(n, alpha);

    HeatDecayResult out;
    std::ostringstream prov;
    prov << "heat n=" << n << " alpha=" << alpha;
    out.trace = base_trace("energy", alpha, n, prov.str());

    const double e0 = state_energy_alpha(f0, g0, alpha);
    const double d10 = state_d1(f0, g0);
    const double expo = (4.0 - alpha) / (2.0 - alpha);
    out.constant_C = 2.0 * alpha * (n - 2.0 + alpha) *
                     std::pow(mc.D_checked() * std::pow(d10, 4.0 / (4.0 - alpha)), -expo);

    out.envelope_holds = true;
    out.d1_monotone = true;
    double prev_d1 = d10;
    for (double t : times) {
        const ExactState ft = evolve_exact(LinearFlow::heat, f0, t);
        const ExactState gt = evolve_exact(LinearFlow::heat, g0, t);
        const double v = state_energy_alpha(ft, gt, alpha);
        out.trace.points.push_back({t, v, 1e-9 * std::max(1.0, v)});

        // integrating dE/dt <= -C E^{(4-alpha)/(2-alpha)} from E(0) = e0
        const double env = std::pow(std::pow(e0, -2.0 / (2.0 - alpha)) +
                                        out.constant_C * 2.0 * t / (2.0 - alpha),
                                    -(2.0 - alpha) / 2.0);
        out.envelope.push_back(env);
        if (v > env * (1.0 + 1e-6)) out.envelope_holds = false;

        const double d1t = state_d1(ft, gt);
        out.d1_values.push_back(d1t);
        if (d1t > prev_d1 * (1.0 + 1e-9)) out.d1_monotone = false;
        prev_d1 = d1t;
    }
    out.trace.validate();
    return out;
}

}  // namespace edlab
