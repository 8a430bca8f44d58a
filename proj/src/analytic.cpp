#include "edlab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "edlab/errors.hpp"
#include "edlab/special.hpp"

namespace edlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double barenblatt_k(double p) { return (p - 1.0) / (2.0 * p); }

double barenblatt_mass(double p, double r) {
    const double s = 1.0 / (p - 1.0);
    const double k = barenblatt_k(p);
    // integral of (k (r^2 - x^2))^s over [-r, r], by quadrature; the Beta
    // closed form is kept in the tests as an independent check.
    return gauss_integrate_panels(
        [&](double x) { return std::pow(std::max(0.0, k * (r * r - x * x)), s); }, -r, r, 64, 16);
}

// Interval mass of N(mean, var) over [l, r], tail-safe on both sides.
double gaussian_interval_mass(double mean, double var, double l, double r) {
    const double sd = std::sqrt(2.0 * var);
    const double zl = (l - mean) / sd;
    const double zr = (r - mean) / sd;
    if (zl + zr > 0.0) return 0.5 * (std::erfc(zl) - std::erfc(zr));
    return 0.5 * (std::erf(zr) - std::erf(zl));
}

}  // namespace

double barenblatt_radius(double p) {
    require(p > 1.0, ErrorCode::InvalidArgument, "Barenblatt requires p > 1");
    static std::mutex mtx;
    static std::map<double, double> cache;
    std::scoped_lock lock(mtx);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    const double r = brent_root([&](double r0) { return barenblatt_mass(p, r0) - 1.0; }, 0.05,
                                50.0, 1e-10);
    cache.emplace(p, r);
    return r;
}

AnalyticDensity::AnalyticDensity(Variant v) : v_(std::move(v)) { validate(); }

void AnalyticDensity::validate() const {
    std::visit(
        [](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, GaussianND>) {
                require(!d.mean.empty(), ErrorCode::InvalidArgument, "Gaussian mean empty");
                require(d.variance > 0.0, ErrorCode::InvalidArgument, "Gaussian variance <= 0");
            } else if constexpr (std::is_same_v<T, Barenblatt>) {
                require(d.p > 1.0, ErrorCode::InvalidArgument, "Barenblatt p must exceed 1");
            } else if constexpr (std::is_same_v<T, InverseGamma>) {
                require(d.mu > 1.0, ErrorCode::InvalidArgument, "inverse Gamma mu must exceed 1");
            } else if constexpr (std::is_same_v<T, BetaOpinion>) {
                require(d.m > -1.0 && d.m < 1.0, ErrorCode::InvalidArgument,
                        "opinion mean must lie in (-1,1)");
                require(d.lambda > 0.0, ErrorCode::InvalidArgument, "lambda must be positive");
            } else if constexpr (std::is_same_v<T, DiracMixture>) {
                require(d.dim >= 1, ErrorCode::DimensionMismatch, "Dirac dimension < 1");
                require(!d.points.empty() && d.points.size() == d.weights.size(),
                        ErrorCode::InvalidArgument, "Dirac points/weights mismatch");
                double w = 0.0;
                for (std::size_t i = 0; i < d.points.size(); ++i) {
                    require(static_cast<int>(d.points[i].size()) == d.dim,
                            ErrorCode::DimensionMismatch, "Dirac point dimension mismatch");
                    for (double c : d.points[i])
                        require(std::isfinite(c), ErrorCode::InvalidArgument,
                                "Dirac point not finite");
                    require(d.weights[i] > 0.0, ErrorCode::InvalidArgument,
                            "Dirac weight not positive");
                    w += d.weights[i];
                }
                require(std::abs(w - 1.0) <= 1e-12, ErrorCode::InvalidArgument,
                        "Dirac weights must sum to 1");
            } else if constexpr (std::is_same_v<T, Uniform>) {
                require(d.a < d.b, ErrorCode::InvalidArgument, "uniform needs a < b");
            } else if constexpr (std::is_same_v<T, Exponential>) {
                require(d.rate > 0.0, ErrorCode::InvalidArgument, "rate must be positive");
            } else if constexpr (std::is_same_v<T, GaussianMixture1D>) {
                require(!d.means.empty() && d.means.size() == d.variances.size() &&
                            d.means.size() == d.weights.size(),
                        ErrorCode::InvalidArgument, "mixture arrays mismatch");
                double w = 0.0;
                for (std::size_t i = 0; i < d.means.size(); ++i) {
                    require(d.variances[i] > 0.0, ErrorCode::InvalidArgument,
                            "mixture variance <= 0");
                    require(d.weights[i] > 0.0, ErrorCode::InvalidArgument,
                            "mixture weight <= 0");
                    w += d.weights[i];
                }
                require(std::abs(w - 1.0) <= 1e-12, ErrorCode::InvalidArgument,
                        "mixture weights must sum to 1");
            }
        },
        v_);
}

int AnalyticDensity::dim() const {
    if (const auto* g = get_if<GaussianND>()) return static_cast<int>(g->mean.size());
    if (const auto* d = get_if<DiracMixture>()) return d->dim;
    return 1;
}

bool AnalyticDensity::is_point_mass() const { return get_if<DiracMixture>() != nullptr; }

double AnalyticDensity::cdf(double x) const {
    require(dim() == 1, ErrorCode::DimensionMismatch, "cdf needs a one-dimensional density");
    return std::visit(
        [x](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, GaussianND>) {
                return normal_cdf((x - d.mean[0]) / std::sqrt(d.variance));
            } else if constexpr (std::is_same_v<T, Barenblatt>) {
                const double r = barenblatt_radius(d.p);
                if (x <= -r) return 0.0;
                if (x >= r) return 1.0;
                const double s = 1.0 / (d.p - 1.0);
                return beta_inc(s + 1.0, s + 1.0, 0.5 * (x / r + 1.0));
            } else if constexpr (std::is_same_v<T, InverseGamma>) {
                if (x <= 0.0) return 0.0;
                return gamma_q(d.mu, (d.mu - 1.0) / x);
            } else if constexpr (std::is_same_v<T, BetaOpinion>) {
                if (x <= -1.0) return 0.0;
                if (x >= 1.0) return 1.0;
                const double a = (1.0 - d.m) / d.lambda;
                const double b = (1.0 + d.m) / d.lambda;
                return beta_inc(b, a, 0.5 * (1.0 + x));
            } else if constexpr (std::is_same_v<T, DiracMixture>) {
                double acc = 0.0;
                for (std::size_t i = 0; i < d.points.size(); ++i)
                    if (d.points[i][0] <= x) acc += d.weights[i];
                return acc;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return std::clamp((x - d.a) / (d.b - d.a), 0.0, 1.0);
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return x <= 0.0 ? 0.0 : -std::expm1(-d.rate * x);
            } else {  // GaussianMixture1D
                double acc = 0.0;
                for (std::size_t i = 0; i < d.means.size(); ++i)
                    acc += d.weights[i] * normal_cdf((x - d.means[i]) / std::sqrt(d.variances[i]));
                return acc;
            }
        },
        v_);
}

double AnalyticDensity::quantile(double p) const {
    require(dim() == 1, ErrorCode::DimensionMismatch, "quantile needs 1D density");
    require(p > 0.0 && p < 1.0, ErrorCode::InvalidArgument, "quantile needs p in (0,1)");
    return std::visit(
        [this, p](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, GaussianND>) {
                return d.mean[0] + std::sqrt(d.variance) * normal_quantile(p);
            } else if constexpr (std::is_same_v<T, Barenblatt>) {
                const double r = barenblatt_radius(d.p);
                const double s = 1.0 / (d.p - 1.0);
                return r * (2.0 * beta_inc_inv(s + 1.0, s + 1.0, p) - 1.0);
            } else if constexpr (std::is_same_v<T, InverseGamma>) {
                return (d.mu - 1.0) / gamma_p_inv(d.mu, 1.0 - p);
            } else if constexpr (std::is_same_v<T, BetaOpinion>) {
                const double a = (1.0 - d.m) / d.lambda;
                const double b = (1.0 + d.m) / d.lambda;
                return 2.0 * beta_inc_inv(b, a, p) - 1.0;
            } else if constexpr (std::is_same_v<T, DiracMixture>) {
                fail(ErrorCode::UnsupportedDensity, "point masses have no continuous quantile");
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return d.a + p * (d.b - d.a);
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return -std::log1p(-p) / d.rate;
            } else {  // GaussianMixture1D
                double lo = kInf, hi = -kInf;
                for (std::size_t i = 0; i < d.means.size(); ++i) {
                    const double sd = std::sqrt(d.variances[i]);
                    lo = std::min(lo, d.means[i] - 12.0 * sd);
                    hi = std::max(hi, d.means[i] + 12.0 * sd);
                }
                return brent_root([&](double x) { return cdf(x) - p; }, lo, hi, 1e-13);
            }
        },
        v_);
}

double AnalyticDensity::pdf(double x) const {
    require(dim() == 1, ErrorCode::DimensionMismatch, "pdf needs 1D density");
    return std::visit(
        [x](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, GaussianND>) {
                const double z = (x - d.mean[0]);
                return std::exp(-z * z / (2.0 * d.variance)) / std::sqrt(2.0 * kPi * d.variance);
            } else if constexpr (std::is_same_v<T, Barenblatt>) {
                const double r = barenblatt_radius(d.p);
                const double arg = barenblatt_k(d.p) * (r * r - x * x);
                return arg <= 0.0 ? 0.0 : std::pow(arg, 1.0 / (d.p - 1.0));
            } else if constexpr (std::is_same_v<T, InverseGamma>) {
                if (x <= 0.0) return 0.0;
                const double beta = d.mu - 1.0;
                return std::exp(d.mu * std::log(beta) - std::lgamma(d.mu) - beta / x -
                                (1.0 + d.mu) * std::log(x));
            } else if constexpr (std::is_same_v<T, BetaOpinion>) {
                if (x <= -1.0 || x >= 1.0) return 0.0;
                const double a = (1.0 - d.m) / d.lambda;
                const double b = (1.0 + d.m) / d.lambda;
                const double logc = (1.0 - a - b) * std::log(2.0) - std::lgamma(a) -
                                    std::lgamma(b) + std::lgamma(a + b);
                return std::exp(logc + (a - 1.0) * std::log1p(-x) + (b - 1.0) * std::log1p(x));
            } else if constexpr (std::is_same_v<T, DiracMixture>) {
                fail(ErrorCode::UnsupportedDensity, "point masses have no density values");
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return (x >= d.a && x <= d.b) ? 1.0 / (d.b - d.a) : 0.0;
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return x < 0.0 ? 0.0 : d.rate * std::exp(-d.rate * x);
            } else {  // GaussianMixture1D
                double acc = 0.0;
                for (std::size_t i = 0; i < d.means.size(); ++i) {
                    const double z = x - d.means[i];
                    acc += d.weights[i] * std::exp(-z * z / (2.0 * d.variances[i])) /
                           std::sqrt(2.0 * kPi * d.variances[i]);
                }
                return acc;
            }
        },
        v_);
}

double AnalyticDensity::mean1d() const {
    require(dim() == 1, ErrorCode::DimensionMismatch, "mean1d needs 1D density");
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, GaussianND>) return d.mean[0];
            else if constexpr (std::is_same_v<T, Barenblatt>) return 0.0;
            else if constexpr (std::is_same_v<T, InverseGamma>) return 1.0;
            else if constexpr (std::is_same_v<T, BetaOpinion>) return d.m;
            else if constexpr (std::is_same_v<T, DiracMixture>) {
                double acc = 0.0;
                for (std::size_t i = 0; i < d.points.size(); ++i)
                    acc += d.weights[i] * d.points[i][0];
                return acc;
            } else if constexpr (std::is_same_v<T, Uniform>) return 0.5 * (d.a + d.b);
            else if constexpr (std::is_same_v<T, Exponential>) return 1.0 / d.rate;
            else {
                double acc = 0.0;
                for (std::size_t i = 0; i < d.means.size(); ++i)
                    acc += d.weights[i] * d.means[i];
                return acc;
            }
        },
        v_);
}

double AnalyticDensity::moment(double s) const {
    require(s > 0.0, ErrorCode::InvalidArgument, "moment order must be positive");
    return std::visit(
        [this, s](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, GaussianND>) {
                double norm2 = 0.0;
                for (double c : d.mean) norm2 += c * c;
                const double sd = std::sqrt(d.variance);
                return gaussian_abs_moment(static_cast<int>(d.mean.size()), s, sd,
                                           std::sqrt(norm2) / sd);
            } else if constexpr (std::is_same_v<T, Barenblatt>) {
                const double r = barenblatt_radius(d.p);
                const double k = barenblatt_k(d.p);
                const double ex = 1.0 / (d.p - 1.0);
                return 2.0 * gauss_integrate_panels(
                                 [&](double x) {
                                     return std::pow(x, s) *
                                            std::pow(std::max(0.0, k * (r * r - x * x)), ex);
                                 },
                                 0.0, r, 64, 16);
            } else if constexpr (std::is_same_v<T, InverseGamma>) {
                if (s >= d.mu)
                    fail(ErrorCode::MomentDiverges, "inverse Gamma moment requires s < mu");
                return std::pow(d.mu - 1.0, s) * gamma_ratio(d.mu - s, d.mu);
            } else if constexpr (std::is_same_v<T, BetaOpinion>) {
                // bounded integrand in quantile space; endpoints contribute |x|^s <= 1
                return gauss_integrate_panels(
                    [&](double p) { return std::pow(std::abs(quantile(p)), s); }, 1e-12,
                    1.0 - 1e-12, 128, 12);
            } else if constexpr (std::is_same_v<T, DiracMixture>) {
                double acc = 0.0;
                for (std::size_t i = 0; i < d.points.size(); ++i) {
                    double norm2 = 0.0;
                    for (double c : d.points[i]) norm2 += c * c;
                    acc += d.weights[i] * std::pow(norm2, 0.5 * s);
                }
                return acc;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                auto anti = [s](double x) {
                    return std::copysign(std::pow(std::abs(x), s + 1.0) / (s + 1.0), x);
                };
                return (anti(d.b) - anti(d.a)) / (d.b - d.a);
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return std::exp(std::lgamma(s + 1.0)) / std::pow(d.rate, s);
            } else {  // GaussianMixture1D
                double acc = 0.0;
                for (std::size_t i = 0; i < d.means.size(); ++i) {
                    const double sd = std::sqrt(d.variances[i]);
                    acc += d.weights[i] *
                           gaussian_abs_moment(1, s, sd, std::abs(d.means[i]) / sd);
                }
                return acc;
            }
        },
        v_);
}

double AnalyticDensity::support_lo() const {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Barenblatt>) return -barenblatt_radius(d.p);
            else if constexpr (std::is_same_v<T, InverseGamma>) return 0.0;
            else if constexpr (std::is_same_v<T, BetaOpinion>) return -1.0;
            else if constexpr (std::is_same_v<T, Uniform>) return d.a;
            else if constexpr (std::is_same_v<T, Exponential>) return 0.0;
            else if constexpr (std::is_same_v<T, DiracMixture>) {
                double lo = kInf;
                for (const auto& pt : d.points) lo = std::min(lo, pt[0]);
                return lo;
            } else return -kInf;
        },
        v_);
}

double AnalyticDensity::support_hi() const {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Barenblatt>) return barenblatt_radius(d.p);
            else if constexpr (std::is_same_v<T, BetaOpinion>) return 1.0;
            else if constexpr (std::is_same_v<T, Uniform>) return d.b;
            else if constexpr (std::is_same_v<T, DiracMixture>) {
                double hi = -kInf;
                for (const auto& pt : d.points) hi = std::max(hi, pt[0]);
                return hi;
            } else return kInf;
        },
        v_);
}

GridDensity1D rasterize(const AnalyticDensity& a, const Grid1D& g, double tail_tol) {
    require(a.dim() == 1, ErrorCode::DimensionMismatch, "rasterize needs a 1D density");
    require(!a.is_point_mass(), ErrorCode::UnsupportedDensity,
            "point masses are never rasterized; use DiracMixture/SampleCloud directly");

    const double clipped = a.cdf(g.x_min()) + (1.0 - a.cdf(g.x_max()));
    require(clipped < tail_tol, ErrorCode::TailMassTooLarge,
            "grid window clips " + std::to_string(clipped) + " of the analytic mass");

    std::vector<double> values(g.n_cells());
    if (const auto* gauss = a.get_if<GaussianND>()) {
        for (int i = 0; i < g.n_cells(); ++i)
            values[i] = std::max(0.0, gaussian_interval_mass(gauss->mean[0], gauss->variance,
                                                             g.left_edge(i), g.right_edge(i)));
    } else if (const auto* mix = a.get_if<GaussianMixture1D>()) {
        for (int i = 0; i < g.n_cells(); ++i) {
            double m = 0.0;
            for (std::size_t c = 0; c < mix->means.size(); ++c)
                m += mix->weights[c] * gaussian_interval_mass(mix->means[c], mix->variances[c],
                                                              g.left_edge(i), g.right_edge(i));
            values[i] = std::max(0.0, m);
        }
    } else {
        double prev = a.cdf(g.x_min());
        for (int i = 0; i < g.n_cells(); ++i) {
            const double next = a.cdf(g.right_edge(i));
            values[i] = std::max(0.0, next - prev);
            prev = next;
        }
    }
    for (double& v : values) v /= g.h();
    return GridDensity1D(g, std::move(values), /*normalize=*/true);
}

}  // namespace edlab
