#include "edlab/special.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <thread>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "edlab/errors.hpp"

namespace edlab {

GaussRule GaussRule::mapped(double a, double b) const {
    GaussRule out;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    out.nodes.reserve(nodes.size());
    out.weights.reserve(weights.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        out.nodes.push_back(mid + half * nodes[i]);
        out.weights.push_back(half * weights[i]);
    }
    return out;
}

namespace {

GaussRule compute_gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n, seeded with the Chebyshev-like estimate.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

std::mutex g_rule_mutex;
std::map<int, GaussRule> g_rules;

}  // namespace

const GaussRule& gauss_legendre(int n) {
    require(n >= 1 && n <= 4096, ErrorCode::InvalidArgument, "gauss_legendre order out of range");
    std::scoped_lock lock(g_rule_mutex);
    auto it = g_rules.find(n);
    if (it == g_rules.end()) it = g_rules.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

double gauss_integrate_panels(const std::function<double(double)>& f, double a, double b,
                              int panels, int n) {
    double acc = 0.0;
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) acc += gauss_integrate(f, a + p * w, a + (p + 1) * w, n);
    return acc;
}

double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int n) {
    const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    g_threads.store(std::clamp(n, 1, hw));
}

int thread_count() { return g_threads.load(); }

double blocked_sum(std::size_t count, std::size_t block_size,
                   const std::function<double(std::size_t, std::size_t)>& block_fn) {
    if (count == 0) return 0.0;
    block_size = std::max<std::size_t>(1, block_size);
    const std::size_t n_blocks = (count + block_size - 1) / block_size;
    std::vector<double> partial(n_blocks, 0.0);
    const int workers = thread_count();
    if (workers <= 1 || n_blocks == 1) {
        for (std::size_t b = 0; b < n_blocks; ++b)
            partial[b] = block_fn(b * block_size, std::min(count, (b + 1) * block_size));
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1))
                partial[b] = block_fn(b * block_size, std::min(count, (b + 1) * block_size));
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < workers - 1; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }
    // Reduction order is fixed by block index, so the result is identical for
    // every thread count.
    return pairwise_sum(partial);
}

double hyp1f1(double a, double b, double z) {
    require(b > 0.0, ErrorCode::InvalidArgument, "hyp1f1 requires b > 0");
    require(z >= 0.0, ErrorCode::InvalidArgument, "hyp1f1 requires z >= 0");
    double term = 1.0, acc = 1.0;
    for (int k = 0; k < 600; ++k) {
        term *= (a + k) * z / ((b + k) * (k + 1.0));
        acc += term;
        if (std::abs(term) <= 1e-17 * std::abs(acc) && k > 2) return acc;
    }
    return acc;
}

double gaussian_abs_moment(int n, double q, double s, double delta) {
    require(n >= 1, ErrorCode::DimensionMismatch, "dimension must be >= 1");
    require(q > -static_cast<double>(n), ErrorCode::OrderNotAdmissible,
            "|Z|^q not integrable for q <= -n");
    if (s == 0.0) fail(ErrorCode::InvalidArgument, "gaussian_abs_moment needs s > 0");
    // E|Z|^q = s^q 2^{q/2} e^{-d^2/2} Gamma((n+q)/2)/Gamma(n/2) 1F1((n+q)/2; n/2; d^2/2).
    const double half = 0.5 * delta * delta;
    const double g = gamma_ratio(0.5 * (n + q), 0.5 * n);
    return std::pow(s, q) * std::pow(2.0, 0.5 * q) * std::exp(-half) * g *
           hyp1f1(0.5 * (n + q), 0.5 * n, half);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
    require(p > 0.0 && p < 1.0, ErrorCode::InvalidArgument, "quantile needs p in (0,1)");
    return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

double gamma_p(double a, double x) { return boost::math::gamma_p(a, x); }
double gamma_q(double a, double x) { return boost::math::gamma_q(a, x); }
double gamma_p_inv(double a, double p) { return boost::math::gamma_p_inv(a, p); }

double beta_inc(double a, double b, double x) { return boost::math::ibeta(a, b, x); }
double beta_inc_inv(double a, double b, double p) { return boost::math::ibeta_inv(a, b, p); }

double gamma_ratio(double a, double b) { return std::exp(std::lgamma(a) - std::lgamma(b)); }

double brent_root(const std::function<double(double)>& f, double a, double b, double tol,
                  int max_iter) {
    double fa = f(a), fb = f(b);
    require(fa * fb <= 0.0, ErrorCode::InvalidArgument, "brent_root: root not bracketed");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa;
            d = b - a; e = d;
        }
    }
    return b;
}

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
        case ErrorCode::OrderNotAdmissible: return "OrderNotAdmissible";
        case ErrorCode::NonPositiveMean: return "NonPositiveMean";
        case ErrorCode::TailMassTooLarge: return "TailMassTooLarge";
        case ErrorCode::MomentDiverges: return "MomentDiverges";
        case ErrorCode::StabilityViolation: return "StabilityViolation";
        case ErrorCode::NegativeDensityBeyondTolerance: return "NegativeDensityBeyondTolerance";
        case ErrorCode::InsufficientPoints: return "InsufficientPoints";
        case ErrorCode::IncompatiblePrediction: return "IncompatiblePrediction";
        case ErrorCode::UnsupportedDensity: return "UnsupportedDensity";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace edlab
