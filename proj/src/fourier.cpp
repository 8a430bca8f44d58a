#include "edlab/fourier.hpp"

#include <cmath>

#include "edlab/errors.hpp"
#include "edlab/special.hpp"

namespace edlab {

FourierGrid FourierGrid::make(double xi_max, int n_nodes, int panels) {
    require(xi_max > 0.0, ErrorCode::InvalidArgument, "xi_max must be positive");
    require(n_nodes >= panels && panels >= 1, ErrorCode::InvalidArgument,
            "need at least one node per panel");
    FourierGrid g;
    g.xi_max_ = xi_max;
    g.order_ = std::max(4, n_nodes / panels);
    g.edges_.resize(panels + 1);
    // geometric panels: [0,a], [a,2a], ..., [xi_max/2, xi_max]
    g.edges_[0] = 0.0;
    for (int p = 1; p <= panels; ++p)
        g.edges_[p] = xi_max / std::pow(2.0, static_cast<double>(panels - p));
    return g;
}

std::vector<double> FourierGrid::nodes() const {
    std::vector<double> out;
    const GaussRule& rule = gauss_legendre(order_);
    for (std::size_t p = 0; p + 1 < edges_.size(); ++p) {
        const GaussRule m = rule.mapped(edges_[p], edges_[p + 1]);
        out.insert(out.end(), m.nodes.begin(), m.nodes.end());
    }
    return out;
}

std::vector<double> FourierGrid::weights() const {
    std::vector<double> out;
    const GaussRule& rule = gauss_legendre(order_);
    for (std::size_t p = 0; p + 1 < edges_.size(); ++p) {
        const GaussRule m = rule.mapped(edges_[p], edges_[p + 1]);
        out.insert(out.end(), m.weights.begin(), m.weights.end());
    }
    return out;
}

namespace {

// integral of rho^beta B(rho) over the first panel [0, a]: substitute
// rho = a u^k with k = 2/(1+beta), which turns the integrand into
// a^{1+beta} k u B(a u^k) -- smooth for every beta > -1.
double first_panel(double a, double beta, const std::function<double(double)>& B, int order) {
    const double k = 2.0 / (1.0 + beta);
    const GaussRule rule = gauss_legendre(order).mapped(0.0, 1.0);
    double acc = 0.0;
    for (int i = 0; i < order; ++i) {
        const double u = rule.nodes[i];
        acc += rule.weights[i] * k * u * B(a * std::pow(u, k));
    }
    return std::pow(a, 1.0 + beta) * acc;
}

double plain_panel(double lo, double hi, double beta, const std::function<double(double)>& B,
                   int order) {
    const GaussRule rule = gauss_legendre(order).mapped(lo, hi);
    double acc = 0.0;
    for (int i = 0; i < order; ++i)
        acc += rule.weights[i] * std::pow(rule.nodes[i], beta) * B(rule.nodes[i]);
    return acc;
}

}  // namespace

FourierGrid::Integral FourierGrid::integrate_power(double beta,
                                                   const std::function<double(double)>& B) const {
    require(beta > -1.0, ErrorCode::OrderNotAdmissible, "rho^beta not integrable at 0");
    auto run = [&](int order) {
        double acc = first_panel(edges_[1], beta, B, order);
        for (std::size_t p = 1; p + 1 < edges_.size(); ++p)
            acc += plain_panel(edges_[p], edges_[p + 1], beta, B, order);
        return acc;
    };
    Integral out;
    out.value = run(order_);
    const double coarse = run(std::max(4, order_ / 2));
    out.error_estimate = std::abs(out.value - coarse);
    return out;
}

double sphere_area(int n) {
    require(n >= 1, ErrorCode::DimensionMismatch, "dimension must be >= 1");
    return 2.0 * std::pow(kPi, 0.5 * n) / std::exp(std::lgamma(0.5 * n));
}

double angular_average(int n, const std::function<double(double)>& g, int order) {
    switch (n) {
        case 1:
            // two directions; conjugate symmetry makes them equal for |dphi|^2
            return 0.5 * (g(1.0) + g(-1.0));
        case 2: {
            // (1/2pi) int_0^{2pi} g(cos t) dt = (1/pi) int_0^pi g(cos t) dt
            const GaussRule rule = gauss_legendre(order).mapped(0.0, kPi);
            double acc = 0.0;
            for (int i = 0; i < order; ++i)
                acc += rule.weights[i] * g(std::cos(rule.nodes[i]));
            return acc / kPi;
        }
        case 3: {
            // (1/2) int_{-1}^{1} g(u) du
            const GaussRule rule = gauss_legendre(order).mapped(-1.0, 1.0);
            double acc = 0.0;
            for (int i = 0; i < order; ++i) acc += rule.weights[i] * g(rule.nodes[i]);
            return 0.5 * acc;
        }
        default:
            fail(ErrorCode::DimensionMismatch, "angular quadrature implemented for n <= 3");
    }
}

}  // namespace edlab
