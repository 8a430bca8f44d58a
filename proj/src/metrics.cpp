#include "edlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "edlab/errors.hpp"
#include "edlab/special.hpp"

namespace edlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_alpha(double alpha) {
    require(alpha > 0.0 && alpha < 2.0, ErrorCode::AlphaOutOfRange, "alpha must lie in (0,2)");
}

// int_Xi^inf rho^{n-1-q} mb^2(rho) drho for the pair bound mb = min(2, C/rho).
double tail_integral(double C, int n, double q, double Xi) {
    if (!std::isfinite(C)) {
        if (q <= static_cast<double>(n)) return kInf;
        return 4.0 * std::pow(Xi, n - q) / (q - n);
    }
    double acc = 0.0;
    const double split = 0.5 * C;
    if (Xi < split) {
        const double p = static_cast<double>(n) - q;
        acc += 4.0 * ((p == 0.0) ? std::log(split / Xi)
                                 : (std::pow(split, p) - std::pow(Xi, p)) / p);
        Xi = split;
    }
    // q + 2 - n > 0 for every weight used here
    acc += C * C * std::pow(Xi, n - 2.0 - q) / (q + 2.0 - n);
    return acc;
}

struct WeightedIntegral {
    double value = 0.0;
    double err = 0.0;
    double tail = 0.0;
};

// coeff * int_{R^n} |dphi(xi)|^2 / |xi|^q dxi via the (rho, u) reduction.
WeightedIntegral weighted_char_integral(const CharPair& pair, double decay_coeff, double q,
                                        const FourierGrid& fg, double coeff) {
    const int n = pair.dim();
    const double gap2 = pair.mean_gap() * pair.mean_gap();
    auto B = [&](double rho) {
        return angular_average(n, [&](double u) {
            if (rho < 1e-8) return u * u * gap2;  // xi -> 0 limit of |dphi|^2/rho^2
            return pair.diff_sq(rho, u) / (rho * rho);
        });
    };
    const double beta = n + 1.0 - q;
    const auto radial = fg.integrate_power(beta, B);
    WeightedIntegral out;
    const double area = sphere_area(n);
    out.value = coeff * area * radial.value;
    out.err = coeff * area * radial.error_estimate;
    out.tail = coeff * area * tail_integral(decay_coeff, n, q, fg.xi_max());
    return out;
}

double pair_decay_coeff(const CharFunction& f, const CharFunction& g) {
    return f.modulus_decay_coeff() + g.modulus_decay_coeff();
}

DistanceValue finish(double raw, Form form, double err, double tail = 0.0) {
    DistanceValue v;
    v.value = std::max(0.0, raw);
    v.form = form;
    v.error_estimate = std::max(err, raw < 0.0 ? -raw : 0.0);
    v.fourier_tail_bound = tail;
    return v;
}

}  // namespace

const char* to_string(Form f) {
    switch (f) {
        case Form::cdf: return "cdf";
        case Form::fourier: return "fourier";
        case Form::expectation: return "expectation";
        case Form::pairwise: return "pairwise";
    }
    return "?";
}

MetricConstants MetricConstants::make(int n, double alpha) {
    require(n >= 1, ErrorCode::DimensionMismatch, "dimension must be >= 1");
    check_alpha(alpha);
    MetricConstants mc;
    mc.n = n;
    mc.alpha = alpha;
    const double gamma_ratio_pos = gamma_ratio(0.5 * (n + alpha), 0.5 * (2.0 - alpha));
    mc.c = alpha * std::pow(2.0, alpha) * gamma_ratio_pos /
           (2.0 * std::pow(kPi, 0.5 * n));
    mc.A = mc.c * sphere_area(n);
    mc.negative_order_ok = (n - 2.0 + alpha > 0.0);
    if (mc.negative_order_ok) {
        mc.d = std::pow(2.0, alpha) / (4.0 * std::pow(kPi, 0.5 * n)) *
               gamma_ratio(0.5 * (n - 2.0 + alpha), 0.5 * (2.0 - alpha));
        mc.B = mc.c / mc.d;
        const double inv = 1.0 / (4.0 - alpha);
        mc.D = std::pow(mc.A, 2.0 * inv) * std::pow(mc.B, (2.0 - alpha) * inv) *
               (std::pow(2.0, (2.0 - alpha) * inv) / (2.0 - alpha) +
                std::pow(0.5, 2.0 * inv));
    }
    return mc;
}

double MetricConstants::d_checked() const {
    require(negative_order_ok, ErrorCode::OrderNotAdmissible,
            "d_{n,alpha} needs n - 2 + alpha > 0");
    return d;
}

double MetricConstants::B_checked() const {
    require(negative_order_ok, ErrorCode::OrderNotAdmissible,
            "B_{n,alpha} needs n - 2 + alpha > 0");
    return B;
}

double MetricConstants::D_checked() const {
    require(negative_order_ok, ErrorCode::OrderNotAdmissible,
            "D_{n,alpha} needs n - 2 + alpha > 0");
    return D;
}

// --- Cramer ------------------------------------------------------------------

DistanceValue cramer_cdf(const CdfCurve& F, const CdfCurve& G) {
    require(F.grid() == G.grid(), ErrorCode::GridMismatch, "CDFs must share one grid");
    const int n = F.grid().n_cells();
    const double h = F.grid().h();
    auto trapz = [&](int stride) {
        // nodes x_min, then every `stride`-th right edge; F = G = 0 at x_min
        double acc = 0.0;
        double prev = 0.0;
        for (int i = stride - 1; i < n; i += stride) {
            const double d = F.values()[i] - G.values()[i];
            acc += 0.5 * (prev + d * d);
            prev = d * d;
        }
        return acc * h * stride;
    };
    const double fine = trapz(1);
    const double coarse = (n % 2 == 0) ? trapz(2) : fine;
    return finish(fine, Form::cdf, std::abs(fine - coarse) / 3.0);
}

DistanceValue cramer_expectation(const SampleCloud& X, const SampleCloud& Y) {
    require(X.dim() == 1 && Y.dim() == 1, ErrorCode::DimensionMismatch,
            "expectation form is one-dimensional");
    auto cross = [](const SampleCloud& A, const SampleCloud& B) {
        return blocked_sum(A.size(), 64, [&](std::size_t lo, std::size_t hi) {
            double acc = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                double row = 0.0;
                for (int j = 0; j < B.size(); ++j)
                    row += B.weights()[j] *
                           std::abs(A.coord(static_cast<int>(i), 0) - B.coord(j, 0));
                acc += A.weights()[i] * row;
            }
            return acc;
        });
    };
    const double exy = cross(X, Y);
    const double exx = cross(X, X);
    const double eyy = cross(Y, Y);
    const double raw = exy - 0.5 * exx - 0.5 * eyy;
    return finish(raw, Form::expectation, 1e-14 * (exy + 0.5 * exx + 0.5 * eyy));
}

DistanceValue cramer_fourier(const GridDensity1D& f, const GridDensity1D& g,
                             const FourierGrid& fg) {
    require(f.grid() == g.grid(), ErrorCode::GridMismatch, "densities must share one grid");
    GridCharFn cf(f), cg(g);
    CharPair pair(cf, cg);
    const auto r = weighted_char_integral(pair, pair_decay_coeff(cf, cg), 2.0, fg,
                                          1.0 / (2.0 * kPi));
    return finish(r.value, Form::fourier, r.err, r.tail);
}

// --- Gini --------------------------------------------------------------------

GiniResult gini(const SampleCloud& X) {
    require(X.dim() == 1, ErrorCode::DimensionMismatch, "Gini is one-dimensional");
    double mean = 0.0;
    for (int i = 0; i < X.size(); ++i) {
        require(X.coord(i, 0) >= -1e-12, ErrorCode::InvalidArgument,
                "Gini needs nonnegative support");
        mean += X.weights()[i] * X.coord(i, 0);
    }
    require(mean > 0.0, ErrorCode::NonPositiveMean, "Gini needs E(X) > 0");

    double pairwise = 0.0;
    for (int i = 0; i < X.size(); ++i) {
        double row = 0.0;
        for (int j = 0; j < X.size(); ++j)
            row += X.weights()[j] * std::abs(X.coord(i, 0) - X.coord(j, 0));
        pairwise += X.weights()[i] * row;
    }

    // exact int_0^inf (1 - F)^2 dx for the step CDF
    std::vector<int> order(X.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return X.coord(a, 0) < X.coord(b, 0); });
    double integral = 0.0;
    double prev_x = 0.0;
    double F = 0.0;
    for (int idx : order) {
        const double x = std::max(0.0, X.coord(idx, 0));
        integral += (1.0 - F) * (1.0 - F) * (x - prev_x);
        F += X.weights()[idx];
        prev_x = x;
    }

    GiniResult r;
    r.expectation_form = pairwise / (2.0 * mean);
    r.cdf_form = 1.0 - integral / mean;
    r.discrepancy = std::abs(r.expectation_form - r.cdf_form);
    return r;
}

GiniResult gini(const CdfCurve& F) {
    const Grid1D& g = F.grid();
    require(g.x_min() >= -1e-12, ErrorCode::InvalidArgument, "Gini needs nonnegative support");
    const double lo = std::max(0.0, g.x_min());
    const double mean = F.integrate_one_minus(lo, g.x_max());
    require(mean > 0.0, ErrorCode::NonPositiveMean, "Gini needs E(X) > 0");
    GiniResult r;
    // E|X - X'| = 2 int F (1 - F) dx
    r.expectation_form = F.integrate_f_times_one_minus(lo, g.x_max()) / mean;
    r.cdf_form = 1.0 - F.integrate_one_minus_squared(lo, g.x_max()) / mean;
    r.discrepancy = std::abs(r.expectation_form - r.cdf_form);
    return r;
}

CdfCurve min_cdf(const CdfCurve& F, const CdfCurve& G) {
    require(F.grid() == G.grid(), ErrorCode::GridMismatch, "CDFs must share one grid");
    std::vector<double> H(F.values().size());
    for (std::size_t i = 0; i < H.size(); ++i)
        H[i] = 1.0 - (1.0 - F.values()[i]) * (1.0 - G.values()[i]);
    return CdfCurve(F.grid(), std::move(H));
}

// --- Energy, positive order --------------------------------------------------

DistanceValue energy_alpha_pairwise(const SampleCloud& X, const SampleCloud& Y, double alpha) {
    check_alpha(alpha);
    require(X.dim() == Y.dim(), ErrorCode::DimensionMismatch,
            "clouds must share one dimension");
    auto cross = [alpha](const SampleCloud& A, const SampleCloud& B) {
        return blocked_sum(A.size(), 64, [&](std::size_t lo, std::size_t hi) {
            double acc = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                double row = 0.0;
                for (int j = 0; j < B.size(); ++j) {
                    double d2 = 0.0;
                    for (int k = 0; k < A.dim(); ++k) {
                        const double d = A.coord(static_cast<int>(i), k) - B.coord(j, k);
                        d2 += d * d;
                    }
                    row += B.weights()[j] * std::pow(d2, 0.5 * alpha);
                }
                acc += A.weights()[i] * row;
            }
            return acc;
        });
    };
    const double exy = cross(X, Y);
    const double exx = cross(X, X);
    const double eyy = cross(Y, Y);
    return finish(2.0 * exy - exx - eyy, Form::pairwise, 1e-14 * (2.0 * exy + exx + eyy));
}

namespace {

// Exact cell-pair average of |x - y|^e in 1D from the second antiderivative
// G2(u) = sgn(u) |u|^{e+2} / ((e+1)(e+2)); the diagonal cell (kernel kink or
// integrable singularity) comes out analytically as well.
std::vector<double> kernel_row_1d(int n_cells, double h, double e) {
    const double denom = (e + 1.0) * (e + 2.0);
    auto G2 = [&](double u) {
        return std::copysign(std::pow(std::abs(u), e + 2.0) / denom, u);
    };
    std::vector<double> row(n_cells);
    for (int d = 0; d < n_cells; ++d)
        row[d] = (G2((d + 1.0) * h) - 2.0 * G2(d * h) + G2((d - 1.0) * h)) / (h * h);
    return row;
}

double grid_quadratic_form(const GridDensity1D& f, const GridDensity1D& g, double e) {
    require(f.grid() == g.grid(), ErrorCode::GridMismatch, "densities must share one grid");
    const int n = f.grid().n_cells();
    const double h = f.grid().h();
    const std::vector<double> row = kernel_row_1d(n, h, e);
    std::vector<double> delta(n);
    for (int i = 0; i < n; ++i) delta[i] = f.value(i) - g.value(i);
    const double q = blocked_sum(n, 64, [&](std::size_t lo, std::size_t hi) {
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            double r = 0.0;
            for (int j = 0; j < n; ++j)
                r += delta[j] * row[std::abs(static_cast<int>(i) - j)];
            acc += delta[i] * r;
        }
        return acc;
    });
    return q * h * h;
}

}  // namespace

DistanceValue energy_alpha_grid(const GridDensity1D& f, const GridDensity1D& g, double alpha) {
    check_alpha(alpha);
    const double q = grid_quadratic_form(f, g, alpha);
    return finish(-q, Form::pairwise, 1e-13 * (1.0 + std::abs(q)));
}

DistanceValue energy_alpha_grid(const RasterND& f, const RasterND& g, double alpha) {
    check_alpha(alpha);
    const double q = kernel_quadratic_form(f, g, alpha);
    return finish(-q, Form::pairwise, 2e-3 * std::abs(q) + 1e-15);
}

DistanceValue energy_alpha_fourier(const CharFunction& f, const CharFunction& g, double alpha,
                                   const FourierGrid& fg) {
    check_alpha(alpha);
    const int n = f.dim();
    const MetricConstants mc = MetricConstants::make(n, alpha);
    CharPair pair(f, g);
    const auto r = weighted_char_integral(pair, pair_decay_coeff(f, g), n + alpha, fg, mc.c);
    return finish(r.value, Form::fourier, r.err, r.tail);
}

// --- Energy, negative order --------------------------------------------------

namespace {
void check_negative_order(int n, double alpha) {
    check_alpha(alpha);
    require(n - 2.0 + alpha > 0.0, ErrorCode::OrderNotAdmissible,
            "negative order needs n - 2 + alpha > 0");
}
}  // namespace

DistanceValue energy_negative_order(const RasterND& f, const RasterND& g, double alpha) {
    check_negative_order(f.dim(), alpha);
    const double q = kernel_quadratic_form(f, g, -(2.0 - alpha));
    return finish(q, Form::pairwise, 2e-3 * std::abs(q) + 1e-15);
}

DistanceValue energy_negative_order(const GridDensity1D& f, const GridDensity1D& g,
                                    double alpha) {
    check_negative_order(1, alpha);
    const double q = grid_quadratic_form(f, g, -(2.0 - alpha));
    return finish(q, Form::pairwise, 1e-13 * (1.0 + std::abs(q)));
}

DistanceValue energy_negative_order_fourier(const CharFunction& f, const CharFunction& g,
                                            double alpha, const FourierGrid& fg) {
    const int n = f.dim();
    check_negative_order(n, alpha);
    const MetricConstants mc = MetricConstants::make(n, alpha);
    CharPair pair(f, g);
    const auto r =
        weighted_char_integral(pair, pair_decay_coeff(f, g), n - 2.0 + alpha, fg, mc.d);
    return finish(r.value, Form::fourier, r.err, r.tail);
}

// --- d_1 ----------------------------------------------------------------------

DistanceValue d1_metric(const CharFunction& f, const CharFunction& g, const FourierGrid& fg) {
    CharPair pair(f, g);
    const int n = pair.dim();
    double best = pair.mean_gap();  // xi -> 0 limit
    const auto nodes = fg.nodes();
    auto scan_u = [&](double rho) {
        double m = 0.0;
        if (n == 1) {
            m = pair.diff_sq(rho, 1.0);
        } else {
            const int n_ang = 33;
            for (int k = 0; k < n_ang; ++k) {
                const double u = -1.0 + 2.0 * k / (n_ang - 1.0);
                m = std::max(m, pair.diff_sq(rho, u));
            }
        }
        return std::sqrt(m) / rho;
    };
    for (double rho : nodes) best = std::max(best, scan_u(rho));
    // beyond the cutoff, |dphi|/rho <= mb(xi_max)/xi_max and decreasing
    const double tail = std::sqrt(pair.modulus_bound_sq(fg.xi_max())) / fg.xi_max();
    DistanceValue v;
    v.value = best;
    v.form = Form::fourier;
    v.error_estimate = 1e-6 * best;  // sup on a dense grid; refinement-level slack
    v.fourier_tail_bound = std::max(0.0, tail - best);
    return v;
}

// --- Interpolation bound -------------------------------------------------------

double InterpolationBound::two_term(double R) const {
    require(R > 0.0, ErrorCode::InvalidArgument, "R must be positive");
    return constants.A * d1 * d1 * std::pow(R, 2.0 - constants.alpha) / (2.0 - constants.alpha) +
           constants.B_checked() * energy_negative / (R * R);
}

InterpolationBound interpolation_bound(const CharFunction& f, const CharFunction& g, double alpha,
                                       const FourierGrid& fg) {
    const int n = f.dim();
    check_negative_order(n, alpha);
    InterpolationBound out;
    out.constants = MetricConstants::make(n, alpha);
    out.lhs = energy_alpha_fourier(f, g, alpha, fg).value;
    out.energy_negative = energy_negative_order_fourier(f, g, alpha, fg).value;
    out.d1 = d1_metric(f, g, fg).value;
    const double inv = 1.0 / (4.0 - alpha);
    out.rhs = out.constants.D_checked() * std::pow(out.d1, 4.0 * inv) *
              std::pow(out.energy_negative, (2.0 - alpha) * inv);
    out.holds = out.lhs <= out.rhs * (1.0 + 1e-6) + 1e-14;
    return out;
}

FourierGrid default_fourier_grid(double cell_width, int n_nodes) {
    const double xi_max = (cell_width > 0.0) ? 40.0 / cell_width : 40.0;
    return FourierGrid::make(xi_max, n_nodes);
}

}  // namespace edlab
