#include "edlab/grid.hpp"

#include <algorithm>
#include <cmath>

#include "edlab/errors.hpp"
#include "edlab/special.hpp"

namespace edlab {

Grid1D::Grid1D(double x_min, double x_max, int n_cells)
    : x_min_(x_min), x_max_(x_max), n_cells_(n_cells) {
    require(x_min < x_max, ErrorCode::InvalidArgument, "grid needs x_min < x_max");
    require(n_cells >= 8, ErrorCode::InvalidArgument, "grid needs at least 8 cells");
    require(std::isfinite(x_min) && std::isfinite(x_max), ErrorCode::InvalidArgument,
            "grid bounds must be finite");
    h_ = (x_max - x_min) / n_cells;
}

bool Grid1D::operator==(const Grid1D& other) const {
    return n_cells_ == other.n_cells_ && x_min_ == other.x_min_ && x_max_ == other.x_max_;
}

GridDensity1D::GridDensity1D(Grid1D grid, std::vector<double> values, bool normalize)
    : grid_(grid), values_(std::move(values)) {
    require(static_cast<int>(values_.size()) == grid_.n_cells(), ErrorCode::InvalidArgument,
            "value count must match grid cells");
    double m = 0.0;
    for (double v : values_) {
        require(std::isfinite(v), ErrorCode::InvalidArgument, "density value not finite");
        require(v >= 0.0, ErrorCode::InvalidArgument, "density value negative");
        m += v;
    }
    m *= grid_.h();
    if (normalize) {
        require(m > 0.0, ErrorCode::InvalidArgument, "cannot normalize zero density");
        for (double& v : values_) v /= m;
        m = 1.0;
    }
    require(std::abs(m - 1.0) <= kMassTolerance, ErrorCode::InvalidArgument,
            "density mass outside [1-1e-8, 1+1e-8]");
}

double GridDensity1D::mass() const {
    double m = 0.0;
    for (double v : values_) m += v;
    return m * grid_.h();
}

double GridDensity1D::mean() const {
    double m = 0.0;
    for (int i = 0; i < grid_.n_cells(); ++i) m += grid_.center(i) * values_[i];
    return m * grid_.h();
}

double GridDensity1D::abs_moment(double s) const {
    require(s > 0.0, ErrorCode::InvalidArgument, "moment order must be positive");
    auto anti = [s](double x) {
        // antiderivative of |x|^s: sgn(x) |x|^{s+1} / (s+1)
        return std::copysign(std::pow(std::abs(x), s + 1.0) / (s + 1.0), x);
    };
    double m = 0.0;
    for (int i = 0; i < grid_.n_cells(); ++i)
        m += values_[i] * (anti(grid_.right_edge(i)) - anti(grid_.left_edge(i)));
    return m;
}

double GridDensity1D::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

CdfCurve::CdfCurve(Grid1D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    require(static_cast<int>(values_.size()) == grid_.n_cells(), ErrorCode::InvalidArgument,
            "CDF value count must match grid cells");
    double prev = 0.0;
    for (double v : values_) {
        require(v >= prev - 1e-12, ErrorCode::InvalidArgument, "CDF must be nondecreasing");
        require(v <= 1.0 + 1e-9, ErrorCode::InvalidArgument, "CDF exceeds 1");
        prev = v;
    }
    require(values_.back() >= 1.0 - GridDensity1D::kMassTolerance, ErrorCode::InvalidArgument,
            "CDF must reach 1 at the right edge");
}

double CdfCurve::segment_value(int i, double t) const {
    const double left = (i == 0) ? 0.0 : values_[i - 1];
    return left + t * (values_[i] - left);
}

double CdfCurve::at(double x) const {
    if (x <= grid_.x_min()) return 0.0;
    if (x >= grid_.x_max()) return values_.back();
    const double u = (x - grid_.x_min()) / grid_.h();
    int i = std::clamp(static_cast<int>(u), 0, grid_.n_cells() - 1);
    return segment_value(i, u - i);
}

namespace {
// Exact integral over one linear segment F(t) = a + (b-a) t, t in [t0,t1],
// scaled by cell width h, of g(F).
double seg_int(double a, double b, double t0, double t1, double h, int kind) {
    auto prim = [&](double t) {
        const double F = a + (b - a) * t;
        const double s = b - a;
        switch (kind) {
            case 0:  // F
                return (s == 0.0) ? a * t : (F * F) / (2.0 * s);
            case 1:  // 1 - F
                return (s == 0.0) ? (1.0 - a) * t : -((1.0 - F) * (1.0 - F)) / (2.0 * s);
            case 2:  // F (1 - F)
                return (s == 0.0) ? a * (1.0 - a) * t : (F * F / 2.0 - F * F * F / 3.0) / s;
            default:  // (1 - F)^2
                return (s == 0.0) ? (1.0 - a) * (1.0 - a) * t
                                  : -((1.0 - F) * (1.0 - F) * (1.0 - F)) / (3.0 * s);
        }
    };
    return h * (prim(t1) - prim(t0));
}

double integrate_kind(const Grid1D& grid, const std::vector<double>& values, double a, double b,
                      int kind) {
    double acc = 0.0;
    const double h = grid.h();
    a = std::max(a, grid.x_min());
    b = std::min(b, grid.x_max());
    if (a >= b) return 0.0;
    const int i0 = std::clamp(static_cast<int>((a - grid.x_min()) / h), 0, grid.n_cells() - 1);
    const int i1 =
        std::clamp(static_cast<int>((b - grid.x_min()) / h - 1e-12), 0, grid.n_cells() - 1);
    for (int i = i0; i <= i1; ++i) {
        const double lo = (i == i0) ? (a - grid.left_edge(i)) / h : 0.0;
        const double hi = (i == i1) ? (b - grid.left_edge(i)) / h : 1.0;
        const double fl = (i == 0) ? 0.0 : values[i - 1];
        acc += seg_int(fl, values[i], lo, hi, h, kind);
    }
    return acc;
}
}  // namespace

double CdfCurve::integrate(double a, double b) const {
    return integrate_kind(grid_, values_, a, b, 0);
}


double CdfCurve::integrate_one_minus(double a, double b) const {
    return integrate_kind(grid_, values_, a, b, 1);
}

double CdfCurve::integrate_f_times_one_minus(double a, double b) const {
    return integrate_kind(grid_, values_, a, b, 2);
}

double CdfCurve::integrate_one_minus_squared(double a, double b) const {
    return integrate_kind(grid_, values_, a, b, 3);
}

CdfCurve cdf_from_density(const GridDensity1D& f) {
    const Grid1D& g = f.grid();
    std::vector<double> F(g.n_cells());
    double acc = 0.0;
    for (int i = 0; i < g.n_cells(); ++i) {
        acc += f.value(i) * g.h();
        F[i] = std::min(acc, 1.0);
    }
    return CdfCurve(g, std::move(F));
}

double mean_from_cdf(const CdfCurve& F) {
    const Grid1D& g = F.grid();
    double mean = 0.0;
    if (g.x_min() < 0.0) mean -= F.integrate(g.x_min(), std::min(0.0, g.x_max()));
    if (g.x_max() > 0.0) mean += F.integrate_one_minus(std::max(0.0, g.x_min()), g.x_max());
    return mean;
}

}  // namespace edlab
