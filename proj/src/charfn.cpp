#include "edlab/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "edlab/errors.hpp"
#include "edlab/special.hpp"

namespace edlab {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double sinc(double z) { return std::abs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z; }

}  // namespace

GaussianMixCharFn::GaussianMixCharFn(std::vector<GaussComponent> comps)
    : comps_(std::move(comps)) {
    require(!comps_.empty(), ErrorCode::InvalidArgument, "empty mixture");
    dim_ = static_cast<int>(comps_.front().mean.size());
    double w = 0.0;
    for (const auto& c : comps_) {
        require(static_cast<int>(c.mean.size()) == dim_, ErrorCode::DimensionMismatch,
                "mixture component dimension mismatch");
        require(c.var >= 0.0 && c.weight > 0.0, ErrorCode::InvalidArgument,
                "component needs weight > 0, var >= 0");
        w += c.weight;
    }
    require(std::abs(w - 1.0) <= 1e-10, ErrorCode::InvalidArgument,
            "mixture weights must sum to 1");
}

std::complex<double> GaussianMixCharFn::phi(std::span<const double> xi) const {
    const double rho2 = dot(xi, xi);
    std::complex<double> acc{0.0, 0.0};
    for (const auto& c : comps_) {
        const double phase = dot(xi, c.mean);
        acc += c.weight * std::exp(-0.5 * c.var * rho2) *
               std::complex<double>(std::cos(phase), -std::sin(phase));
    }
    return acc;
}

std::vector<double> GaussianMixCharFn::mean() const {
    std::vector<double> m(dim_, 0.0);
    for (const auto& c : comps_)
        for (int k = 0; k < dim_; ++k) m[k] += c.weight * c.mean[k];
    return m;
}

double GaussianMixCharFn::modulus_bound(double rho) const {
    double acc = 0.0;
    for (const auto& c : comps_) acc += c.weight * std::exp(-0.5 * c.var * rho * rho);
    return acc;
}

double GaussianMixCharFn::modulus_decay_coeff() const {
    double acc = 0.0;
    for (const auto& c : comps_) {
        if (c.var <= 0.0) return std::numeric_limits<double>::infinity();
        acc += c.weight * std::exp(-0.5) / std::sqrt(c.var);  // sup of rho e^{-v rho^2/2}
    }
    return acc;
}

std::vector<double> GaussianMixCharFn::symmetry_axis() const {
    if (dim_ == 1) return {1.0};
    // direction of the line carrying all component means, if one exists
    const auto& base = comps_.front().mean;
    std::vector<double> dir(dim_, 0.0);
    for (const auto& c : comps_) {
        for (int k = 0; k < dim_; ++k) dir[k] = c.mean[k] - base[k];
        if (norm(dir) > 1e-12) break;
    }
    const double len = norm(dir);
    if (len == 0.0) return {};  // all means coincide: fully radial about them
    for (double& v : dir) v /= len;
    for (const auto& c : comps_) {
        std::vector<double> off(dim_);
        for (int k = 0; k < dim_; ++k) off[k] = c.mean[k] - base[k];
        const double along = dot(off, dir);
        double resid = 0.0;
        for (int k = 0; k < dim_; ++k) {
            const double r = off[k] - along * dir[k];
            resid += r * r;
        }
        if (std::sqrt(resid) > 1e-9) return {};  // not collinear
    }
    return dir;
}

std::complex<double> GridCharFn::phi(std::span<const double> xi) const {
    const double x = xi[0];
    const Grid1D& g = f_->grid();
    // sum_i f_i h e^{-i xi x_i} via incremental rotation, one cmul per cell
    const std::complex<double> step{std::cos(x * g.h()), -std::sin(x * g.h())};
    std::complex<double> rot{std::cos(x * g.center(0)), -std::sin(x * g.center(0))};
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i < g.n_cells(); ++i) {
        acc += f_->value(i) * rot;
        rot *= step;
    }
    return acc * (g.h() * sinc(0.5 * x * g.h()));
}

double GridCharFn::modulus_bound(double rho) const {
    const double z = 0.5 * std::abs(rho) * f_->grid().h();
    return z < 1.0 ? 1.0 : 1.0 / z;
}

std::complex<double> CloudCharFn::phi(std::span<const double> xi) const {
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i < c_->size(); ++i) {
        double phase = 0.0;
        for (int k = 0; k < c_->dim(); ++k) phase += xi[k] * c_->coord(i, k);
        acc += c_->weights()[i] * std::complex<double>(std::cos(phase), -std::sin(phase));
    }
    return acc;
}

std::vector<double> CloudCharFn::mean() const {
    std::vector<double> m(c_->dim(), 0.0);
    for (int i = 0; i < c_->size(); ++i)
        for (int k = 0; k < c_->dim(); ++k) m[k] += c_->weights()[i] * c_->coord(i, k);
    return m;
}

CharPair::CharPair(const CharFunction& f, const CharFunction& g) : f_(&f), g_(&g) {
    require(f.dim() == g.dim(), ErrorCode::DimensionMismatch,
            "pair must share one dimension");
    dim_ = f.dim();
    const auto mf = f.mean();
    const auto mg = g.mean();
    std::vector<double> d(dim_);
    for (int k = 0; k < dim_; ++k) d[k] = mg[k] - mf[k];
    mean_gap_ = norm(d);

    axis_.assign(dim_, 0.0);
    if (mean_gap_ > 1e-12) {
        for (int k = 0; k < dim_; ++k) axis_[k] = d[k] / mean_gap_;
    } else {
        auto af = f.symmetry_axis();
        auto ag = g.symmetry_axis();
        if (!af.empty()) axis_ = af;
        else if (!ag.empty()) axis_ = ag;
        else axis_[0] = 1.0;
    }
    if (dim_ >= 2) {
        auto af = f.symmetry_axis();
        auto ag = g.symmetry_axis();
        auto aligned = [&](const std::vector<double>& a) {
            if (a.empty()) return true;  // radial or unknown-but-declared-symmetric
            return std::abs(std::abs(dot(a, axis_)) - 1.0) < 1e-9;
        };
        require(aligned(af) && aligned(ag), ErrorCode::DimensionMismatch,
                "pair is not axially symmetric about a common axis");
        // any unit vector orthogonal to the axis
        int k_min = 0;
        for (int k = 1; k < dim_; ++k)
            if (std::abs(axis_[k]) < std::abs(axis_[k_min])) k_min = k;
        perp_.assign(dim_, 0.0);
        perp_[k_min] = 1.0;
        const double along = dot(perp_, axis_);
        for (int k = 0; k < dim_; ++k) perp_[k] -= along * axis_[k];
        const double len = norm(perp_);
        for (double& v : perp_) v /= len;
    }
}

double CharPair::diff_sq(double rho, double u) const {
    std::vector<double> xi(dim_);
    if (dim_ == 1) {
        xi[0] = rho * u;
    } else {
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        for (int k = 0; k < dim_; ++k) xi[k] = rho * (u * axis_[k] + s * perp_[k]);
    }
    return std::norm(f_->phi(xi) - g_->phi(xi));
}

double CharPair::modulus_bound_sq(double rho) const {
    const double b = f_->modulus_bound(rho) + g_->modulus_bound(rho);
    return std::min(4.0, b * b);
}

GaussianMixCharFn charfn_from_analytic(const AnalyticDensity& a) {
    if (const auto* g = a.get_if<GaussianND>()) {
        return GaussianMixCharFn({GaussComponent{1.0, g->mean, g->variance}});
    }
    if (const auto* d = a.get_if<DiracMixture>()) {
        std::vector<GaussComponent> comps;
        for (std::size_t i = 0; i < d->points.size(); ++i)
            comps.push_back({d->weights[i], d->points[i], 0.0});
        return GaussianMixCharFn(std::move(comps));
    }
    if (const auto* m = a.get_if<GaussianMixture1D>()) {
        std::vector<GaussComponent> comps;
        for (std::size_t i = 0; i < m->means.size(); ++i)
            comps.push_back({m->weights[i], {m->means[i]}, m->variances[i]});
        return GaussianMixCharFn(std::move(comps));
    }
    fail(ErrorCode::UnsupportedDensity,
         "closed-form characteristic function only for Gaussian/Dirac families");
}

}  // namespace edlab
