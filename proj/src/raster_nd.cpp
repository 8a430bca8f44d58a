#include "edlab/raster_nd.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "edlab/errors.hpp"
#include "edlab/special.hpp"

namespace edlab {

namespace {

double sinc(double z) { return std::abs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z; }

double tri(double t) { return std::max(0.0, 1.0 - std::abs(t)); }

// Gaussian interval mass, tail-safe (mirrors the rasterize helper).
double interval_mass(double mean, double var, double l, double r) {
    const double sd = std::sqrt(2.0 * var);
    const double zl = (l - mean) / sd;
    const double zr = (r - mean) / sd;
    if (zl + zr > 0.0) return 0.5 * (std::erfc(zl) - std::erfc(zr));
    return 0.5 * (std::erf(zr) - std::erf(zl));
}

// Exact radial integral int_0^R r^{n-1+e} prod_k (1 - r w_k) dr for unit
// direction w with nonnegative components, R = 1/max(w).
double radial_closed_form(int n, double e, const std::array<double, 3>& w) {
    double sigma[4] = {1.0, 0.0, 0.0, 0.0};
    for (int k = 0; k < n; ++k) {
        for (int j = k + 1; j >= 1; --j) sigma[j] += sigma[j - 1] * w[k];
    }
    const double wmax = std::max({w[0], n > 1 ? w[1] : 0.0, n > 2 ? w[2] : 0.0});
    const double R = 1.0 / wmax;
    double acc = 0.0;
    double sign = 1.0;
    for (int j = 0; j <= n; ++j) {
        const double q = n + e + j;
        acc += sign * sigma[j] * std::pow(R, q) / q;
        sign = -sign;
    }
    return acc;
}

// I_e(0): radial direction exact, angles by quadrature.
double diagonal_tent_integral(int n, double e) {
    if (n == 1) return 2.0 / ((e + 1.0) * (e + 2.0));
    if (n == 2) {
        // 8-fold symmetry: theta in [0, pi/4], w = (cos t, sin t)
        return 8.0 * gauss_integrate(
                         [&](double t) {
                             return radial_closed_form(2, e, {std::cos(t), std::sin(t), 0.0});
                         },
                         0.0, 0.25 * kPi, 96);
    }
    // n == 3: first octant (factor 8), measure sin(theta) dtheta dphi
    const GaussRule tq = gauss_legendre(96).mapped(0.0, 0.5 * kPi);
    const GaussRule pq = gauss_legendre(96).mapped(0.0, 0.5 * kPi);
    double acc = 0.0;
    for (std::size_t i = 0; i < tq.nodes.size(); ++i) {
        const double st = std::sin(tq.nodes[i]);
        const double ct = std::cos(tq.nodes[i]);
        double inner = 0.0;
        for (std::size_t j = 0; j < pq.nodes.size(); ++j) {
            const std::array<double, 3> w{st * std::cos(pq.nodes[j]), st * std::sin(pq.nodes[j]),
                                          ct};
            inner += pq.weights[j] * radial_closed_form(3, e, w);
        }
        acc += tq.weights[i] * st * inner;
    }
    return 8.0 * acc;
}

double offset_tent_integral(int n, double e, const std::array<int, 3>& d) {
    const int order = (n == 3) ? 20 : 32;
    const GaussRule& base = gauss_legendre(order);
    std::array<GaussRule, 3> rules;
    for (int k = 0; k < n; ++k) rules[k] = base.mapped(d[k] - 1.0, d[k] + 1.0);
    double acc = 0.0;
    const int nk = order;
    for (int i = 0; i < nk; ++i) {
        const double t0 = rules[0].nodes[i];
        const double w0 = rules[0].weights[i] * tri(t0 - d[0]);
        if (n == 1) {
            acc += w0 * std::pow(std::abs(t0), e);
            continue;
        }
        for (int j = 0; j < nk; ++j) {
            const double t1 = rules[1].nodes[j];
            const double w1 = w0 * rules[1].weights[j] * tri(t1 - d[1]);
            if (n == 2) {
                acc += w1 * std::pow(t0 * t0 + t1 * t1, 0.5 * e);
                continue;
            }
            for (int l = 0; l < nk; ++l) {
                const double t2 = rules[2].nodes[l];
                acc += w1 * rules[2].weights[l] * tri(t2 - d[2]) *
                       std::pow(t0 * t0 + t1 * t1 + t2 * t2, 0.5 * e);
            }
        }
    }
    return acc;
}

}  // namespace

double tent_kernel_integral(int n, double e, std::array<int, 3> d) {
    std::array<int, 3> key{std::abs(d[0]), n > 1 ? std::abs(d[1]) : 0, n > 2 ? std::abs(d[2]) : 0};
    std::sort(key.begin(), key.begin() + n, std::greater<>());
    static std::mutex mtx;
    static std::map<std::tuple<int, double, int, int, int>, double> cache;
    const auto k = std::make_tuple(n, e, key[0], key[1], key[2]);
    {
        std::scoped_lock lock(mtx);
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
    }
    const bool diag = (key[0] == 0 && key[1] == 0 && key[2] == 0);
    const double v = diag ? diagonal_tent_integral(n, e) : offset_tent_integral(n, e, key);
    std::scoped_lock lock(mtx);
    cache.emplace(k, v);
    return v;
}

RasterND::RasterND(int dim, std::array<int, 3> shape, std::array<double, 3> lo, double h,
                   std::vector<double> cell_masses)
    : dim_(dim), shape_(shape), lo_(lo), h_(h), masses_(std::move(cell_masses)) {
    require(dim >= 1 && dim <= 3, ErrorCode::DimensionMismatch, "raster supports n in {1,2,3}");
    require(h > 0.0, ErrorCode::InvalidArgument, "cell width must be positive");
    std::size_t expect = 1;
    for (int k = 0; k < dim; ++k) {
        require(shape_[k] >= 2, ErrorCode::InvalidArgument, "raster needs >= 2 cells per axis");
        expect *= static_cast<std::size_t>(shape_[k]);
    }
    for (int k = dim; k < 3; ++k) shape_[k] = 1;
    require(masses_.size() == expect, ErrorCode::InvalidArgument, "cell count mismatch");
    double total = 0.0;
    for (double m : masses_) {
        require(m >= 0.0, ErrorCode::InvalidArgument, "cell mass negative");
        total += m;
    }
    require(std::abs(total - 1.0) <= 1e-8, ErrorCode::InvalidArgument,
            "raster mass must be 1 within 1e-8");
}

RasterND RasterND::from_mixture(const std::vector<GaussComponent>& comps,
                                std::array<double, 3> lo, std::array<double, 3> hi,
                                int cells_per_dim, double tail_tol) {
    require(!comps.empty(), ErrorCode::InvalidArgument, "empty mixture");
    const int n = static_cast<int>(comps.front().mean.size());
    require(n >= 1 && n <= 3, ErrorCode::DimensionMismatch, "raster supports n in {1,2,3}");
    const double h = (hi[0] - lo[0]) / cells_per_dim;
    for (int k = 1; k < n; ++k)
        require(std::abs((hi[k] - lo[k]) / cells_per_dim - h) < 1e-12 * std::abs(h),
                ErrorCode::InvalidArgument, "box must be cubic (equal h per axis)");

    std::vector<Factor> factors;
    double inside = 0.0;
    for (const auto& c : comps) {
        require(c.var > 0.0, ErrorCode::UnsupportedDensity,
                "point masses are never rasterized");
        Factor f;
        f.weight = c.weight;
        double comp_inside = 1.0;
        for (int k = 0; k < n; ++k) {
            f.axis_mass[k].resize(cells_per_dim);
            double axis_total = 0.0;
            for (int i = 0; i < cells_per_dim; ++i) {
                const double l = lo[k] + i * h;
                const double m = std::max(0.0, interval_mass(c.mean[k], c.var, l, l + h));
                f.axis_mass[k][i] = m;
                axis_total += m;
            }
            comp_inside *= axis_total;
        }
        inside += c.weight * comp_inside;
        factors.push_back(std::move(f));
    }
    require(1.0 - inside < tail_tol, ErrorCode::TailMassTooLarge,
            "box clips " + std::to_string(1.0 - inside) + " of the mixture mass");

    std::array<int, 3> shape{cells_per_dim, n > 1 ? cells_per_dim : 1,
                             n > 2 ? cells_per_dim : 1};
    std::vector<double> cells(static_cast<std::size_t>(shape[0]) * shape[1] * shape[2], 0.0);
    for (const auto& f : factors) {
        std::size_t idx = 0;
        for (int i = 0; i < shape[0]; ++i) {
            const double mi = f.axis_mass[0][i];
            for (int j = 0; j < shape[1]; ++j) {
                const double mj = (n > 1) ? f.axis_mass[1][j] : 1.0;
                for (int l = 0; l < shape[2]; ++l, ++idx) {
                    const double ml = (n > 2) ? f.axis_mass[2][l] : 1.0;
                    cells[idx] += f.weight * mi * mj * ml;
                }
            }
        }
    }
    const double renorm = 1.0 / inside;
    for (double& m : cells) m *= renorm;

    RasterND out(n, shape, lo, h, std::move(cells));
    for (auto& f : factors) f.weight *= renorm;
    out.factors_ = std::move(factors);
    return out;
}

bool RasterND::same_layout(const RasterND& other) const {
    return dim_ == other.dim_ && shape_ == other.shape_ && lo_ == other.lo_ && h_ == other.h_;
}

std::vector<double> RasterND::mean() const {
    std::vector<double> m(dim_, 0.0);
    std::size_t idx = 0;
    for (int i = 0; i < shape_[0]; ++i)
        for (int j = 0; j < shape_[1]; ++j)
            for (int l = 0; l < shape_[2]; ++l, ++idx) {
                m[0] += masses_[idx] * center(0, i);
                if (dim_ > 1) m[1] += masses_[idx] * center(1, j);
                if (dim_ > 2) m[2] += masses_[idx] * center(2, l);
            }
    return m;
}

RasterCharFn::RasterCharFn(const RasterND& r, std::vector<double> axis)
    : r_(&r), axis_(std::move(axis)) {}

std::complex<double> RasterCharFn::phi(std::span<const double> xi) const {
    const int n = r_->dim_;
    double sinc_prod = 1.0;
    for (int k = 0; k < n; ++k) sinc_prod *= sinc(0.5 * xi[k] * r_->h_);

    if (!r_->factors_.empty()) {
        std::complex<double> acc{0.0, 0.0};
        for (const auto& f : r_->factors_) {
            std::complex<double> prod{1.0, 0.0};
            for (int k = 0; k < n; ++k) {
                const std::complex<double> step{std::cos(xi[k] * r_->h_),
                                                -std::sin(xi[k] * r_->h_)};
                std::complex<double> rot{std::cos(xi[k] * r_->center(k, 0)),
                                         -std::sin(xi[k] * r_->center(k, 0))};
                std::complex<double> s{0.0, 0.0};
                for (double m : f.axis_mass[k]) {
                    s += m * rot;
                    rot *= step;
                }
                prod *= s;
            }
            acc += f.weight * prod;
        }
        return acc * sinc_prod;
    }

    std::complex<double> acc{0.0, 0.0};
    std::size_t idx = 0;
    for (int i = 0; i < r_->shape_[0]; ++i)
        for (int j = 0; j < r_->shape_[1]; ++j)
            for (int l = 0; l < r_->shape_[2]; ++l, ++idx) {
                double phase = xi[0] * r_->center(0, i);
                if (n > 1) phase += xi[1] * r_->center(1, j);
                if (n > 2) phase += xi[2] * r_->center(2, l);
                acc += r_->masses_[idx] * std::complex<double>(std::cos(phase), -std::sin(phase));
            }
    return acc * sinc_prod;
}

double RasterCharFn::modulus_bound(double rho) const {
    // at |xi| = rho some component has |xi_k| >= rho/sqrt(n)
    const double z = 0.5 * rho * r_->h_ / std::sqrt(static_cast<double>(r_->dim_));
    return z < 1.0 ? 1.0 : 1.0 / z;
}

double RasterCharFn::modulus_decay_coeff() const {
    return 2.0 * std::sqrt(static_cast<double>(r_->dim())) / r_->h();
}

double kernel_quadratic_form(const RasterND& f, const RasterND& g, double e) {
    require(f.same_layout(g), ErrorCode::GridMismatch, "rasters must share one grid");
    const int n = f.dim();
    require(e > -static_cast<double>(n), ErrorCode::OrderNotAdmissible,
            "|x|^e kernel not integrable for e <= -n");
    const double h = f.h();
    const auto& sh = f.shape();

    std::vector<double> delta(f.cell_count());
    for (std::size_t i = 0; i < delta.size(); ++i)
        delta[i] = f.cell_masses()[i] - g.cell_masses()[i];

    // kernel lookup over all offset triples
    const int near = 4;
    std::array<int, 3> ext{sh[0], sh[1], sh[2]};
    const int s0 = 2 * ext[0] - 1, s1 = 2 * ext[1] - 1, s2 = 2 * ext[2] - 1;
    std::vector<double> kern(static_cast<std::size_t>(s0) * s1 * s2);
    const double he = std::pow(h, e);
    for (int a = -(ext[0] - 1); a < ext[0]; ++a)
        for (int b = -(ext[1] - 1); b < ext[1]; ++b)
            for (int c = -(ext[2] - 1); c < ext[2]; ++c) {
                const std::size_t idx =
                    (static_cast<std::size_t>(a + ext[0] - 1) * s1 + (b + ext[1] - 1)) * s2 +
                    (c + ext[2] - 1);
                const int m = std::max({std::abs(a), std::abs(b), std::abs(c)});
                if (m <= near) {
                    kern[idx] = he * tent_kernel_integral(n, e, {a, b, c});
                } else {
                    const double r2 = static_cast<double>(a) * a + static_cast<double>(b) * b +
                                      static_cast<double>(c) * c;
                    // midpoint + tent-variance curvature correction
                    kern[idx] = he * std::pow(r2, 0.5 * e) *
                                (1.0 + e * (e + n - 2.0) / (12.0 * r2));
                }
            }

    const std::size_t count = delta.size();
    auto row_block = [&](std::size_t lo, std::size_t hi) {
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            if (delta[i] == 0.0) continue;
            const int i0 = static_cast<int>(i) / (sh[1] * sh[2]);
            const int i1 = (static_cast<int>(i) / sh[2]) % sh[1];
            const int i2 = static_cast<int>(i) % sh[2];
            double row = 0.0;
            std::size_t j = 0;
            for (int j0 = 0; j0 < sh[0]; ++j0) {
                const std::size_t base0 =
                    static_cast<std::size_t>(i0 - j0 + ext[0] - 1) * s1;
                for (int j1 = 0; j1 < sh[1]; ++j1) {
                    const std::size_t base1 = (base0 + (i1 - j1 + ext[1] - 1)) * s2;
                    const std::size_t off = base1 + (i2 + ext[2] - 1);
                    for (int j2 = 0; j2 < sh[2]; ++j2, ++j)
                        row += delta[j] * kern[off - j2];
                }
            }
            acc += delta[i] * row;
        }
        return acc;
    };
    return blocked_sum(count, 64, row_block);
}

}  // namespace edlab
