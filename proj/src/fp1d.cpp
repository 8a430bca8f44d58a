#include "edlab/fp1d.hpp"

#include <algorithm>
#include <cmath>

#include "edlab/errors.hpp"
#include "edlab/special.hpp"

namespace edlab {

namespace {

// Chang-Cooper weight: delta(P) = 1/P - 1/(e^P - 1), delta(0) = 1/2.
double chang_cooper_delta(double peclet) {
    const double P = std::clamp(peclet, -500.0, 500.0);
    if (std::abs(P) < 1e-8) return 0.5 - P / 12.0;
    return 1.0 / P - 1.0 / std::expm1(P);
}

}  // namespace

FpModel1D::FpModel1D(Variant v) : v_(std::move(v)) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConstantDiffusionModel>) {
                require(m.sigma > 0.0, ErrorCode::InvalidArgument, "sigma must be positive");
            } else if constexpr (std::is_same_v<T, PorousMediumModel>) {
                require(m.p > 1.0, ErrorCode::InvalidArgument, "p must exceed 1");
            } else if constexpr (std::is_same_v<T, WealthModel>) {
                require(m.sigma > 0.0, ErrorCode::InvalidArgument, "sigma must be positive");
                require(m.lambda > 0.0, ErrorCode::InvalidArgument, "lambda must be positive");
            } else {
                require(m.lambda > 0.0, ErrorCode::InvalidArgument, "lambda must be positive");
                require(m.m > -1.0 && m.m < 1.0, ErrorCode::InvalidArgument,
                        "mean opinion must lie in (-1,1)");
            }
        },
        v_);
}

std::string FpModel1D::name() const {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConstantDiffusionModel>) return "constant_diffusion";
            else if constexpr (std::is_same_v<T, PorousMediumModel>) return "porous_medium";
            else if constexpr (std::is_same_v<T, WealthModel>) return "wealth";
            else return "opinion";
        },
        v_);
}

double FpModel1D::diffusion(double x) const {
    return std::visit(
        [x](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConstantDiffusionModel>) return m.sigma;
            else if constexpr (std::is_same_v<T, PorousMediumModel>)
                fail(ErrorCode::InvalidArgument, "porous-medium diffusion is state-dependent");
            else if constexpr (std::is_same_v<T, WealthModel>) return 0.5 * m.sigma * x * x;
            else return 0.5 * m.lambda * (1.0 - x * x);
        },
        v_);
}

double FpModel1D::drift_w(double x) const {
    return std::visit(
        [x](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConstantDiffusionModel>) return x;
            else if constexpr (std::is_same_v<T, PorousMediumModel>) return x;
            else if constexpr (std::is_same_v<T, WealthModel>)
                // (sigma/2)(x^2 f)'' + lambda((x-1)f)' = d/dx [ (sigma x^2/2) f' + w f ]
                return m.sigma * x + m.lambda * (x - 1.0);
            else
                // (lambda/2)((1-x^2)f)'' + ((x-m)f)' -> w = (1-lambda)x - m
                return (1.0 - m.lambda) * x - m.m;
        },
        v_);
}

AnalyticDensity FpModel1D::steady_state() const {
    return std::visit(
        [](const auto& m) -> AnalyticDensity {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConstantDiffusionModel>)
                return GaussianND{{0.0}, m.sigma};
            else if constexpr (std::is_same_v<T, PorousMediumModel>)
                return Barenblatt{m.p};
            else if constexpr (std::is_same_v<T, WealthModel>)
                return InverseGamma{1.0 + 2.0 * m.lambda / m.sigma};
            else
                return BetaOpinion{m.m, m.lambda};
        },
        v_);
}

Grid1D FpModel1D::default_grid(int n_cells) const {
    return std::visit(
        [n_cells](const auto& m) -> Grid1D {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConstantDiffusionModel>) {
                const double L = 8.0 * std::max(1.0, std::sqrt(m.sigma));
                return Grid1D(-L, L, n_cells);
            } else if constexpr (std::is_same_v<T, PorousMediumModel>) {
                const double L = std::max(2.0, 1.05 * barenblatt_radius(m.p));
                return Grid1D(-L, L, n_cells);
            } else if constexpr (std::is_same_v<T, WealthModel>) {
                return Grid1D(0.0, 40.0, n_cells);
            } else {
                return Grid1D(-1.0, 1.0, n_cells);
            }
        },
        v_);
}

double FpModel1D::steady_tail_tol() const {
    // the (0, 40] wealth window clips up to ~3e-4 of the inverse-Gamma tail
    // (mu = 2 is the worst admissible case exercised here)
    return std::holds_alternative<WealthModel>(v_) ? 1e-3 : 1e-6;
}

SolverConfig SolverConfig::defaults_for(const FpModel1D& model, const Grid1D& grid,
                                        double t_final) {
    SolverConfig cfg;
    cfg.t_final = t_final;
    double max_d = 0.0;
    if (model.nonlinear()) {
        const auto& pm = std::get<PorousMediumModel>(model.value());
        const GridDensity1D eq = rasterize(model.steady_state(), grid, model.steady_tail_tol());
        double fmax = 0.0;
        for (double v : eq.values()) fmax = std::max(fmax, v);
        max_d = pm.p * std::pow(fmax, pm.p - 1.0);
    } else {
        for (int i = 0; i + 1 < grid.n_cells(); ++i)
            max_d = std::max(max_d, model.diffusion(grid.right_edge(i)));
    }
    const double h = grid.h();
    cfg.dt = std::clamp(0.25 * h * h / std::max(max_d, 1e-12), 1e-4, 2.5e-4);
    cfg.snapshot_stride = std::max(1, static_cast<int>(t_final / cfg.dt) / 64);
    cfg.picard_iters = model.nonlinear() ? 2 : 1;
    return cfg;
}

Fp1DSolver::Fp1DSolver(FpModel1D model, Grid1D grid)
    : model_(std::move(model)),
      grid_(grid),
      equilibrium_(rasterize(model_.steady_state(), grid, model_.steady_tail_tol())) {
    const int n = grid_.n_cells();
    face_x_.resize(n - 1);
    face_w_.resize(n - 1);
    face_d_lin_.assign(n - 1, 0.0);
    for (int k = 0; k + 1 < n; ++k) {
        face_x_[k] = grid_.right_edge(k);
        face_w_[k] = model_.drift_w(face_x_[k]);
        if (!model_.nonlinear()) face_d_lin_[k] = std::max(0.0, model_.diffusion(face_x_[k]));
    }
    fit_face_weights();
}

void Fp1DSolver::fit_face_weights() {
    const int n = grid_.n_cells();
    const double h = grid_.h();
    face_delta_.assign(n - 1, 0.5);
    const std::vector<double>& M = equilibrium_.values();
    const std::vector<double> d_eq =
        model_.nonlinear() ? face_diffusion(M) : face_d_lin_;
    const double m_scale = *std::max_element(M.begin(), M.end());

    for (int k = 0; k + 1 < n; ++k) {
        const double w = face_w_[k];
        const double D = d_eq[k];
        const double ml = M[k], mr = M[k + 1];
        double delta;
        if (D <= 0.0) {
            delta = (w > 0.0) ? 0.0 : 1.0;  // pure upwind in the degenerate region
        } else if (std::abs(w) < 1e-13 || std::abs(mr - ml) < 1e-13 * m_scale) {
            delta = chang_cooper_delta(w * h / D);
        } else {
            // fit so that D (mr - ml)/h + w ((1-delta) mr + delta ml) = 0
            const double target = -D * (mr - ml) / (h * w);
            delta = (mr - target) / (mr - ml);
            const bool admissible =
                delta >= 0.0 && delta <= 1.0 &&
                (w > 0.0 ? w * delta <= D / h + 1e-14 : -w * (1.0 - delta) <= D / h + 1e-14);
            if (!admissible) delta = chang_cooper_delta(w * h / D);
        }
        face_delta_[k] = delta;
    }
}

std::vector<double> Fp1DSolver::face_diffusion(const std::vector<double>& f) const {
    const int n = grid_.n_cells();
    std::vector<double> d(n - 1);
    if (!model_.nonlinear()) {
        d = face_d_lin_;
        return d;
    }
    const double p = std::get<PorousMediumModel>(model_.value()).p;
    for (int k = 0; k + 1 < n; ++k) {
        const double gl = std::pow(std::max(0.0, f[k]), p - 1.0);
        const double gr = std::pow(std::max(0.0, f[k + 1]), p - 1.0);
        d[k] = 0.5 * p * (gl + gr);
    }
    return d;
}

namespace {

// tridiagonal operator L f|_i = (J_{i+1/2} - J_{i-1/2}) / h
struct Operator {
    std::vector<double> lower, diag, upper;
};

Operator assemble(const std::vector<double>& D, const std::vector<double>& w,
                  const std::vector<double>& delta, double h, bool clamp_delta) {
    const int n = static_cast<int>(D.size()) + 1;
    Operator op;
    op.lower.assign(n, 0.0);
    op.diag.assign(n, 0.0);
    op.upper.assign(n, 0.0);
    for (int k = 0; k + 1 < n; ++k) {
        double dl = delta[k];
        if (clamp_delta && w[k] != 0.0) {
            // keep the M-matrix structure when the lagged diffusion shrinks
            if (w[k] > 0.0) dl = std::min(dl, D[k] / (h * w[k]));
            else dl = std::max(dl, 1.0 + D[k] / (h * w[k]));
            dl = std::clamp(dl, 0.0, 1.0);
        }
        const double up = D[k] / h + w[k] * (1.0 - dl);  // coeff of f_{k+1} in J_k
        const double dn = -D[k] / h + w[k] * dl;         // coeff of f_k in J_k
        op.diag[k] += dn / h;
        op.upper[k] += up / h;
        op.lower[k + 1] -= dn / h;
        op.diag[k + 1] -= up / h;
    }
    return op;
}

std::vector<double> apply(const Operator& op, const std::vector<double>& f, double scale,
                          const std::vector<double>& base) {
    const int n = static_cast<int>(f.size());
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
        double acc = op.diag[i] * f[i];
        if (i > 0) acc += op.lower[i] * f[i - 1];
        if (i + 1 < n) acc += op.upper[i] * f[i + 1];
        y[i] = base[i] + scale * acc;
    }
    return y;
}

// Thomas solve of (I - scale L) x = rhs
std::vector<double> solve(const Operator& op, double scale, const std::vector<double>& rhs) {
    const int n = static_cast<int>(rhs.size());
    std::vector<double> c(n), d(n), x(n);
    double beta = 1.0 - scale * op.diag[0];
    c[0] = -scale * op.upper[0] / beta;
    d[0] = rhs[0] / beta;
    for (int i = 1; i < n; ++i) {
        const double a = -scale * op.lower[i];
        beta = (1.0 - scale * op.diag[i]) - a * c[i - 1];
        c[i] = -scale * op.upper[i] / beta;
        d[i] = (rhs[i] - a * d[i - 1]) / beta;
    }
    x[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

}  // namespace

std::vector<double> Fp1DSolver::step_values(const std::vector<double>& f,
                                            const SolverConfig& cfg) const {
    const int n = grid_.n_cells();
    require(static_cast<int>(f.size()) == n, ErrorCode::GridMismatch,
            "state size does not match the grid");
    const double h = grid_.h();

    if (cfg.theta < 0.5) {
        // explicit component: parabolic bound required
        const auto D = face_diffusion(f);
        double max_d = 0.0, max_w = 0.0;
        for (std::size_t k = 0; k < D.size(); ++k) {
            max_d = std::max(max_d, D[k]);
            max_w = std::max(max_w, std::abs(face_w_[k]));
        }
        const double bound = cfg.safety * h * h / (2.0 * max_d + h * max_w + 1e-300);
        require(cfg.dt <= bound, ErrorCode::StabilityViolation,
                "dt " + std::to_string(cfg.dt) + " exceeds the explicit bound " +
                    std::to_string(bound));
    }

    const bool clamp = model_.nonlinear();
    const Operator op_old = assemble(face_diffusion(f), face_w_, face_delta_, h, clamp);
    std::vector<double> rhs =
        (cfg.theta >= 1.0) ? f : apply(op_old, f, (1.0 - cfg.theta) * cfg.dt, f);

    std::vector<double> next = f;
    const int iters = model_.nonlinear() ? std::max(1, cfg.picard_iters) : 1;
    for (int it = 0; it < iters; ++it) {
        const Operator op_new =
            model_.nonlinear() && it > 0
                ? assemble(face_diffusion(next), face_w_, face_delta_, h, clamp)
                : op_old;
        if (cfg.theta <= 0.0) {
            next = rhs;
            break;
        }
        next = solve(op_new, cfg.theta * cfg.dt, rhs);
    }

    double min_v = 0.0;
    for (double v : next) min_v = std::min(min_v, v);
    require(min_v >= -1e-12, ErrorCode::NegativeDensityBeyondTolerance,
            "density dipped to " + std::to_string(min_v));
    return next;
}

std::vector<Snapshot> Fp1DSolver::evolve(const GridDensity1D& f0, const SolverConfig& cfg) const {
    require(f0.grid() == grid_, ErrorCode::GridMismatch, "initial state on a foreign grid");
    require(cfg.dt > 0.0 && cfg.t_final >= 0.0, ErrorCode::InvalidArgument,
            "need dt > 0 and t_final >= 0");

    const int n_steps = static_cast<int>(std::llround(cfg.t_final / cfg.dt));
    std::vector<double> f = f0.values();

    auto snap = [&](double t) {
        std::vector<double> clipped = f;
        double min_v = 0.0;
        for (double& v : clipped) {
            min_v = std::min(min_v, v);
            v = std::max(v, 0.0);
        }
        GridDensity1D d(grid_, std::move(clipped));
        Snapshot s{t, d, d.mass(), d.mean(), min_v};
        return s;
    };

    std::vector<Snapshot> out;
    out.push_back(snap(0.0));
    for (int step_i = 1; step_i <= n_steps; ++step_i) {
        f = step_values(f, cfg);
        if (step_i % cfg.snapshot_stride == 0 || step_i == n_steps)
            out.push_back(snap(step_i * cfg.dt));
    }
    return out;
}

GridDensity1D step(const FpModel1D& model, const GridDensity1D& f, const SolverConfig& cfg) {
    Fp1DSolver solver(model, f.grid());
    std::vector<double> next = solver.step_values(f.values(), cfg);
    for (double& v : next) v = std::max(v, 0.0);
    return GridDensity1D(f.grid(), std::move(next));
}

std::vector<Snapshot> evolve(const FpModel1D& model, const GridDensity1D& f0,
                             const SolverConfig& cfg) {
    return Fp1DSolver(model, f0.grid()).evolve(f0, cfg);
}

}  // namespace edlab
