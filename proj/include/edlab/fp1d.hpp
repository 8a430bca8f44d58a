#ifndef EDLAB_FP1D_HPP
#define EDLAB_FP1D_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "edlab/analytic.hpp"
#include "edlab/grid.hpp"

namespace edlab {

/// d/dt f = d/dx [ sigma f' + x f ] on [-8, 8]; Gaussian(0, sigma) steady state.
struct ConstantDiffusionModel {
    double sigma = 1.0;
};

/// d/dt f = d/dx [ (f^p)' + x f ]; Barenblatt steady state, compact support.
struct PorousMediumModel {
    double p = 2.0;
};

/// d/dt f = (sigma/2) (x^2 f)'' + lambda ((x-1) f)' on (0, L]; inverse Gamma
/// steady state with mu = 1 + 2 lambda / sigma.
struct WealthModel {
    double sigma = 1.0;
    double lambda = 1.0;
};

/// d/dt f = (lambda/2) ((1-x^2) f)'' + ((x-m) f)' on (-1, 1); Beta-type
/// steady state.
struct OpinionModel {
    double lambda = 0.5;
    double m = 0.0;
};

class FpModel1D {
  public:
    using Variant =
        std::variant<ConstantDiffusionModel, PorousMediumModel, WealthModel, OpinionModel>;

    FpModel1D(Variant v);  // NOLINT: implicit by design

    const Variant& value() const { return v_; }
    std::string name() const;
    bool nonlinear() const { return std::holds_alternative<PorousMediumModel>(v_); }

    /// Flux-form coefficients of J = D(x) f' + w(x) f (linear models; the
    /// porous-medium diffusion coefficient depends on the state instead).
    double diffusion(double x) const;
    double drift_w(double x) const;

    AnalyticDensity steady_state() const;
    /// Window the model runs on by default; the porous-medium window widens
    /// with the Barenblatt support.
    Grid1D default_grid(int n_cells = 1024) const;
    /// Mass the default window may clip from the steady state.
    double steady_tail_tol() const;

  private:
    Variant v_;
};

struct SolverConfig {
    double dt = 1e-4;
    double t_final = 2.0;
    int snapshot_stride = 200;
    /// theta = 1 backward Euler (default), 0.5 Crank-Nicolson, 0 explicit.
    /// theta < 0.5 enforces the parabolic step bound (StabilityViolation).
    double theta = 1.0;
    int picard_iters = 2;
    double safety = 0.9;

    static SolverConfig defaults_for(const FpModel1D& model, const Grid1D& grid,
                                     double t_final = 2.0);
};

struct Snapshot {
    double time = 0.0;
    GridDensity1D density;
    double mass = 0.0;
    double mean = 0.0;
    double min_value = 0.0;
};

/// Conservative finite-volume evolution with exponentially fitted face
/// weights. The weights are fitted so the rasterized analytic steady state
/// is an exact discrete fixed point (Chang-Cooper weights are the fallback
/// where the fit is undefined); fluxes vanish at the boundary faces, so mass
/// is conserved to roundoff.
class Fp1DSolver {
  public:
    Fp1DSolver(FpModel1D model, Grid1D grid);

    const FpModel1D& model() const { return model_; }
    const Grid1D& grid() const { return grid_; }
    /// Rasterized steady state the face fit targets.
    const GridDensity1D& equilibrium() const { return equilibrium_; }

    std::vector<double> step_values(const std::vector<double>& f, const SolverConfig& cfg) const;
    std::vector<Snapshot> evolve(const GridDensity1D& f0, const SolverConfig& cfg) const;

  private:
    void fit_face_weights();
    std::vector<double> face_diffusion(const std::vector<double>& f) const;

    FpModel1D model_;
    Grid1D grid_;
    GridDensity1D equilibrium_;
    std::vector<double> face_x_;      // interior faces, size n_cells - 1
    std::vector<double> face_w_;      // drift coefficient at faces
    std::vector<double> face_d_lin_;  // diffusion at faces (linear models)
    std::vector<double> face_delta_;  // fitted interpolation weights
};

/// One semi-implicit step (spec-level convenience around Fp1DSolver).
GridDensity1D step(const FpModel1D& model, const GridDensity1D& f, const SolverConfig& cfg);

/// Snapshot stream; diagnostics recorded per snapshot.
std::vector<Snapshot> evolve(const FpModel1D& model, const GridDensity1D& f0,
                             const SolverConfig& cfg);

}  // namespace edlab

#endif
