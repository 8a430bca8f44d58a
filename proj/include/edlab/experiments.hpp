#ifndef EDLAB_EXPERIMENTS_HPP
#define EDLAB_EXPERIMENTS_HPP

#include <optional>
#include <variant>

#include "edlab/decay.hpp"
#include "edlab/exact_nd.hpp"
#include "edlab/fp1d.hpp"
#include "edlab/metrics.hpp"

namespace edlab {

/// Solver-backed experiment: evolve a 1D model from f0 and track a metric
/// against the model's rasterized equilibrium.
struct Fp1DExperiment {
    FpModel1D model;
    AnalyticDensity f0;
    int n_cells = 1024;
    double t_final = 6.0;
    std::string metric = "cramer";  // "cramer" or "energy"
    double alpha = 1.0;
    std::optional<SolverConfig> config;  // defaults_for(model, grid) otherwise
    double f0_tail_tol = 1e-6;
};

/// Closed-form experiment: evolve two exact states and track E_alpha.
struct ExactExperiment {
    LinearFlow flow = LinearFlow::drift;
    ExactState f0;
    ExactState g0;
    double alpha = 1.0;
    std::vector<double> times;
};

using ExperimentSpec = std::variant<Fp1DExperiment, ExactExperiment>;

/// Deterministic trace for a fixed spec (no sampling anywhere in the paths).
DecayTrace run_experiment(const ExperimentSpec& spec);

}  // namespace edlab

#endif
