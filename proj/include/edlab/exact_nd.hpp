#ifndef EDLAB_EXACT_ND_HPP
#define EDLAB_EXACT_ND_HPP

#include <vector>

#include "edlab/charfn.hpp"
#include "edlab/decay.hpp"

namespace edlab {

/// The three linear flows of the closed-form laboratory:
///   drift    d/dt f = div(x f)            mean -> m e^{-t}, var -> v e^{-2t}
///   heat     d/dt f = Laplace f           var -> v + 2t
///   full_fp  d/dt f = div(grad f + x f)   mean -> m e^{-t}, var -> 1+(v-1)e^{-2t}
enum class LinearFlow { drift, heat, full_fp };

/// Mixture of isotropic Gaussians / point masses; closed under all three
/// flows (a point mass under heat becomes a Gaussian of variance 2t).
using ExactState = std::vector<GaussComponent>;

ExactState make_gaussian_state(std::vector<double> mean, double variance);
ExactState state_from_dirac(const DiracMixture& d);
int state_dim(const ExactState& s);

ExactState evolve_exact(LinearFlow flow, const ExactState& s, double t);

/// Energy distances between exact states. Smooth states go through the
/// radial-plane Fourier quadrature; states carrying point masses use the
/// closed-form pairwise kernel instead (their Fourier integrands never decay).
double state_energy_alpha(const ExactState& f, const ExactState& g, double alpha);
double state_energy_negative(const ExactState& f, const ExactState& g, double alpha);
double state_d1(const ExactState& f, const ExactState& g);

/// Closed-form quadratic form -+ sum_{ij} dw_i dw_j E|Z_ij|^q via noncentral
/// chi moments (sign chosen so the result matches E_alpha / E_{-(2-alpha)}).
/// Exposed separately because it doubles as the test oracle for the Fourier
/// route.
double energy_closed_form(const ExactState& f, const ExactState& g, double exponent);

/// E_alpha(f(t), g(t)) along the drift flow, annotated with the predicted
/// exact law E(t) = e^{-alpha t} E(0).
DecayTrace drift_decay_check(double alpha, const ExactState& f0, const ExactState& g0,
                             const std::vector<double>& times);

/// Both sides of dE_alpha/dt = -2 alpha (n-2+alpha) E_{-(2-alpha)} - alpha E_alpha
/// along the full Fokker-Planck flow toward the standard Gaussian.
struct FpDecayResult {
    DecayTrace trace;
    std::vector<double> measured_derivative;
    std::vector<double> identity_rhs;
};

FpDecayResult fp_decay_check(double alpha, const ExactState& f0, const std::vector<double>& times);

/// Energy decay under the heat flow against the polynomial envelope
/// (E(0)^{-2/(2-alpha)} + 2 C t/(2-alpha))^{-(2-alpha)/2} and the
/// d_1 monotonicity statement.
struct HeatDecayResult {
    DecayTrace trace;
    std::vector<double> envelope;
    std::vector<double> d1_values;
    double constant_C = 0.0;
    bool envelope_holds = false;
    bool d1_monotone = false;
};

HeatDecayResult heat_decay_check(double alpha, const ExactState& f0, const ExactState& g0,
                                 const std::vector<double>& times);

}  // namespace edlab

#endif
