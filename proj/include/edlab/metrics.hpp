#ifndef EDLAB_METRICS_HPP
#define EDLAB_METRICS_HPP

#include <string>

#include "edlab/charfn.hpp"
#include "edlab/fourier.hpp"
#include "edlab/grid.hpp"
#include "edlab/raster_nd.hpp"
#include "edlab/samples.hpp"

namespace edlab {

enum class Form { cdf, fourier, expectation, pairwise };

const char* to_string(Form f);

/// A metric evaluation: nonnegative value, the route that produced it, a
/// realistic numerical-error estimate, and (Fourier forms only) the declared
/// bound on the neglected |xi| > xi_max contribution.
struct DistanceValue {
    double value = 0.0;
    Form form = Form::cdf;
    double error_estimate = 0.0;
    double fourier_tail_bound = 0.0;
};

/// Explicit constants attached to dimension n and order alpha in (0, 2).
/// c: positive-order Fourier constant; d: negative-order constant (needs
/// n - 2 + alpha > 0); A, B, D: constants of the interpolation bound chain.
struct MetricConstants {
    int n = 1;
    double alpha = 1.0;
    double c = 0.0;
    bool negative_order_ok = false;
    double d = 0.0;
    double A = 0.0;
    double B = 0.0;
    double D = 0.0;

    static MetricConstants make(int n, double alpha);

    /// d, B, D guarded by admissibility.
    double d_checked() const;
    double B_checked() const;
    double D_checked() const;
};

// --- Cramer distance -------------------------------------------------------

/// int (F - G)^2 dx, exact for the piecewise-linear grid CDFs.
DistanceValue cramer_cdf(const CdfCurve& F, const CdfCurve& G);

/// E|X-Y| - E|X-X'|/2 - E|Y-Y'|/2 as weighted V-statistics (1D clouds).
DistanceValue cramer_expectation(const SampleCloud& X, const SampleCloud& Y);

/// (1/2pi) int |fhat - ghat|^2 / xi^2 dxi; the xi -> 0 limit (mean gap)^2 is
/// used instead of sampling the removable singularity.
DistanceValue cramer_fourier(const GridDensity1D& f, const GridDensity1D& g,
                             const FourierGrid& fg);

// --- Gini index -------------------------------------------------------------

/// Both routes to the Gini index: the pairwise-expectation form
/// E|X-X'| / (2 E X) and the CDF form 1 - int (1-F)^2 dx / E X.
struct GiniResult {
    double expectation_form = 0.0;
    double cdf_form = 0.0;
    double discrepancy = 0.0;
    double value() const { return 0.5 * (expectation_form + cdf_form); }
};

GiniResult gini(const SampleCloud& X);
GiniResult gini(const CdfCurve& F);

/// CDF of min(X, Y) for independent X, Y: H = 1 - (1-F)(1-G).
CdfCurve min_cdf(const CdfCurve& F, const CdfCurve& G);

// --- Energy distance of order alpha ----------------------------------------

DistanceValue energy_alpha_pairwise(const SampleCloud& X, const SampleCloud& Y, double alpha);

/// -int int |x-y|^alpha (f-g)(x)(f-g)(y) dx dy with exact cell-pair kernel
/// averages (the diagonal included).
DistanceValue energy_alpha_grid(const GridDensity1D& f, const GridDensity1D& g, double alpha);
DistanceValue energy_alpha_grid(const RasterND& f, const RasterND& g, double alpha);

/// c_{n,alpha} int |fhat - ghat|^2 / |xi|^{n+alpha} dxi over R^n.
DistanceValue energy_alpha_fourier(const CharFunction& f, const CharFunction& g, double alpha,
                                   const FourierGrid& fg);

// --- Energy distance of negative order -(2-alpha) ---------------------------

enum class NegOrderBackend { pairwise, fourier };

/// +int int |x-y|^{-(2-alpha)} (f-g)(x)(f-g)(y) dx dy; requires
/// n - 2 + alpha > 0. Grid backend integrates the singular diagonal cells
/// analytically; the Fourier backend is d_{n,alpha} int |dphi|^2/|xi|^{n-2+alpha}.
DistanceValue energy_negative_order(const RasterND& f, const RasterND& g, double alpha);
DistanceValue energy_negative_order(const GridDensity1D& f, const GridDensity1D& g, double alpha);
DistanceValue energy_negative_order_fourier(const CharFunction& f, const CharFunction& g,
                                            double alpha, const FourierGrid& fg);

// --- d_1 metric --------------------------------------------------------------

/// sup_xi |fhat - ghat| / |xi|, scanned over the Fourier grid plus the
/// analytic xi -> 0 limit |mean gap|.
DistanceValue d1_metric(const CharFunction& f, const CharFunction& g, const FourierGrid& fg);

// --- Interpolation bound -----------------------------------------------------

/// E_alpha <= D_{n,alpha} d1^{4/(4-alpha)} E_{-(2-alpha)}^{(2-alpha)/(4-alpha)},
/// with the pre-optimization two-term bound available per R.
struct InterpolationBound {
    double lhs = 0.0;          // E_alpha
    double rhs = 0.0;          // optimized bound
    bool holds = false;
    double d1 = 0.0;
    double energy_negative = 0.0;
    MetricConstants constants;

    /// A d1^2 R^{2-alpha}/(2-alpha) + B E_neg / R^2 for a user-supplied R.
    double two_term(double R) const;
};

InterpolationBound interpolation_bound(const CharFunction& f, const CharFunction& g, double alpha,
                                       const FourierGrid& fg);

/// Default Fourier grid for a pair of characteristic functions: cutoff
/// 40/h for grid-backed inputs (h the cell width), 40 otherwise.
FourierGrid default_fourier_grid(double cell_width, int n_nodes = 2048);

}  // namespace edlab

#endif
