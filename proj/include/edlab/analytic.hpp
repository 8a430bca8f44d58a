#ifndef EDLAB_ANALYTIC_HPP
#define EDLAB_ANALYTIC_HPP

#include <variant>
#include <vector>

#include "edlab/grid.hpp"

namespace edlab {

/// Isotropic Gaussian N(mean, variance * I) in dimension n = mean.size().
struct GaussianND {
    std::vector<double> mean;
    double variance = 1.0;
};

/// Compactly supported equilibrium of the porous-medium drift-diffusion
/// balance: f(x) = [k (r^2 - x^2)]_+^{1/(p-1)} with k = (p-1)/(2p) and r
/// fixed by unit mass.
struct Barenblatt {
    double p = 2.0;
};

/// f(w) = (mu-1)^mu / Gamma(mu) * exp(-(mu-1)/w) / w^{1+mu} on (0, inf);
/// unit mean, power-law tail of exponent 1 + mu.
struct InverseGamma {
    double mu = 3.0;
};

/// f(x) proportional to (1-x)^{-1+(1-m)/lambda} (1+x)^{-1+(1+m)/lambda}
/// on (-1, 1).
struct BetaOpinion {
    double m = 0.0;
    double lambda = 1.0;
};

/// Weighted point masses in R^n (points stored row-major, dim entries each).
struct DiracMixture {
    int dim = 1;
    std::vector<std::vector<double>> points;
    std::vector<double> weights;
};

struct Uniform {
    double a = 0.0;
    double b = 1.0;
};

struct Exponential {
    double rate = 1.0;
};

/// One-dimensional mixture of Gaussians (means/variances/weights).
struct GaussianMixture1D {
    std::vector<double> means;
    std::vector<double> variances;
    std::vector<double> weights;
};

class AnalyticDensity {
  public:
    using Variant = std::variant<GaussianND, Barenblatt, InverseGamma, BetaOpinion, DiracMixture,
                                 Uniform, Exponential, GaussianMixture1D>;

    AnalyticDensity(Variant v);  // NOLINT: implicit by design

    const Variant& value() const { return v_; }

    template <typename T>
    const T* get_if() const {
        return std::get_if<T>(&v_);
    }

    int dim() const;
    bool is_point_mass() const;

    /// CDF at x (one-dimensional variants only).
    double cdf(double x) const;
    /// Quantile (inverse CDF) for continuous one-dimensional variants.
    double quantile(double p) const;
    /// Density at x (continuous one-dimensional variants).
    double pdf(double x) const;
    /// Signed mean (1D) .
    double mean1d() const;
    /// Absolute moment m_s; throws MomentDiverges where the tail wins.
    double moment(double s) const;

    /// Support bounds for 1D variants; +-inf for unbounded supports.
    double support_lo() const;
    double support_hi() const;

  private:
    void validate() const;
    Variant v_;
};

/// Support radius r of Barenblatt(p), found by root-finding on the unit-mass
/// condition (tolerance 1e-10).
double barenblatt_radius(double p);

/// Cell averages of `a` on `g` (exact CDF differences), renormalized to unit
/// mass; rejects windows that clip more than `tail_tol` of the analytic mass.
GridDensity1D rasterize(const AnalyticDensity& a, const Grid1D& g, double tail_tol = 1e-6);

}  // namespace edlab

#endif
