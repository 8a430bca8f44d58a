#ifndef EDLAB_CHARFN_HPP
#define EDLAB_CHARFN_HPP

#include <complex>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "edlab/analytic.hpp"
#include "edlab/grid.hpp"
#include "edlab/samples.hpp"

namespace edlab {

/// Characteristic function phi(xi) = E exp(-i xi . X) of a probability
/// measure on R^n. The Fourier-form metrics run on this interface so grid,
/// sample and closed-form representations share one quadrature path.
class CharFunction {
  public:
    virtual ~CharFunction() = default;

    virtual int dim() const = 0;
    virtual std::complex<double> phi(std::span<const double> xi) const = 0;
    virtual std::vector<double> mean() const = 0;

    /// Upper bound for |phi(xi)| over |xi| = rho; 1 is always valid, tighter
    /// bounds make the reported Fourier tail bounds meaningful.
    virtual double modulus_bound(double rho) const {
        (void)rho;
        return 1.0;
    }

    /// C such that |phi(xi)| <= min(1, C/|xi|); infinity when no algebraic
    /// decay is available (point clouds).
    virtual double modulus_decay_coeff() const {
        return std::numeric_limits<double>::infinity();
    }

    /// Direction along which the measure is axially symmetric (empty when
    /// unknown). Radial-plane quadrature relies on it in dimension >= 2.
    virtual std::vector<double> symmetry_axis() const { return {}; }
};

/// Isotropic Gaussian-mixture component; var = 0 degenerates to a point mass.
struct GaussComponent {
    double weight = 1.0;
    std::vector<double> mean;
    double var = 1.0;
};

class GaussianMixCharFn : public CharFunction {
  public:
    explicit GaussianMixCharFn(std::vector<GaussComponent> comps);

    int dim() const override { return dim_; }
    std::complex<double> phi(std::span<const double> xi) const override;
    std::vector<double> mean() const override;
    double modulus_bound(double rho) const override;
    double modulus_decay_coeff() const override;
    std::vector<double> symmetry_axis() const override;

    const std::vector<GaussComponent>& components() const { return comps_; }

  private:
    int dim_;
    std::vector<GaussComponent> comps_;
};

class GridCharFn : public CharFunction {
  public:
    explicit GridCharFn(const GridDensity1D& density) : f_(&density) {}

    int dim() const override { return 1; }
    std::complex<double> phi(std::span<const double> xi) const override;
    std::vector<double> mean() const override { return {f_->mean()}; }
    double modulus_bound(double rho) const override;
    double modulus_decay_coeff() const override { return 2.0 / f_->grid().h(); }

  private:
    const GridDensity1D* f_;
};

class CloudCharFn : public CharFunction {
  public:
    explicit CloudCharFn(const SampleCloud& cloud) : c_(&cloud) {}

    int dim() const override { return c_->dim(); }
    std::complex<double> phi(std::span<const double> xi) const override;
    std::vector<double> mean() const override;

  private:
    const SampleCloud* c_;
};

/// Pair of characteristic functions sharing one symmetry axis; evaluates
/// |phi_f - phi_g|^2 in the (rho, u = cos angle-to-axis) plane. Construction
/// checks that every component mean the pair exposes lies on one line, which
/// is what makes the planar reduction exact.
class CharPair {
  public:
    CharPair(const CharFunction& f, const CharFunction& g);

    int dim() const { return dim_; }
    double mean_gap() const { return mean_gap_; }

    double diff_sq(double rho, double u) const;
    /// (bound_f + bound_g)^2 clamped to 4.
    double modulus_bound_sq(double rho) const;

  private:
    const CharFunction* f_;
    const CharFunction* g_;
    int dim_;
    double mean_gap_;
    std::vector<double> axis_;
    std::vector<double> perp_;
};

/// Convenience builders.
GaussianMixCharFn charfn_from_analytic(const AnalyticDensity& a);

}  // namespace edlab

#endif
