#ifndef EDLAB_RASTER_ND_HPP
#define EDLAB_RASTER_ND_HPP

#include <array>
#include <complex>
#include <vector>

#include "edlab/charfn.hpp"

namespace edlab {

/// Cell-averaged probability density on a uniform box grid in R^n, n <= 3,
/// with the same cell width h in every direction. Cells are stored flat with
/// the last coordinate fastest.
class RasterND {
  public:
    RasterND(int dim, std::array<int, 3> shape, std::array<double, 3> lo, double h,
             std::vector<double> cell_masses);

    /// Exact cell averages of an isotropic Gaussian mixture (per-dimension
    /// interval masses), renormalized to unit mass. Rejects boxes clipping
    /// more than tail_tol of the analytic mass.
    static RasterND from_mixture(const std::vector<GaussComponent>& comps,
                                 std::array<double, 3> lo, std::array<double, 3> hi,
                                 int cells_per_dim, double tail_tol = 1e-6);

    int dim() const { return dim_; }
    double h() const { return h_; }
    const std::array<int, 3>& shape() const { return shape_; }
    std::size_t cell_count() const { return masses_.size(); }
    const std::vector<double>& cell_masses() const { return masses_; }
    double center(int axis, int index) const { return lo_[axis] + (index + 0.5) * h_; }

    bool same_layout(const RasterND& other) const;

    std::vector<double> mean() const;

  private:
    friend class RasterCharFn;
    int dim_;
    std::array<int, 3> shape_;
    std::array<double, 3> lo_;
    double h_;
    std::vector<double> masses_;
    // separable representation (per component, per axis), used by the
    // characteristic function; empty when constructed from raw cells
    struct Factor {
        double weight;
        std::array<std::vector<double>, 3> axis_mass;
    };
    std::vector<Factor> factors_;
};

class RasterCharFn : public CharFunction {
  public:
    explicit RasterCharFn(const RasterND& r, std::vector<double> axis = {});

    int dim() const override { return r_->dim(); }
    std::complex<double> phi(std::span<const double> xi) const override;
    std::vector<double> mean() const override { return r_->mean(); }
    double modulus_bound(double rho) const override;
    double modulus_decay_coeff() const override;
    std::vector<double> symmetry_axis() const override { return axis_; }

  private:
    const RasterND* r_;
    std::vector<double> axis_;
};

/// sum_{ij} (f_i - g_i)(f_j - g_j) Kbar(cell_i, cell_j) where Kbar is the
/// exact cell-pair average of |x - y|^e. Near offsets (inf-norm <= 4) use
/// cached tent-weighted integrals, the far field a curvature-corrected
/// midpoint value. e may be negative as long as e > -n (integrable kernel).
double kernel_quadratic_form(const RasterND& f, const RasterND& g, double e);

/// Dimensionless tent-weighted kernel integral I_e(d) (exposed for tests).
double tent_kernel_integral(int n, double e, std::array<int, 3> d);

}  // namespace edlab

#endif
