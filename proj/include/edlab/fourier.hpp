#ifndef EDLAB_FOURIER_HPP
#define EDLAB_FOURIER_HPP

#include <complex>
#include <functional>
#include <vector>

namespace edlab {

/// Radial quadrature support on (0, xi_max]: geometric panels, composite
/// Gauss-Legendre inside each. The first panel absorbs algebraic endpoint
/// powers rho^beta via a substitution chosen per integral, so the stored
/// plain node view is only one of the quadratures this grid can drive.
class FourierGrid {
  public:
    /// `n_nodes` is the total node budget, split evenly across panels.
    static FourierGrid make(double xi_max, int n_nodes = 2048, int panels = 12);

    double xi_max() const { return xi_max_; }
    int node_count() const { return order_ * static_cast<int>(edges_.size() - 1); }
    const std::vector<double>& panel_edges() const { return edges_; }
    int panel_order() const { return order_; }

    /// Plain composite-GL node/weight view (beta = 0), increasing nodes.
    std::vector<double> nodes() const;
    std::vector<double> weights() const;

    /// integral over (0, xi_max] of rho^beta * B(rho) for beta > -1, with an
    /// error estimate from comparing against the half-order rule.
    struct Integral {
        double value = 0.0;
        double error_estimate = 0.0;
    };
    Integral integrate_power(double beta, const std::function<double(double)>& B) const;

  private:
    double xi_max_ = 0.0;
    std::vector<double> edges_;  // 0 = e_0 < e_1 < ... <= xi_max
    int order_ = 0;              // GL order per panel
};

/// Surface area of the unit sphere S^{n-1} (2 for n = 1 by the two half-line
/// convention).
double sphere_area(int n);

/// Angular average over the unit sphere of a function of u = cos(theta)
/// against the axis, i.e. (1/S_{n-1}) * integral of g(u) over S^{n-1}.
/// Supported for n in {1, 2, 3}.
double angular_average(int n, const std::function<double(double)>& g, int order = 24);

}  // namespace edlab

#endif
