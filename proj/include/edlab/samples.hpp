#ifndef EDLAB_SAMPLES_HPP
#define EDLAB_SAMPLES_HPP

#include <vector>

#include "edlab/analytic.hpp"

namespace edlab {

/// Weighted point set in R^n; weights sum to one. Points are stored row-major
/// (point i occupies entries [i*dim, (i+1)*dim)).
class SampleCloud {
  public:
    SampleCloud(int dim, std::vector<double> points, std::vector<double> weights);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(weights_.size()); }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& flat() const { return points_; }

    double coord(int i, int k) const { return points_[static_cast<std::size_t>(i) * dim_ + k]; }
    double distance(int i, int j) const;

    /// Signed mean of the first coordinate.
    double mean1d() const;
    /// Weighted absolute moment sum w_i |x_i|^s.
    double abs_moment(double s) const;

  private:
    int dim_;
    std::vector<double> points_;
    std::vector<double> weights_;
};

/// Equal-weight cloud at the quantiles (i - 1/2)/n of a continuous 1D density.
SampleCloud quantile_cloud(const AnalyticDensity& density, int n);

/// Cloud carrying the atoms of a Dirac mixture.
SampleCloud cloud_from_dirac(const DiracMixture& d);

}  // namespace edlab

#endif
