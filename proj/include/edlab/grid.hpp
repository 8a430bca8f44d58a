#ifndef EDLAB_GRID_HPP
#define EDLAB_GRID_HPP

#include <vector>

namespace edlab {

/// Uniform 1D cell grid on [x_min, x_max]. Cell i covers
/// [x_min + i h, x_min + (i+1) h] and carries its value at the center.
class Grid1D {
  public:
    Grid1D(double x_min, double x_max, int n_cells);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    int n_cells() const { return n_cells_; }
    double h() const { return h_; }

    double center(int i) const { return x_min_ + (i + 0.5) * h_; }
    double left_edge(int i) const { return x_min_ + i * h_; }
    double right_edge(int i) const { return x_min_ + (i + 1) * h_; }

    bool operator==(const Grid1D& other) const;

  private:
    double x_min_;
    double x_max_;
    int n_cells_;
    double h_;
};

/// Probability density sampled as cell averages on a Grid1D. Values are
/// nonnegative and h * sum(values) stays within 1e-8 of one.
class GridDensity1D {
  public:
    static constexpr double kMassTolerance = 1e-8;

    /// `normalize` rescales the values to unit mass before validating.
    GridDensity1D(Grid1D grid, std::vector<double> values, bool normalize = false);

    const Grid1D& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double value(int i) const { return values_[i]; }

    double mass() const;
    double mean() const;
    /// Absolute moment m_s = sum_i f_i int_cell |x|^s dx (exact per cell).
    double abs_moment(double s) const;
    double min_value() const;

  private:
    Grid1D grid_;
    std::vector<double> values_;
};

/// Cumulative distribution on the same grid; F_i lives at the right edge of
/// cell i, with F(x_min) = 0 implied. Piecewise-linear in between.
class CdfCurve {
  public:
    CdfCurve(Grid1D grid, std::vector<double> values);

    const Grid1D& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }

    /// Linear interpolation, clamped to [0, F_last] outside the window.
    double at(double x) const;

    /// Exact integral of the piecewise-linear F over [a, b] within the window.
    double integrate(double a, double b) const;
    /// Same for (1 - F) and for F(1 - F); these appear in the mean and Gini
    /// identities and are integrated in closed form per cell.
    double integrate_one_minus(double a, double b) const;
    double integrate_f_times_one_minus(double a, double b) const;
    double integrate_one_minus_squared(double a, double b) const;

  private:
    double segment_value(int i, double t) const;  // t in [0,1] across cell i

    Grid1D grid_;
    std::vector<double> values_;
};

/// F_i = h * sum_{j<=i} f_j.
CdfCurve cdf_from_density(const GridDensity1D& f);

/// E(X) = -int_{x_min}^{0} F dx + int_0^{x_max} (1 - F) dx, restricted to the
/// window when 0 lies outside it.
double mean_from_cdf(const CdfCurve& F);

}  // namespace edlab

#endif
