#include "edlab/samples.hpp"

#include <cmath>

#include "edlab/errors.hpp"

namespace edlab {

SampleCloud::SampleCloud(int dim, std::vector<double> points, std::vector<double> weights)
    : dim_(dim), points_(std::move(points)), weights_(std::move(weights)) {
    require(dim_ >= 1, ErrorCode::DimensionMismatch, "cloud dimension must be >= 1");
    require(!weights_.empty(), ErrorCode::InvalidArgument, "cloud must not be empty");
    require(points_.size() == weights_.size() * static_cast<std::size_t>(dim_),
            ErrorCode::InvalidArgument, "point storage does not match weight count");
    double w = 0.0;
    for (double v : points_)
        require(std::isfinite(v), ErrorCode::InvalidArgument, "cloud point not finite");
    for (double v : weights_) {
        require(v >= 0.0, ErrorCode::InvalidArgument, "cloud weight negative");
        w += v;
    }
    require(std::abs(w - 1.0) <= 1e-12, ErrorCode::InvalidArgument,
            "cloud weights must sum to 1");
}

double SampleCloud::distance(int i, int j) const {
    double acc = 0.0;
    for (int k = 0; k < dim_; ++k) {
        const double d = coord(i, k) - coord(j, k);
        acc += d * d;
    }
    return std::sqrt(acc);
}

double SampleCloud::mean1d() const {
    double acc = 0.0;
    for (int i = 0; i < size(); ++i) acc += weights_[i] * coord(i, 0);
    return acc;
}

double SampleCloud::abs_moment(double s) const {
    double acc = 0.0;
    for (int i = 0; i < size(); ++i) {
        double norm2 = 0.0;
        for (int k = 0; k < dim_; ++k) norm2 += coord(i, k) * coord(i, k);
        acc += weights_[i] * std::pow(norm2, 0.5 * s);
    }
    return acc;
}

SampleCloud quantile_cloud(const AnalyticDensity& density, int n) {
    require(n >= 1, ErrorCode::InvalidArgument, "cloud size must be >= 1");
    std::vector<double> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = density.quantile((i + 0.5) / n);
    return SampleCloud(1, std::move(pts), std::vector<double>(n, 1.0 / n));
}

SampleCloud cloud_from_dirac(const DiracMixture& d) {
    std::vector<double> flat;
    flat.reserve(d.points.size() * d.dim);
    for (const auto& pt : d.points) flat.insert(flat.end(), pt.begin(), pt.end());
    return SampleCloud(d.dim, std::move(flat), d.weights);
}

}  // namespace edlab
