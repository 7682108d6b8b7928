#include "pbnest/core.hpp"

#include <algorithm>

namespace pbnest {

PointCloud::PointCloud(std::size_t dim, std::vector<Point> points) : dim_(dim), points_(std::move(points)) {
    if (dim_ == 0) throw ValidationError("ambient dimension must be positive");
    for (const auto& p : points_) {
        if (p.size() != dim_) throw ValidationError("point has wrong number of coordinates");
        for (double x : p)
            if (!std::isfinite(x)) throw ValidationError("non-finite coordinate");
    }
}

double PointCloud::bounding_box_diagonal() const {
    if (points_.size() < 2) return 0.0;
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
        double lo = points_[0][k], hi = points_[0][k];
        for (const auto& p : points_) {
            lo = std::min(lo, p[k]);
            hi = std::max(hi, p[k]);
        }
        s += (hi - lo) * (hi - lo);
    }
    return std::sqrt(s);
}

double squared_distance(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

}  // namespace pbnest
