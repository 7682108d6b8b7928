#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbnest {

using Point = std::vector<double>;
using Vec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raised when inputs violate an operation's contract. The CLI maps it to exit status 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ordered list of points sharing one ambient dimension.
class PointCloud {
public:
    PointCloud() = default;
    PointCloud(std::size_t dim, std::vector<Point> points);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

    const Point& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const noexcept { return points_; }

    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }

    /// Length of the diagonal of the axis-aligned bounding box (0 for fewer than two points).
    double bounding_box_diagonal() const;

private:
    std::size_t dim_ = 0;
    std::vector<Point> points_;
};

double squared_distance(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);

}  // namespace pbnest
