#pragma once

#include <optional>
#include <vector>

#include "pbnest/core.hpp"
#include "pbnest/geometry.hpp"

namespace pbnest {

/// Change of reference between the colour plane (z = 0) and RGB space.
struct ColorFrame {
    static const double matrix[3][3];
    static const double offset[3];
    static std::array<double, 3> to_rgb(double x, double y, double z = 0.0);
    /// Plane coordinates (x, y, z) of an RGB colour; z is 0 on the plane.
    static std::array<double, 3> from_rgb(const std::array<double, 3>& rgb);
};

class FilteringFunction {
public:
    enum class Kind { AbsCoordinate, Coordinate, DistanceToPoint, VertexTable, ColorPlane };

    static FilteringFunction abs_coordinate(std::size_t axis);
    static FilteringFunction coordinate(std::size_t axis);
    static FilteringFunction distance_to_point(Point p);
    /// Values given per vertex. `sites` (optional) are the vertex positions, used to answer
    /// point queries; `lipschitz` is required for modulus queries.
    static FilteringFunction vertex_table(std::vector<Vec> values, std::vector<Point> sites = {},
                                          std::optional<std::vector<double>> lipschitz = std::nullopt);
    /// Per-vertex RGB colours lying on the colour plane; values are the two plane coordinates.
    static FilteringFunction color_plane(std::vector<std::array<double, 3>> rgb, std::vector<Point> sites = {},
                                         std::optional<std::vector<double>> lipschitz = std::nullopt);

    Kind kind() const noexcept { return kind_; }
    std::size_t n_components() const noexcept { return n_; }
    std::size_t axis() const noexcept { return axis_; }
    const Point& anchor() const noexcept { return anchor_; }
    const std::vector<Vec>& table() const noexcept { return table_; }
    const std::vector<Point>& sites() const noexcept { return sites_; }
    const std::vector<std::array<double, 3>>& colors() const noexcept { return rgb_; }
    const std::optional<std::vector<double>>& lipschitz() const noexcept { return lipschitz_; }
    bool is_table() const noexcept { return kind_ == Kind::VertexTable || kind_ == Kind::ColorPlane; }

    /// Value at an ambient point. Table kinds match the point against their sites.
    Vec evaluate(const Point& p) const;
    /// Value at vertex `index` of a cloud whose point is `p`.
    Vec evaluate_vertex(std::size_t index, const Point& p) const;

    /// Per-component Lipschitz constants; throws "modulus unavailable" when unknown.
    std::vector<double> lipschitz_constants() const;

    /// Same function with every value shifted by `shift` (table kinds only shift their table).
    FilteringFunction shifted(const Vec& shift) const;

private:
    Kind kind_ = Kind::Coordinate;
    std::size_t n_ = 1;
    std::size_t axis_ = 0;
    Point anchor_;
    std::vector<Vec> table_;
    std::vector<Point> sites_;
    std::vector<std::array<double, 3>> rgb_;
    std::optional<std::vector<double>> lipschitz_;
    Vec shift_;
};

struct OmegaVector {
    double eps = 0.0;
    double omega = 0.0;
    std::size_t n = 1;
    Vec vector() const { return Vec(n, omega); }
};

OmegaVector modulus(const FilteringFunction& f, double eps);

/// Positive unit direction l and zero-sum offset b; the leaf is s -> s l + b.
struct AdmissiblePair {
    Vec l;
    Vec b;

    void validate() const;
    std::size_t n() const noexcept { return l.size(); }
    Vec point(double s) const;
    /// Leaf parameter of u, or nothing when u is off the leaf.
    std::optional<double> parameter_of(const Vec& u, double tol = 1e-9) const;
    /// Smallest leaf step that moves every component by at least `w`.
    double leaf_width(double w) const;
};

/// Complex whose simplices carry n-dimensional values, aligned with complex.simplices().
struct FilteredComplex {
    SimplicialComplex complex;
    std::vector<Vec> values;
    std::size_t n = 1;

    /// Throws "invalid filtration" unless values are monotone under face inclusion.
    void validate() const;
    bool monotone() const;
};

/// Vertex-max values from the vertex values (one vector per vertex).
FilteredComplex filtered_from_vertices(SimplicialComplex K, const std::vector<Vec>& vertex_values);

FilteredComplex sublevel_filtration(const SimplicialComplex& K, const FilteringFunction& f, const PointCloud& cloud);

/// One-parameter filtration along the leaf of `pair`: value = max_j (value_j - b_j) / l_j.
FilteredComplex foliation_reduce(const FilteredComplex& F, const AdmissiblePair& pair);

}  // namespace pbnest
