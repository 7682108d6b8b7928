#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbnest/core.hpp"

namespace pbnest {

/// Equal-radius balls centred on landmarks, together with the sampling hypotheses
/// (offset bound and condition parameter) they are meant to satisfy.
struct BallCover {
    PointCloud landmarks;
    double radius = 0.0;
    std::optional<double> offset;
    double tau = 0.0;

    /// Throws ValidationError("no landmarks" / "invalid radius" / ...) on a malformed cover.
    void validate() const;
};

using Simplex = std::vector<std::uint32_t>;

/// Abstract simplicial complex in canonical form: every simplex is a sorted vertex list,
/// the set is closed under faces, and simplices are ordered by (dimension, lexicographic).
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Closure of `simplices` under faces, plus every vertex 0..num_vertices-1.
    static SimplicialComplex from_simplices(std::size_t num_vertices, std::vector<Simplex> simplices);

    const std::vector<Simplex>& simplices() const noexcept { return simplices_; }
    std::size_t size() const noexcept { return simplices_.size(); }
    std::size_t num_vertices() const noexcept { return num_vertices_; }
    int dimension() const;
    std::size_t count(int dim) const;

    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }
    bool is_subcomplex_of(const SimplicialComplex& other) const;

    /// Simplices of exactly dimension `dim`, in canonical order.
    std::vector<Simplex> simplices_of_dim(int dim) const;

private:
    std::size_t num_vertices_ = 0;
    std::vector<Simplex> simplices_;
};

/// Closed planar curve parametrised by arc length.
class ClosedCurve {
public:
    static ClosedCurve circle(Point center, double radius);
    /// Polygon (counter-clockwise vertices) whose corners are rounded by tangent circular arcs
    /// of radius `fillet`. The result is C^1.
    static ClosedCurve filleted_polygon(std::vector<Point> vertices, double fillet);

    double length() const noexcept { return length_; }
    /// Point at arc length s (taken modulo length()).
    Point at(double s) const;
    /// n points at equal arc-length spacing, the first at s = phase.
    PointCloud sample(std::size_t n, double phase = 0.0) const;

    const std::vector<Point>& polygon() const noexcept { return polygon_; }
    double fillet_radius() const noexcept { return fillet_; }
    bool is_circle() const noexcept { return pieces_.size() == 1 && pieces_[0].is_arc && polygon_.empty(); }

private:
    struct Piece {
        bool is_arc = false;
        Point start;      // segment start
        Point direction;  // unit direction for segments
        Point center;     // arc centre
        double radius = 0.0;
        double angle0 = 0.0;  // arc start angle
        double sweep = 0.0;   // signed sweep
        double length = 0.0;
    };
    std::vector<Piece> pieces_;
    std::vector<double> offsets_;  // arc length at the start of each piece
    std::vector<Point> polygon_;
    double fillet_ = 0.0;
    double length_ = 0.0;
};

/// Stand-in for the unknown manifold, used only to check sampling hypotheses.
class ReferenceShape {
public:
    enum class Kind { ParametricCurve, DensePointSet };

    static ReferenceShape from_curve(ClosedCurve curve);
    /// Dense sample of the shape; `spacing` bounds the distance from any shape point to the sample.
    static ReferenceShape from_points(PointCloud points, double spacing);

    Kind kind() const noexcept { return kind_; }
    const std::optional<ClosedCurve>& curve() const noexcept { return curve_; }

    /// Points on the shape together with a bound on how far any shape point is from them.
    /// Curves are sampled at arc-length spacing at most `max_spacing`.
    std::pair<PointCloud, double> dense_sample(double max_spacing) const;

private:
    Kind kind_ = Kind::DensePointSet;
    std::optional<ClosedCurve> curve_;
    PointCloud points_;
    double spacing_ = 0.0;
};

struct DensityReport {
    bool passed = false;
    double max_gap = 0.0;  // max over shape samples of the distance to the nearest landmark
    double margin = 0.0;   // threshold minus the certified gap bound; positive when the covering test passes
    std::optional<std::pair<double, double>> radius_interval;
    std::string reason;
};

/// Covering hypothesis for landmarks on the shape: delta < sqrt(3/5) tau and every shape point
/// is closer than delta/2 to a landmark.
DensityReport check_density_on(const BallCover& cover, const ReferenceShape& shape);

/// Covering hypothesis for landmarks near the shape (offset s): s < (3 - 2 sqrt 2) tau, delta in the
/// admissible interval, landmarks within s of the shape and every shape point within s of a landmark.
DensityReport check_density_near(const BallCover& cover, const ReferenceShape& shape);

/// Open interval of admissible radii for offset s. Throws "offset too large for τ" when empty.
std::pair<double, double> near_radius_interval(double s, double tau);

/// Triangulation of planar points; triangles are counter-clockwise.
struct Triangulation {
    std::vector<std::array<std::uint32_t, 3>> triangles;
    bool collinear = false;
    std::vector<std::uint32_t> chain;  // point order along the line when collinear
};

Triangulation delaunay_triangulation(const PointCloud& points);
SimplicialComplex delaunay_2d(const PointCloud& points);

/// Nerve of the Voronoi-restricted balls (alpha complex at radius delta). Planar covers only.
SimplicialComplex dual_complex(const BallCover& cover);

/// Nerve of the balls themselves, by subset enumeration up to max_dim.
SimplicialComplex cech_nerve(const BallCover& cover, int max_dim);

/// Deterministic sub-1e-9 jitter of points involved in duplicates, collinear triples or cocircular
/// Delaunay quadruples. Returns the input unchanged when none is found.
PointCloud precondition_general_position(const PointCloud& points, std::uint64_t seed);

struct Ball {
    Point center;
    double radius = -1.0;  // negative for the empty ball
    bool contains(const Point& p, double tol = 1e-12) const;
};

/// Smallest enclosing ball (Welzl).
Ball miniball(const std::vector<Point>& points);

/// Circumcentre and circumradius of a planar triangle.
std::pair<Point, double> circumcircle(const Point& a, const Point& b, const Point& c);

}  // namespace pbnest
