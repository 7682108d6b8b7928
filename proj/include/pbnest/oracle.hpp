#pragma once

#include <cstdint>
#include <vector>

#include "pbnest/persistence.hpp"

namespace pbnest {

/// Occupancy raster of a planar ball union; pixel centres carry f.
struct RasterGrid {
    double x0 = 0.0, y0 = 0.0;  // centre of pixel (0, 0)
    double h = 0.0;
    std::size_t nx = 0, ny = 0;
    std::vector<std::uint8_t> occupied;
    std::vector<double> value;

    std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * nx + i; }
};

RasterGrid rasterize_ball_union(const BallCover& cover, const FilteringFunction& f, double h);

/// Sublevel persistence of the cubical complex on the occupied pixels (vertex-max values),
/// degrees 0 and 1. Throws when h > radius/10 or the raster would be too large.
PersistenceDiagram raster_ball_union_persistence(const BallCover& cover, const FilteringFunction& f, double h,
                                                 int degree_max = 1);
PersistenceDiagram raster_persistence(const RasterGrid& grid, int degree_max = 1);

/// Diagram of |coordinate| on the origin-centred circle of radius r.
PersistenceDiagram analytic_circle_diagram(double r, const FilteringFunction& f);

/// rank H_i(K_u) -> H_i(K_v) by dense elimination and a Zassenhaus intersection. u ⪯ v.
int brute_rank(const FilteredComplex& F, int degree, const Vec& u, const Vec& v);

}  // namespace pbnest
