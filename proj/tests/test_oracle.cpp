#include "doctest.h"
#include "support.hpp"

using namespace pbnest;
using namespace testsupport;

namespace {

double merge_below(const PersistenceDiagram& D, double below) {
    double m = -1;
    for (const auto& p : D.pairs(0))
        if (p.birth < below && !p.essential()) m = std::max(m, p.death);
    return m;
}

}  // namespace

TEST_SUITE("oracle") {
    TEST_CASE("one ball is connected") {
        BallCover c{PointCloud(2, {{0, 0}}), 1.0, std::nullopt, 1.0};
        const double h = 0.01;
        auto D = raster_ball_union_persistence(c, FilteringFunction::abs_coordinate(1), h);
        REQUIRE(D.pairs(0).size() == 1);
        CHECK(D.pairs(0)[0].essential());
        CHECK(D.pairs(0)[0].birth <= h * std::sqrt(2.0));
        CHECK(D.pairs(1).empty());
    }

    TEST_CASE("annulus of balls has one loop") {
        BallCover c{circle_points(32, 2.0), 0.5, std::nullopt, 2.0};
        auto D = raster_ball_union_persistence(c, FilteringFunction::distance_to_point({0, 0}), 0.02);
        CHECK(D.essential_count(0) == 1);
        CHECK(D.essential_count(1) == 1);
        // the loop appears once the inner rim is connected, well before the outer rim
        for (const auto& p : D.pairs(1))
            if (p.essential()) CHECK(p.birth < 2.0);
    }

    TEST_CASE("circle64 raster merge") {
        auto D = raster_ball_union_persistence(circle64_cover(), FilteringFunction::abs_coordinate(1), 0.01);
        CHECK(std::abs(merge_below(D, 0.5) - 3.53106) <= 0.02);
        REQUIRE(D.pairs(1).size() == 1);
        CHECK(D.pairs(1)[0].essential());
    }

    TEST_CASE("circle-near96 raster merge") {
        auto D = raster_ball_union_persistence(circle_near96_cover(), FilteringFunction::abs_coordinate(1), 0.01);
        CHECK(std::abs(merge_below(D, 0.8) - 3.40955) <= 0.02);
    }

    TEST_CASE("halving the cell size moves deaths by less than Ω(2h√2)") {
        auto f = FilteringFunction::abs_coordinate(1);
        for (const auto& c : {circle64_cover(), circle_near96_cover()}) {
            double a = merge_below(raster_ball_union_persistence(c, f, 0.02), 0.8);
            double b = merge_below(raster_ball_union_persistence(c, f, 0.01), 0.8);
            CHECK(std::abs(a - b) < 2 * 0.02 * std::sqrt(2.0));
        }
    }

    TEST_CASE("raster approaches the analytic diagram as the cover densifies") {
        auto f = FilteringFunction::abs_coordinate(1);
        const double delta = 0.04;
        auto c = curve_cover(ClosedCurve::circle({0, 0}, 4.0), delta, 4.0);
        auto D = raster_ball_union_persistence(c, f, delta / 10);
        CHECK(std::abs(merge_below(D, 0.5) - 4.0) <= 0.05);
        REQUIRE(D.pairs(1).size() == 1);
        CHECK(std::abs(D.pairs(1)[0].birth - 4.0) <= 0.05);
    }

    TEST_CASE("raster errors") {
        auto f = FilteringFunction::abs_coordinate(1);
        BallCover c{PointCloud(2, {{0, 0}}), 1.0, std::nullopt, 1.0};
        CHECK_THROWS_WITH_AS(raster_ball_union_persistence(c, f, 0.5), "raster cell too coarse", ValidationError);
        BallCover huge{PointCloud(2, {{0, 0}, {1e4, 1e4}}), 1.0, std::nullopt, 1.0};
        CHECK_THROWS_WITH_AS(raster_ball_union_persistence(huge, f, 0.1), "raster box too large", ValidationError);
        CHECK_THROWS_AS(raster_ball_union_persistence(c, color_circle_x().f, 0.01), ValidationError);
    }

    TEST_CASE("analytic circle diagrams") {
        auto f = FilteringFunction::abs_coordinate(1);
        auto D = analytic_circle_diagram(4.0, f);
        REQUIRE(D.pairs(0).size() == 2);
        CHECK(D.pairs(0)[0] == PersistencePair{0.0, 4.0});
        CHECK(D.pairs(0)[1] == PersistencePair{0.0, kInf});
        REQUIRE(D.pairs(1).size() == 1);
        CHECK(D.pairs(1)[0] == PersistencePair{4.0, kInf});
        CHECK(analytic_circle_diagram(1.0, f).pairs(0)[0].death == 1.0);
        CHECK_THROWS_WITH_AS(analytic_circle_diagram(1.0, FilteringFunction::coordinate(0)), "unsupported f-kind",
                             ValidationError);
    }

    TEST_CASE("brute rank basics") {
        auto K = SimplicialComplex::from_simplices(3, {{0, 1}, {1, 2}, {0, 2}});
        auto F = filtered_from_vertices(K, {{1.0}, {1.0}, {1.0}});
        CHECK(brute_rank(F, 0, {0.0}, {0.5}) == 0);
        CHECK(brute_rank(F, 0, {1.0}, {1.0}) == 1);
        CHECK(brute_rank(F, 1, {1.0}, {2.0}) == 1);
        CHECK(brute_rank(F, 2, {1.0}, {2.0}) == 0);
        CHECK_THROWS_AS(brute_rank(F, 0, {1.0}, {0.0}), ValidationError);

        std::vector<Simplex> big;
        for (std::uint32_t i = 0; i < 40; ++i)
            for (std::uint32_t j = i + 1; j < 40; ++j) big.push_back({i, j});
        auto B = filtered_from_vertices(SimplicialComplex::from_simplices(40, big), std::vector<Vec>(40, Vec{0.0}));
        CHECK_THROWS_WITH_AS(brute_rank(B, 0, {0.0}, {1.0}), "complex too large for brute rank", ValidationError);
    }

    TEST_CASE("brute rank is monotone in u and antitone in v") {
        std::mt19937_64 rng(43);
        for (int trial = 0; trial < 60; ++trial) {
            auto F = random_filtered(rng, 7, 1);
            for (int d = 0; d < 2; ++d)
                for (double u = -0.5; u <= 4.5; u += 1.0)
                    for (double v = u; v <= 4.5; v += 1.0) {
                        int here = brute_rank(F, d, {u}, {v});
                        if (u + 1.0 <= v) CHECK(brute_rank(F, d, {u + 1.0}, {v}) >= here);
                        CHECK(brute_rank(F, d, {u}, {v + 1.0}) <= here);
                    }
        }
    }
}
