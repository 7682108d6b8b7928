#include "doctest.h"
#include "support.hpp"

using namespace pbnest;
using namespace testsupport;

namespace {

SearchShape shape(const PersistenceDiagram& D, double W) { return {D, {blind_strips(D, 0, W), blind_strips(D, 1, W)}}; }

PersistenceDiagram translated(const PersistenceDiagram& D, double c) {
    PersistenceDiagram out;
    for (int d = 0; d <= D.max_degree(); ++d)
        for (const auto& p : D.pairs(d)) out.add(d, p.birth + c, p.death + c);
    return out;
}

struct Bean {
    double W;
    PersistenceDiagram Y, X;
};

const Bean& bean04() {
    static const Bean b = [] {
        auto f = FilteringFunction::abs_coordinate(1);
        auto Y = raster_ball_union_persistence(curve_cover(bean_curve(), 0.4, 0.6), f, 0.01);
        auto X = raster_ball_union_persistence(curve_cover(ClosedCurve::circle({0, 0}, 4.0), 0.4, 4.0), f, 0.01);
        return Bean{0.4, Y, X};
    }();
    return b;
}

}  // namespace

TEST_SUITE("comparison") {
    TEST_CASE("bounds at the cited witnesses") {
        auto c = pseudodistance_bound({0, {0.4}, {2.2}, 3}, {0, {1.1}, {1.5}, 2});
        REQUIRE(c);
        CHECK(std::abs(c->bound - 0.7) <= 1e-12);
        CHECK(c->useful);
        auto d = pseudodistance_bound({0, {0.2}, {2.6}, 3}, {0, {1.3}, {1.5}, 2});
        REQUIRE(d);
        CHECK(std::abs(d->bound - 1.1) <= 1e-12);
        auto e = pseudodistance_bound({0, {-0.28, 0.12}, {0.32, 0.72}, 2}, {0, {-0.06, 0.34}, {0.1, 0.5}, 1});
        REQUIRE(e);
        CHECK(std::abs(e->bound - 0.22) <= 1e-12);
    }

    TEST_CASE("no certificate without a strict inequality") {
        CHECK_FALSE(pseudodistance_bound({0, {0.4}, {2.2}, 2}, {0, {1.1}, {1.5}, 2}));
        CHECK_FALSE(pseudodistance_bound({0, {0.4}, {2.2}, 1}, {0, {1.1}, {1.5}, 2}));
        CHECK_THROWS_WITH_AS(pseudodistance_bound({0, {0.4}, {2.2}, 3}, {1, {1.1}, {1.5}, 2}), "degree mismatch",
                             ValidationError);
        auto useless = pseudodistance_bound({0, {1.0}, {2.0}, 3}, {0, {0.5}, {1.5}, 2});
        REQUIRE(useless);
        CHECK(useless->bound < 0);
        CHECK_FALSE(useless->useful);
    }

    TEST_CASE("swapping the shapes at the same witnesses gives nothing") {
        std::mt19937_64 rng(41);
        std::uniform_real_distribution<double> U(0.0, 5.0);
        std::uniform_int_distribution<int> B(0, 4);
        for (int k = 0; k < 500; ++k) {
            PBNValue a{0, {U(rng)}, {U(rng)}, B(rng)}, b{0, {U(rng)}, {U(rng)}, B(rng)};
            auto c = pseudodistance_bound(a, b);
            if (c && c->bound > 0) CHECK_FALSE(pseudodistance_bound(b, a));
        }
    }

    TEST_CASE("identical shapes admit no positive bound") {
        auto f = FilteringFunction::abs_coordinate(1);
        auto D = raster_ball_union_persistence(circle64_cover(), f, 0.01);
        CHECK_FALSE(search_best_bound(shape(D, 0.5), shape(D, 0.5), {0, 1}));
        const auto& b = bean04();
        CHECK_FALSE(search_best_bound(shape(b.Y, b.W), shape(b.Y, b.W), {0, 1}));
    }

    TEST_CASE("bean against circle: searched witnesses are certified and the bound is sound") {
        const auto& b = bean04();
        auto A = shape(b.Y, b.W), B = shape(b.X, b.W);
        auto best = search_best_bound(A, B, {0, 1});
        REQUIRE(best);
        CHECK(best->bound > 0);
        CHECK(best->bound <= 1.5);
        CHECK(best->first_outside);
        CHECK(best->second_outside);
        const auto& first = best->first_is_a ? A : B;
        const auto& second = best->first_is_a ? B : A;
        int deg = best->degree;
        CHECK(classify(first.strips[deg], best->first.u[0], best->first.v[0]) == StripClass::Outside);
        CHECK(classify(second.strips[deg], best->second.u[0], best->second.v[0]) == StripClass::Outside);
        CHECK(pbn_query_1d(first.diagram, deg, best->first.u[0], best->first.v[0]) == best->first.value);
        CHECK(pbn_query_1d(second.diagram, deg, best->second.u[0], best->second.v[0]) == best->second.value);
        CHECK(best->first.value > best->second.value);
        auto again = pseudodistance_bound(best->first, best->second);
        REQUIRE(again);
        CHECK(again->bound == best->bound);
    }

    TEST_CASE("enlarging the candidate set never lowers the bound") {
        const auto& b = bean04();
        auto A = shape(b.Y, b.W), B = shape(b.X, b.W);
        auto base = search_best_bound(A, B, {0});
        REQUIRE(base);
        for (std::size_t g : {5u, 17u, 40u}) {
            SearchSpec spec;
            spec.grid = g;
            auto more = search_best_bound(A, B, {0}, spec);
            REQUIRE(more);
            CHECK(more->bound >= base->bound);
        }
        auto both = search_best_bound(A, B, {0, 1});
        REQUIRE(both);
        CHECK(both->bound >= base->bound);
    }

    TEST_CASE("translating both functions leaves the bound unchanged") {
        const auto& b = bean04();
        auto best = search_best_bound(shape(b.Y, b.W), shape(b.X, b.W), {0, 1});
        REQUIRE(best);
        for (double c : {0.37, -1.25, 10.0}) {
            auto moved = search_best_bound(shape(translated(b.Y, c), b.W), shape(translated(b.X, c), b.W), {0, 1});
            REQUIRE(moved);
            CHECK(moved->bound == doctest::Approx(best->bound).epsilon(1e-9));
            CHECK(moved->first.u[0] == doctest::Approx(best->first.u[0] + c).epsilon(1e-9));
        }
    }

    TEST_CASE("two-parameter search on the colour circles") {
        auto X = color_circle_x(), Y = color_circle_y();
        auto FX = dual_shape_filtration(X.cover, X.f), FY = dual_shape_filtration(Y.cover, Y.f);
        SearchSpec spec;
        spec.pairs = {color_pair()};
        const double W = 2 * modulus(X.f, X.cover.radius).omega;
        auto best = search_best_bound_leaves(FY, W, FX, W, {0}, spec);
        REQUIRE(best);
        CHECK(best->bound <= 0.22 + 1e-12);
        CHECK(best->bound >= 0.2199);
        CHECK(best->first.u.size() == 2);
        // witnesses are true two-parameter values
        const auto& FA = best->first_is_a ? FY : FX;
        const auto& FB = best->first_is_a ? FX : FY;
        CHECK(pbn_query_multi(FA, 0, best->first.u, best->first.v) == best->first.value);
        CHECK(pbn_query_multi(FB, 0, best->second.u, best->second.v) == best->second.value);
        spec.pairs.clear();
        CHECK_THROWS_AS(search_best_bound_leaves(FY, W, FX, W, {0}, spec), ValidationError);
    }
}
