#include "doctest.h"
#include "support.hpp"

using namespace pbnest;
using namespace testsupport;

TEST_SUITE("filtration") {
    TEST_CASE("builtin function values") {
        CHECK(FilteringFunction::abs_coordinate(1).evaluate({3, -2}) == Vec{2});
        CHECK(FilteringFunction::coordinate(0).evaluate({3, -2}) == Vec{3});
        CHECK(FilteringFunction::distance_to_point({0, 0}).evaluate({3, 4}) == Vec{5});
        CHECK_THROWS_AS(FilteringFunction::abs_coordinate(2).evaluate({1, 1}), ValidationError);
    }

    TEST_CASE("colour frame") {
        auto rgb = ColorFrame::to_rgb(0.0, 0.0);
        const double e = (4 - std::sqrt(2.0)) / 4;
        CHECK(rgb[0] == doctest::Approx(e).epsilon(1e-15));
        CHECK(rgb[1] == doctest::Approx(e).epsilon(1e-15));
        CHECK(std::abs(rgb[2]) < 1e-15);
        // the frame is orthonormal: distances in the plane are distances in RGB
        auto a = ColorFrame::to_rgb(0.3, -0.1), b = ColorFrame::to_rgb(-0.2, 0.4);
        double d = std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
        CHECK(d == doctest::Approx(std::hypot(0.5, 0.5)).epsilon(1e-14));
        auto back = ColorFrame::from_rgb(a);
        CHECK(back[0] == doctest::Approx(0.3).epsilon(1e-14));
        CHECK(back[1] == doctest::Approx(-0.1).epsilon(1e-14));
        CHECK(std::abs(back[2]) < 1e-14);
    }

    TEST_CASE("colour-plane functions take plane coordinates per vertex") {
        PointCloud sites(2, {{1, 0}, {0, 1}});
        auto f = FilteringFunction::color_plane({ColorFrame::to_rgb(0.1, 0.2), ColorFrame::to_rgb(-0.3, 0.4)},
                                                sites.points(), std::vector<double>{0.5, 0.5});
        CHECK(f.n_components() == 2);
        auto v = f.evaluate({0, 1});
        CHECK(v[0] == doctest::Approx(-0.3).epsilon(1e-14));
        CHECK(v[1] == doctest::Approx(0.4).epsilon(1e-14));
        CHECK_THROWS_WITH_AS(f.evaluate({5, 5}), "no value for vertex", ValidationError);
        std::array<double, 3> off{1.0, 1.0, 1.0};
        CHECK_THROWS_WITH_AS(FilteringFunction::color_plane({off}), "colour off the plane", ValidationError);
    }

    TEST_CASE("vertex tables") {
        auto f = FilteringFunction::vertex_table({{1.0}, {2.0}}, {{0, 0}, {1, 0}});
        CHECK(f.evaluate({1, 0}) == Vec{2.0});
        CHECK(f.evaluate_vertex(0, {9, 9}) == Vec{1.0});
        CHECK_THROWS_WITH_AS(f.evaluate({0.5, 0}), "no value for vertex", ValidationError);
        CHECK_THROWS_WITH_AS(modulus(f, 0.1), "modulus unavailable", ValidationError);
    }

    TEST_CASE("modulus of continuity") {
        auto f = FilteringFunction::abs_coordinate(1);
        CHECK(modulus(f, 0.5).omega == 0.5);
        CHECK(modulus(f, 0.0).omega == 0.0);
        CHECK(modulus(FilteringFunction::distance_to_point({1, 1}), 0.0).omega == 0.0);
        auto c = color_circle_x();
        auto om = modulus(c.f, 0.08);
        CHECK(om.omega == doctest::Approx(0.04).epsilon(1e-15));
        CHECK(om.vector() == Vec{om.omega, om.omega});
        // additivity for Lipschitz families
        for (double e1 : {0.0, 0.1, 0.37})
            for (double e2 : {0.0, 0.2, 1.3})
                CHECK(modulus(c.f, e1 + e2).omega <= modulus(c.f, e1).omega + modulus(c.f, e2).omega + 1e-15);
        // nondecreasing
        double prev = 0;
        for (int k = 0; k <= 20; ++k) {
            double w = modulus(c.f, 0.05 * k).omega;
            CHECK(w >= prev);
            prev = w;
        }
    }

    TEST_CASE("sublevel filtration takes vertex maxima") {
        PointCloud P(2, {{0, 4}, {1, -4}, {2, 1}});
        auto f = FilteringFunction::abs_coordinate(1);
        auto K1 = SimplicialComplex::from_simplices(1, {});
        auto F1 = sublevel_filtration(K1, f, PointCloud(2, {{0, 4}}));
        CHECK(F1.values[0] == Vec{4});
        auto K = SimplicialComplex::from_simplices(3, {{0, 1}, {1, 2}});
        auto F = sublevel_filtration(K, f, P);
        CHECK(F.values[*K.index_of({0, 1})] == Vec{4});
        CHECK(F.values[*K.index_of({1, 2})] == Vec{4});
        CHECK(F.values[*K.index_of({2})] == Vec{1});
        CHECK(F.monotone());
    }

    TEST_CASE("circle64 vertex values are symmetric with two minima") {
        auto c = circle64_cover();
        auto f = FilteringFunction::abs_coordinate(1);
        auto F = dual_shape_filtration(c, f);
        std::vector<double> vals;
        for (std::size_t i = 0; i < F.complex.size(); ++i)
            if (F.complex.simplices()[i].size() == 1) vals.push_back(F.values[i][0]);
        REQUIRE(vals.size() == 64);
        for (std::size_t j = 0; j < 64; ++j) CHECK(vals[j] == doctest::Approx(vals[(64 - j) % 64]).epsilon(1e-8));
        double mn = *std::min_element(vals.begin(), vals.end());
        CHECK(mn < 1e-8);
        CHECK(std::count_if(vals.begin(), vals.end(), [&](double x) { return x <= mn + 1e-8; }) == 2);
    }

    TEST_CASE("invalid filtrations are rejected") {
        auto K = SimplicialComplex::from_simplices(2, {{0, 1}});
        FilteredComplex F{K, {{0.0}, {1.0}, {0.5}}, 1};
        CHECK_FALSE(F.monotone());
        CHECK_THROWS_WITH_AS(F.validate(), "invalid filtration", ValidationError);
    }

    TEST_CASE("admissible pairs") {
        AdmissiblePair p = color_pair();
        p.validate();
        CHECK_THROWS_WITH_AS((AdmissiblePair{{1, 1}, {0, 0}}).validate(), "invalid admissible pair", ValidationError);
        CHECK_THROWS_WITH_AS((AdmissiblePair{{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}, {0.1, 0.1}}).validate(),
                             "invalid admissible pair", ValidationError);
        CHECK_THROWS_AS((AdmissiblePair{{1.0, 0.0}, {0, 0}}).validate(), ValidationError);

        auto s = p.parameter_of({-0.28, 0.12});
        REQUIRE(s);
        CHECK(*s == doctest::Approx(-0.08 * std::sqrt(2.0)).epsilon(1e-12));
        CHECK_FALSE(p.parameter_of({0.0, 0.0}));
        auto back = p.point(*s);
        CHECK(back[0] == doctest::Approx(-0.28).epsilon(1e-12));
        CHECK(back[1] == doctest::Approx(0.12).epsilon(1e-12));
        CHECK(p.leaf_width(0.08) == doctest::Approx(0.08 * std::sqrt(2.0)).epsilon(1e-14));
    }

    TEST_CASE("foliation reduction") {
        auto K = SimplicialComplex::from_simplices(1, {});
        FilteredComplex F{K, {{0.12, -0.08}}, 2};
        auto R = foliation_reduce(F, color_pair());
        CHECK(R.n == 1);
        CHECK(R.values[0][0] == doctest::Approx(0.32 * std::sqrt(2.0)).epsilon(1e-14));

        FilteredComplex G{K, {{0.7}}, 1};
        auto I = foliation_reduce(G, AdmissiblePair{{1.0}, {0.0}});
        CHECK(I.values[0][0] == 0.7);
    }

    TEST_CASE("foliation reduction keeps monotonicity on random complexes") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> A(0.1, std::numbers::pi / 2 - 0.1), B(-1, 1);
        for (int trial = 0; trial < 100; ++trial) {
            auto F = random_filtered(rng, 8, 2);
            double a = A(rng), b = B(rng);
            AdmissiblePair p{{std::cos(a), std::sin(a)}, {b, -b}};
            auto R = foliation_reduce(F, p);
            CHECK(R.monotone());
            // each reduced value is the first leaf point dominating the simplex value
            for (std::size_t i = 0; i < R.values.size(); ++i) {
                auto pt = p.point(R.values[i][0]);
                for (std::size_t j = 0; j < 2; ++j) CHECK(F.values[i][j] <= pt[j] + 1e-12);
            }
        }
    }
}
