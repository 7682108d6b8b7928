#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "pbnest/cli.hpp"
#include "pbnest/plot.hpp"
#include "support.hpp"

using namespace pbnest;
using namespace testsupport;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("pbnest-test-" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "pbnest");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

std::string labels(const std::string& svg) {
    auto a = svg.find("<g id=\"labels\"");
    return svg.substr(a, svg.find("</g>", a) - a);
}

}  // namespace

TEST_SUITE("io_cli") {
    TEST_CASE("shortest round-trip number formatting") {
        CHECK(format_double(0.1) == "0.1");
        CHECK(format_double(3.0) == "3");
        CHECK(format_double(-0.0) == "0");
        CHECK(format_double(kInf) == "inf");
        CHECK(format_double(-kInf) == "-inf");
        CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
        std::mt19937_64 rng(51);
        std::uniform_real_distribution<double> U(-1e6, 1e6);
        for (int k = 0; k < 1000; ++k) {
            double x = U(rng) / (1 + k);
            CHECK(parse_double(format_double(x)) == x);
        }
        CHECK(parse_double("inf") == kInf);
        CHECK_THROWS_AS(parse_double("1.5x"), ValidationError);
        CHECK(format_rounded(0.1 + 0.2) == "0.3");
        CHECK(format_rounded(12.34567) == "12.346");
    }

    TEST_CASE("point and diagram CSV") {
        PointCloud P(2, {{0.1, -2}, {3, 1e-20}});
        std::string csv = points_to_csv(P);
        CHECK(csv == "x1,x2\n0.1,-2\n3,1e-20\n");
        CHECK(points_from_csv(csv).points() == P.points());
        CHECK_THROWS_AS(points_from_csv("x1,x2\n1\n"), ValidationError);
        CHECK_THROWS_AS(points_from_csv("x1,x2\n1,nan\n"), ValidationError);

        PersistenceDiagram D;
        D.add(0, 0.0, kInf);
        D.add(0, 0.25, 3.5);
        D.add(1, 4.0, kInf);
        std::string dcsv = diagram_to_csv(D);
        CHECK(dcsv == "degree,birth,death\n0,0,inf\n0,0.25,3.5\n1,4,inf\n");
        auto back = diagram_from_csv(dcsv);
        back.normalize();
        D.normalize();
        CHECK(back == D);
        CHECK_THROWS_AS(diagram_from_csv("degree,birth,death\n0,2,1\n"), ValidationError);
    }

    TEST_CASE("cover, function and pair JSON round trips") {
        auto dir = scratch("json");
        auto c = circle_near96_cover();
        write_cover_json(dir / "cover.json", c, "cover.csv");
        auto j = json::parse(read_text_file(dir / "cover.json"));
        CHECK(j["points"] == "cover.csv");
        CHECK(j["offset"] == 0.25);
        auto back = read_cover_json(dir / "cover.json");
        CHECK(back.landmarks.points() == c.landmarks.points());
        CHECK(back.radius == c.radius);
        CHECK(back.offset == c.offset);
        CHECK(back.tau == c.tau);

        for (const auto& f : {FilteringFunction::abs_coordinate(1), FilteringFunction::coordinate(0),
                              FilteringFunction::distance_to_point({1, 2}), color_circle_x().f,
                              FilteringFunction::vertex_table({{1.0}, {2.0}}, {}, std::vector<double>{3.0})}) {
            auto g = function_from_json(function_to_json(f));
            CHECK(g.kind() == f.kind());
            CHECK(g.n_components() == f.n_components());
            CHECK(function_to_json(g) == function_to_json(f));
        }
        auto jf = json::parse(R"({"kind": "abs-coordinate", "params": {"axis": 1}, "lipschitz": null})");
        CHECK(function_from_json(jf).evaluate({3, -2}) == Vec{2});
        CHECK_THROWS_AS(function_from_json(json::parse(R"({"kind": "mystery", "params": {}})")), ValidationError);

        auto p = pair_from_json(pair_to_json(color_pair()));
        CHECK(p.l == color_pair().l);
        CHECK(p.b == color_pair().b);

        auto K = delaunay_2d(PointCloud(2, {{0, 0}, {1, 0}, {0, 1}}));
        CHECK(complex_from_json(complex_to_json(K)).simplices() == K.simplices());
        // keys come out sorted
        std::string s = dump(json{{"zeta", 1}, {"alpha", 2}});
        CHECK(s.find("alpha") < s.find("zeta"));
        CHECK(s.back() == '\n');
    }

    TEST_CASE("unknown or missing subcommand") {
        auto r = run({"frobnicate"});
        CHECK(r.code == 64);
        CHECK(r.err.find("usage:") != std::string::npos);
        CHECK(run({}).code == 64);
        CHECK(run({"--help"}).code == 0);
    }

    TEST_CASE("pbn on the circle64 oracle diagram") {
        auto dir = scratch("pbn");
        auto D = raster_ball_union_persistence(circle64_cover(), FilteringFunction::abs_coordinate(1), 0.01);
        write_text_file(dir / "d.csv", diagram_to_csv(D));
        auto r = run({"pbn", "--diagram", (dir / "d.csv").string(), "--degree", "0", "--u", "1", "--v", "2.5", "--out",
                      dir.string()});
        CHECK(r.code == 0);
        auto j = json::parse(r.out);
        CHECK(j["value"] == 2);
        CHECK(j["degree"] == 0);
        CHECK(json::parse(read_text_file(dir / "query.json")) == j);
        auto bad = run({"pbn", "--diagram", (dir / "d.csv").string(), "--u", "3", "--v", "1", "--out", dir.string()});
        CHECK(bad.code == 2);
        CHECK(bad.err.find("not in Δ⁺") != std::string::npos);
        CHECK(run({"pbn", "--diagram", (dir / "missing.csv").string(), "--u", "1", "--v", "2"}).code == 2);
    }

    TEST_CASE("density-check exit status") {
        auto dir = scratch("density");
        write_text_file(dir / "circle.json", R"({"kind": "circle", "center": [0, 0], "radius": 4})");
        write_cover_json(dir / "sparse.json", BallCover{circle_points(8, 4.0), 0.5, std::nullopt, 4.0}, "sparse.csv");
        write_cover_json(dir / "dense.json", circle64_cover(), "dense.csv");
        auto bad = run({"density-check", "--cover", (dir / "sparse.json").string(), "--shape",
                        (dir / "circle.json").string(), "--out", dir.string()});
        CHECK(bad.code == 2);
        CHECK(json::parse(read_text_file(dir / "density.json"))["passed"] == false);
        auto good = run({"density-check", "--cover", (dir / "dense.json").string(), "--shape",
                         (dir / "circle.json").string(), "--out", dir.string()});
        CHECK(good.code == 0);
        CHECK(json::parse(read_text_file(dir / "density.json"))["passed"] == true);
    }

    TEST_CASE("complex, persistence, strips, certify and bound subcommands") {
        auto dir = scratch("pipeline");
        write_cover_json(dir / "cover.json", circle64_cover(), "cover.csv");
        write_text_file(dir / "f.json", dump(function_to_json(FilteringFunction::abs_coordinate(1))));
        auto cover = (dir / "cover.json").string(), f = (dir / "f.json").string(), out = dir.string();

        CHECK(run({"build-complex", "--cover", cover, "--out", out}).code == 0);
        auto cj = json::parse(read_text_file(dir / "complex.json"));
        CHECK(cj["betti"] == json::array({1, 1}));
        CHECK(run({"build-complex", "--cover", cover, "--kind", "cech", "--max-dim", "2", "--out", out}).code == 0);

        CHECK(run({"persist", "--cover", cover, "--function", f, "--proxy", "union", "--out", out}).code == 0);
        auto D = diagram_from_csv(read_text_file(dir / "diagram.csv"));
        CHECK(D.essential_count(0) == 1);
        CHECK(run({"persist", "--cover", cover, "--function", f, "--proxy", "union", "--cell", "0.2", "--out", out}).code ==
              2);

        auto d = (dir / "diagram.csv").string();
        CHECK(run({"strips", "--diagram", d, "--W", "0.5", "--classify", "1,2.5", "--out", out}).code == 0);
        auto sj = json::parse(read_text_file(dir / "strips.json"));
        CHECK(sj["query"]["class"] == "outside");
        CHECK(sj["W"] == 0.5);

        CHECK(run({"certify", "--diagram", d, "--u", "1", "--v", "2.5", "--omega", "0.5", "--out", out}).code == 0);
        auto cert = json::parse(read_text_file(dir / "certificate.json"));
        CHECK(cert["lower"] == 2);
        CHECK(cert["upper"] == 2);
        CHECK(cert["certified"] == 2);
        CHECK(run({"certify", "--diagram", d, "--u", "3", "--v", "3.8", "--omega", "0.5", "--out", out}).code == 2);

        CHECK(run({"bound", "--a", d, "--b", d, "--wa", "0.5", "--wb", "0.5", "--out", out}).code == 0);
        CHECK(json::parse(read_text_file(dir / "bound.json"))["bound"].is_null());
    }

    TEST_CASE("reproduce writes artifacts and self-validates") {
        auto dir = scratch("reproduce");
        auto r = run({"reproduce", "circle64", "--out", dir.string()});
        CHECK(r.code == 0);
        for (auto name : {"report.json", "inputs/landmarks.json", "inputs/landmarks.csv", "inputs/function.json",
                          "outputs/union_diagram.csv", "outputs/union_strips_deg0.json", "outputs/union_deg0.svg",
                          "outputs/dual_diagram.csv", "outputs/analytic_diagram.csv", "outputs/density.json"})
            CHECK_MESSAGE(fs::exists(dir / name), name);
        auto rep = json::parse(read_text_file(dir / "report.json"));
        CHECK(rep["passed"] == true);
        CHECK(run({"reproduce", "nowhere"}).code == 2);
    }

    TEST_CASE("scenario outputs are byte-deterministic") {
        auto a = scratch("det-a"), b = scratch("det-b");
        REQUIRE(run({"reproduce", "color-circles", "--out", a.string()}).code == 0);
        REQUIRE(run({"reproduce", "color-circles", "--out", b.string()}).code == 0);
        std::size_t files = 0;
        for (const auto& e : fs::recursive_directory_iterator(a)) {
            if (!e.is_regular_file()) continue;
            auto rel = fs::relative(e.path(), a);
            CHECK_MESSAGE(read_text_file(e.path()) == read_text_file(b / rel), rel.string());
            ++files;
        }
        CHECK(files > 10);
    }

    TEST_CASE("seed override") {
        ::setenv("PBN_SEED", "7", 1);
        CHECK(jitter_seed() == 7);
        auto seven = precondition_general_position(circle_points(8, 1.0), jitter_seed());
        ::setenv("PBN_SEED", "oops", 1);
        CHECK_THROWS_AS(jitter_seed(), ValidationError);
        ::unsetenv("PBN_SEED");
        CHECK(jitter_seed() == 42);
        auto dflt = precondition_general_position(circle_points(8, 1.0), jitter_seed());
        CHECK(seven.points() != dflt.points());
    }

    TEST_CASE("plots") {
        PersistenceDiagram empty;
        auto svg = plot_regions(empty, 0, nullptr, {0, 5, 0, 5});
        CHECK(svg.rfind("<?xml", 0) == 0);
        CHECK(svg.find("id=\"diagonal\"") != std::string::npos);
        CHECK(count_of(labels(svg), "<text") == 1);
        CHECK(count_of(labels(svg), "\">0</text>") == 1);

        auto f = FilteringFunction::abs_coordinate(1);
        auto U = raster_ball_union_persistence(circle64_cover(), f, 0.01);
        auto S0 = blind_strips(U, 0, 0.5);
        auto deg0 = plot_regions(U, 0, &S0, {0, 5, 0, 5}, "circle64");
        CHECK(deg0.find("\">2</text>") != std::string::npos);
        CHECK(deg0.find("id=\"strips\"") != std::string::npos);
        CHECK(deg0 == plot_regions(U, 0, &S0, {0, 5, 0, 5}, "circle64"));
        auto X = analytic_circle_diagram(4.0, f);
        auto deg1 = plot_regions(X, 1, nullptr, {0, 5, 0, 5});
        CHECK(count_of(labels(deg1), "\">1</text>") == 1);
        CHECK_THROWS_WITH_AS(plot_regions(empty, 0, nullptr, {1, 1, 0, 5}), "empty window", ValidationError);

        auto dir = scratch("plot");
        write_text_file(dir / "d.csv", diagram_to_csv(U));
        CHECK(run({"plot", "--diagram", (dir / "d.csv").string(), "--W", "0.5", "--out", dir.string()}).code == 0);
        CHECK(read_text_file(dir / "plot.svg") == plot_regions(U, 0, &S0, {0, 5, 0, 5}, ""));
    }

    TEST_CASE("shipped fixtures match their generating formulas") {
        const fs::path root = PBNEST_FIXTURES;
        auto same = [](const BallCover& a, const BallCover& b) {
            REQUIRE(a.landmarks.size() == b.landmarks.size());
            for (std::size_t i = 0; i < a.landmarks.size(); ++i) CHECK(a.landmarks[i] == b.landmarks[i]);
            CHECK(a.radius == b.radius);
            CHECK(a.tau == b.tau);
            CHECK(a.offset == b.offset);
        };
        same(read_cover_json(root / "circle64" / "landmarks.json"), circle64_cover());
        same(read_cover_json(root / "circle-near96" / "landmarks.json"), circle_near96_cover());
        same(read_cover_json(root / "quarter9" / "landmarks.json"), quarter9_cover());
        same(read_cover_json(root / "bean-compare" / "r04_bean.json"), curve_cover(bean_curve(), 0.4, 0.6));
        same(read_cover_json(root / "bean-compare" / "r02_circle.json"),
             curve_cover(ClosedCurve::circle({0, 0}, 4.0), 0.2, 4.0));
        same(read_cover_json(root / "color-circles" / "y_landmarks.json"), color_circle_y().cover);
        auto poly = json::parse(read_text_file(root / "bean-compare" / "bean_polygon.json"));
        CHECK(poly["vertices"].get<std::vector<Point>>() == bean_polygon());
        CHECK(poly["fillet"].get<double>() == bean_fillet());
    }
}
