#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "pbnest/comparison.hpp"
#include "pbnest/io.hpp"
#include "pbnest/oracle.hpp"
#include "pbnest/scenarios.hpp"

namespace py = pybind11;
using namespace pbnest;

namespace {

BallCover make_cover(const std::vector<std::vector<double>>& points, double radius, double tau,
                     std::optional<double> offset) {
    if (points.empty()) throw ValidationError("no landmarks");
    std::vector<Point> pts;
    for (const auto& p : points) pts.push_back(Point(p.begin(), p.end()));
    BallCover c{PointCloud(pts.front().size(), pts), radius, offset, tau};
    c.validate();
    return c;
}

FilteringFunction make_function(const std::string& kind, std::size_t axis) {
    if (kind == "abs") return FilteringFunction::abs_coordinate(axis);
    if (kind == "coord") return FilteringFunction::coordinate(axis);
    throw ValidationError("unknown function kind: " + kind);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::class_<PersistenceDiagram>(m, "Diagram")
        .def(py::init<>())
        .def("add", &PersistenceDiagram::add)
        .def("pairs",
             [](const PersistenceDiagram& D, int degree) {
                 std::vector<std::pair<double, double>> out;
                 for (const auto& p : D.pairs(degree)) out.emplace_back(p.birth, p.death);
                 return out;
             })
        .def_property_readonly("max_degree", &PersistenceDiagram::max_degree)
        .def("pbn", [](const PersistenceDiagram& D, int degree, double u, double v) { return pbn_query_1d(D, degree, u, v); })
        .def("to_csv", [](const PersistenceDiagram& D) { return diagram_to_csv(D); })
        .def_static("from_csv", [](const std::string& text) { return diagram_from_csv(text); });

    m.def(
        "density_check_circle",
        [](const std::vector<std::vector<double>>& points, double radius, double tau, std::optional<double> offset,
           std::vector<double> center, double circle_radius) {
            auto c = make_cover(points, radius, tau, offset);
            auto shape = ReferenceShape::from_curve(ClosedCurve::circle(Point(center.begin(), center.end()), circle_radius));
            auto r = offset ? check_density_near(c, shape) : check_density_on(c, shape);
            return dump(density_to_json(r));
        },
        py::arg("points"), py::arg("radius"), py::arg("tau"), py::arg("offset") = py::none(),
        py::arg("center") = std::vector<double>{0.0, 0.0}, py::arg("circle_radius") = 4.0);

    m.def(
        "union_diagram",
        [](const std::vector<std::vector<double>>& points, double radius, const std::string& kind, std::size_t axis,
           double h) { return raster_ball_union_persistence(make_cover(points, radius, 1.0, std::nullopt), make_function(kind, axis), h); },
        py::arg("points"), py::arg("radius"), py::arg("kind") = "abs", py::arg("axis") = 1, py::arg("h") = 0.01);

    m.def(
        "dual_diagram",
        [](const std::vector<std::vector<double>>& points, double radius, const std::string& kind, std::size_t axis) {
            return dual_shape_diagram(make_cover(points, radius, 1.0, std::nullopt), make_function(kind, axis));
        },
        py::arg("points"), py::arg("radius"), py::arg("kind") = "abs", py::arg("axis") = 1);

    m.def(
        "analytic_circle_diagram",
        [](double r, std::size_t axis) { return analytic_circle_diagram(r, FilteringFunction::abs_coordinate(axis)); },
        py::arg("r"), py::arg("axis") = 1);

    m.def(
        "strips",
        [](const PersistenceDiagram& D, int degree, double W) { return dump(strips_to_json(blind_strips(D, degree, W))); },
        py::arg("diagram"), py::arg("degree"), py::arg("W"));

    m.def(
        "classify",
        [](const PersistenceDiagram& D, int degree, double W, double u, double v) {
            auto s = blind_strips(D, degree, W);
            return std::pair{classify(s, u, v) == StripClass::Outside ? std::string("outside") : std::string("inside"),
                             s.distance(u, v)};
        },
        py::arg("diagram"), py::arg("degree"), py::arg("W"), py::arg("u"), py::arg("v"));

    m.def(
        "sandwich",
        [](const PersistenceDiagram& D, int degree, double u, double v, double omega, const std::string& regime,
           double extra) {
            OmegaVector om{0.0, omega, 1};
            return dump(sandwich_to_json(sandwich(ProxyPbn(D), degree, {u}, {v}, om, regime_from_string(regime), extra)));
        },
        py::arg("diagram"), py::arg("degree"), py::arg("u"), py::arg("v"), py::arg("omega"),
        py::arg("regime") = "on-manifold", py::arg("extra") = 0.0);

    m.def(
        "pseudodistance_bound",
        [](int degree, Vec u, Vec v, int value, Vec u2, Vec v2, int value2) -> std::optional<double> {
            auto c = pseudodistance_bound({degree, u, v, value}, {degree, u2, v2, value2});
            if (!c) return std::nullopt;
            return c->bound;
        },
        py::arg("degree"), py::arg("u"), py::arg("v"), py::arg("value"), py::arg("u2"), py::arg("v2"), py::arg("value2"));

    m.def(
        "search_bound",
        [](const PersistenceDiagram& A, double WA, const PersistenceDiagram& B, double WB, std::vector<int> degrees)
            -> std::optional<std::string> {
            SearchShape a{A, {}}, b{B, {}};
            for (int d : degrees) {
                a.strips.push_back(blind_strips(A, d, WA));
                b.strips.push_back(blind_strips(B, d, WB));
            }
            auto c = search_best_bound(a, b, degrees);
            if (!c) return std::nullopt;
            return dump(certificate_to_json(*c));
        },
        py::arg("a"), py::arg("wa"), py::arg("b"), py::arg("wb"), py::arg("degrees") = std::vector<int>{0, 1});

    m.def("scenario_names", &scenario_names);
    m.def(
        "run_scenario",
        [](const std::string& name, const std::string& out) { return dump(run_scenario(name, out).to_json()); },
        py::arg("name"), py::arg("out") = "");
}
