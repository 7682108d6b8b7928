#include "pbnest/scenarios.hpp"

#include <chrono>
#include <cstdlib>
#include <numbers>

#include "pbnest/plot.hpp"

namespace pbnest {

std::uint64_t jitter_seed() {
    if (const char* s = std::getenv("PBN_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && end != s) return v;
        throw ValidationError("PBN_SEED must be a non-negative integer");
    }
    return 42;
}

namespace {

constexpr double kPi = std::numbers::pi;

PointCloud polar(std::size_t n, double step, const std::vector<double>& radii_pattern, double base) {
    std::vector<Point> pts;
    for (std::size_t j = 0; j < n; ++j) {
        double a = step * static_cast<double>(j);
        double r = base + radii_pattern[j % radii_pattern.size()];
        pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return PointCloud(2, std::move(pts));
}

// Points at equal max-norm arc length along a closed polygon, starting at its first vertex.
std::vector<Point> maxnorm_walk(const std::vector<Point>& poly, std::size_t n) {
    std::vector<double> len;
    double total = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        len.push_back(std::max(std::abs(b[0] - a[0]), std::abs(b[1] - a[1])));
        total += len.back();
    }
    std::vector<Point> out;
    for (std::size_t k = 0; k < n; ++k) {
        double s = total * static_cast<double>(k) / static_cast<double>(n);
        std::size_t i = 0;
        while (s > len[i] && i + 1 < poly.size()) s -= len[i++];
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        double t = len[i] > 0 ? s / len[i] : 0.0;
        out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
    }
    return out;
}

ColorShape color_shape(const std::vector<Point>& plane_points) {
    ColorShape c;
    c.cover.landmarks = polar(plane_points.size(), 2.0 * kPi / static_cast<double>(plane_points.size()), {0.0}, 1.0);
    c.cover.radius = 0.08;
    c.cover.tau = 1.0;
    std::vector<std::array<double, 3>> rgb;
    for (const auto& p : plane_points) rgb.push_back(ColorFrame::to_rgb(p[0], p[1]));
    c.f = FilteringFunction::color_plane(std::move(rgb), c.cover.landmarks.points(), std::vector<double>{0.5, 0.5});
    return c;
}

}  // namespace

BallCover circle64_cover() { return {polar(64, 2.0 * kPi / 64.0, {0.0}, 4.0), 0.5, std::nullopt, 4.0}; }

BallCover circle_near96_cover() { return {polar(96, kPi / 48.0, {0.0, -0.1, -0.2, -0.1}, 4.0), 0.55, 0.25, 4.0}; }

BallCover quarter9_cover() { return {polar(9, kPi / 16.0, {0.05, -0.05}, 4.0), 1.0, std::nullopt, 4.0}; }

std::vector<Point> bean_polygon() {
    return {{3.0, -4.0},  {4.5, -2.5}, {4.5, 1.5},  {3.5, 3.0},  {1.8, 3.0},   {0.8, 0.0},
            {-0.8, 0.0},  {-1.8, 3.4}, {-3.5, 3.4}, {-4.5, 2.0}, {-4.5, -2.5}, {-3.0, -4.0}};
}

double bean_fillet() { return 0.6; }

ClosedCurve bean_curve() { return ClosedCurve::filleted_polygon(bean_polygon(), bean_fillet()); }

BallCover curve_cover(const ClosedCurve& curve, double delta, double tau) {
    auto n = static_cast<std::size_t>(std::ceil(curve.length() / (0.85 * delta)));
    return {curve.sample(n), delta, std::nullopt, tau};
}

ColorShape color_circle_x() {
    return color_shape(maxnorm_walk({{-0.4, 0.0}, {-0.4, 0.8}, {0.4, 0.8}, {0.4, 0.0}}, 80));
}

ColorShape color_circle_y() {
    auto lap = maxnorm_walk({{-0.4, 0.04}, {0.36, 0.8}, {0.4, 0.8}, {0.4, 0.76}, {-0.36, 0.0}}, 40);
    std::vector<Point> twice = lap;
    twice.insert(twice.end(), lap.begin(), lap.end());
    return color_shape(twice);
}

AdmissiblePair color_pair() { return {{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}, {-0.2, 0.2}}; }

FilteredComplex dual_shape_filtration(const BallCover& cover, const FilteringFunction& f) {
    BallCover c = cover;
    c.landmarks = precondition_general_position(cover.landmarks, jitter_seed());
    // table functions are indexed by vertex, so the jitter never moves their values
    return sublevel_filtration(dual_complex(c), f, c.landmarks);
}

PersistenceDiagram dual_shape_diagram(const BallCover& cover, const FilteringFunction& f) {
    return reduce(dual_shape_filtration(cover, f));
}

bool ScenarioReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

json ScenarioReport::to_json() const {
    json cs = json::array();
    for (const auto& c : checks) cs.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return json{{"scenario", name}, {"passed", passed()}, {"checks", cs}, {"details", details}};
}

std::vector<std::string> scenario_names() { return {"circle64", "circle-near96", "quarter9", "bean-compare", "color-circles"}; }

namespace {

constexpr double kRasterH = 0.01;

struct Writer {
    fs::path root;
    bool on() const { return !root.empty(); }
    void text(const std::string& rel, const std::string& body) const {
        if (on()) write_text_file(root / rel, body);
    }
    void cover(const std::string& stem, const BallCover& c) const {
        if (on()) write_cover_json(root / "inputs" / (stem + ".json"), c, stem + ".csv");
    }
};

void check(ScenarioReport& r, std::string name, bool ok, std::string detail = "") {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
}

std::string fmt(double x) { return format_double(x); }

// Finite deaths of classes born below `below`, sorted.
std::vector<double> merges_born_below(const PersistenceDiagram& D, double below) {
    std::vector<double> out;
    for (const auto& p : D.pairs(0))
        if (p.birth < below && !p.essential()) out.push_back(p.death);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t born_below(const PersistenceDiagram& D, double below) {
    std::size_t n = 0;
    for (const auto& p : D.pairs(0)) n += p.birth < below;
    return n;
}

void write_diagram_set(const Writer& w, const std::string& stem, const PersistenceDiagram& D, double W,
                       const PlotWindow& window, const std::string& title) {
    w.text("outputs/" + stem + "_diagram.csv", diagram_to_csv(D));
    for (int d = 0; d <= 1; ++d) {
        auto S = blind_strips(D, d, W);
        w.text("outputs/" + stem + "_strips_deg" + std::to_string(d) + ".json", dump(strips_to_json(S)));
        w.text("outputs/" + stem + "_deg" + std::to_string(d) + ".svg",
               plot_regions(D, d, &S, window, title + ", degree " + std::to_string(d)));
    }
}

ScenarioReport circle64(const Writer& w) {
    ScenarioReport r;
    r.name = "circle64";
    const BallCover cover = circle64_cover();
    const auto f = FilteringFunction::abs_coordinate(1);
    const double omega = modulus(f, cover.radius).omega;
    const auto shape = ReferenceShape::from_curve(ClosedCurve::circle({0.0, 0.0}, 4.0));
    w.cover("landmarks", cover);
    w.text("inputs/function.json", dump(function_to_json(f)));

    auto dens = check_density_on(cover, shape);
    w.text("outputs/density.json", dump(density_to_json(dens)));
    check(r, "density check passes", dens.passed, "max_gap " + fmt(dens.max_gap));

    auto U = raster_ball_union_persistence(cover, f, kRasterH);
    auto S = dual_shape_diagram(cover, f);
    const std::string title = "circle64";
    write_diagram_set(w, "union", U, omega, {0, 5, 0, 5}, title + " ball union");
    write_diagram_set(w, "dual", S, 2 * omega, {0, 5, 0, 5}, title + " dual shape");
    w.text("outputs/analytic_diagram.csv", diagram_to_csv(analytic_circle_diagram(4.0, f)));

    auto mu = merges_born_below(U, omega);
    check(r, "union has two classes born below omega", born_below(U, omega) == 2,
          std::to_string(born_below(U, omega)) + " classes");
    check(r, "union merge within 0.05 of 3.53106", mu.size() == 1 && std::abs(mu[0] - 3.53106) <= 0.05,
          mu.empty() ? "no merge" : "merge " + fmt(mu[0]));
    auto ms = merges_born_below(S, omega);
    check(r, "dual-shape merge within [2.53106, 4.53106]",
          ms.size() == 1 && ms[0] >= 3.53106 - 2 * omega && ms[0] <= 3.53106 + 2 * omega,
          ms.empty() ? "no merge" : "merge " + fmt(ms[0]));

    auto strips = blind_strips(U, 0, omega);
    check(r, "strip total width is 1", strips.total_width() == 1.0, fmt(strips.total_width()));
    check(r, "(1, 2.5) outside strips", classify(strips, 1.0, 2.5) == StripClass::Outside);
    check(r, "(3.2, 3.9) inside strips", classify(strips, 3.2, 3.9) == StripClass::Inside);

    ProxyPbn proxy(U);
    auto om = modulus(f, cover.radius);
    auto s1 = sandwich(proxy, 0, {1.0}, {2.5}, om, Regime::OnManifold);
    check(r, "sandwich at (1, 2.5) certifies 2", s1.lower == 2 && s1.upper == 2,
          "[" + std::to_string(s1.lower) + ", " + std::to_string(s1.upper) + "]");
    auto s2 = sandwich(proxy, 0, {2.0}, {3.6}, om, Regime::OnManifold);
    check(r, "sandwich at (2, 3.6) is [1, 2]", s2.lower == 1 && s2.upper == 2,
          "[" + std::to_string(s2.lower) + ", " + std::to_string(s2.upper) + "]");

    std::size_t short_pairs = 0;
    for (const auto& p : U.pairs(0)) short_pairs += !p.essential() && p.death - p.birth < 0.1;
    check(r, "at least four short near-diagonal pairs", short_pairs >= 4, std::to_string(short_pairs) + " pairs");

    r.details["omega"] = omega;
    r.details["union_merge"] = mu.empty() ? json(nullptr) : json(mu[0]);
    r.details["dual_merge"] = ms.empty() ? json(nullptr) : json(ms[0]);
    r.details["sandwich"] = json::array({sandwich_to_json(s1), sandwich_to_json(s2)});
    return r;
}

ScenarioReport circle_near96(const Writer& w) {
    ScenarioReport r;
    r.name = "circle-near96";
    const BallCover cover = circle_near96_cover();
    const auto f = FilteringFunction::abs_coordinate(1);
    const double omega = modulus(f, cover.radius + *cover.offset).omega;
    const auto shape = ReferenceShape::from_curve(ClosedCurve::circle({0.0, 0.0}, 4.0));
    w.cover("landmarks", cover);
    w.text("inputs/function.json", dump(function_to_json(f)));

    auto dens = check_density_near(cover, shape);
    w.text("outputs/density.json", dump(density_to_json(dens)));
    check(r, "near-manifold gate passes", dens.passed, dens.reason);
    auto iv = near_radius_interval(*cover.offset, cover.tau);
    check(r, "radius interval is (0.539, 3.711)",
          std::abs(iv.first - 0.539) <= 1e-3 && std::abs(iv.second - 3.711) <= 1e-3,
          "(" + fmt(iv.first) + ", " + fmt(iv.second) + ")");

    auto U = raster_ball_union_persistence(cover, f, kRasterH);
    write_diagram_set(w, "union", U, omega, {0, 5, 0, 5}, "circle-near96 ball union");
    auto mu = merges_born_below(U, omega);
    check(r, "union merge within 0.05 of 3.40955", mu.size() == 1 && std::abs(mu[0] - 3.40955) <= 0.05,
          mu.empty() ? "no merge" : "merge " + fmt(mu[0]));
    auto strips = blind_strips(U, 0, omega);
    check(r, "strip total width is 1.6", strips.total_width() == 1.6, fmt(strips.total_width()));
    r.details["omega"] = omega;
    r.details["union_merge"] = mu.empty() ? json(nullptr) : json(mu[0]);
    return r;
}

ScenarioReport quarter9(const Writer& w) {
    ScenarioReport r;
    r.name = "quarter9";
    BallCover cover = quarter9_cover();
    w.cover("landmarks", cover);
    cover.landmarks = precondition_general_position(cover.landmarks, jitter_seed());
    auto K = dual_complex(cover);
    auto C = cech_nerve(cover, 2);
    w.text("outputs/dual_complex.json", dump(complex_to_json(K)));
    w.text("outputs/cech_nerve.json", dump(complex_to_json(C)));
    bool path = K.count(0) == 9 && K.count(1) == 8 && K.count(2) == 0;
    for (std::uint32_t k = 0; k + 1 < 9; ++k) path = path && K.contains({k, k + 1});
    check(r, "dual complex is a path of 9 vertices and 8 edges", path,
          std::to_string(K.count(0)) + "/" + std::to_string(K.count(1)) + "/" + std::to_string(K.count(2)));
    auto bk = betti_numbers(K), bc = betti_numbers(C);
    bk.resize(3, 0), bc.resize(3, 0);
    check(r, "dual complex and nerve have Betti numbers (1, 0)", bk == bc && bk[0] == 1 && bk[1] == 0);
    check(r, "dual complex is a subcomplex of the nerve and of Delaunay",
          K.is_subcomplex_of(C) && K.is_subcomplex_of(delaunay_2d(cover.landmarks)));
    return r;
}

ScenarioReport bean_compare(const Writer& w) {
    ScenarioReport r;
    r.name = "bean-compare";
    const auto f = FilteringFunction::abs_coordinate(1);
    const ClosedCurve bean = bean_curve();
    const ClosedCurve circle = ClosedCurve::circle({0.0, 0.0}, 4.0);
    json poly = json::array();
    for (const auto& p : bean_polygon()) poly.push_back(p);
    w.text("inputs/bean_polygon.json", dump(json{{"vertices", poly}, {"fillet", bean_fillet()}}));
    w.text("inputs/function.json", dump(function_to_json(f)));

    struct Target {
        double delta, u, v, u2, v2, target_bound;
    };
    for (const Target t : {Target{0.4, 0.4, 2.2, 1.1, 1.5, 0.7}, Target{0.2, 0.2, 2.6, 1.3, 1.5, 1.1}}) {
        const std::string tag = "delta " + fmt(t.delta);
        const std::string stem = t.delta == 0.4 ? "r04" : "r02";
        BallCover Y = curve_cover(bean, t.delta, 0.6);
        BallCover X = curve_cover(circle, t.delta, 4.0);
        w.cover(stem + "_bean", Y);
        w.cover(stem + "_circle", X);
        auto dy = check_density_on(Y, ReferenceShape::from_curve(bean));
        auto dx = check_density_on(X, ReferenceShape::from_curve(circle));
        check(r, tag + ": density checks pass", dy.passed && dx.passed);

        const double W = modulus(f, t.delta).omega;
        auto DY = raster_ball_union_persistence(Y, f, kRasterH);
        auto DX = raster_ball_union_persistence(X, f, kRasterH);
        write_diagram_set(w, stem + "_bean", DY, W, {0, 5, 0, 5}, "bean " + tag);
        write_diagram_set(w, stem + "_circle", DX, W, {0, 5, 0, 5}, "circle " + tag);

        PBNValue a{0, {t.u}, {t.v}, pbn_query_1d(DY, 0, t.u, t.v)};
        PBNValue b{0, {t.u2}, {t.v2}, pbn_query_1d(DX, 0, t.u2, t.v2)};
        check(r, tag + ": proxy values 3 and 2 at the witnesses", a.value == 3 && b.value == 2,
              std::to_string(a.value) + " vs " + std::to_string(b.value));
        auto cert = pseudodistance_bound(a, b);
        check(r, tag + ": bound at the witnesses is " + fmt(t.target_bound),
              cert && std::abs(cert->bound - t.target_bound) <= 1e-12, cert ? fmt(cert->bound) : "none");

        auto SY = blind_strips(DY, 0, W), SX = blind_strips(DX, 0, W);
        bool ya = classify(SY, t.u, t.v) == StripClass::Outside;
        bool xb = classify(SX, t.u2, t.v2) == StripClass::Outside;

        SearchShape A{DY, {SY, blind_strips(DY, 1, W)}}, B{DX, {SX, blind_strips(DX, 1, W)}};
        auto best = search_best_bound(A, B, {0, 1});
        check(r, tag + ": searched bound does not exceed 1.5", !best || best->bound <= 1.5,
              best ? fmt(best->bound) : "none");
        json info{{"delta", t.delta},
                  {"W", W},
                  {"witness_bean_outside_strips", ya},
                  {"witness_circle_outside_strips", xb},
                  {"witness_bean_strip_distance", SY.distance(t.u, t.v)},
                  {"witness_circle_strip_distance", SX.distance(t.u2, t.v2)},
                  {"witness_bound", cert ? json(cert->bound) : json(nullptr)},
                  {"searched", best ? certificate_to_json(*best) : json(nullptr)},
                  {"target_bound", t.target_bound},
                  {"searched_meets_target", best && best->bound >= t.target_bound}};
        r.details[stem] = info;
        if (best) w.text("outputs/" + stem + "_certificate.json", dump(certificate_to_json(*best)));
    }
    return r;
}

ScenarioReport color_circles(const Writer& w) {
    ScenarioReport r;
    r.name = "color-circles";
    const ColorShape X = color_circle_x(), Y = color_circle_y();
    const AdmissiblePair pair = color_pair();
    w.cover("x_landmarks", X.cover);
    w.cover("y_landmarks", Y.cover);
    w.text("inputs/x_function.json", dump(function_to_json(X.f)));
    w.text("inputs/y_function.json", dump(function_to_json(Y.f)));
    w.text("inputs/pair.json", dump(pair_to_json(pair)));

    const auto circle = ReferenceShape::from_curve(ClosedCurve::circle({0.0, 0.0}, 1.0));
    check(r, "density checks pass",
          check_density_on(X.cover, circle).passed && check_density_on(Y.cover, circle).passed);
    const double omega = modulus(X.f, X.cover.radius).omega;
    check(r, "omega(delta) is 0.04", std::abs(omega - 0.04) <= 1e-15, fmt(omega));

    auto FX = dual_shape_filtration(X.cover, X.f);
    auto FY = dual_shape_filtration(Y.cover, Y.f);
    auto bx = betti_numbers(FX.complex), by = betti_numbers(FY.complex);
    bx.resize(2, 0), by.resize(2, 0);
    check(r, "both dual complexes are cycles", bx == std::vector<int>{1, 1} && by == std::vector<int>{1, 1});

    const Vec u{-0.28, 0.12}, v{0.32, 0.72}, u2{-0.06, 0.34}, v2{0.1, 0.5};
    PBNValue a{0, u, v, pbn_query_multi(FY, 0, u, v)};
    PBNValue b{0, u2, v2, pbn_query_multi(FX, 0, u2, v2)};
    check(r, "two-parameter values are 2 and 1", a.value == 2 && b.value == 1,
          std::to_string(a.value) + " vs " + std::to_string(b.value));

    auto RY = reduce(foliation_reduce(FY, pair)), RX = reduce(foliation_reduce(FX, pair));
    auto su = pair.parameter_of(u), sv = pair.parameter_of(v), su2 = pair.parameter_of(u2), sv2 = pair.parameter_of(v2);
    bool on_leaf = su && sv && su2 && sv2;
    check(r, "witnesses lie on the leaf", on_leaf);
    if (on_leaf) {
        int ly = pbn_query_1d(RY, 0, *su, *sv), lx = pbn_query_1d(RX, 0, *su2, *sv2);
        check(r, "leaf-reduced values are 2 and 1", ly == 2 && lx == 1,
              std::to_string(ly) + " vs " + std::to_string(lx));
    }
    auto cert = pseudodistance_bound(a, b);
    check(r, "bound at the witnesses is 0.22", cert && std::abs(cert->bound - 0.22) <= 1e-12,
          cert ? fmt(cert->bound) : "none");

    const double W = regime_multiplier(Regime::DualShape) * omega;
    const double Wleaf = pair.leaf_width(W);
    write_diagram_set(w, "leaf_y", RY, Wleaf, {-0.5, 1.2, -0.5, 1.2}, "color Y on the leaf");
    write_diagram_set(w, "leaf_x", RX, Wleaf, {-0.5, 1.2, -0.5, 1.2}, "color X on the leaf");
    SearchSpec spec;
    spec.pairs = {pair};
    auto best = search_best_bound_leaves(FY, W, FX, W, {0}, spec);
    if (best) w.text("outputs/certificate.json", dump(certificate_to_json(*best)));
    json info{{"W", W}, {"leaf_W", Wleaf}, {"searched", best ? certificate_to_json(*best) : json(nullptr)}};
    if (on_leaf) {
        auto SY = blind_strips(RY, 0, Wleaf), SX = blind_strips(RX, 0, Wleaf);
        info["witness_y_strip_distance"] = SY.distance(*su, *sv);
        info["witness_x_strip_distance"] = SX.distance(*su2, *sv2);
    }
    r.details = info;
    return r;
}

}  // namespace

ScenarioReport run_scenario(const std::string& name, const std::filesystem::path& out) {
    Writer w{out};
    auto t0 = std::chrono::steady_clock::now();
    ScenarioReport r;
    if (name == "circle64") r = circle64(w);
    else if (name == "circle-near96") r = circle_near96(w);
    else if (name == "quarter9") r = quarter9(w);
    else if (name == "bean-compare") r = bean_compare(w);
    else if (name == "color-circles") r = color_circles(w);
    else throw ValidationError("unknown scenario: " + name);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json j = r.to_json();
    w.text("report.json", dump(j));
    r.details["seconds"] = secs;
    return r;
}

}  // namespace pbnest
