#include "pbnest/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "pbnest/io.hpp"
#include "pbnest/plot.hpp"
#include "pbnest/scenarios.hpp"

namespace pbnest {

namespace {

const std::vector<std::string> kCommands = {"density-check", "build-complex", "persist", "pbn",  "strips",
                                            "certify",       "bound",         "reproduce", "plot"};

std::string usage() {
    std::string s = "usage: pbnest <subcommand> [options]\n\nsubcommands:\n";
    s += "  density-check  check the covering hypotheses of a ball cover against a reference shape\n";
    s += "  build-complex  dual complex, Cech nerve or Delaunay triangulation of a cover\n";
    s += "  persist        persistence diagram of a cover (dual shape or rasterised ball union)\n";
    s += "  pbn            persistent Betti number query on a diagram or a filtered complex\n";
    s += "  strips         blind strips of a diagram, optionally classifying a query point\n";
    s += "  certify        sandwich bound and exact-value certificate at a query\n";
    s += "  bound          natural pseudodistance lower bound between two shapes\n";
    s += "  reproduce      run a shipped scenario and check its expectations\n";
    s += "  plot           SVG of the PBN regions of a diagram with its blind strips\n";
    s += "\nscenarios:";
    for (const auto& n : scenario_names()) s += " " + n;
    return s + "\n\nRun 'pbnest <subcommand> --help' for the options of one subcommand.\n";
}

Vec parse_vec(const std::string& s) {
    Vec out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
    if (out.empty()) throw ValidationError("empty vector '" + s + "'");
    return out;
}

json read_json(const fs::path& p) {
    try {
        return json::parse(read_text_file(p));
    } catch (const json::exception& e) {
        throw ValidationError(p.string() + ": " + e.what());
    }
}

// {"kind": "circle", "center": [x, y], "radius": r}
// {"kind": "polygon", "vertices": [[x, y], ...], "fillet": rho}
// {"kind": "points", "points": "sample.csv", "spacing": h}
ReferenceShape read_shape(const fs::path& path) {
    json j = read_json(path);
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "circle") return ReferenceShape::from_curve(ClosedCurve::circle(j.at("center").get<Point>(), j.at("radius").get<double>()));
        if (kind == "polygon")
            return ReferenceShape::from_curve(
                ClosedCurve::filleted_polygon(j.at("vertices").get<std::vector<Point>>(), j.at("fillet").get<double>()));
        if (kind == "points") {
            fs::path pts = j.at("points").get<std::string>();
            if (pts.is_relative()) pts = path.parent_path() / pts;
            return ReferenceShape::from_points(read_points_csv(pts), j.at("spacing").get<double>());
        }
        throw ValidationError("unknown shape kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

FilteringFunction read_function(const fs::path& p) {
    try {
        return function_from_json(read_json(p));
    } catch (const json::exception& e) {
        throw ValidationError(p.string() + ": " + e.what());
    }
}

PersistenceDiagram read_diagram(const fs::path& p) { return diagram_from_csv(read_text_file(p)); }

struct Emit {
    fs::path dir;
    std::ostream& out;
    void file(const std::string& name, const std::string& body) const {
        write_text_file(dir / name, body);
        out << (dir / name).string() << "\n";
    }
};

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    if (argc < 2) {
        err << usage();
        return 64;
    }
    const std::string first = argv[1];
    if (first == "-h" || first == "--help") {
        out << usage();
        return 0;
    }
    if (std::find(kCommands.begin(), kCommands.end(), first) == kCommands.end()) {
        err << "unknown subcommand '" << first << "'\n\n" << usage();
        return 64;
    }

    CLI::App app{"Persistent Betti number estimation from ball coverings", "pbnest"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_dir = ".";
    app.add_option("--out", out_dir, "output directory")->capture_default_str();

    // density-check
    std::string cover_path, shape_path, mode = "auto";
    auto* dc = app.add_subcommand("density-check", "covering hypotheses of a ball cover");
    dc->add_option("--cover", cover_path, "cover JSON")->required();
    dc->add_option("--shape", shape_path, "reference shape JSON")->required();
    dc->add_option("--mode", mode, "on, near, or auto (near when the cover has an offset)")
        ->check(CLI::IsMember({"on", "near", "auto"}))
        ->capture_default_str();

    // build-complex
    std::string complex_kind = "dual";
    int max_dim = 2;
    auto* bc = app.add_subcommand("build-complex", "simplicial complex of a cover");
    bc->add_option("--cover", cover_path, "cover JSON")->required();
    bc->add_option("--kind", complex_kind, "dual, cech or delaunay")
        ->check(CLI::IsMember({"dual", "cech", "delaunay"}))
        ->capture_default_str();
    bc->add_option("--max-dim", max_dim, "largest simplex dimension for the nerve")->capture_default_str();

    // persist
    std::string function_path, proxy = "dual", pair_path, complex_path, points_path;
    double h = 0.01;
    auto* pe = app.add_subcommand("persist", "persistence diagram of a cover or complex");
    pe->add_option("--cover", cover_path, "cover JSON");
    pe->add_option("--complex", complex_path, "complex JSON (used with --points)");
    pe->add_option("--points", points_path, "point CSV for --complex");
    pe->add_option("--function", function_path, "filtering function JSON")->required();
    pe->add_option("--proxy", proxy, "dual or union")->check(CLI::IsMember({"dual", "union"}))->capture_default_str();
    pe->add_option("--cell", h, "raster cell size for --proxy union")->capture_default_str();
    pe->add_option("--pair", pair_path, "admissible pair JSON for two-parameter functions");

    // pbn
    std::string diagram_path, u_str, v_str;
    int degree = 0;
    auto* pb = app.add_subcommand("pbn", "persistent Betti number query");
    pb->add_option("--diagram", diagram_path, "diagram CSV");
    pb->add_option("--complex", complex_path, "complex JSON, for a direct multi-parameter query");
    pb->add_option("--points", points_path, "point CSV for --complex");
    pb->add_option("--function", function_path, "filtering function JSON for --complex");
    pb->add_option("--degree", degree, "homology degree")->capture_default_str();
    pb->add_option("--u", u_str, "u, comma separated when n > 1")->required();
    pb->add_option("--v", v_str, "v, comma separated when n > 1")->required();

    // strips
    double W = 0.0;
    std::string classify_str;
    auto* st = app.add_subcommand("strips", "blind strips of a diagram");
    st->add_option("--diagram", diagram_path, "diagram CSV")->required();
    st->add_option("--degree", degree, "homology degree")->capture_default_str();
    st->add_option("--W", W, "strip half-width")->required();
    st->add_option("--classify", classify_str, "query point u,v to classify");

    // certify
    double omega = 0.0, extra = 0.0;
    std::string regime = "on-manifold";
    auto* ce = app.add_subcommand("certify", "sandwich bound at a query");
    ce->add_option("--diagram", diagram_path, "proxy diagram CSV")->required();
    ce->add_option("--degree", degree, "homology degree")->capture_default_str();
    ce->add_option("--u", u_str, "u")->required();
    ce->add_option("--v", v_str, "v")->required();
    ce->add_option("--omega", omega, "modulus of continuity at the cover radius")->required();
    ce->add_option("--regime", regime, "on-manifold, near-manifold or dual-shape")
        ->check(CLI::IsMember({"on-manifold", "near-manifold", "dual-shape"}))
        ->capture_default_str();
    ce->add_option("--extra", extra, "additional widening")->capture_default_str();

    // bound
    std::string a_path, b_path, degrees_str = "0";
    double wa = 0.0, wb = 0.0, margin = -1.0;
    std::size_t grid = 0;
    auto* bo = app.add_subcommand("bound", "pseudodistance lower bound between two shapes");
    bo->add_option("--a", a_path, "diagram CSV of shape A")->required();
    bo->add_option("--b", b_path, "diagram CSV of shape B")->required();
    bo->add_option("--wa", wa, "strip half-width for A")->required();
    bo->add_option("--wb", wb, "strip half-width for B")->required();
    bo->add_option("--degrees", degrees_str, "comma separated degrees")->capture_default_str();
    bo->add_option("--margin", margin, "candidate offset beyond the strips; negative for automatic")->capture_default_str();
    bo->add_option("--grid", grid, "extra uniform candidate grid per axis")->capture_default_str();

    // reproduce
    std::string scenario;
    auto* re = app.add_subcommand("reproduce", "run a shipped scenario");
    re->add_option("scenario", scenario, "scenario name")->required()->check(CLI::IsMember(scenario_names()));

    // plot
    std::string window_str = "0,5,0,5", title, output_name = "plot.svg";
    bool with_strips = false;
    auto* pl = app.add_subcommand("plot", "SVG of the PBN regions of a diagram");
    pl->add_option("--diagram", diagram_path, "diagram CSV")->required();
    pl->add_option("--degree", degree, "homology degree")->capture_default_str();
    auto* w_opt = pl->add_option("--W", W, "strip half-width; strips are drawn when given");
    pl->add_option("--window", window_str, "u0,u1,v0,v1")->capture_default_str();
    pl->add_option("--title", title, "plot title");
    pl->add_option("--name", output_name, "output file name")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }
    with_strips = w_opt->count() > 0;

    try {
        Emit emit{out_dir, out};
        if (*dc) {
            BallCover cover = read_cover_json(cover_path);
            ReferenceShape shape = read_shape(shape_path);
            bool near = mode == "near" || (mode == "auto" && cover.offset.has_value());
            DensityReport r = near ? check_density_near(cover, shape) : check_density_on(cover, shape);
            json j = density_to_json(r);
            j["mode"] = near ? "near" : "on";
            emit.file("density.json", dump(j));
            if (!r.passed) err << "density check failed: " << r.reason << "\n";
            return r.passed ? 0 : 2;
        }
        if (*bc) {
            BallCover cover = read_cover_json(cover_path);
            cover.validate();
            SimplicialComplex K;
            if (complex_kind == "cech") {
                K = cech_nerve(cover, max_dim);
            } else {
                cover.landmarks = precondition_general_position(cover.landmarks, jitter_seed());
                K = complex_kind == "dual" ? dual_complex(cover) : delaunay_2d(cover.landmarks);
                emit.file("landmarks_preconditioned.csv", points_to_csv(cover.landmarks));
            }
            json j = complex_to_json(K);
            std::vector<int> betti = betti_numbers(K);
            j["betti"] = betti;
            emit.file("complex.json", dump(j));
            return 0;
        }
        if (*pe) {
            FilteringFunction f = read_function(function_path);
            PersistenceDiagram D;
            FilteredComplex F;
            bool have_complex = false;
            if (!complex_path.empty()) {
                if (points_path.empty()) throw ValidationError("--complex needs --points");
                F = sublevel_filtration(complex_from_json(read_json(complex_path)), f, read_points_csv(points_path));
                have_complex = true;
            } else if (!cover_path.empty()) {
                BallCover cover = read_cover_json(cover_path);
                if (proxy == "union") {
                    if (f.n_components() != 1) throw ValidationError("ball-union raster needs a scalar function");
                    D = raster_ball_union_persistence(cover, f, h);
                } else {
                    F = dual_shape_filtration(cover, f);
                    have_complex = true;
                }
            } else {
                throw ValidationError("persist needs --cover or --complex");
            }
            if (have_complex) {
                if (F.n > 1) {
                    if (pair_path.empty()) throw ValidationError("two-parameter function needs --pair");
                    F = foliation_reduce(F, pair_from_json(read_json(pair_path)));
                }
                D = reduce(F);
            }
            emit.file("diagram.csv", diagram_to_csv(D));
            return 0;
        }
        if (*pb) {
            Vec u = parse_vec(u_str), v = parse_vec(v_str);
            PBNValue q{degree, u, v, 0};
            if (!complex_path.empty()) {
                if (points_path.empty() || function_path.empty())
                    throw ValidationError("--complex needs --points and --function");
                auto F = sublevel_filtration(complex_from_json(read_json(complex_path)), read_function(function_path),
                                             read_points_csv(points_path));
                q.value = pbn_query_multi(F, degree, u, v);
            } else if (!diagram_path.empty()) {
                if (u.size() != 1 || v.size() != 1) throw ValidationError("diagram queries take scalar u and v");
                q.value = pbn_query_1d(read_diagram(diagram_path), degree, u[0], v[0]);
            } else {
                throw ValidationError("pbn needs --diagram or --complex");
            }
            std::string body = dump(query_to_json(q));
            write_text_file(fs::path(out_dir) / "query.json", body);
            out << body;
            return 0;
        }
        if (*st) {
            auto S = blind_strips(read_diagram(diagram_path), degree, W);
            json j = strips_to_json(S);
            if (!classify_str.empty()) {
                Vec q = parse_vec(classify_str);
                if (q.size() != 2) throw ValidationError("--classify takes u,v");
                j["query"] = {{"u", q[0]},
                              {"v", q[1]},
                              {"distance", S.distance(q[0], q[1])},
                              {"class", classify(S, q[0], q[1]) == StripClass::Outside ? "outside" : "inside"}};
            }
            emit.file("strips.json", dump(j));
            return 0;
        }
        if (*ce) {
            Vec u = parse_vec(u_str), v = parse_vec(v_str);
            OmegaVector om{0.0, omega, u.size()};
            if (!(omega >= 0.0)) throw ValidationError("invalid omega");
            ProxyPbn P(read_diagram(diagram_path));
            auto s = sandwich(P, degree, u, v, om, regime_from_string(regime), extra);
            json j = sandwich_to_json(s);
            j["certified"] = s.exact() ? json(s.lower) : json(nullptr);
            emit.file("certificate.json", dump(j));
            return 0;
        }
        if (*bo) {
            std::vector<int> degrees;
            for (double d : parse_vec(degrees_str)) degrees.push_back(static_cast<int>(d));
            auto DA = read_diagram(a_path), DB = read_diagram(b_path);
            SearchShape A{DA, {}}, B{DB, {}};
            for (int d : degrees) {
                A.strips.push_back(blind_strips(DA, d, wa));
                B.strips.push_back(blind_strips(DB, d, wb));
            }
            SearchSpec spec;
            spec.margin = margin;
            spec.grid = grid;
            auto best = search_best_bound(A, B, degrees, spec);
            emit.file("bound.json", dump(best ? certificate_to_json(*best) : json{{"bound", nullptr}}));
            return 0;
        }
        if (*re) {
            ScenarioReport r = run_scenario(scenario, out_dir);
            for (const auto& c : r.checks)
                out << (c.passed ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")")
                    << "\n";
            out << scenario << ": " << (r.passed() ? "all checks passed" : "some checks failed") << "\n";
            return r.passed() ? 0 : 2;
        }
        if (*pl) {
            Vec w = parse_vec(window_str);
            if (w.size() != 4) throw ValidationError("--window takes u0,u1,v0,v1");
            auto D = read_diagram(diagram_path);
            std::optional<BlindStripSet> S;
            if (with_strips) S = blind_strips(D, degree, W);
            emit.file(output_name, plot_regions(D, degree, S ? &*S : nullptr, {w[0], w[1], w[2], w[3]}, title));
            return 0;
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace pbnest
