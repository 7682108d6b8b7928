#include "pbnest/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace pbnest {

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    if (x == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& raw) {
    std::size_t a = raw.find_first_not_of(" \t\r");
    std::size_t b = raw.find_last_not_of(" \t\r");
    if (a == std::string::npos) throw ValidationError("empty number");
    std::string s = raw.substr(a, b - a + 1);
    if (s == "inf" || s == "+inf" || s == "Infinity") return kInf;
    if (s == "-inf" || s == "-Infinity") return -kInf;
    double x = 0.0;
    const char* first = s.data();
    if (*first == '+') ++first;
    auto res = std::from_chars(first, s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ValidationError("bad number: " + s);
    return x;
}

std::string format_rounded(double x, double step) {
    double r = std::round(x / step) * step;
    // reparse a fixed-point rendering to drop the binary noise left by the multiplication
    char buf[64];
    int digits = std::max(0, static_cast<int>(std::ceil(-std::log10(step) - 1e-9)));
    auto res = std::to_chars(buf, buf + sizeof buf, r, std::chars_format::fixed, digits);
    double back = 0.0;
    std::from_chars(buf, res.ptr, back);
    return format_double(back);
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(line);
    }
    return out;
}

json number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

double number_from(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_double(j.get<std::string>());
    throw ValidationError("expected a number");
}

std::vector<double> numbers_from(const json& j) {
    if (!j.is_array()) throw ValidationError("expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : j) out.push_back(number_from(x));
    return out;
}

}  // namespace

std::string points_to_csv(const PointCloud& cloud) {
    std::string out;
    for (std::size_t k = 0; k < cloud.dim(); ++k) out += (k ? ",x" : "x") + std::to_string(k + 1);
    out += '\n';
    for (const auto& p : cloud) {
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (k) out += ',';
            out += format_double(p[k]);
        }
        out += '\n';
    }
    return out;
}

PointCloud points_from_csv(const std::string& text) {
    auto lines = lines_of(text);
    if (lines.empty()) throw ValidationError("empty point file");
    auto header = split(lines[0], ',');
    for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] != "x" + std::to_string(k + 1)) throw ValidationError("point file header must be x1,...,xm");
    std::vector<Point> pts;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto f = split(lines[i], ',');
        if (f.size() != header.size()) throw ValidationError("point row has wrong number of coordinates");
        Point p;
        for (const auto& s : f) p.push_back(parse_double(s));
        pts.push_back(std::move(p));
    }
    if (pts.empty()) throw ValidationError("no landmarks");
    return PointCloud(header.size(), std::move(pts));
}

PointCloud read_points_csv(const fs::path& path) { return points_from_csv(read_text_file(path)); }

void write_points_csv(const fs::path& path, const PointCloud& cloud) { write_text_file(path, points_to_csv(cloud)); }

BallCover read_cover_json(const fs::path& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad cover JSON: ") + e.what());
    }
    BallCover c;
    if (!j.contains("radius") || !j.contains("tau") || !j.contains("points"))
        throw ValidationError("cover JSON needs radius, tau and points");
    c.radius = number_from(j["radius"]);
    c.tau = number_from(j["tau"]);
    if (j.contains("offset") && !j["offset"].is_null()) c.offset = number_from(j["offset"]);
    fs::path pts = j["points"].get<std::string>();
    if (pts.is_relative()) pts = path.parent_path() / pts;
    c.landmarks = read_points_csv(pts);
    c.validate();
    return c;
}

void write_cover_json(const fs::path& path, const BallCover& cover, const std::string& points_name) {
    json j;
    j["radius"] = cover.radius;
    j["tau"] = cover.tau;
    j["offset"] = cover.offset ? json(*cover.offset) : json(nullptr);
    j["points"] = points_name;
    write_text_file(path, dump(j));
    write_points_csv(path.parent_path() / points_name, cover.landmarks);
}

FilteringFunction function_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ValidationError("function JSON needs a kind");
    const std::string kind = j["kind"].get<std::string>();
    const json params = j.value("params", json::object());
    std::optional<std::vector<double>> lip;
    if (j.contains("lipschitz") && !j["lipschitz"].is_null()) lip = numbers_from(j["lipschitz"]);
    auto axis = [&]() {
        if (!params.contains("axis")) throw ValidationError(kind + " needs params.axis");
        return params["axis"].get<std::size_t>();
    };
    std::vector<Point> sites;
    if (params.contains("sites"))
        for (const auto& s : params["sites"]) sites.push_back(numbers_from(s));
    FilteringFunction f;
    if (kind == "abs-coordinate") f = FilteringFunction::abs_coordinate(axis());
    else if (kind == "coordinate") f = FilteringFunction::coordinate(axis());
    else if (kind == "distance-to-point") f = FilteringFunction::distance_to_point(numbers_from(params.at("point")));
    else if (kind == "vertex-table") {
        std::vector<Vec> values;
        for (const auto& row : params.at("values")) values.push_back(numbers_from(row));
        return FilteringFunction::vertex_table(std::move(values), std::move(sites), lip);
    } else if (kind == "color-plane") {
        std::vector<std::array<double, 3>> rgb;
        for (const auto& row : params.at("rgb")) {
            auto v = numbers_from(row);
            if (v.size() != 3) throw ValidationError("rgb rows need three entries");
            rgb.push_back({v[0], v[1], v[2]});
        }
        return FilteringFunction::color_plane(std::move(rgb), std::move(sites), lip);
    } else {
        throw ValidationError("unknown function kind: " + kind);
    }
    if (lip) {
        // builtin kinds carry their own constants; a supplied list must agree in size
        if (lip->size() != f.n_components()) throw ValidationError("lipschitz has wrong number of components");
    }
    return f;
}

json function_to_json(const FilteringFunction& f) {
    json j;
    json params = json::object();
    using K = FilteringFunction::Kind;
    switch (f.kind()) {
    case K::AbsCoordinate: j["kind"] = "abs-coordinate", params["axis"] = f.axis(); break;
    case K::Coordinate: j["kind"] = "coordinate", params["axis"] = f.axis(); break;
    case K::DistanceToPoint: j["kind"] = "distance-to-point", params["point"] = f.anchor(); break;
    case K::VertexTable: j["kind"] = "vertex-table", params["values"] = f.table(); break;
    case K::ColorPlane: {
        j["kind"] = "color-plane";
        json rows = json::array();
        for (const auto& c : f.colors()) rows.push_back({c[0], c[1], c[2]});
        params["rgb"] = rows;
        break;
    }
    }
    if (!f.sites().empty()) params["sites"] = f.sites();
    j["params"] = params;
    j["lipschitz"] = f.lipschitz() ? json(*f.lipschitz()) : json(nullptr);
    return j;
}

AdmissiblePair pair_from_json(const json& j) {
    if (!j.contains("l") || !j.contains("b")) throw ValidationError("pair JSON needs l and b");
    AdmissiblePair p{numbers_from(j["l"]), numbers_from(j["b"])};
    p.validate();
    return p;
}

json pair_to_json(const AdmissiblePair& p) { return json{{"l", p.l}, {"b", p.b}}; }

std::string diagram_to_csv(const PersistenceDiagram& D) {
    std::string out = "degree,birth,death\n";
    for (int d = 0; d <= D.max_degree(); ++d)
        for (const auto& p : D.pairs(d))
            out += std::to_string(d) + "," + format_double(p.birth) + "," + format_double(p.death) + "\n";
    return out;
}

PersistenceDiagram diagram_from_csv(const std::string& text) {
    auto lines = lines_of(text);
    if (lines.empty() || lines[0] != "degree,birth,death") throw ValidationError("diagram header must be degree,birth,death");
    PersistenceDiagram D;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto f = split(lines[i], ',');
        if (f.size() != 3) throw ValidationError("diagram row needs three fields");
        double deg = parse_double(f[0]);
        if (deg < 0 || deg != std::floor(deg)) throw ValidationError("bad degree");
        D.add(static_cast<int>(deg), parse_double(f[1]), parse_double(f[2]));
    }
    D.normalize();
    return D;
}

json complex_to_json(const SimplicialComplex& K) {
    json s = json::array();
    for (const auto& x : K.simplices()) s.push_back(x);
    return json{{"num_vertices", K.num_vertices()}, {"simplices", s}};
}

SimplicialComplex complex_from_json(const json& j) {
    std::vector<Simplex> s;
    for (const auto& x : j.at("simplices")) s.push_back(x.get<Simplex>());
    return SimplicialComplex::from_simplices(j.at("num_vertices").get<std::size_t>(), std::move(s));
}

json density_to_json(const DensityReport& r) {
    json j{{"passed", r.passed}, {"max_gap", r.max_gap}, {"margin", r.margin}, {"reason", r.reason}};
    j["radius_interval"] = r.radius_interval ? json{r.radius_interval->first, r.radius_interval->second} : json(nullptr);
    return j;
}

json segment_to_json(const Segment& s) {
    const char* o = s.orientation == Segment::Orientation::Vertical     ? "vertical"
                    : s.orientation == Segment::Orientation::Horizontal ? "horizontal"
                                                                        : "diagonal";
    json j{{"orientation", o}, {"lo", number(s.lo)}, {"hi", number(s.hi)}, {"lo_closed", s.lo_closed},
           {"hi_closed", s.hi_closed}};
    if (s.orientation != Segment::Orientation::Diagonal) j["at"] = number(s.fixed);
    return j;
}

json strips_to_json(const BlindStripSet& s) {
    json segs = json::array();
    for (const auto& x : s.segments) segs.push_back(segment_to_json(x));
    return json{{"degree", s.degree}, {"W", s.W}, {"total_width", s.total_width()}, {"segments", segs}};
}

json query_to_json(const PBNValue& q) {
    return json{{"degree", q.degree}, {"u", q.u}, {"v", q.v}, {"value", q.value}};
}

json sandwich_to_json(const SandwichBound& s) {
    return json{{"degree", s.degree},           {"u", s.u},
                {"v", s.v},                     {"lower", s.lower},
                {"upper", s.upper},             {"omega", s.slack.omega},
                {"regime", to_string(s.regime)}, {"extra", s.extra},
                {"certified", s.exact()}};
}

json certificate_to_json(const BoundCertificate& c) {
    return json{{"degree", c.degree},
                {"first", query_to_json(c.first)},
                {"second", query_to_json(c.second)},
                {"bound", c.bound},
                {"useful", c.useful},
                {"first_is_a", c.first_is_a},
                {"first_outside_strips", c.first_outside},
                {"second_outside_strips", c.second_outside}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace pbnest
