#include "pbnest/geometry.hpp"

#include <algorithm>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <unordered_map>

namespace pbnest {

void BallCover::validate() const {
    if (landmarks.empty()) throw ValidationError("no landmarks");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("invalid radius");
    if (offset && (!(*offset >= 0.0) || !std::isfinite(*offset))) throw ValidationError("invalid offset");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("invalid tau");
}

// ---------------------------------------------------------------- complexes

namespace {

bool canonical_less(const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

}  // namespace

SimplicialComplex SimplicialComplex::from_simplices(std::size_t num_vertices, std::vector<Simplex> simplices) {
    std::set<Simplex> all;
    for (std::uint32_t v = 0; v < num_vertices; ++v) all.insert({v});
    for (auto& s : simplices) {
        if (s.empty()) continue;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.back() >= num_vertices) throw ValidationError("vertex index out of range");
        if (s.size() > 24) throw ValidationError("simplex too large");
        const std::uint32_t n = static_cast<std::uint32_t>(s.size());
        if (all.count(s)) continue;
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            Simplex face;
            for (std::uint32_t k = 0; k < n; ++k)
                if (mask & (1u << k)) face.push_back(s[k]);
            all.insert(std::move(face));
        }
    }
    SimplicialComplex K;
    K.num_vertices_ = num_vertices;
    K.simplices_.assign(all.begin(), all.end());
    std::sort(K.simplices_.begin(), K.simplices_.end(), canonical_less);
    return K;
}

int SimplicialComplex::dimension() const {
    if (simplices_.empty()) return -1;
    return static_cast<int>(simplices_.back().size()) - 1;
}

std::size_t SimplicialComplex::count(int dim) const {
    std::size_t c = 0;
    for (const auto& s : simplices_)
        if (static_cast<int>(s.size()) == dim + 1) ++c;
    return c;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
    auto it = std::lower_bound(simplices_.begin(), simplices_.end(), s, canonical_less);
    if (it == simplices_.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - simplices_.begin());
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
    for (const auto& s : simplices_)
        if (!other.contains(s)) return false;
    return true;
}

std::vector<Simplex> SimplicialComplex::simplices_of_dim(int dim) const {
    std::vector<Simplex> out;
    for (const auto& s : simplices_)
        if (static_cast<int>(s.size()) == dim + 1) out.push_back(s);
    return out;
}

// ---------------------------------------------------------------- curves

ClosedCurve ClosedCurve::circle(Point center, double radius) {
    if (center.size() != 2) throw ValidationError("unsupported ambient dimension");
    if (!(radius > 0.0)) throw ValidationError("invalid radius");
    ClosedCurve c;
    Piece p;
    p.is_arc = true;
    p.center = std::move(center);
    p.radius = radius;
    p.angle0 = 0.0;
    p.sweep = 2.0 * std::numbers::pi;
    p.length = radius * p.sweep;
    c.pieces_.push_back(p);
    c.offsets_.push_back(0.0);
    c.length_ = p.length;
    return c;
}

ClosedCurve ClosedCurve::filleted_polygon(std::vector<Point> vertices, double fillet) {
    const std::size_t n = vertices.size();
    if (n < 3) throw ValidationError("polygon needs at least three vertices");
    if (!(fillet > 0.0)) throw ValidationError("invalid fillet radius");
    for (const auto& v : vertices)
        if (v.size() != 2) throw ValidationError("unsupported ambient dimension");

    struct Corner {
        Point a, b, center;
        double angle0, sweep;
    };
    std::vector<Corner> corners(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = vertices[(i + n - 1) % n];
        const Point& v = vertices[i];
        const Point& q = vertices[(i + 1) % n];
        double ix = v[0] - p[0], iy = v[1] - p[1];
        double ox = q[0] - v[0], oy = q[1] - v[1];
        double li = std::hypot(ix, iy), lo = std::hypot(ox, oy);
        if (li == 0.0 || lo == 0.0) throw ValidationError("repeated polygon vertex");
        ix /= li, iy /= li, ox /= lo, oy /= lo;
        double turn = std::atan2(ix * oy - iy * ox, ix * ox + iy * oy);
        if (std::abs(turn) < 1e-12 || std::abs(std::abs(turn) - std::numbers::pi) < 1e-12)
            throw ValidationError("degenerate polygon corner");
        double t = fillet * std::tan(std::abs(turn) / 2.0);
        Corner c;
        c.a = {v[0] - t * ix, v[1] - t * iy};
        c.b = {v[0] + t * ox, v[1] + t * oy};
        double side = turn > 0 ? 1.0 : -1.0;  // centre to the left on left turns
        c.center = {c.a[0] - side * fillet * iy, c.a[1] + side * fillet * ix};
        c.angle0 = std::atan2(c.a[1] - c.center[1], c.a[0] - c.center[0]);
        c.sweep = turn;
        corners[i] = c;
    }

    ClosedCurve curve;
    curve.polygon_ = vertices;
    curve.fillet_ = fillet;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Corner& c = corners[i];
        Piece arc;
        arc.is_arc = true;
        arc.center = c.center;
        arc.radius = fillet;
        arc.angle0 = c.angle0;
        arc.sweep = c.sweep;
        arc.length = fillet * std::abs(c.sweep);
        curve.pieces_.push_back(arc);
        curve.offsets_.push_back(acc);
        acc += arc.length;

        const Corner& next = corners[(i + 1) % n];
        double dx = next.a[0] - c.b[0], dy = next.a[1] - c.b[1];
        double len = std::hypot(dx, dy);
        const Point& v = vertices[i];
        const Point& w = vertices[(i + 1) % n];
        double ex = w[0] - v[0], ey = w[1] - v[1];
        if (dx * ex + dy * ey < -1e-12) throw ValidationError("fillet radius too large for polygon");
        if (len > 0.0) {
            Piece seg;
            seg.start = c.b;
            seg.direction = {dx / len, dy / len};
            seg.length = len;
            curve.pieces_.push_back(seg);
            curve.offsets_.push_back(acc);
            acc += len;
        }
    }
    curve.length_ = acc;
    return curve;
}

Point ClosedCurve::at(double s) const {
    s = std::fmod(s, length_);
    if (s < 0) s += length_;
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), s);
    std::size_t k = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    const Piece& p = pieces_[k];
    double t = s - offsets_[k];
    if (p.is_arc) {
        double a = p.angle0 + (p.sweep > 0 ? 1.0 : -1.0) * t / p.radius;
        return {p.center[0] + p.radius * std::cos(a), p.center[1] + p.radius * std::sin(a)};
    }
    return {p.start[0] + t * p.direction[0], p.start[1] + t * p.direction[1]};
}

PointCloud ClosedCurve::sample(std::size_t n, double phase) const {
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(at(phase + length_ * static_cast<double>(i) / static_cast<double>(n)));
    return PointCloud(2, std::move(pts));
}

ReferenceShape ReferenceShape::from_curve(ClosedCurve curve) {
    ReferenceShape r;
    r.kind_ = Kind::ParametricCurve;
    r.curve_ = std::move(curve);
    return r;
}

ReferenceShape ReferenceShape::from_points(PointCloud points, double spacing) {
    if (points.empty()) throw ValidationError("empty reference shape");
    if (!(spacing >= 0.0)) throw ValidationError("invalid spacing");
    ReferenceShape r;
    r.kind_ = Kind::DensePointSet;
    r.points_ = std::move(points);
    r.spacing_ = spacing;
    return r;
}

std::pair<PointCloud, double> ReferenceShape::dense_sample(double max_spacing) const {
    if (kind_ == Kind::DensePointSet) return {points_, spacing_};
    std::size_t n = static_cast<std::size_t>(std::ceil(curve_->length() / max_spacing));
    n = std::max<std::size_t>(n, 16);
    // arc length bounds chord length, so half the arc spacing bounds the gap to the sample
    return {curve_->sample(n), curve_->length() / (2.0 * static_cast<double>(n))};
}

// ---------------------------------------------------------------- density

namespace {

double nearest_distance(const Point& p, const PointCloud& set) {
    double best = kInf;
    for (const auto& q : set) best = std::min(best, squared_distance(p, q));
    return std::sqrt(best);
}

// Largest distance from the shape sample to the landmarks, plus a certified upper bound on the
// same quantity over the whole shape.
std::pair<double, double> covering_gap(const PointCloud& landmarks, const ReferenceShape& shape, double resolution) {
    auto [sample, slack] = shape.dense_sample(resolution);
    if (sample.dim() != landmarks.dim()) throw ValidationError("shape and landmarks differ in dimension");
    double gap = 0.0;
    for (const auto& p : sample) gap = std::max(gap, nearest_distance(p, landmarks));
    return {gap, gap + slack};
}

}  // namespace

DensityReport check_density_on(const BallCover& cover, const ReferenceShape& shape) {
    cover.validate();
    DensityReport r;
    const double delta = cover.radius;
    auto [gap, bound] = covering_gap(cover.landmarks, shape, delta / 400.0);
    r.max_gap = gap;
    r.margin = delta / 2.0 - bound;
    const bool radius_ok = delta < std::sqrt(3.0 / 5.0) * cover.tau;
    r.passed = radius_ok && bound < delta / 2.0;
    if (!radius_ok)
        r.reason = "radius not below sqrt(3/5) tau";
    else if (!r.passed)
        r.reason = "shape not covered within half the radius";
    return r;
}

std::pair<double, double> near_radius_interval(double s, double tau) {
    double disc = s * s + tau * tau - 6.0 * s * tau;
    if (disc < 0.0) throw ValidationError("offset too large for τ");
    double root = std::sqrt(disc);
    return {((s + tau) - root) / 2.0, ((s + tau) + root) / 2.0};
}

DensityReport check_density_near(const BallCover& cover, const ReferenceShape& shape) {
    cover.validate();
    DensityReport r;
    const double s = cover.offset.value_or(0.0);
    const double delta = cover.radius;
    const double tau = cover.tau;
    double resolution = std::max(s, delta) / 400.0;
    auto [gap, bound] = covering_gap(cover.landmarks, shape, resolution);
    r.max_gap = gap;

    if (!(s < (3.0 - 2.0 * std::sqrt(2.0)) * tau)) {
        r.passed = false;
        r.margin = bound > s ? s - bound : 0.0;
        r.reason = "offset too large for τ";
        return r;
    }
    auto iv = near_radius_interval(s, tau);
    r.radius_interval = iv;

    // landmarks must sit within s of the shape; the sample lies on the shape so this is conservative
    auto [sample, slack] = shape.dense_sample(resolution);
    double far = 0.0;
    for (const auto& l : cover.landmarks) far = std::max(far, nearest_distance(l, sample));

    const bool in_interval = iv.first < delta && delta < iv.second;
    r.margin = s - std::max(bound, far);
    r.passed = in_interval && bound <= s && far <= s;
    if (!in_interval)
        r.reason = "radius outside admissible interval";
    else if (far > s)
        r.reason = "landmark farther than offset from shape";
    else if (bound > s)
        r.reason = "shape not covered within offset";
    return r;
}

// ---------------------------------------------------------------- Delaunay

namespace {

using LD = long double;

// Orientation of (a,b,c) with a relative zero band.
int orient(const Point& a, const Point& b, const Point& c) {
    LD abx = LD(b[0]) - a[0], aby = LD(b[1]) - a[1];
    LD acx = LD(c[0]) - a[0], acy = LD(c[1]) - a[1];
    LD det = abx * acy - aby * acx;
    LD perm = std::abs(abx * acy) + std::abs(aby * acx);
    if (std::abs(det) <= 1e-15L * perm) return 0;
    return det > 0 ? 1 : -1;
}

// > 0 when d lies strictly inside the circumcircle of the counter-clockwise triangle abc.
int incircle(const Point& a, const Point& b, const Point& c, const Point& d, LD* relative = nullptr) {
    LD ax = LD(a[0]) - d[0], ay = LD(a[1]) - d[1];
    LD bx = LD(b[0]) - d[0], by = LD(b[1]) - d[1];
    LD cx = LD(c[0]) - d[0], cy = LD(c[1]) - d[1];
    LD a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    LD t1 = a2 * (bx * cy - by * cx);
    LD t2 = b2 * (cx * ay - cy * ax);
    LD t3 = c2 * (ax * by - ay * bx);
    LD det = t1 + t2 + t3;
    LD perm = a2 * (std::abs(bx * cy) + std::abs(by * cx)) + b2 * (std::abs(cx * ay) + std::abs(cy * ax)) +
              c2 * (std::abs(ax * by) + std::abs(ay * bx));
    if (relative) *relative = perm > 0 ? std::abs(det) / perm : 0;
    if (std::abs(det) <= 1e-13L * perm) return 0;
    return det > 0 ? 1 : -1;
}

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t(a) << 32) | b;
}

struct Mesh {
    std::vector<std::array<std::uint32_t, 3>> tris;
    std::unordered_map<std::uint64_t, std::array<int, 2>> edges;

    void attach(std::uint32_t a, std::uint32_t b, int t) {
        auto [it, fresh] = edges.try_emplace(edge_key(a, b), std::array<int, 2>{-1, -1});
        auto& slot = it->second;
        if (slot[0] == -1) slot[0] = t;
        else slot[1] = t;
    }
    void detach(std::uint32_t a, std::uint32_t b, int t) {
        auto& slot = edges.at(edge_key(a, b));
        if (slot[0] == t) slot[0] = slot[1];
        slot[1] = -1;
    }
    int add(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        int t = static_cast<int>(tris.size());
        tris.push_back({a, b, c});
        attach(a, b, t), attach(b, c, t), attach(c, a, t);
        return t;
    }
};

// Rotate triangle t so that it reads (a, b, x); returns x.
std::uint32_t third(const std::array<std::uint32_t, 3>& t, std::uint32_t a, std::uint32_t b) {
    for (int k = 0; k < 3; ++k)
        if (t[k] != a && t[k] != b) return t[k];
    return t[0];
}

bool has_directed(const std::array<std::uint32_t, 3>& t, std::uint32_t a, std::uint32_t b) {
    for (int k = 0; k < 3; ++k)
        if (t[k] == a && t[(k + 1) % 3] == b) return true;
    return false;
}

void legalize(Mesh& mesh, const std::vector<Point>& P) {
    std::vector<std::uint64_t> stack;
    for (const auto& [key, slot] : mesh.edges) stack.push_back(key);
    std::sort(stack.begin(), stack.end());
    std::size_t budget = 64 * (mesh.tris.size() + 16) * (mesh.tris.size() + 16);
    while (!stack.empty() && budget-- > 0) {
        std::uint64_t key = stack.back();
        stack.pop_back();
        auto it = mesh.edges.find(key);
        if (it == mesh.edges.end() || it->second[1] == -1) continue;
        int t1 = it->second[0], t2 = it->second[1];
        std::uint32_t a = std::uint32_t(key >> 32), b = std::uint32_t(key & 0xffffffffu);
        if (!has_directed(mesh.tris[t1], a, b)) std::swap(t1, t2);
        std::uint32_t c = third(mesh.tris[t1], a, b);
        std::uint32_t d = third(mesh.tris[t2], a, b);
        if (incircle(P[a], P[b], P[c], P[d]) <= 0) continue;
        // quad a, d, b, c is convex; replace diagonal ab by cd
        mesh.edges.erase(key);
        mesh.detach(b, c, t1);
        mesh.detach(a, d, t2);
        mesh.tris[t1] = {a, d, c};
        mesh.tris[t2] = {d, b, c};
        mesh.attach(a, d, t1);
        mesh.attach(b, c, t2);
        mesh.edges[edge_key(c, d)] = {t1, t2};
        for (auto e : {edge_key(a, d), edge_key(d, b), edge_key(b, c), edge_key(c, a)}) stack.push_back(e);
    }
}

}  // namespace

Triangulation delaunay_triangulation(const PointCloud& cloud) {
    if (cloud.dim() != 2) throw ValidationError("unsupported ambient dimension");
    const auto& P = cloud.points();
    const std::uint32_t n = static_cast<std::uint32_t>(P.size());
    std::vector<std::uint32_t> order(n);
    for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t i, std::uint32_t j) {
        if (P[i][0] != P[j][0]) return P[i][0] < P[j][0];
        if (P[i][1] != P[j][1]) return P[i][1] < P[j][1];
        return i < j;
    });

    Triangulation out;
    std::size_t k = 2;
    while (k < n && orient(P[order[0]], P[order[1]], P[order[k]]) == 0) ++k;
    if (n < 3 || k == n) {
        out.collinear = true;
        out.chain = order;
        return out;
    }

    Mesh mesh;
    std::vector<std::uint32_t> hull;
    const bool left = orient(P[order[0]], P[order[1]], P[order[k]]) > 0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (left) mesh.add(order[i], order[i + 1], order[k]);
        else mesh.add(order[i + 1], order[i], order[k]);
    }
    if (left) {
        for (std::size_t i = 0; i <= k; ++i) hull.push_back(order[i]);
    } else {
        for (std::size_t i = k; i-- > 0;) hull.push_back(order[i]);
        hull.push_back(order[k]);
    }

    for (std::size_t idx = k + 1; idx < n; ++idx) {
        const std::uint32_t p = order[idx];
        const std::size_t h = hull.size();
        std::vector<char> vis(h);
        bool any = false;
        for (std::size_t i = 0; i < h; ++i) {
            vis[i] = orient(P[hull[i]], P[hull[(i + 1) % h]], P[p]) < 0;
            any = any || vis[i];
        }
        if (!any) continue;  // duplicate of a hull point; left out of the triangulation
        std::size_t start = 0;
        while (!(vis[start] && !vis[(start + h - 1) % h])) ++start;
        std::size_t end = start;
        while (vis[end % h]) {
            std::uint32_t a = hull[end % h], b = hull[(end + 1) % h];
            mesh.add(a, p, b);
            ++end;
        }
        // visible chain runs from hull[start] to hull[end % h]; its interior vertices leave the hull
        std::vector<std::uint32_t> next;
        next.reserve(h + 1);
        for (std::size_t i = 0; i < h; ++i) {
            std::size_t off = (i + h - start) % h;
            std::size_t span = end - start;
            if (off > 0 && off < span) continue;
            next.push_back(hull[i]);
            if (off == 0) next.push_back(p);
        }
        hull = std::move(next);
    }
    legalize(mesh, P);
    out.triangles = std::move(mesh.tris);
    return out;
}

SimplicialComplex delaunay_2d(const PointCloud& points) {
    if (points.dim() != 2) throw ValidationError("unsupported ambient dimension");
    Triangulation T = delaunay_triangulation(points);
    std::vector<Simplex> tops;
    if (T.collinear) {
        for (std::size_t i = 0; i + 1 < T.chain.size(); ++i) tops.push_back({T.chain[i], T.chain[i + 1]});
    } else {
        for (const auto& t : T.triangles) tops.push_back({t[0], t[1], t[2]});
    }
    return SimplicialComplex::from_simplices(points.size(), std::move(tops));
}

std::pair<Point, double> circumcircle(const Point& a, const Point& b, const Point& c) {
    double bx = b[0] - a[0], by = b[1] - a[1];
    double cx = c[0] - a[0], cy = c[1] - a[1];
    double d = 2.0 * (bx * cy - by * cx);
    double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    double ux = (cy * b2 - by * c2) / d;
    double uy = (bx * c2 - cx * b2) / d;
    return {{a[0] + ux, a[1] + uy}, std::hypot(ux, uy)};
}

// ---------------------------------------------------------------- dual complex

SimplicialComplex dual_complex(const BallCover& cover) {
    cover.validate();
    const PointCloud& L = cover.landmarks;
    if (L.dim() != 2) throw ValidationError("unsupported ambient dimension");
    const double delta = cover.radius;
    const auto& P = L.points();
    Triangulation T = delaunay_triangulation(L);
    std::vector<Simplex> tops;

    auto edge_meets = [&](std::uint32_t i, std::uint32_t j, double lo, double hi) {
        double d = distance(P[i], P[j]);
        if (d > 2.0 * delta) return false;
        double hw = std::sqrt(std::max(0.0, delta * delta - d * d / 4.0));
        return lo <= hw && hi >= -hw;
    };

    if (T.collinear) {
        for (std::size_t k = 0; k + 1 < T.chain.size(); ++k) {
            std::uint32_t i = T.chain[k], j = T.chain[k + 1];
            if (edge_meets(i, j, -kInf, kInf)) tops.push_back({i, j});
        }
        return SimplicialComplex::from_simplices(L.size(), std::move(tops));
    }

    std::vector<Point> centers(T.triangles.size());
    std::map<std::uint64_t, std::vector<std::size_t>> incident;
    for (std::size_t t = 0; t < T.triangles.size(); ++t) {
        const auto& tri = T.triangles[t];
        auto [c, R] = circumcircle(P[tri[0]], P[tri[1]], P[tri[2]]);
        centers[t] = c;
        if (R <= delta) tops.push_back({tri[0], tri[1], tri[2]});
        for (int k = 0; k < 3; ++k) incident[edge_key(tri[k], tri[(k + 1) % 3])].push_back(t);
    }
    for (const auto& [key, ts] : incident) {
        std::uint32_t i = std::uint32_t(key >> 32), j = std::uint32_t(key & 0xffffffffu);
        const Point& a = P[i];
        const Point& b = P[j];
        double mx = (a[0] + b[0]) / 2.0, my = (a[1] + b[1]) / 2.0;
        double len = distance(a, b);
        double nx = -(b[1] - a[1]) / len, ny = (b[0] - a[0]) / len;
        auto param = [&](const Point& c) { return (c[0] - mx) * nx + (c[1] - my) * ny; };
        double lo, hi;
        if (ts.size() == 2) {
            double t0 = param(centers[ts[0]]), t1 = param(centers[ts[1]]);
            lo = std::min(t0, t1), hi = std::max(t0, t1);
        } else {
            // hull edge: the Voronoi edge is a ray leaving the hull, away from the opposite vertex
            const auto& tri = T.triangles[ts[0]];
            const Point& opp = P[third(tri, i, j)];
            double t0 = param(centers[ts[0]]);
            if (param(opp) > 0) lo = -kInf, hi = t0;
            else lo = t0, hi = kInf;
        }
        if (edge_meets(i, j, lo, hi)) tops.push_back({i, j});
    }
    return SimplicialComplex::from_simplices(L.size(), std::move(tops));
}

// ---------------------------------------------------------------- Cech nerve

bool Ball::contains(const Point& p, double tol) const {
    if (radius < 0) return false;
    return distance(center, p) <= radius + tol * (1.0 + radius);
}

namespace {

// Smallest ball with all of R on its boundary, inside the affine hull of R.
std::optional<Ball> circumball(const std::vector<Point>& R) {
    if (R.empty()) return Ball{};
    const std::size_t m = R[0].size();
    const std::size_t k = R.size() - 1;
    Ball b;
    if (k == 0) {
        b.center = R[0];
        b.radius = 0.0;
        return b;
    }
    std::vector<std::vector<double>> q(k, std::vector<double>(m));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < m; ++c) q[i][c] = R[i + 1][c] - R[0][c];
    // 2 G lambda = |q_i|^2
    std::vector<std::vector<double>> A(k, std::vector<double>(k + 1));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0;
            for (std::size_t c = 0; c < m; ++c) s += q[i][c] * q[j][c];
            A[i][j] = 2.0 * s;
        }
        double s = 0;
        for (std::size_t c = 0; c < m; ++c) s += q[i][c] * q[i][c];
        A[i][k] = s;
    }
    double scale = 0;
    for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, std::abs(A[i][i]));
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (std::abs(A[piv][col]) <= 1e-14 * scale) return std::nullopt;
        std::swap(A[piv], A[col]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            double f = A[r][col] / A[col][col];
            for (std::size_t c = col; c <= k; ++c) A[r][c] -= f * A[col][c];
        }
    }
    b.center = R[0];
    for (std::size_t i = 0; i < k; ++i) {
        double lambda = A[i][k] / A[i][i];
        for (std::size_t c = 0; c < m; ++c) b.center[c] += lambda * q[i][c];
    }
    b.radius = 0;
    for (const auto& p : R) b.radius = std::max(b.radius, distance(b.center, p));
    return b;
}

Ball welzl(std::vector<Point>& P, std::size_t n, std::vector<Point>& R, std::size_t dim) {
    if (n == 0 || R.size() == dim + 1) {
        auto b = circumball(R);
        if (b) return *b;
        // affinely dependent support; fall back to the widest pair
        Ball best;
        for (std::size_t i = 0; i < R.size(); ++i)
            for (std::size_t j = i; j < R.size(); ++j) {
                Ball c;
                c.center.resize(R[i].size());
                for (std::size_t x = 0; x < c.center.size(); ++x) c.center[x] = (R[i][x] + R[j][x]) / 2;
                c.radius = distance(R[i], R[j]) / 2;
                if (c.radius > best.radius) best = c;
            }
        return best;
    }
    Ball D = welzl(P, n - 1, R, dim);
    if (D.contains(P[n - 1])) return D;
    R.push_back(P[n - 1]);
    D = welzl(P, n - 1, R, dim);
    R.pop_back();
    return D;
}

}  // namespace

Ball miniball(const std::vector<Point>& points) {
    if (points.empty()) return Ball{};
    std::vector<Point> P = points;
    std::vector<Point> R;
    return welzl(P, P.size(), R, P[0].size());
}

SimplicialComplex cech_nerve(const BallCover& cover, int max_dim) {
    cover.validate();
    const auto& P = cover.landmarks.points();
    const double delta = cover.radius;
    const std::uint32_t n = static_cast<std::uint32_t>(P.size());
    constexpr std::size_t kLimit = 2'000'000;

    std::vector<Simplex> all;
    std::vector<Simplex> layer;
    for (std::uint32_t i = 0; i < n; ++i) layer.push_back({i});
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            adj[i][j] = adj[j][i] = distance(P[i], P[j]) <= 2.0 * delta;

    all.insert(all.end(), layer.begin(), layer.end());
    for (int d = 1; d <= max_dim && !layer.empty(); ++d) {
        std::vector<Simplex> next;
        for (const auto& s : layer) {
            for (std::uint32_t v = s.back() + 1; v < n; ++v) {
                bool ok = true;
                for (auto u : s) ok = ok && adj[u][v];
                if (!ok) continue;
                Simplex t = s;
                t.push_back(v);
                if (d >= 2) {
                    std::vector<Point> pts;
                    for (auto u : t) pts.push_back(P[u]);
                    if (miniball(pts).radius > delta) continue;
                }
                next.push_back(std::move(t));
                if (all.size() + next.size() > kLimit) throw ValidationError("nerve too large");
            }
        }
        all.insert(all.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return SimplicialComplex::from_simplices(n, std::move(all));
}

// ---------------------------------------------------------------- general position

PointCloud precondition_general_position(const PointCloud& points, std::uint64_t seed) {
    if (points.size() < 2) return points;
    const double diag = points.bounding_box_diagonal();
    const std::size_t m = points.dim();
    std::vector<Point> P = points.points();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double amplitude = 1e-9 * diag / std::sqrt(static_cast<double>(m)) / 2.0;

    for (int round = 0; round < 8; ++round) {
        std::set<std::size_t> flagged;
        std::map<Point, std::size_t> seen;
        for (std::size_t i = 0; i < P.size(); ++i) {
            auto [it, fresh] = seen.try_emplace(P[i], i);
            if (!fresh) flagged.insert(i);  // the first copy stays put
        }
        if (m == 2 && flagged.empty()) {
            PointCloud cloud(2, P);
            Triangulation T = delaunay_triangulation(cloud);
            if (!T.collinear) {
                std::map<std::uint64_t, std::vector<std::uint32_t>> opposite;
                for (const auto& t : T.triangles) {
                    if (orient(P[t[0]], P[t[1]], P[t[2]]) == 0)
                        flagged.insert(t.begin(), t.end());
                    for (int k = 0; k < 3; ++k)
                        opposite[edge_key(t[k], t[(k + 1) % 3])].push_back(t[(k + 2) % 3]);
                }
                for (const auto& t : T.triangles) {
                    for (int k = 0; k < 3; ++k) {
                        std::uint32_t a = t[k], b = t[(k + 1) % 3], c = t[(k + 2) % 3];
                        for (auto d : opposite[edge_key(a, b)]) {
                            if (d == c) continue;
                            LD rel = 0;
                            incircle(P[a], P[b], P[c], P[d], &rel);
                            if (rel <= 1e-11L) flagged.insert({a, b, c, d});
                        }
                    }
                }
            }
        }
        if (flagged.empty()) break;
        for (std::size_t i : flagged)
            for (std::size_t c = 0; c < m; ++c) P[i][c] += amplitude * unit(rng);
        amplitude /= 2.0;
    }
    return PointCloud(m, std::move(P));
}

}  // namespace pbnest
