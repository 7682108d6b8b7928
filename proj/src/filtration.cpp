#include "pbnest/filtration.hpp"

#include <algorithm>
#include <numeric>

namespace pbnest {

namespace {
const double kS2 = std::sqrt(2.0), kS3 = std::sqrt(3.0), kS6 = std::sqrt(6.0);
}

const double ColorFrame::matrix[3][3] = {
    {-1.0 / kS2, -1.0 / kS6, 1.0 / kS3},
    {1.0 / kS2, -1.0 / kS6, 1.0 / kS3},
    {0.0, std::sqrt(2.0 / 3.0), 1.0 / kS3},
};
const double ColorFrame::offset[3] = {(4.0 - kS2) / 4.0, (4.0 - kS2) / 4.0, 0.0};

std::array<double, 3> ColorFrame::to_rgb(double x, double y, double z) {
    std::array<double, 3> out{};
    for (int r = 0; r < 3; ++r) out[r] = matrix[r][0] * x + matrix[r][1] * y + matrix[r][2] * z + offset[r];
    return out;
}

std::array<double, 3> ColorFrame::from_rgb(const std::array<double, 3>& rgb) {
    // the frame is orthonormal, so its inverse is the transpose
    std::array<double, 3> out{};
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 3; ++r) out[c] += matrix[r][c] * (rgb[r] - offset[r]);
    return out;
}

FilteringFunction FilteringFunction::abs_coordinate(std::size_t axis) {
    FilteringFunction f;
    f.kind_ = Kind::AbsCoordinate;
    f.axis_ = axis;
    return f;
}

FilteringFunction FilteringFunction::coordinate(std::size_t axis) {
    FilteringFunction f;
    f.kind_ = Kind::Coordinate;
    f.axis_ = axis;
    return f;
}

FilteringFunction FilteringFunction::distance_to_point(Point p) {
    if (p.empty()) throw ValidationError("distance-to-point needs a point");
    FilteringFunction f;
    f.kind_ = Kind::DistanceToPoint;
    f.anchor_ = std::move(p);
    return f;
}

namespace {

void check_lipschitz(const std::optional<std::vector<double>>& c, std::size_t n) {
    if (!c) return;
    if (c->size() != n) throw ValidationError("lipschitz has wrong number of components");
    for (double x : *c)
        if (!(x >= 0.0) || !std::isfinite(x)) throw ValidationError("invalid lipschitz constant");
}

}  // namespace

FilteringFunction FilteringFunction::vertex_table(std::vector<Vec> values, std::vector<Point> sites,
                                                  std::optional<std::vector<double>> lipschitz) {
    if (values.empty()) throw ValidationError("empty vertex table");
    const std::size_t n = values[0].size();
    if (n == 0) throw ValidationError("vertex table needs at least one component");
    for (const auto& v : values)
        if (v.size() != n) throw ValidationError("vertex table rows differ in length");
    if (!sites.empty() && sites.size() != values.size()) throw ValidationError("sites and values differ in count");
    check_lipschitz(lipschitz, n);
    FilteringFunction f;
    f.kind_ = Kind::VertexTable;
    f.n_ = n;
    f.table_ = std::move(values);
    f.sites_ = std::move(sites);
    f.lipschitz_ = std::move(lipschitz);
    return f;
}

FilteringFunction FilteringFunction::color_plane(std::vector<std::array<double, 3>> rgb, std::vector<Point> sites,
                                                 std::optional<std::vector<double>> lipschitz) {
    if (rgb.empty()) throw ValidationError("empty vertex table");
    if (!sites.empty() && sites.size() != rgb.size()) throw ValidationError("sites and values differ in count");
    check_lipschitz(lipschitz, 2);
    FilteringFunction f;
    f.kind_ = Kind::ColorPlane;
    f.n_ = 2;
    for (const auto& c : rgb) {
        auto p = ColorFrame::from_rgb(c);
        if (std::abs(p[2]) > 1e-9) throw ValidationError("colour off the plane");
        f.table_.push_back({p[0], p[1]});
    }
    f.rgb_ = std::move(rgb);
    f.sites_ = std::move(sites);
    f.lipschitz_ = std::move(lipschitz);
    return f;
}

Vec FilteringFunction::evaluate(const Point& p) const {
    Vec out;
    switch (kind_) {
    case Kind::AbsCoordinate:
    case Kind::Coordinate:
        if (axis_ >= p.size()) throw ValidationError("axis out of range");
        out = {kind_ == Kind::AbsCoordinate ? std::abs(p[axis_]) : p[axis_]};
        break;
    case Kind::DistanceToPoint:
        if (p.size() != anchor_.size()) throw ValidationError("point has wrong number of coordinates");
        out = {distance(p, anchor_)};
        break;
    case Kind::VertexTable:
    case Kind::ColorPlane: {
        double scale = 0.0;
        for (double x : p) scale = std::max(scale, std::abs(x));
        const double tol = 1e-7 * (1.0 + scale);
        std::size_t i = 0;
        for (; i < sites_.size(); ++i)
            if (sites_[i].size() == p.size() && distance(sites_[i], p) <= tol) break;
        if (i == sites_.size()) throw ValidationError("no value for vertex");
        out = table_[i];
        break;
    }
    }
    if (!shift_.empty())
        for (std::size_t j = 0; j < n_; ++j) out[j] += shift_[j];
    return out;
}

Vec FilteringFunction::evaluate_vertex(std::size_t index, const Point& p) const {
    if (!is_table()) return evaluate(p);
    if (index >= table_.size()) throw ValidationError("no value for vertex");
    Vec out = table_[index];
    if (!shift_.empty())
        for (std::size_t j = 0; j < n_; ++j) out[j] += shift_[j];
    return out;
}

std::vector<double> FilteringFunction::lipschitz_constants() const {
    if (lipschitz_) return *lipschitz_;
    if (is_table()) throw ValidationError("modulus unavailable");
    return std::vector<double>(n_, 1.0);
}

FilteringFunction FilteringFunction::shifted(const Vec& shift) const {
    if (shift.size() != n_) throw ValidationError("shift has wrong number of components");
    FilteringFunction f = *this;
    if (f.shift_.empty()) f.shift_.assign(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) f.shift_[j] += shift[j];
    return f;
}

OmegaVector modulus(const FilteringFunction& f, double eps) {
    if (!(eps >= 0.0)) throw ValidationError("negative radius for modulus");
    auto c = f.lipschitz_constants();
    OmegaVector w;
    w.eps = eps;
    w.n = f.n_components();
    double cmax = *std::max_element(c.begin(), c.end());
    w.omega = cmax * eps;
    return w;
}

void AdmissiblePair::validate() const {
    if (l.empty() || l.size() != b.size()) throw ValidationError("invalid admissible pair");
    double norm = 0.0, sum = 0.0;
    for (double x : l) {
        if (!(x > 0.0)) throw ValidationError("invalid admissible pair");
        norm += x * x;
    }
    for (double x : b) sum += x;
    if (std::abs(std::sqrt(norm) - 1.0) > 1e-9 || std::abs(sum) > 1e-9) throw ValidationError("invalid admissible pair");
}

Vec AdmissiblePair::point(double s) const {
    Vec u(l.size());
    for (std::size_t j = 0; j < l.size(); ++j) u[j] = s * l[j] + b[j];
    return u;
}

std::optional<double> AdmissiblePair::parameter_of(const Vec& u, double tol) const {
    if (u.size() != l.size()) return std::nullopt;
    double s = (u[0] - b[0]) / l[0];
    for (std::size_t j = 1; j < l.size(); ++j)
        if (std::abs((u[j] - b[j]) / l[j] - s) > tol * (1.0 + std::abs(s))) return std::nullopt;
    return s;
}

double AdmissiblePair::leaf_width(double w) const { return w / *std::min_element(l.begin(), l.end()); }

bool FilteredComplex::monotone() const {
    const auto& S = complex.simplices();
    if (values.size() != S.size()) return false;
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (values[i].size() != n) return false;
        const auto& s = S[i];
        if (s.size() < 2) continue;
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            Simplex face;
            for (std::size_t k = 0; k < s.size(); ++k)
                if (k != drop) face.push_back(s[k]);
            auto idx = complex.index_of(face);
            if (!idx) return false;
            for (std::size_t j = 0; j < n; ++j)
                if (values[*idx][j] > values[i][j]) return false;
        }
    }
    return true;
}

void FilteredComplex::validate() const {
    if (!monotone()) throw ValidationError("invalid filtration");
}

FilteredComplex filtered_from_vertices(SimplicialComplex K, const std::vector<Vec>& vertex_values) {
    if (vertex_values.size() < K.num_vertices()) throw ValidationError("no value for vertex");
    FilteredComplex F;
    F.n = vertex_values.empty() ? 1 : vertex_values[0].size();
    F.values.reserve(K.size());
    for (const auto& s : K.simplices()) {
        Vec v(F.n, -kInf);
        for (auto x : s) {
            const Vec& w = vertex_values[x];
            if (w.size() != F.n) throw ValidationError("vertex values differ in length");
            for (std::size_t j = 0; j < F.n; ++j) v[j] = std::max(v[j], w[j]);
        }
        F.values.push_back(std::move(v));
    }
    F.complex = std::move(K);
    return F;
}

FilteredComplex sublevel_filtration(const SimplicialComplex& K, const FilteringFunction& f, const PointCloud& cloud) {
    if (K.num_vertices() > cloud.size()) throw ValidationError("complex vertex outside the point cloud");
    std::vector<Vec> vv;
    vv.reserve(K.num_vertices());
    for (std::size_t i = 0; i < K.num_vertices(); ++i) vv.push_back(f.evaluate_vertex(i, cloud[i]));
    return filtered_from_vertices(K, vv);
}

FilteredComplex foliation_reduce(const FilteredComplex& F, const AdmissiblePair& pair) {
    pair.validate();
    if (pair.n() != F.n) throw ValidationError("admissible pair dimension mismatch");
    FilteredComplex R;
    R.complex = F.complex;
    R.n = 1;
    R.values.reserve(F.values.size());
    for (const auto& v : F.values) {
        double s = -kInf;
        for (std::size_t j = 0; j < F.n; ++j) s = std::max(s, (v[j] - pair.b[j]) / pair.l[j]);
        R.values.push_back({s});
    }
    return R;
}

}  // namespace pbnest
