#include "pbnest/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace pbnest {

RasterGrid rasterize_ball_union(const BallCover& cover, const FilteringFunction& f, double h) {
    cover.validate();
    if (cover.landmarks.dim() != 2) throw ValidationError("unsupported ambient dimension");
    if (!(h > 0.0) || h > cover.radius / 10.0) throw ValidationError("raster cell too coarse");
    if (f.n_components() != 1) throw ValidationError("raster oracle needs a scalar function");
    if (f.is_table()) throw ValidationError("raster oracle needs an ambient function");

    const double r = cover.radius;
    double lx = kInf, ly = kInf, hx = -kInf, hy = -kInf;
    for (const auto& p : cover.landmarks) {
        lx = std::min(lx, p[0]), hx = std::max(hx, p[0]);
        ly = std::min(ly, p[1]), hy = std::max(hy, p[1]);
    }
    RasterGrid g;
    g.h = h;
    const double pad = r + 2.0 * h;
    g.nx = static_cast<std::size_t>(std::ceil((hx - lx + 2 * pad) / h)) + 1;
    g.ny = static_cast<std::size_t>(std::ceil((hy - ly + 2 * pad) / h)) + 1;
    if (static_cast<double>(g.nx) * static_cast<double>(g.ny) > 4e7) throw ValidationError("raster box too large");
    g.x0 = lx - pad + h / 2;
    g.y0 = ly - pad + h / 2;
    g.occupied.assign(g.nx * g.ny, 0);
    g.value.assign(g.nx * g.ny, kInf);

    const double r2 = r * r;
    for (const auto& p : cover.landmarks) {
        auto i0 = static_cast<std::ptrdiff_t>(std::floor((p[0] - r - g.x0) / h)) - 1;
        auto i1 = static_cast<std::ptrdiff_t>(std::ceil((p[0] + r - g.x0) / h)) + 1;
        auto j0 = static_cast<std::ptrdiff_t>(std::floor((p[1] - r - g.y0) / h)) - 1;
        auto j1 = static_cast<std::ptrdiff_t>(std::ceil((p[1] + r - g.y0) / h)) + 1;
        for (auto j = std::max<std::ptrdiff_t>(j0, 0); j <= std::min<std::ptrdiff_t>(j1, g.ny - 1); ++j)
            for (auto i = std::max<std::ptrdiff_t>(i0, 0); i <= std::min<std::ptrdiff_t>(i1, g.nx - 1); ++i) {
                double dx = g.x0 + i * h - p[0], dy = g.y0 + j * h - p[1];
                if (dx * dx + dy * dy <= r2) g.occupied[g.index(i, j)] = 1;
            }
    }
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) {
            std::size_t k = g.index(i, j);
            if (g.occupied[k]) g.value[k] = f.evaluate({g.x0 + i * h, g.y0 + j * h})[0];
        }
    return g;
}

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
};

}  // namespace

PersistenceDiagram raster_persistence(const RasterGrid& g, int degree_max) {
    PersistenceDiagram D;
    const std::size_t N = g.nx * g.ny;

    // degree 0: pixels in increasing order, 4-neighbour merges, elder rule on birth
    std::vector<std::uint32_t> order;
    for (std::uint32_t k = 0; k < N; ++k)
        if (g.occupied[k]) order.push_back(k);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return g.value[a] < g.value[b]; });
    std::vector<std::uint32_t> rank(N, 0);
    for (std::uint32_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
    UnionFind uf(N);
    std::vector<char> active(N, 0);
    // a root's birth is the value of its oldest pixel, which is itself the root
    for (auto p : order) {
        active[p] = 1;
        std::size_t i = p % g.nx, j = p / g.nx;
        std::uint32_t nb[4];
        int cnt = 0;
        if (i > 0) nb[cnt++] = p - 1;
        if (i + 1 < g.nx) nb[cnt++] = p + 1;
        if (j > 0) nb[cnt++] = p - static_cast<std::uint32_t>(g.nx);
        if (j + 1 < g.ny) nb[cnt++] = p + static_cast<std::uint32_t>(g.nx);
        for (int c = 0; c < cnt; ++c) {
            if (!active[nb[c]]) continue;
            std::uint32_t a = uf.find(p), b = uf.find(nb[c]);
            if (a == b) continue;
            if (rank[a] > rank[b]) std::swap(a, b);  // a is older
            D.add(0, g.value[b], g.value[p]);
            uf.parent[b] = a;
        }
    }
    for (auto p : order)
        if (uf.find(p) == p) D.add(0, g.value[p], kInf);

    if (degree_max >= 1 && g.nx > 1 && g.ny > 1) {
        // degree 1 by duality: squares plus the outer face, merged by primal edges in decreasing order
        const std::size_t sx = g.nx - 1, sy = g.ny - 1;
        const std::uint32_t outer = static_cast<std::uint32_t>(sx * sy);
        std::vector<double> key(sx * sy + 1, kInf);
        for (std::size_t j = 0; j < sy; ++j)
            for (std::size_t i = 0; i < sx; ++i)
                key[j * sx + i] = std::max({g.value[g.index(i, j)], g.value[g.index(i + 1, j)],
                                            g.value[g.index(i, j + 1)], g.value[g.index(i + 1, j + 1)]});
        struct Edge {
            double value;
            std::uint32_t a, b;
        };
        std::vector<Edge> edges;
        edges.reserve(2 * N);
        auto square = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> std::uint32_t {
            if (i < 0 || j < 0 || i >= static_cast<std::ptrdiff_t>(sx) || j >= static_cast<std::ptrdiff_t>(sy)) return outer;
            return static_cast<std::uint32_t>(j * sx + i);
        };
        for (std::size_t j = 0; j < g.ny; ++j)
            for (std::size_t i = 0; i < g.nx; ++i) {
                auto I = static_cast<std::ptrdiff_t>(i), J = static_cast<std::ptrdiff_t>(j);
                if (i + 1 < g.nx)
                    edges.push_back({std::max(g.value[g.index(i, j)], g.value[g.index(i + 1, j)]), square(I, J),
                                     square(I, J - 1)});
                if (j + 1 < g.ny)
                    edges.push_back({std::max(g.value[g.index(i, j)], g.value[g.index(i, j + 1)]), square(I, J),
                                     square(I - 1, J)});
            }
        std::stable_sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.value > y.value; });
        UnionFind dual(sx * sy + 1);
        // the outer face outlives everything; otherwise the larger key survives
        auto older = [&](std::uint32_t x, std::uint32_t y) {
            if (x == outer || y == outer) return x == outer;
            if (key[x] != key[y]) return key[x] > key[y];
            return x < y;
        };
        for (const auto& e : edges) {
            std::uint32_t a = dual.find(e.a), b = dual.find(e.b);
            if (a == b) continue;
            if (!older(a, b)) std::swap(a, b);
            if (e.value < kInf) D.add(1, e.value, key[b]);
            dual.parent[b] = a;
        }
    }
    D.normalize();
    return D;
}

PersistenceDiagram raster_ball_union_persistence(const BallCover& cover, const FilteringFunction& f, double h,
                                                 int degree_max) {
    return raster_persistence(rasterize_ball_union(cover, f, h), degree_max);
}

PersistenceDiagram analytic_circle_diagram(double r, const FilteringFunction& f) {
    if (!(r > 0.0)) throw ValidationError("invalid radius");
    if (f.kind() != FilteringFunction::Kind::AbsCoordinate || f.axis() > 1) throw ValidationError("unsupported f-kind");
    PersistenceDiagram D;
    D.add(0, 0.0, kInf);
    D.add(0, 0.0, r);
    D.add(1, r, kInf);
    D.normalize();
    return D;
}

namespace {

using Row = std::vector<std::uint8_t>;

// Row echelon form over Z/2 in place; returns the pivot column of each nonzero row.
std::vector<std::size_t> echelon(std::vector<Row>& rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t width = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && !rows[p][c]) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t q = 0; q < rows.size(); ++q)
            if (q != r && rows[q][c])
                for (std::size_t k = 0; k < width; ++k) rows[q][k] ^= rows[r][k];
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

}  // namespace

int brute_rank(const FilteredComplex& F, int degree, const Vec& u, const Vec& v) {
    const auto& S = F.complex.simplices();
    if (S.size() > 512) throw ValidationError("complex too large for brute rank");
    if (u.size() != F.n || v.size() != F.n) throw ValidationError("query has wrong number of components");
    for (std::size_t j = 0; j < F.n; ++j)
        if (u[j] > v[j]) throw ValidationError("not in Δ⁺");
    if (degree < 0) return 0;
    const std::size_t d = static_cast<std::size_t>(degree);
    auto in = [&](std::size_t k, const Vec& w) {
        for (std::size_t j = 0; j < F.n; ++j)
            if (F.values[k][j] > w[j]) return false;
        return true;
    };

    std::vector<std::size_t> cells, lower;  // i-simplices and (i-1)-simplices of K_v
    for (std::size_t k = 0; k < S.size(); ++k) {
        if (!in(k, v)) continue;
        if (S[k].size() == d + 1) cells.push_back(k);
        if (S[k].size() == d) lower.push_back(k);
    }
    auto position = [](const std::vector<std::size_t>& list, std::size_t k) {
        return static_cast<std::size_t>(std::lower_bound(list.begin(), list.end(), k) - list.begin());
    };
    auto boundary = [&](const Simplex& s, const std::vector<std::size_t>& basis) {
        Row out(basis.size(), 0);
        for (std::size_t drop = 0; drop < s.size() && s.size() > 1; ++drop) {
            Simplex f;
            for (std::size_t k = 0; k < s.size(); ++k)
                if (k != drop) f.push_back(s[k]);
            out[position(basis, *F.complex.index_of(f))] ^= 1;
        }
        return out;
    };

    std::vector<std::size_t> cu;  // positions in `cells` of the i-simplices of K_u
    for (std::size_t c = 0; c < cells.size(); ++c)
        if (in(cells[c], u)) cu.push_back(c);
    if (cu.empty()) return 0;

    // kernel of the boundary restricted to K_u, from the reduced form of its transpose system
    std::vector<Row> Z;
    if (d == 0) {
        for (std::size_t c : cu) {
            Row z(cells.size(), 0);
            z[c] = 1;
            Z.push_back(z);
        }
    } else {
        std::vector<Row> M(lower.size(), Row(cu.size(), 0));
        for (std::size_t t = 0; t < cu.size(); ++t) {
            Row b = boundary(S[cells[cu[t]]], lower);
            for (std::size_t r = 0; r < lower.size(); ++r) M[r][t] = b[r];
        }
        std::vector<Row> R = M;
        auto piv = echelon(R);
        std::vector<char> is_pivot(cu.size(), 0);
        for (auto p : piv) is_pivot[p] = 1;
        for (std::size_t free = 0; free < cu.size(); ++free) {
            if (is_pivot[free]) continue;
            Row x(cu.size(), 0);
            x[free] = 1;
            for (std::size_t r = 0; r < piv.size(); ++r)
                if (R[r][free]) x[piv[r]] = 1;
            Row z(cells.size(), 0);
            for (std::size_t t = 0; t < cu.size(); ++t) z[cu[t]] = x[t];
            Z.push_back(z);
        }
    }
    if (Z.empty()) return 0;

    std::vector<Row> Bv;
    for (std::size_t k = 0; k < S.size(); ++k)
        if (S[k].size() == d + 2 && in(k, v)) Bv.push_back(boundary(S[k], cells));

    // Zassenhaus: rows [z | z] and [b | 0]; echelon rows with empty left half span Z ∩ B
    const std::size_t w = cells.size();
    std::vector<Row> big;
    for (const auto& z : Z) {
        Row r(2 * w);
        std::copy(z.begin(), z.end(), r.begin());
        std::copy(z.begin(), z.end(), r.begin() + static_cast<std::ptrdiff_t>(w));
        big.push_back(std::move(r));
    }
    for (const auto& b : Bv) {
        Row r(2 * w, 0);
        std::copy(b.begin(), b.end(), r.begin());
        big.push_back(std::move(r));
    }
    auto piv = echelon(big);
    int inter = 0;
    for (auto p : piv)
        if (p >= w) ++inter;
    return static_cast<int>(Z.size()) - inter;
}

}  // namespace pbnest
