#include "pbnest/comparison.hpp"

#include <algorithm>
#include <map>

namespace pbnest {

std::optional<BoundCertificate> pseudodistance_bound(const PBNValue& first, const PBNValue& second) {
    if (first.degree != second.degree) throw ValidationError("degree mismatch");
    const std::size_t n = first.u.size();
    if (first.v.size() != n || second.u.size() != n || second.v.size() != n)
        throw ValidationError("witnesses differ in dimension");
    if (first.value <= second.value) return std::nullopt;
    double bound = kInf;
    for (std::size_t r = 0; r < n; ++r) {
        bound = std::min(bound, second.u[r] - first.u[r]);
        bound = std::min(bound, first.v[r] - second.v[r]);
    }
    BoundCertificate c;
    c.degree = first.degree;
    c.first = first;
    c.second = second;
    c.bound = bound;
    c.useful = bound > 0.0;
    return c;
}

namespace {

struct Witness {
    double u, v;
    int value;
};

const BlindStripSet& strips_for(const SearchShape& S, int degree) {
    for (const auto& s : S.strips)
        if (s.degree == degree) return s;
    throw ValidationError("no strips for degree " + std::to_string(degree));
}

std::vector<double> finite_coordinates(const PersistenceDiagram& D, int degree) {
    std::vector<double> out;
    for (const auto& p : D.pairs(degree)) {
        out.push_back(p.birth);
        if (!p.essential()) out.push_back(p.death);
    }
    return out;
}

// Per value, the witnesses not dominated in position.
std::vector<Witness> pareto(std::vector<Witness> w, bool first_side) {
    // first side wants small u and large v; second side wants large u and small v
    std::sort(w.begin(), w.end(), [&](const Witness& a, const Witness& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.u != b.u) return first_side ? a.u < b.u : a.u > b.u;
        return first_side ? a.v > b.v : a.v < b.v;
    });
    std::vector<Witness> out;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        double best_v = first_side ? -kInf : kInf;
        for (; j < w.size() && w[j].value == w[i].value; ++j) {
            bool better = first_side ? w[j].v > best_v : w[j].v < best_v;
            if (better) {
                out.push_back(w[j]);
                best_v = w[j].v;
            }
        }
        i = j;
    }
    return out;
}

struct Side {
    const PersistenceDiagram* D;
    const BlindStripSet* strips;
    std::vector<Witness> all;
};

std::optional<BoundCertificate> one_direction(const Side& X, const Side& Y, int degree, double eps) {
    std::optional<BoundCertificate> best;
    auto offer = [&](const Witness& x, double u2, double v2, int value) {
        double t = std::min(u2 - x.u, x.v - v2);
        if (!(t > 0.0)) return;
        if (best && !(t > best->bound)) return;
        auto c = pseudodistance_bound({degree, {x.u}, {x.v}, x.value}, {degree, {u2}, {v2}, value});
        if (c && c->useful) {
            c->first_outside = c->second_outside = true;
            best = c;
        }
    };
    auto fx = pareto(X.all, true);
    auto fy = pareto(Y.all, false);
    std::vector<double> ycoords = finite_coordinates(*Y.D, degree);
    const double W = Y.strips->W;
    for (const auto& x : fx) {
        for (const auto& y : fy)
            if (y.value < x.value) offer(x, y.u, y.v, y.value);
        // witnesses on the anti-diagonal through (u, v)
        std::vector<double> ts = {(x.v - x.u) / 2.0 - W - eps};
        for (double c : ycoords) {
            ts.push_back(c + W + eps - x.u);
            ts.push_back(x.v - (c - W - eps));
        }
        for (double t : ts) {
            if (!(t > 0.0)) continue;
            double u2 = x.u + t, v2 = x.v - t;
            if (!(u2 < v2) || classify(*Y.strips, u2, v2) != StripClass::Outside) continue;
            int value = pbn_query_1d(*Y.D, degree, u2, v2);
            if (value < x.value) offer(x, u2, v2, value);
        }
    }
    return best;
}

}  // namespace

std::optional<BoundCertificate> search_best_bound(const SearchShape& A, const SearchShape& B,
                                                  const std::vector<int>& degrees, const SearchSpec& spec) {
    std::optional<BoundCertificate> best;
    for (int degree : degrees) {
        const BlindStripSet& SA = strips_for(A, degree);
        const BlindStripSet& SB = strips_for(B, degree);
        std::vector<double> coords = finite_coordinates(A.diagram, degree);
        auto cb = finite_coordinates(B.diagram, degree);
        coords.insert(coords.end(), cb.begin(), cb.end());
        if (coords.empty()) continue;
        auto [lo_it, hi_it] = std::minmax_element(coords.begin(), coords.end());
        const double lo = *lo_it, hi = *hi_it;
        const double range = std::max(hi - lo, 1e-9);
        const double margin = spec.margin >= 0.0 ? spec.margin : 0.05 * range;
        const double eps = 1e-6 * range;

        auto candidates = [&](const BlindStripSet& S) {
            std::vector<double> c;
            for (double x : coords)
                for (double off : {S.W + margin, S.W + eps}) {
                    c.push_back(x - off);
                    c.push_back(x + off);
                }
            if (spec.grid > 1) {
                const double pad = S.W + margin;
                const double a = lo - 2 * pad, b = hi + 2 * pad;
                for (std::size_t i = 0; i < spec.grid; ++i)
                    c.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(spec.grid - 1));
            }
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
            return c;
        };
        auto witnesses = [&](const PersistenceDiagram& D, const BlindStripSet& S) {
            std::vector<Witness> w;
            auto c = candidates(S);
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = i + 1; j < c.size(); ++j)
                    if (classify(S, c[i], c[j]) == StripClass::Outside)
                        w.push_back({c[i], c[j], pbn_query_1d(D, degree, c[i], c[j])});
            return w;
        };
        Side sa{&A.diagram, &SA, witnesses(A.diagram, SA)};
        Side sb{&B.diagram, &SB, witnesses(B.diagram, SB)};
        for (int dir = 0; dir < 2; ++dir) {
            auto c = dir == 0 ? one_direction(sa, sb, degree, eps) : one_direction(sb, sa, degree, eps);
            if (c && (!best || c->bound > best->bound)) {
                c->first_is_a = dir == 0;
                best = c;
            }
        }
    }
    return best;
}

std::optional<BoundCertificate> search_best_bound_leaves(const FilteredComplex& A, double WA, const FilteredComplex& B,
                                                         double WB, const std::vector<int>& degrees,
                                                         const SearchSpec& spec) {
    if (A.n != B.n) throw ValidationError("shapes differ in filtration dimension");
    if (spec.pairs.empty()) throw ValidationError("no admissible pairs configured");
    std::optional<BoundCertificate> best;
    for (const auto& pair : spec.pairs) {
        SearchShape sa{reduce(foliation_reduce(A, pair)), {}};
        SearchShape sb{reduce(foliation_reduce(B, pair)), {}};
        for (int d : degrees) {
            sa.strips.push_back(blind_strips(sa.diagram, d, pair.leaf_width(WA)));
            sb.strips.push_back(blind_strips(sb.diagram, d, pair.leaf_width(WB)));
        }
        SearchSpec leaf = spec;
        leaf.pairs.clear();
        auto c = search_best_bound(sa, sb, degrees, leaf);
        if (!c) continue;
        PBNValue f = c->first, s = c->second;
        f.u = pair.point(f.u[0]), f.v = pair.point(f.v[0]);
        s.u = pair.point(s.u[0]), s.v = pair.point(s.v[0]);
        auto mapped = pseudodistance_bound(f, s);
        if (!mapped || !mapped->useful) continue;
        mapped->first_is_a = c->first_is_a;
        mapped->first_outside = mapped->second_outside = true;
        if (!best || mapped->bound > best->bound) best = mapped;
    }
    return best;
}

}  // namespace pbnest
