#include "pbnest/plot.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pbnest/io.hpp"

namespace pbnest {

namespace {

struct P2 {
    double u, v;
};
using Poly = std::vector<P2>;

// Keeps the part of a convex polygon where a*u + b*v + c >= 0.
Poly clip(const Poly& in, double a, double b, double c) {
    Poly out;
    const std::size_t n = in.size();
    for (std::size_t i = 0; i < n; ++i) {
        const P2& p = in[i];
        const P2& q = in[(i + 1) % n];
        double fp = a * p.u + b * p.v + c, fq = a * q.u + b * q.v + c;
        if (fp >= 0) out.push_back(p);
        if ((fp >= 0) != (fq >= 0)) {
            double t = fp / (fp - fq);
            out.push_back({p.u + t * (q.u - p.u), p.v + t * (q.v - p.v)});
        }
    }
    return out;
}

Poly rect(double u0, double u1, double v0, double v1) { return {{u0, v0}, {u1, v0}, {u1, v1}, {u0, v1}}; }

Poly clip_to_window(Poly p, const PlotWindow& w) {
    p = clip(p, 1, 0, -w.u0);
    p = clip(p, -1, 0, w.u1);
    p = clip(p, 0, 1, -w.v0);
    p = clip(p, 0, -1, w.v1);
    return clip(p, -1, 1, 0);  // v >= u
}

double area(const Poly& p) {
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const P2& a = p[i];
        const P2& b = p[(i + 1) % p.size()];
        s += a.u * b.v - b.u * a.v;
    }
    return std::abs(s) / 2;
}

P2 centroid(const Poly& p) {
    double cu = 0, cv = 0, s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const P2& a = p[i];
        const P2& b = p[(i + 1) % p.size()];
        double cr = a.u * b.v - b.u * a.v;
        s += cr, cu += (a.u + b.u) * cr, cv += (a.v + b.v) * cr;
    }
    if (s == 0) {
        for (const auto& q : p) cu += q.u, cv += q.v;
        return {cu / p.size(), cv / p.size()};
    }
    return {cu / (3 * s), cv / (3 * s)};
}

const char* fill_for(int value) {
    static const char* palette[] = {"#f7f7f7", "#deebf7", "#c6dbef", "#9ecae1", "#6baed6", "#4292c6"};
    return palette[std::min(value, 5)];
}

constexpr double kSize = 440.0, kLeft = 56.0, kTop = 36.0;

struct Frame {
    PlotWindow w;
    double x(double u) const { return kLeft + (u - w.u0) / (w.u1 - w.u0) * kSize; }
    double y(double v) const { return kTop + (w.v1 - v) / (w.v1 - w.v0) * kSize; }
    std::string path(const Poly& p) const {
        std::string d;
        for (std::size_t i = 0; i < p.size(); ++i) {
            d += i ? " L" : "M";
            d += format_rounded(x(p[i].u)) + " " + format_rounded(y(p[i].v));
        }
        return d + " Z";
    }
};

std::string escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '<') o += "&lt;";
        else if (c == '>') o += "&gt;";
        else if (c == '&') o += "&amp;";
        else o += c;
    }
    return o;
}

}  // namespace

std::string plot_regions(const PersistenceDiagram& D, int degree, const BlindStripSet* strips, const PlotWindow& w,
                         const std::string& title) {
    if (!(w.u1 > w.u0) || !(w.v1 > w.v0) || !(w.v1 > w.u0) || !std::isfinite(w.u0 + w.u1 + w.v0 + w.v1))
        throw ValidationError("empty window");
    Frame F{w};

    std::vector<double> us = {w.u0, w.u1}, vs = {w.v0, w.v1};
    for (const auto& p : D.pairs(degree))
        for (double c : {p.birth, p.death}) {
            if (std::isfinite(c) && c > w.u0 && c < w.u1) us.push_back(c);
            if (std::isfinite(c) && c > w.v0 && c < w.v1) vs.push_back(c);
        }
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());

    const std::size_t nu = us.size() - 1, nv = vs.size() - 1;
    std::vector<Poly> cells(nu * nv);
    std::vector<int> value(nu * nv, -1);
    for (std::size_t a = 0; a < nu; ++a)
        for (std::size_t b = 0; b < nv; ++b) {
            Poly p = clip(rect(us[a], us[a + 1], vs[b], vs[b + 1]), -1, 1, 0);
            if (p.size() < 3 || area(p) <= 1e-12 * (w.u1 - w.u0) * (w.v1 - w.v0)) continue;
            P2 c = centroid(p);
            cells[a * nv + b] = p;
            value[a * nv + b] = pbn_query_1d(D, degree, c.u, c.v);
        }

    // regions: adjacent cells with equal values
    std::vector<std::size_t> parent(nu * nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t a = 0; a < nu; ++a)
        for (std::size_t b = 0; b < nv; ++b) {
            std::size_t k = a * nv + b;
            if (value[k] < 0) continue;
            if (a + 1 < nu && value[k + nv] == value[k]) parent[find(k + nv)] = find(k);
            if (b + 1 < nv && value[k + 1] == value[k]) parent[find(k + 1)] = find(k);
        }
    std::map<std::size_t, std::size_t> label_cell;  // region root -> largest cell
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (value[k] < 0) continue;
        auto r = find(k);
        auto it = label_cell.find(r);
        if (it == label_cell.end() || area(cells[k]) > area(cells[it->second])) label_cell[r] = k;
    }

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"540\" height=\"540\" viewBox=\"0 0 540 540\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"540\" height=\"540\" fill=\"white\"/>\n";
    if (!title.empty())
        s += "<text x=\"270\" y=\"22\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" +
             escape(title) + "</text>\n";

    s += "<g id=\"regions\" stroke=\"none\">\n";
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (value[k] < 0) continue;
        s += "<path d=\"" + F.path(cells[k]) + "\" fill=\"" + fill_for(value[k]) + "\"/>\n";
    }
    s += "</g>\n";

    if (strips) {
        s += "<g id=\"strips\" fill=\"#737373\" fill-opacity=\"0.35\" stroke=\"none\">\n";
        const double W = strips->W;
        for (const auto& seg : strips->segments) {
            Poly p;
            switch (seg.orientation) {
            case Segment::Orientation::Vertical:
                p = rect(seg.fixed - W, seg.fixed + W, std::max(seg.lo - W, w.v0 - 1), std::min(seg.hi + W, w.v1 + 1));
                break;
            case Segment::Orientation::Horizontal:
                p = rect(std::max(seg.lo - W, w.u0 - 1), std::min(seg.hi + W, w.u1 + 1), seg.fixed - W, seg.fixed + W);
                break;
            case Segment::Orientation::Diagonal:
                p = clip(rect(w.u0, w.u1, w.v0, w.v1), 1, -1, 2 * W);  // v <= u + 2W
                break;
            }
            p = clip_to_window(p, w);
            if (p.size() >= 3 && area(p) > 0) s += "<path d=\"" + F.path(p) + "\"/>\n";
        }
        s += "</g>\n";
    }

    s += "<g id=\"discontinuities\" stroke=\"#252525\" stroke-width=\"1\">\n";
    for (const auto& seg : discontinuity_set(D, degree)) {
        double a0, a1, b0, b1;
        if (seg.orientation == Segment::Orientation::Vertical) {
            if (seg.fixed < w.u0 || seg.fixed > w.u1) continue;
            a0 = a1 = seg.fixed;
            b0 = std::max({seg.lo, w.v0, seg.fixed}), b1 = std::min(seg.hi, w.v1);
        } else if (seg.orientation == Segment::Orientation::Horizontal) {
            if (seg.fixed < w.v0 || seg.fixed > w.v1) continue;
            b0 = b1 = seg.fixed;
            a0 = std::max(seg.lo, w.u0), a1 = std::min({seg.hi, w.u1, seg.fixed});
        } else {
            continue;
        }
        if (a0 > a1 || b0 > b1) continue;
        s += "<line x1=\"" + format_rounded(F.x(a0)) + "\" y1=\"" + format_rounded(F.y(b0)) + "\" x2=\"" +
             format_rounded(F.x(a1)) + "\" y2=\"" + format_rounded(F.y(b1)) + "\"/>\n";
    }
    s += "</g>\n";

    {
        double lo = std::max(w.u0, w.v0), hi = std::min(w.u1, w.v1);
        if (lo < hi)
            s += "<line id=\"diagonal\" x1=\"" + format_rounded(F.x(lo)) + "\" y1=\"" + format_rounded(F.y(lo)) +
                 "\" x2=\"" + format_rounded(F.x(hi)) + "\" y2=\"" + format_rounded(F.y(hi)) +
                 "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }

    s += "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">\n";
    for (const auto& [root, k] : label_cell) {
        const Poly& p = cells[k];
        double px = area(p) / ((w.u1 - w.u0) * (w.v1 - w.v0)) * kSize * kSize;
        if (px < 120.0) continue;
        P2 c = centroid(p);
        s += "<text x=\"" + format_rounded(F.x(c.u)) + "\" y=\"" + format_rounded(F.y(c.v) + 5) + "\">" +
             std::to_string(value[k]) + "</text>\n";
    }
    s += "</g>\n";

    s += "<g id=\"axes\" stroke=\"black\" fill=\"none\">\n";
    s += "<rect x=\"" + format_rounded(kLeft) + "\" y=\"" + format_rounded(kTop) + "\" width=\"" + format_rounded(kSize) +
         "\" height=\"" + format_rounded(kSize) + "\"/>\n";
    s += "</g>\n";
    s += "<g id=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int t = 0; t <= 4; ++t) {
        double u = w.u0 + (w.u1 - w.u0) * t / 4.0, v = w.v0 + (w.v1 - w.v0) * t / 4.0;
        s += "<text x=\"" + format_rounded(F.x(u)) + "\" y=\"" + format_rounded(kTop + kSize + 16) +
             "\" text-anchor=\"middle\">" + format_rounded(u) + "</text>\n";
        s += "<text x=\"" + format_rounded(kLeft - 6) + "\" y=\"" + format_rounded(F.y(v) + 4) +
             "\" text-anchor=\"end\">" + format_rounded(v) + "</text>\n";
    }
    s += "<text x=\"" + format_rounded(kLeft + kSize / 2) + "\" y=\"" + format_rounded(kTop + kSize + 34) +
         "\" text-anchor=\"middle\">u</text>\n";
    s += "<text x=\"16\" y=\"" + format_rounded(kTop + kSize / 2) + "\" text-anchor=\"middle\">v</text>\n";
    s += "</g>\n</svg>\n";
    return s;
}

}  // namespace pbnest
