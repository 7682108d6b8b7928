#include "pbnest/certification.hpp"

#include <algorithm>

namespace pbnest {

int regime_multiplier(Regime r) { return r == Regime::DualShape ? 2 : 1; }

std::string to_string(Regime r) {
    switch (r) {
    case Regime::OnManifold: return "on-manifold";
    case Regime::NearManifold: return "near-manifold";
    case Regime::DualShape: return "dual-shape";
    }
    return "on-manifold";
}

Regime regime_from_string(const std::string& s) {
    if (s == "on-manifold") return Regime::OnManifold;
    if (s == "near-manifold") return Regime::NearManifold;
    if (s == "dual-shape") return Regime::DualShape;
    throw ValidationError("unknown regime: " + s);
}

int ProxyPbn::query(int degree, const Vec& u, const Vec& v) const {
    if (u.size() != n_ || v.size() != n_) throw ValidationError("query has wrong number of components");
    if (const auto* D = std::get_if<PersistenceDiagram>(&data_)) return pbn_query_1d(*D, degree, u[0], v[0]);
    return pbn_query_multi(std::get<FilteredComplex>(data_), degree, u, v);
}

namespace {

double widening(const OmegaVector& omega, Regime regime, double extra) {
    if (!(extra >= 0.0)) throw ValidationError("negative extra slack");
    return regime_multiplier(regime) * omega.omega + extra;
}

Vec shift(const Vec& x, double by) {
    Vec out = x;
    for (double& c : out) c += by;
    return out;
}

bool strictly_below(const Vec& a, const Vec& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (!(a[j] < b[j])) return false;
    return true;
}

bool below(const Vec& a, const Vec& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (!(a[j] <= b[j])) return false;
    return true;
}

}  // namespace

SandwichBound sandwich(const ProxyPbn& proxy, int degree, const Vec& u, const Vec& v, const OmegaVector& omega,
                       Regime regime, double extra) {
    if (u.size() != proxy.n() || v.size() != proxy.n()) throw ValidationError("query has wrong number of components");
    const double k = widening(omega, regime, extra);
    if (!strictly_below(shift(u, k), shift(v, -k))) throw ValidationError("query inside forbidden diagonal band");
    SandwichBound s;
    s.degree = degree;
    s.u = u;
    s.v = v;
    s.slack = omega;
    s.regime = regime;
    s.extra = extra;
    s.lower = proxy.query(degree, shift(u, -k), shift(v, k));
    s.upper = proxy.query(degree, shift(u, k), shift(v, -k));
    return s;
}

std::optional<int> equality_certificate(const ProxyPbn& proxy, int degree, const Vec& u, const Vec& v,
                                        const OmegaVector& omega, Regime regime, double extra) {
    SandwichBound s = sandwich(proxy, degree, u, v, omega, regime, extra);
    if (!s.exact()) return std::nullopt;
    return s.lower;
}

std::optional<int> box_certificate(const ProxyPbn& proxy, int degree, const Vec& u, const Vec& u_prime, const Vec& v,
                                   const Vec& v_prime, const OmegaVector& omega, Regime regime, double extra) {
    const double k = widening(omega, regime, extra);
    if (!below(shift(u, 2 * k), u_prime) || !strictly_below(u_prime, v) || !below(shift(v, 2 * k), v_prime))
        throw ValidationError("query inside forbidden diagonal band");
    int a = proxy.query(degree, u, v_prime);
    int b = proxy.query(degree, u_prime, v);
    if (a != b) return std::nullopt;
    return a;
}

namespace {

double gap_to_interval(double x, double lo, double hi) {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
}

}  // namespace

double BlindStripSet::distance(double u, double v) const {
    double best = kInf;
    for (const auto& s : segments) {
        double d;
        switch (s.orientation) {
        case Segment::Orientation::Vertical:
            d = std::max(std::abs(u - s.fixed), gap_to_interval(v, s.lo, s.hi));
            break;
        case Segment::Orientation::Horizontal:
            d = std::max(std::abs(v - s.fixed), gap_to_interval(u, s.lo, s.hi));
            break;
        case Segment::Orientation::Diagonal:
            d = std::abs(v - u) / 2.0;
            break;
        }
        best = std::min(best, d);
    }
    return best;
}

BlindStripSet blind_strips(const PersistenceDiagram& D, int degree, double W) {
    if (!(W >= 0.0) || !std::isfinite(W)) throw ValidationError("invalid strip half-width");
    BlindStripSet S;
    S.degree = degree;
    S.W = W;
    S.segments = discontinuity_set(D, degree);
    return S;
}

StripClass classify(const BlindStripSet& strips, double u, double v) {
    if (!(u < v)) throw ValidationError("not in Δ⁺");
    return strips.distance(u, v) > strips.W ? StripClass::Outside : StripClass::Inside;
}

}  // namespace pbnest
