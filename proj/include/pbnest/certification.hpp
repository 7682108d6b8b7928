#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pbnest/persistence.hpp"

namespace pbnest {

enum class Regime { OnManifold, NearManifold, DualShape };

/// Slack multiplier on ω: 1 for ball unions, 2 when the dual shape stands in for the union.
int regime_multiplier(Regime r);
std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

/// PBNs of the computable stand-in: a one-parameter diagram or a multi-filtered complex.
class ProxyPbn {
public:
    ProxyPbn(PersistenceDiagram D) : data_(std::move(D)), n_(1) {}
    ProxyPbn(FilteredComplex F) : n_(F.n) { data_ = std::move(F); }

    std::size_t n() const noexcept { return n_; }
    int query(int degree, const Vec& u, const Vec& v) const;
    const PersistenceDiagram* diagram() const { return std::get_if<PersistenceDiagram>(&data_); }

private:
    std::variant<PersistenceDiagram, FilteredComplex> data_;
    std::size_t n_;
};

struct SandwichBound {
    int degree = 0;
    Vec u, v;
    int lower = 0;
    int upper = 0;
    OmegaVector slack;
    Regime regime = Regime::OnManifold;
    double extra = 0.0;  // additional widening on top of k·Ω
    bool exact() const noexcept { return lower == upper; }
};

/// β_proxy(u − kω, v + kω) ≤ β(u, v) ≤ β_proxy(u + kω, v − kω). `extra` widens kω further.
/// Throws "query inside forbidden diagonal band" unless u + kω ≺ v − kω.
SandwichBound sandwich(const ProxyPbn& proxy, int degree, const Vec& u, const Vec& v, const OmegaVector& omega,
                       Regime regime, double extra = 0.0);

std::optional<int> equality_certificate(const ProxyPbn& proxy, int degree, const Vec& u, const Vec& v,
                                        const OmegaVector& omega, Regime regime, double extra = 0.0);

/// Box form: with corners u ≺ u' ≺ v ≺ v' separated by at least 2kω, a common value of
/// β_proxy(u, v') and β_proxy(u', v) is the exact value on every (ū, v̄) with
/// u + kω ⪯ ū ⪯ u' − kω and v + kω ⪯ v̄ ⪯ v' − kω.
std::optional<int> box_certificate(const ProxyPbn& proxy, int degree, const Vec& u, const Vec& u_prime, const Vec& v,
                                   const Vec& v_prime, const OmegaVector& omega, Regime regime, double extra = 0.0);

enum class StripClass { Inside, Outside };

/// Max-norm W-neighbourhood of the proxy's discontinuity lines and of the diagonal.
struct BlindStripSet {
    int degree = 0;
    double W = 0.0;
    std::vector<Segment> segments;

    double total_width() const noexcept { return 2.0 * W; }
    /// Max-norm distance from (u, v) to the nearest segment or to the diagonal.
    double distance(double u, double v) const;
};

BlindStripSet blind_strips(const PersistenceDiagram& D, int degree, double W);

/// Throws "not in Δ⁺" unless u < v.
StripClass classify(const BlindStripSet& strips, double u, double v);

}  // namespace pbnest
