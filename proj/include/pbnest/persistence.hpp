#pragma once

#include <vector>

#include "pbnest/filtration.hpp"

namespace pbnest {

struct PersistencePair {
    double birth = 0.0;
    double death = kInf;
    bool essential() const noexcept { return std::isinf(death); }
    friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

/// Per-degree multisets of (birth, death) pairs. Zero-length pairs are never stored.
class PersistenceDiagram {
public:
    void add(int degree, double birth, double death);
    const std::vector<PersistencePair>& pairs(int degree) const;
    int max_degree() const noexcept { return static_cast<int>(pairs_.size()) - 1; }
    std::size_t essential_count(int degree) const;
    bool empty() const noexcept;
    /// Sorts every degree by (birth, death) so that diagrams compare by value.
    void normalize();
    friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;

private:
    std::vector<std::vector<PersistencePair>> pairs_;
};

/// One PBN evaluation: the rank of H_degree at u into v.
struct PBNValue {
    int degree = 0;
    Vec u, v;
    int value = 0;
};

/// Boundary-matrix reduction over Z/2 of a one-parameter filtered complex.
PersistenceDiagram reduce(const FilteredComplex& F);

/// #{(b,d) in degree i : b <= u and d > v}. Throws "not in Δ⁺" unless u < v.
int pbn_query_1d(const PersistenceDiagram& D, int degree, double u, double v);

/// rank H_i(K_u) -> H_i(K_v) for a multi-filtered complex. Throws "not in Δ⁺" unless u ≺ v.
int pbn_query_multi(const FilteredComplex& F, int degree, const Vec& u, const Vec& v);

struct Segment {
    enum class Orientation { Vertical, Horizontal, Diagonal };
    Orientation orientation = Orientation::Vertical;
    double fixed = 0.0;  // u for vertical, v for horizontal, unused for the diagonal
    double lo = -kInf;   // range of the free coordinate
    double hi = kInf;
    bool lo_closed = false;
    bool hi_closed = false;
    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Lines across which the PBN of degree i may jump, plus the diagonal.
std::vector<Segment> discontinuity_set(const PersistenceDiagram& D, int degree);

/// Betti numbers of a complex over Z/2, degrees 0..dimension.
std::vector<int> betti_numbers(const SimplicialComplex& K);

}  // namespace pbnest
