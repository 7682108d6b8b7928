#pragma once

#include <optional>
#include <vector>

#include "pbnest/certification.hpp"

namespace pbnest {

struct BoundCertificate {
    int degree = 0;
    PBNValue first;   // the shape with the larger PBN, at (u, v)
    PBNValue second;  // the other shape, at (u', v')
    double bound = 0.0;
    bool useful = false;
    bool first_is_a = true;  // set by the search: whether `first` belongs to shape A
    bool first_outside = false;
    bool second_outside = false;
};

/// Lower bound on the natural pseudodistance from β_first(u,v) > β_second(u',v'):
/// min{min_r (u'_r − u_r), min_r (v_r − v'_r)}. Nothing when β_first ≤ β_second.
std::optional<BoundCertificate> pseudodistance_bound(const PBNValue& first, const PBNValue& second);

struct SearchSpec {
    double margin = -1.0;         // extra offset beyond the strip width; negative means 0.05 of the value range
    std::size_t grid = 0;         // optional uniform grid of candidate coordinates per axis
    std::vector<AdmissiblePair> pairs;  // leaves searched for two-parameter inputs
};

/// Shape data for a one-parameter search: the proxy diagram and its strips for each degree searched.
struct SearchShape {
    PersistenceDiagram diagram;
    std::vector<BlindStripSet> strips;  // one per degree, matched by BlindStripSet::degree
};

/// Best positive bound over candidate witnesses classified outside the strips of their shape,
/// in both directions. Nothing when no positive bound is found.
std::optional<BoundCertificate> search_best_bound(const SearchShape& A, const SearchShape& B,
                                                  const std::vector<int>& degrees, const SearchSpec& spec = {});

/// Two-parameter search: each configured leaf is reduced to one parameter, searched with strip
/// half-widths mapped onto the leaf, and the witnesses are mapped back.
std::optional<BoundCertificate> search_best_bound_leaves(const FilteredComplex& A, double WA, const FilteredComplex& B,
                                                         double WB, const std::vector<int>& degrees,
                                                         const SearchSpec& spec);

}  // namespace pbnest
