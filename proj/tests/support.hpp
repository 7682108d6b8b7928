#pragma once

#include <algorithm>
#include <numbers>
#include <random>
#include <set>

#include "pbnest/comparison.hpp"
#include "pbnest/io.hpp"
#include "pbnest/oracle.hpp"
#include "pbnest/scenarios.hpp"

namespace testsupport {

using namespace pbnest;

inline PointCloud circle_points(std::size_t n, double r, double phase = 0.0) {
    std::vector<Point> pts;
    for (std::size_t j = 0; j < n; ++j) {
        double a = phase + 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return PointCloud(2, std::move(pts));
}

inline PointCloud random_points(std::mt19937_64& rng, std::size_t n, double side) {
    std::uniform_real_distribution<double> U(0.0, side);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({U(rng), U(rng)});
    return PointCloud(2, std::move(pts));
}

// Random complex on nv vertices: closure of a few random simplices of dimension up to 3.
inline SimplicialComplex random_complex(std::mt19937_64& rng, std::size_t nv) {
    std::uniform_int_distribution<std::size_t> count(1, 2 * nv);
    std::uniform_int_distribution<int> dim(1, 3);
    std::vector<Simplex> tops;
    std::vector<std::uint32_t> ids(nv);
    for (std::uint32_t i = 0; i < nv; ++i) ids[i] = i;
    for (std::size_t k = count(rng); k-- > 0;) {
        std::shuffle(ids.begin(), ids.end(), rng);
        std::size_t d = std::min<std::size_t>(static_cast<std::size_t>(dim(rng)) + 1, nv);
        Simplex s(ids.begin(), ids.begin() + static_cast<long>(d));
        std::sort(s.begin(), s.end());
        tops.push_back(s);
    }
    return SimplicialComplex::from_simplices(nv, tops);
}

// Vertex values on a small integer grid so that ties are common.
inline FilteredComplex random_filtered(std::mt19937_64& rng, std::size_t max_vertices, std::size_t n) {
    std::uniform_int_distribution<std::size_t> nvd(1, max_vertices);
    std::uniform_int_distribution<int> val(0, 4);
    std::size_t nv = nvd(rng);
    auto K = random_complex(rng, nv);
    std::vector<Vec> vv(nv, Vec(n));
    for (auto& v : vv)
        for (auto& x : v) x = val(rng);
    return filtered_from_vertices(std::move(K), vv);
}

// Sorted distinct coordinates of one component, with midpoints and both ends padded.
inline std::vector<double> probe_values(const std::vector<double>& raw) {
    std::set<double> s(raw.begin(), raw.end());
    std::vector<double> v(s.begin(), s.end()), out;
    if (v.empty()) return {0.0};
    out.push_back(v.front() - 1.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(v[i]);
        if (i + 1 < v.size()) out.push_back((v[i] + v[i + 1]) / 2);
    }
    out.push_back(v.back() + 1.0);
    return out;
}

inline PersistenceDiagram random_diagram(std::mt19937_64& rng, int degrees, std::size_t pairs) {
    std::uniform_real_distribution<double> U(0.0, 5.0);
    std::bernoulli_distribution essential(0.2);
    PersistenceDiagram D;
    for (int d = 0; d < degrees; ++d)
        for (std::size_t k = 0; k < pairs; ++k) {
            double b = U(rng), e = U(rng);
            if (b > e) std::swap(b, e);
            D.add(d, b, essential(rng) ? kInf : e);
        }
    D.normalize();
    return D;
}

}  // namespace testsupport
