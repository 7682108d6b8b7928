#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pbnest/io.hpp"
#include "pbnest/oracle.hpp"

namespace pbnest {

/// Seed for general-position jitter: PBN_SEED when set, else 42.
std::uint64_t jitter_seed();

// Fixture builders. Every point set is a closed formula of its index.

/// 64 points on the radius-4 circle at angles 2πj/64, radius 0.5, τ = 4.
BallCover circle64_cover();
/// 96 points at angles πj/48 and radii 4 − (0, 0.1, 0.2, 0.1)[j mod 4]; radius 0.55, offset 0.25, τ = 4.
BallCover circle_near96_cover();
/// Nine unit balls at angles kπ/16 (k = 0..8) on radii 4 + 0.05(−1)^k.
BallCover quarter9_cover();

/// Counter-clockwise vertices of the bean polygon and the fillet radius that rounds it.
std::vector<Point> bean_polygon();
double bean_fillet();
ClosedCurve bean_curve();
/// Landmarks at equal arc-length spacing, ceil(L / 0.85δ) of them, first at arc length 0.
BallCover curve_cover(const ClosedCurve& curve, double delta, double tau);

struct ColorShape {
    BallCover cover;
    FilteringFunction f;
};
/// 80 points on the unit circle; colours trace the square (−0.4,0) (−0.4,0.8) (0.4,0.8) (0.4,0).
ColorShape color_circle_x();
/// 80 points on the unit circle; colours run twice around the thin pentagon
/// (−0.4,0.04) (0.36,0.8) (0.4,0.8) (0.4,0.76) (−0.36,0) at equal max-norm spacing.
ColorShape color_circle_y();
AdmissiblePair color_pair();

/// Dual complex of the preconditioned landmarks with the vertex-max filtration.
FilteredComplex dual_shape_filtration(const BallCover& cover, const FilteringFunction& f);
PersistenceDiagram dual_shape_diagram(const BallCover& cover, const FilteringFunction& f);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ScenarioReport {
    std::string name;
    std::vector<Check> checks;
    json details = json::object();
    bool passed() const;
    json to_json() const;
};

std::vector<std::string> scenario_names();
/// Runs a shipped scenario; writes inputs, outputs and report.json under `out` unless it is empty.
ScenarioReport run_scenario(const std::string& name, const std::filesystem::path& out);

}  // namespace pbnest
