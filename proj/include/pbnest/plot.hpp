#pragma once

#include <string>

#include "pbnest/certification.hpp"

namespace pbnest {

struct PlotWindow {
    double u0 = 0.0, u1 = 1.0;
    double v0 = 0.0, v1 = 1.0;
};

/// SVG of the piecewise-constant PBN regions of one degree, labelled with their values,
/// with the blind strips shaded and the diagonal drawn. Output bytes depend only on the inputs.
std::string plot_regions(const PersistenceDiagram& D, int degree, const BlindStripSet* strips, const PlotWindow& window,
                         const std::string& title = "");

}  // namespace pbnest
