#pragma once

// Vector drawings of labelled points and pictures on the weight lattice.
// Lattice point (a, b) sits at (a + b/2, b sqrt(3)/2), so w1 points right
// and w2 at sixty degrees.

#include "a2bill/dataio.hpp"
#include "a2bill/dynamics.hpp"

#include <string>

namespace a2bill {

enum class RenderFormat { svg, tikz };

RenderFormat parse_render_format(const std::string& name);

struct RenderOptions {
    RenderFormat format = RenderFormat::svg;
    bool show_seeds = false;
    /// Type III merges red, type II merges blue.
    bool color_merges = false;
    double unit = 40.0;
};

std::string render(const PointMultiset& points, const RenderOptions& opts);
std::string render(const Picture& pic, const RenderOptions& opts);

} // namespace a2bill
