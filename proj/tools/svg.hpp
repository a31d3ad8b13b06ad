#pragma once

#include <string>
#include <vector>

#include "vortexsphere/catalog.hpp"
#include "vortexsphere/orbits.hpp"

namespace vortexsphere::tools {

// Orthographic projection of a phase portrait onto the plane normal to the
// view axis ('x', 'y', or 'z'). Curves on the far hemisphere are drawn at
// reduced opacity; equilibrium markers follow the manifest color key.
std::string render_portrait_svg(const PhasePortrait& portrait,
                                const std::vector<EquilibriumRecord>& records,
                                char view_axis);

const char* curve_color(CurveClass c);

}  // namespace vortexsphere::tools
