#ifndef COCONVEX_SVG_HPP
#define COCONVEX_SVG_HPP

#include <string>

#include "coconvex/coconvex_set.hpp"

namespace coconvex {

// SVG 1.1 rendering of a plane instance: cone boundary, the convex part
// A_bullet, the coconvex region A, the omega directions and the attained
// support lines (class "support", tangent to A_bullet). Throws
// UnsupportedPlotDimension when the instance is not 2-dimensional.
std::string render_svg(const CCoconvexSet& a, int size_px = 640);

}  // namespace coconvex

#endif
