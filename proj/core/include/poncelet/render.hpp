#pragma once

#include <string>

namespace poncelet {

// Standalone SVG 1.1 picture of a trajectory document: wall quadrics,
// caustics, and the trajectory polyline.  `projection` picks the coordinate
// plane for d = 3 input ("xy", "xz" or "yz"); ignored for d = 2.
std::string render_trajectory_svg(const std::string& trajectory_json,
                                  const std::string& projection = "xy");

}  // namespace poncelet
