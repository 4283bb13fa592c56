#pragma once

#include <string>
#include <vector>

#include "homcov/geom.hpp"

namespace homcov {

// Built-in generator polygons. Raises BadInput on an unknown name.
Polygon preset_polygon(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace homcov
