#pragma once

#include <string>

#include "homcov/scene_io.hpp"

namespace homcov {

struct RenderOptions {
  std::string view;  // polygon | config | dual | extension
  bool labels = false;
};

// Deterministic SVG 1.1 document for one view of the scene: fixed element
// order, no timestamps, coordinates printed at 12 significant digits (the
// only lossy step). Raises BadInput on an unknown view or when the stage the
// view depends on is missing from the document.
std::string render_scene_svg(const SceneDocument& doc, const RenderOptions& opt);

void write_svg_file(const std::string& path, const std::string& svg);

}  // namespace homcov
