#pragma once

#include <string>
#include <utility>
#include <vector>

#include "homcov/extension.hpp"

namespace homcov {

// One recorded verification run. params and counts are ordered key/value
// lists so re-serialization is stable.
struct VerificationVerdict {
  std::string what;  // property1 | dual | depth | statement1 | bands
  std::string mode;  // exhaustive | certificate | random
  bool pass = false;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, std::string>> counts;
  std::string timestamp;  // ISO-8601 UTC, set when the verdict is recorded
};

// Everything the pipeline knows about one scene. Stages after the polygon
// are optional; has_* gates which blocks exist. All geometry is exact.
struct SceneDocument {
  std::string schema_version = "1";
  std::string source;  // free text: preset name or input path
  Polygon input_polygon;
  PreparedPolygon prep;
  bool has_config = false;
  Configuration config;
  bool flipped = false;      // provenance of config
  int delta_halvings = 0;    // provenance of config
  bool has_dual = false;
  DualScene dual;
  int drift_retries = 0;     // provenance of dual
  bool has_extension = false;
  Rat ext_eps;
  int ext_m = 1;
  BBox ext_region;
  ExtendedCover extension;
  std::vector<VerificationVerdict> verdicts;
};

// Canonical JSON text: 2-space indent, fixed key order, rationals as exact
// "n" / "n/d" strings, trailing newline. Re-serializing a parsed document
// reproduces the bytes.
std::string serialize_scene(const SceneDocument& doc);

// Inverse of serialize_scene. Raises BadInput on malformed JSON, an
// unsupported schema_version, or missing/ill-typed fields.
SceneDocument parse_scene(const std::string& text);

void write_scene_file(const std::string& path, const SceneDocument& doc);
SceneDocument read_scene_file(const std::string& path);

// Current time as "YYYY-MM-DDTHH:MM:SSZ".
std::string now_utc_iso8601();

}  // namespace homcov
