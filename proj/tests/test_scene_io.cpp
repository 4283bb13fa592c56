#include <cstdio>
#include <string>

#include "doctest.h"
#include "homcov/duality.hpp"
#include "homcov/errors.hpp"
#include "homcov/extension.hpp"
#include "homcov/presets.hpp"
#include "homcov/scene_io.hpp"

using namespace homcov;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::BadInput;
}

SceneDocument full_document() {
  SceneDocument doc;
  doc.source = "preset:diamond";
  doc.input_polygon = preset_polygon("diamond");
  DualBuild db = build_dual(prepare(doc.input_polygon), 2, 2, rat(1, 40));
  doc.prep = db.build.prep;
  doc.has_config = true;
  doc.config = db.build.config;
  doc.flipped = db.build.flipped;
  doc.delta_halvings = db.build.delta_halvings;
  doc.has_dual = true;
  doc.dual = db.scene;
  doc.drift_retries = db.drift_retries;

  ExtensionParams p;
  p.eps = rat(1, 10);
  p.region = BBox{rat(-1, 2), rat(-1, 2), rat(1, 2), rat(1, 2)};
  p.m = 1;
  doc.has_extension = true;
  doc.ext_eps = p.eps;
  doc.ext_m = p.m;
  doc.ext_region = p.region;
  doc.extension = extend_cover(doc.prep.base, doc.dual, p);

  VerificationVerdict v;
  v.what = "dual";
  v.mode = "exhaustive";
  v.pass = true;
  v.params = {{"k", "2"}, {"l", "2"}};
  v.counts = {{"colorings", "32"}, {"points", "6"}};
  v.timestamp = "2026-08-25T00:00:00Z";
  doc.verdicts.push_back(v);
  return doc;
}

}  // namespace

TEST_CASE("serialize then parse then serialize is byte-identical") {
  SceneDocument doc = full_document();
  std::string text = serialize_scene(doc);
  SceneDocument back = parse_scene(text);
  CHECK(serialize_scene(back) == text);
}

TEST_CASE("parsed fields equal the originals") {
  SceneDocument doc = full_document();
  SceneDocument back = parse_scene(serialize_scene(doc));
  CHECK(back.schema_version == "1");
  CHECK(back.source == doc.source);
  CHECK(back.input_polygon == doc.input_polygon);
  CHECK(back.prep.base.verts == doc.prep.base.verts);
  CHECK(back.prep.base.neg_verts == doc.prep.base.neg_verts);
  CHECK(back.prep.a_index == doc.prep.a_index);
  CHECK(back.prep.support_quad == doc.prep.support_quad);
  CHECK(back.prep.wedges.a_d1 == doc.prep.wedges.a_d1);
  CHECK(back.prep.norm.linear.d == doc.prep.norm.linear.d);
  REQUIRE(back.has_config);
  CHECK(back.config.k == 2);
  CHECK(back.config.delta == doc.config.delta);
  REQUIRE(back.config.copies.size() == doc.config.copies.size());
  for (std::size_t i = 0; i < doc.config.copies.size(); ++i) {
    CHECK(back.config.copies[i].scale == doc.config.copies[i].scale);
    CHECK(back.config.copies[i].anchor == doc.config.copies[i].anchor);
  }
  CHECK(back.config.a_apices == doc.config.a_apices);
  REQUIRE(back.has_dual);
  CHECK(back.dual.m == doc.dual.m);
  CHECK(back.dual.line_a_y == doc.dual.line_a_y);
  REQUIRE(back.dual.points.size() == doc.dual.points.size());
  for (std::size_t i = 0; i < doc.dual.points.size(); ++i) {
    CHECK(back.dual.points[i].q == doc.dual.points[i].q);
    CHECK(back.dual.points[i].a_side == doc.dual.points[i].a_side);
    CHECK(back.dual.points[i].wedge == doc.dual.points[i].wedge);
  }
  REQUIRE(back.has_extension);
  CHECK(back.ext_eps == doc.ext_eps);
  CHECK(back.ext_region.x1 == doc.ext_region.x1);
  CHECK(back.extension.translates.size() == doc.extension.translates.size());
  CHECK(back.extension.report.min_depth == doc.extension.report.min_depth);
  CHECK(back.extension.report.witness == doc.extension.report.witness);
  CHECK(back.extension.report.cells_checked == doc.extension.report.cells_checked);
  REQUIRE(back.verdicts.size() == 1);
  CHECK(back.verdicts[0].what == "dual");
  CHECK(back.verdicts[0].params == doc.verdicts[0].params);
  CHECK(back.verdicts[0].counts == doc.verdicts[0].counts);
  CHECK(back.verdicts[0].timestamp == doc.verdicts[0].timestamp);
}

TEST_CASE("a document without optional stages round-trips") {
  SceneDocument doc;
  doc.source = "preset:pentagon";
  doc.input_polygon = preset_polygon("pentagon");
  doc.prep = prepare(doc.input_polygon);
  std::string text = serialize_scene(doc);
  SceneDocument back = parse_scene(text);
  CHECK(!back.has_config);
  CHECK(!back.has_dual);
  CHECK(!back.has_extension);
  CHECK(back.verdicts.empty());
  CHECK(serialize_scene(back) == text);
}

TEST_CASE("rationals appear as exact fraction strings") {
  SceneDocument doc;
  doc.source = "preset:diamond";
  doc.input_polygon = preset_polygon("diamond");
  BuildResult br = build_configuration(prepare(doc.input_polygon), 2, 2, rat(1, 40));
  doc.prep = br.prep;
  doc.has_config = true;
  doc.config = br.config;
  std::string text = serialize_scene(doc);
  CHECK(text.find("\"1/40\"") != std::string::npos);
  CHECK(text.find("e-") == std::string::npos);  // no scientific notation
  SceneDocument back = parse_scene(text);
  CHECK(back.config.delta == rat(1, 40));
}

TEST_CASE("malformed scenes are rejected as bad input") {
  SceneDocument doc;
  doc.source = "x";
  doc.input_polygon = preset_polygon("diamond");
  doc.prep = prepare(doc.input_polygon);
  std::string good = serialize_scene(doc);

  CHECK(code_of([] { parse_scene("{"); }) == Errc::BadInput);
  CHECK(code_of([] { parse_scene("[]"); }) == Errc::BadInput);

  std::string wrong_schema = good;
  wrong_schema.replace(wrong_schema.find("\"schema_version\": \"1\""),
                       std::string("\"schema_version\": \"1\"").size(),
                       "\"schema_version\": \"9\"");
  CHECK(code_of([&] { parse_scene(wrong_schema); }) == Errc::BadInput);

  std::string bad_rat = good;
  std::size_t at = bad_rat.find("\"1\"");
  bad_rat.replace(at, 3, "\"x\"");
  CHECK(code_of([&] { parse_scene(bad_rat); }) == Errc::BadInput);

  CHECK(code_of([] {
          parse_scene("{\"schema_version\":\"1\",\"verdicts\":[]}");
        }) == Errc::BadInput);
}

TEST_CASE("scene files round-trip on disk") {
  SceneDocument doc = full_document();
  const char* path = "scene_io_roundtrip_tmp.json";
  write_scene_file(path, doc);
  SceneDocument back = read_scene_file(path);
  CHECK(serialize_scene(back) == serialize_scene(doc));
  std::remove(path);
  CHECK(code_of([&] { read_scene_file(path); }) == Errc::BadInput);
}

TEST_CASE("timestamps use the documented format") {
  std::string t = now_utc_iso8601();
  REQUIRE(t.size() == 20);
  CHECK(t[4] == '-');
  CHECK(t[7] == '-');
  CHECK(t[10] == 'T');
  CHECK(t[13] == ':');
  CHECK(t[16] == ':');
  CHECK(t[19] == 'Z');
  CHECK(t.substr(0, 3) == "202");
}

#include "homcov/svg.hpp"

namespace {

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0, at = 0;
  while ((at = hay.find(needle, at)) != std::string::npos) {
    ++n;
    at += needle.size();
  }
  return n;
}

}  // namespace

TEST_CASE("svg views are deterministic and reflect element counts") {
  SceneDocument doc = full_document();
  for (const char* view : {"polygon", "config", "dual", "extension"}) {
    RenderOptions opt;
    opt.view = view;
    std::string a = render_scene_svg(doc, opt);
    std::string b = render_scene_svg(doc, opt);
    CHECK(a == b);
    CHECK(a.rfind("<?xml", 0) == 0);
    CHECK(a.find("</svg>") != std::string::npos);
  }
  RenderOptions opt;
  opt.view = "config";
  std::string cfg = render_scene_svg(doc, opt);
  // 5 copies + 6 wedge cones
  CHECK(count_of(cfg, "<polygon") == 11);
  opt.view = "dual";
  std::string dual = render_scene_svg(doc, opt);
  CHECK(count_of(dual, "<polygon") == 5);
  CHECK(count_of(dual, "<path") == 6);          // one cross per point
  CHECK(count_of(dual, "stroke-dasharray") == 2);  // the two band lines
  opt.view = "extension";
  std::string ext = render_scene_svg(doc, opt);
  CHECK(count_of(ext, "<polygon") == doc.extension.translates.size() + 5 + 1);
}

TEST_CASE("svg labels are opt-in") {
  SceneDocument doc = full_document();
  RenderOptions plain{"polygon", false};
  RenderOptions labeled{"polygon", true};
  std::string a = render_scene_svg(doc, plain);
  std::string b = render_scene_svg(doc, labeled);
  CHECK(count_of(a, "<text") == 0);
  CHECK(count_of(b, "<text") >= 6);  // v_a v_b v_l v_r S Q
  CHECK(b.find(">v_a<") != std::string::npos);
  CHECK(b.find(">Q<") != std::string::npos);
}

TEST_CASE("svg rendering rejects unknown views and missing stages") {
  SceneDocument doc;
  doc.source = "preset:diamond";
  doc.input_polygon = preset_polygon("diamond");
  doc.prep = prepare(doc.input_polygon);
  RenderOptions opt;
  opt.view = "sideways";
  CHECK(code_of([&] { render_scene_svg(doc, opt); }) == Errc::BadInput);
  opt.view = "config";
  CHECK(code_of([&] { render_scene_svg(doc, opt); }) == Errc::BadInput);
  opt.view = "dual";
  CHECK(code_of([&] { render_scene_svg(doc, opt); }) == Errc::BadInput);
  opt.view = "extension";
  CHECK(code_of([&] { render_scene_svg(doc, opt); }) == Errc::BadInput);
}
