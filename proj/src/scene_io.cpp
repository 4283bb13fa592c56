#include "homcov/scene_io.hpp"

#include <ctime>
#include <fstream>
#include <sstream>

#include "homcov/errors.hpp"
#include "json.hpp"

namespace homcov {

namespace {

using Json = nlohmann::ordered_json;

Json j_rat(const Rat& q) { return rat_str(q); }

Json j_pt(const Pt& p) { return Json::array({rat_str(p.x), rat_str(p.y)}); }

Json j_poly(const Polygon& poly) {
  Json a = Json::array();
  for (const Pt& p : poly) a.push_back(j_pt(p));
  return a;
}

Json j_homothet(const Homothet& h) {
  Json j;
  j["scale"] = rat_str(h.scale);
  j["anchor"] = j_pt(h.anchor);
  j["reflected"] = h.reflected;
  return j;
}

Json j_kv(const std::vector<std::pair<std::string, std::string>>& kv) {
  Json j = Json::object();
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    fail(Errc::BadInput, std::string("scene is missing field '") + key + "'");
  return *it;
}

Rat p_rat(const Json& j) {
  if (!j.is_string()) fail(Errc::BadInput, "rational field must be a string");
  return rat_parse(j.get<std::string>());
}

Pt p_pt(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    fail(Errc::BadInput, "point must be a [x, y] pair");
  return Pt(p_rat(j[0]), p_rat(j[1]));
}

Polygon p_poly(const Json& j) {
  if (!j.is_array()) fail(Errc::BadInput, "vertex list must be an array");
  Polygon out;
  for (const Json& e : j) out.push_back(p_pt(e));
  return out;
}

Homothet p_homothet(const Json& j) {
  Homothet h;
  h.scale = p_rat(field(j, "scale"));
  h.anchor = p_pt(field(j, "anchor"));
  h.reflected = field(j, "reflected").get<bool>();
  return h;
}

std::vector<std::pair<std::string, std::string>> p_kv(const Json& j) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out.emplace_back(it.key(), it.value().get<std::string>());
  return out;
}

Json scene_to_json(const SceneDocument& doc) {
  Json j;
  j["schema_version"] = doc.schema_version;

  Json poly;
  poly["source"] = doc.source;
  poly["input_vertices"] = j_poly(doc.input_polygon);
  Json norm;
  norm["pre_translate"] = j_pt(doc.prep.norm.pre_translate);
  norm["linear"] = Json::array(
      {Json::array({rat_str(doc.prep.norm.linear.a), rat_str(doc.prep.norm.linear.b)}),
       Json::array({rat_str(doc.prep.norm.linear.c), rat_str(doc.prep.norm.linear.d)})});
  norm["reflected"] = doc.prep.norm.reflected;
  norm["direction"] = j_pt(doc.prep.direction);
  poly["normalization"] = norm;
  poly["base_vertices"] = j_poly(doc.prep.base.verts);
  poly["a_index"] = doc.prep.a_index;
  poly["b_index"] = doc.prep.b_index;
  poly["support_quad"] = j_poly(doc.prep.support_quad);
  Json wt;
  wt["a_d1"] = j_pt(doc.prep.wedges.a_d1);
  wt["a_d2"] = j_pt(doc.prep.wedges.a_d2);
  wt["b_d1"] = j_pt(doc.prep.wedges.b_d1);
  wt["b_d2"] = j_pt(doc.prep.wedges.b_d2);
  poly["wedge_templates"] = wt;
  j["polygon"] = poly;

  if (doc.has_config) {
    Json c;
    c["k"] = doc.config.k;
    c["l"] = doc.config.l;
    c["delta"] = j_rat(doc.config.delta);
    c["disc_center"] = j_pt(doc.config.disc_center);
    Json copies = Json::array();
    for (const Homothet& h : doc.config.copies) copies.push_back(j_homothet(h));
    c["copies"] = copies;
    c["a_apices"] = j_poly(doc.config.a_apices);
    c["b_apices"] = j_poly(doc.config.b_apices);
    Json prov;
    prov["flipped"] = doc.flipped;
    prov["delta_halvings"] = doc.delta_halvings;
    c["provenance"] = prov;
    j["configuration"] = c;
  }

  if (doc.has_dual) {
    Json d;
    d["k"] = doc.dual.k;
    d["l"] = doc.dual.l;
    d["m"] = doc.dual.m;
    d["delta"] = j_rat(doc.dual.delta);
    d["disc_center"] = j_pt(doc.dual.disc_center);
    Json infl = Json::array();
    for (const Homothet& h : doc.dual.inflated) infl.push_back(j_homothet(h));
    d["inflated"] = infl;
    Json pts = Json::array();
    for (const DualPoint& p : doc.dual.points) {
      Json e;
      e["q"] = j_pt(p.q);
      e["family"] = p.a_side ? "a" : "b";
      e["wedge"] = p.wedge;
      pts.push_back(e);
    }
    d["points"] = pts;
    d["line_a_y"] = j_rat(doc.dual.line_a_y);
    d["line_b_y"] = j_rat(doc.dual.line_b_y);
    Json prov;
    prov["drift_retries"] = doc.drift_retries;
    d["provenance"] = prov;
    j["dual"] = d;
  }

  if (doc.has_extension) {
    Json e;
    e["eps"] = j_rat(doc.ext_eps);
    e["m"] = doc.ext_m;
    e["region"] = Json::array({rat_str(doc.ext_region.x0), rat_str(doc.ext_region.y0),
                               rat_str(doc.ext_region.x1), rat_str(doc.ext_region.y1)});
    Json tr = Json::array();
    for (const Homothet& h : doc.extension.translates) tr.push_back(j_homothet(h));
    e["translates"] = tr;
    Json rep;
    rep["min_depth"] = doc.extension.report.min_depth;
    rep["witness"] = j_pt(doc.extension.report.witness);
    rep["cells_checked"] = doc.extension.report.cells_checked;
    e["report"] = rep;
    e["repair_rounds"] = doc.extension.repair_rounds;
    j["extension"] = e;
  }

  Json vs = Json::array();
  for (const VerificationVerdict& v : doc.verdicts) {
    Json e;
    e["what"] = v.what;
    e["mode"] = v.mode;
    e["pass"] = v.pass;
    e["params"] = j_kv(v.params);
    e["counts"] = j_kv(v.counts);
    e["timestamp"] = v.timestamp;
    vs.push_back(e);
  }
  j["verdicts"] = vs;
  return j;
}

SceneDocument scene_from_json(const Json& j) {
  SceneDocument doc;
  doc.schema_version = field(j, "schema_version").get<std::string>();
  if (doc.schema_version != "1")
    fail(Errc::BadInput, "unsupported schema_version '" + doc.schema_version + "'");

  const Json& poly = field(j, "polygon");
  doc.source = field(poly, "source").get<std::string>();
  doc.input_polygon = p_poly(field(poly, "input_vertices"));
  const Json& norm = field(poly, "normalization");
  doc.prep.norm.pre_translate = p_pt(field(norm, "pre_translate"));
  const Json& lin = field(norm, "linear");
  if (!lin.is_array() || lin.size() != 2)
    fail(Errc::BadInput, "normalization.linear must be a 2x2 matrix");
  doc.prep.norm.linear.a = p_rat(lin[0][0]);
  doc.prep.norm.linear.b = p_rat(lin[0][1]);
  doc.prep.norm.linear.c = p_rat(lin[1][0]);
  doc.prep.norm.linear.d = p_rat(lin[1][1]);
  doc.prep.norm.reflected = field(norm, "reflected").get<bool>();
  doc.prep.direction = p_pt(field(norm, "direction"));
  doc.prep.base.verts = p_poly(field(poly, "base_vertices"));
  doc.prep.base.neg_verts.clear();
  for (const Pt& v : doc.prep.base.verts) doc.prep.base.neg_verts.push_back(-v);
  doc.prep.a_index = field(poly, "a_index").get<std::size_t>();
  doc.prep.b_index = field(poly, "b_index").get<std::size_t>();
  doc.prep.support_quad = p_poly(field(poly, "support_quad"));
  const Json& wt = field(poly, "wedge_templates");
  doc.prep.wedges.a_d1 = p_pt(field(wt, "a_d1"));
  doc.prep.wedges.a_d2 = p_pt(field(wt, "a_d2"));
  doc.prep.wedges.b_d1 = p_pt(field(wt, "b_d1"));
  doc.prep.wedges.b_d2 = p_pt(field(wt, "b_d2"));
  if (doc.prep.base.verts.size() < 4)
    fail(Errc::BadInput, "scene polygon has fewer than four vertices");
  if (doc.prep.a_index >= doc.prep.base.verts.size() ||
      doc.prep.b_index >= doc.prep.base.verts.size())
    fail(Errc::BadInput, "vertex index out of range");

  if (j.contains("configuration")) {
    const Json& c = j["configuration"];
    doc.has_config = true;
    doc.config.k = field(c, "k").get<int>();
    doc.config.l = field(c, "l").get<int>();
    doc.config.delta = p_rat(field(c, "delta"));
    doc.config.disc_center = p_pt(field(c, "disc_center"));
    for (const Json& e : field(c, "copies")) doc.config.copies.push_back(p_homothet(e));
    doc.config.a_apices = p_poly(field(c, "a_apices"));
    doc.config.b_apices = p_poly(field(c, "b_apices"));
    const Json& prov = field(c, "provenance");
    doc.flipped = field(prov, "flipped").get<bool>();
    doc.delta_halvings = field(prov, "delta_halvings").get<int>();
  }

  if (j.contains("dual")) {
    const Json& d = j["dual"];
    doc.has_dual = true;
    doc.dual.k = field(d, "k").get<int>();
    doc.dual.l = field(d, "l").get<int>();
    doc.dual.m = field(d, "m").get<int>();
    doc.dual.delta = p_rat(field(d, "delta"));
    doc.dual.disc_center = p_pt(field(d, "disc_center"));
    for (const Json& e : field(d, "inflated")) doc.dual.inflated.push_back(p_homothet(e));
    for (const Json& e : field(d, "points")) {
      DualPoint p;
      p.q = p_pt(field(e, "q"));
      std::string fam = field(e, "family").get<std::string>();
      if (fam != "a" && fam != "b")
        fail(Errc::BadInput, "dual point family must be 'a' or 'b'");
      p.a_side = fam == "a";
      p.wedge = field(e, "wedge").get<std::size_t>();
      doc.dual.points.push_back(p);
    }
    doc.dual.line_a_y = p_rat(field(d, "line_a_y"));
    doc.dual.line_b_y = p_rat(field(d, "line_b_y"));
    doc.drift_retries = field(field(d, "provenance"), "drift_retries").get<int>();
  }

  if (j.contains("extension")) {
    const Json& e = j["extension"];
    doc.has_extension = true;
    doc.ext_eps = p_rat(field(e, "eps"));
    doc.ext_m = field(e, "m").get<int>();
    const Json& r = field(e, "region");
    if (!r.is_array() || r.size() != 4)
      fail(Errc::BadInput, "extension.region must be [x0, y0, x1, y1]");
    doc.ext_region = BBox{p_rat(r[0]), p_rat(r[1]), p_rat(r[2]), p_rat(r[3])};
    for (const Json& t : field(e, "translates"))
      doc.extension.translates.push_back(p_homothet(t));
    const Json& rep = field(e, "report");
    doc.extension.report.min_depth = field(rep, "min_depth").get<int>();
    doc.extension.report.witness = p_pt(field(rep, "witness"));
    doc.extension.report.cells_checked = field(rep, "cells_checked").get<long>();
    doc.extension.repair_rounds = field(e, "repair_rounds").get<int>();
  }

  for (const Json& e : field(j, "verdicts")) {
    VerificationVerdict v;
    v.what = field(e, "what").get<std::string>();
    v.mode = field(e, "mode").get<std::string>();
    v.pass = field(e, "pass").get<bool>();
    v.params = p_kv(field(e, "params"));
    v.counts = p_kv(field(e, "counts"));
    v.timestamp = field(e, "timestamp").get<std::string>();
    doc.verdicts.push_back(std::move(v));
  }
  return doc;
}

}  // namespace

std::string serialize_scene(const SceneDocument& doc) {
  return scene_to_json(doc).dump(2) + "\n";
}

SceneDocument parse_scene(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::BadInput, std::string("scene is not valid JSON: ") + e.what());
  }
  try {
    return scene_from_json(j);
  } catch (const Error&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::BadInput, std::string("scene field has the wrong type: ") + e.what());
  }
}

void write_scene_file(const std::string& path, const SceneDocument& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::BadInput, "cannot open '" + path + "' for writing");
  out << serialize_scene(doc);
  if (!out) fail(Errc::BadInput, "failed writing '" + path + "'");
}

SceneDocument read_scene_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::BadInput, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str());
}

std::string now_utc_iso8601() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace homcov
