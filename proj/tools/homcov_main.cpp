// homcov command line: build / dualize / verify / render over scene files.
// Exit codes: 0 pass, 1 verification fail, 2 usage or input error,
// 3 construction search failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "homcov/construction.hpp"
#include "homcov/duality.hpp"
#include "homcov/errors.hpp"
#include "homcov/extension.hpp"
#include "homcov/hypergraph.hpp"
#include "homcov/prep.hpp"
#include "homcov/presets.hpp"
#include "homcov/scene_io.hpp"
#include "homcov/svg.hpp"

namespace {

using namespace homcov;

constexpr std::uint64_t kCliSeed = 20260825;  // fixed so reruns are identical

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::SearchExhausted:
    case Errc::NoValidDirection:
    case Errc::IncidenceDrift:
      return 3;
    default:
      return 2;
  }
}

// Polygon input files: a JSON array of [x, y] pairs, or an object with a
// "vertices" key holding one. Coordinates are rational strings or integers.
Polygon load_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadInput, "cannot open polygon file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::BadInput, "polygon file '" + path + "': " + e.what());
  }
  const nlohmann::json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("vertices"))
      fail(Errc::BadInput, "polygon file '" + path + "' has no 'vertices'");
    arr = &j.at("vertices");
  }
  if (!arr->is_array())
    fail(Errc::BadInput, "polygon file '" + path + "' is not a vertex array");
  Polygon poly;
  for (const auto& e : *arr) {
    if (!e.is_array() || e.size() != 2)
      fail(Errc::BadInput, "polygon vertex must be an [x, y] pair");
    Pt p;
    for (int c = 0; c < 2; ++c) {
      const auto& v = e.at(c);
      Rat r;
      if (v.is_string()) {
        r = rat_parse(v.get<std::string>());
      } else if (v.is_number_integer()) {
        r = Rat(static_cast<long>(v.get<std::int64_t>()));
      } else {
        fail(Errc::BadInput, "polygon coordinates must be strings or integers");
      }
      (c == 0 ? p.x : p.y) = r;
    }
    poly.push_back(p);
  }
  return poly;
}

Polygon load_polygon_arg(const std::string& arg) {
  if (arg.rfind("preset:", 0) == 0) return preset_polygon(arg.substr(7));
  return load_polygon_file(arg);
}

BBox parse_region(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 4)
    fail(Errc::BadInput, "--region wants x0,y0,x1,y1, got '" + text + "'");
  BBox r{rat_parse(parts[0]), rat_parse(parts[1]), rat_parse(parts[2]),
         rat_parse(parts[3])};
  if (!(r.x0 < r.x1) || !(r.y0 < r.y1))
    fail(Errc::BadInput, "--region must satisfy x0 < x1 and y0 < y1");
  return r;
}

std::string pt_str(const Pt& p) {
  return "(" + rat_str(p.x) + ", " + rat_str(p.y) + ")";
}

using KV = std::vector<std::pair<std::string, std::string>>;

void print_verdict(const VerificationVerdict& v) {
  std::cout << (v.pass ? "PASS" : "FAIL") << " " << v.what << " " << v.mode;
  for (const auto& [key, val] : v.counts) std::cout << " " << key << "=" << val;
  std::cout << "\n";
}

Mask128 random_coloring(std::mt19937_64& rng, std::size_t n) {
  Mask128 red;
  red.lo = rng();
  red.hi = rng();
  return red & Mask128::first_n(n);
}

// Witness edge of the recursion must be monochromatic in the claimed color.
bool witness_valid(const Hypergraph& h, const Mask128& red,
                   const WitnessStep& step) {
  if (step.a_side) {
    if (step.edge >= h.a_edges.size()) return false;
    const Mask128& e = h.a_edges[step.edge];
    return !e.none() && (e & red) == e;
  }
  if (step.edge >= h.b_edges.size()) return false;
  const Mask128& e = h.b_edges[step.edge];
  return !e.none() && (e & red).none();
}

struct ColoringBattery {
  std::uint64_t checked = 0;
  std::uint64_t defeated = 0;
  std::uint64_t witnesses_valid = 0;
  bool with_witness = false;
};

ColoringBattery run_random_colorings(const Hypergraph& h, int k, int l,
                                     std::uint64_t samples, bool with_witness) {
  ColoringBattery out;
  out.with_witness = with_witness;
  std::mt19937_64 rng(kCliSeed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    Mask128 red = random_coloring(rng, h.n);
    ++out.checked;
    if (coloring_defeated(h, red)) ++out.defeated;
    if (with_witness && witness_valid(h, red, certificate_witness(k, l, red)))
      ++out.witnesses_valid;
  }
  return out;
}

struct VerifyArgs {
  std::string scene_path;
  std::string what;
  std::string mode;  // empty means the per-what default
  std::uint64_t samples = 10000;
  std::string region_text;
  int m = 0;            // 0 means take it from the scene
  std::string epsilon;  // empty means take it from the scene or 1/10
};

void require_stage(bool present, const std::string& stage) {
  if (!present)
    fail(Errc::BadInput, "scene lacks the " + stage +
                             " stage required by this check");
}

void reject_mode(const std::string& what, const std::string& mode) {
  fail(Errc::BadInput, "--what " + what + " does not support --mode " + mode);
}

VerificationVerdict verify_property1(const SceneDocument& doc,
                                     const VerifyArgs& a,
                                     const std::string& mode) {
  require_stage(doc.has_config, "configuration");
  VerificationVerdict v;
  v.what = "property1";
  v.mode = mode;
  Hypergraph hc = geometric_hypergraph(doc.prep, doc.config, true);
  Hypergraph ho = geometric_hypergraph(doc.prep, doc.config, false);
  bool tangency_free = hc == ho;
  if (mode == "exhaustive") {
    ColoringCheck cc = check_all_colorings(hc);
    v.pass = tangency_free && cc.holds;
    v.counts = {{"copies", std::to_string(hc.n)},
                {"colorings", std::to_string(cc.checked)},
                {"tangency_free", tangency_free ? "1" : "0"}};
  } else if (mode == "certificate" || mode == "random") {
    bool with_witness = mode == "certificate";
    ColoringBattery b = run_random_colorings(hc, doc.config.k, doc.config.l,
                                             a.samples, with_witness);
    bool all_defeated = b.defeated == b.checked;
    bool all_witnessed = !with_witness || b.witnesses_valid == b.checked;
    v.pass = tangency_free && all_defeated && all_witnessed;
    v.counts = {{"copies", std::to_string(hc.n)},
                {"colorings", std::to_string(b.checked)},
                {"defeated", std::to_string(b.defeated)}};
    if (with_witness)
      v.counts.emplace_back("witnesses", std::to_string(b.witnesses_valid));
    v.params = {{"samples", std::to_string(a.samples)},
                {"seed", std::to_string(kCliSeed)}};
  } else {
    reject_mode(v.what, mode);
  }
  return v;
}

VerificationVerdict verify_dual(const SceneDocument& doc, const VerifyArgs& a,
                                const std::string& mode) {
  require_stage(doc.has_config, "configuration");
  require_stage(doc.has_dual, "dual");
  VerificationVerdict v;
  v.what = "dual";
  v.mode = mode;
  const DualScene& scene = doc.dual;
  Hypergraph hc = dual_hypergraph(doc.prep.base, scene, true);
  Hypergraph ho = dual_hypergraph(doc.prep.base, scene, false);
  Hypergraph hw = geometric_hypergraph(doc.prep, doc.config, true);
  bool tangency_free = hc == ho;
  bool matches_wedges = hc == hw;
  // Exact membership recount: a-family points sit in exactly k inflated
  // homothets, b-family in exactly l.
  std::uint64_t membership_violations = 0;
  for (const Mask128& e : hc.a_edges)
    if (e.count() != doc.config.k) ++membership_violations;
  for (const Mask128& e : hc.b_edges)
    if (e.count() != doc.config.l) ++membership_violations;
  bool structure_ok =
      tangency_free && matches_wedges && membership_violations == 0;
  v.counts = {{"points", std::to_string(scene.points.size())},
              {"membership_violations", std::to_string(membership_violations)},
              {"matches_wedges", matches_wedges ? "1" : "0"},
              {"tangency_free", tangency_free ? "1" : "0"}};
  if (mode == "exhaustive") {
    ColoringCheck cc = check_all_colorings(hc);
    v.pass = structure_ok && cc.holds;
    v.counts.emplace_back("colorings", std::to_string(cc.checked));
  } else if (mode == "certificate" || mode == "random") {
    bool with_witness = mode == "certificate";
    ColoringBattery b = run_random_colorings(hc, doc.config.k, doc.config.l,
                                             a.samples, with_witness);
    bool all_defeated = b.defeated == b.checked;
    bool all_witnessed = !with_witness || b.witnesses_valid == b.checked;
    v.pass = structure_ok && all_defeated && all_witnessed;
    v.counts.emplace_back("colorings", std::to_string(b.checked));
    v.counts.emplace_back("defeated", std::to_string(b.defeated));
    if (with_witness)
      v.counts.emplace_back("witnesses", std::to_string(b.witnesses_valid));
    v.params = {{"samples", std::to_string(a.samples)},
                {"seed", std::to_string(kCliSeed)}};
  } else {
    reject_mode(v.what, mode);
  }
  return v;
}

VerificationVerdict verify_statement1(const SceneDocument& doc,
                                      const VerifyArgs& a,
                                      const std::string& mode) {
  if (mode != "random") reject_mode("statement1", mode);
  VerificationVerdict v;
  v.what = "statement1";
  v.mode = mode;
  std::vector<DualityQuery> queries = sample_queries(a.samples, kCliSeed);
  std::uint64_t mismatches =
      count_statement1_mismatches(doc.prep.base, queries);
  v.pass = mismatches == 0;
  v.counts = {{"queries", std::to_string(queries.size())},
              {"mismatches", std::to_string(mismatches)}};
  v.params = {{"samples", std::to_string(a.samples)},
              {"seed", std::to_string(kCliSeed)}};
  return v;
}

VerificationVerdict verify_bands(const SceneDocument& doc, const VerifyArgs& a,
                                 const std::string& mode) {
  if (mode != "exhaustive") reject_mode("bands", mode);
  require_stage(doc.has_dual, "dual");
  VerificationVerdict v;
  v.what = "bands";
  v.mode = mode;
  Rat eps = a.epsilon.empty() ? (doc.has_extension ? doc.ext_eps : rat(1, 10))
                              : rat_parse(a.epsilon);
  bool fit_ok = true;
  std::string max_dev = "0";
  try {
    BandFit fit = validate_bands(doc.dual);
    max_dev = rat_str(fit.max_dev);
  } catch (const Error& e) {
    if (e.code() != Errc::BandViolation) throw;
    fit_ok = false;
  }
  bool points_ok = verify_point_bands(doc.dual);
  bool scales_ok = verify_scale_band(doc.dual, eps);
  std::size_t homothets = doc.dual.inflated.size();
  std::uint64_t translate_violations = 0;
  if (doc.has_extension) {
    homothets += doc.extension.translates.size();
    Rat lo = Rat(1) - eps, hi = Rat(1) + eps;
    for (const Homothet& t : doc.extension.translates)
      if (t.scale < lo || t.scale > hi) ++translate_violations;
  }
  v.pass = fit_ok && points_ok && scales_ok && translate_violations == 0;
  v.params = {{"epsilon", rat_str(eps)}};
  v.counts = {{"points", std::to_string(doc.dual.points.size())},
              {"homothets", std::to_string(homothets)},
              {"scale_violations",
               std::to_string((scales_ok ? 0 : 1) + translate_violations)},
              {"band_fit", fit_ok ? "1" : "0"},
              {"max_dev", max_dev}};
  return v;
}

// Depth checks build the extension stage on demand, or rebuild it when the
// requested parameters differ from the stored ones.
VerificationVerdict verify_depth_cmd(SceneDocument& doc, const VerifyArgs& a,
                                     const std::string& mode) {
  require_stage(doc.has_dual, "dual");
  VerificationVerdict v;
  v.what = "depth";
  v.mode = mode;
  if (!doc.has_extension && a.region_text.empty())
    fail(Errc::BadInput, "--what depth needs --region when the scene has no "
                         "extension stage");
  BBox region = a.region_text.empty() ? doc.ext_region
                                      : parse_region(a.region_text);
  int m = a.m > 0 ? a.m
                  : (doc.has_extension
                         ? doc.ext_m
                         : (doc.dual.m > 0 ? doc.dual.m : 1));
  Rat eps = a.epsilon.empty() ? (doc.has_extension ? doc.ext_eps : rat(1, 10))
                              : rat_parse(a.epsilon);
  bool params_match = doc.has_extension && doc.ext_m == m &&
                      doc.ext_eps == eps && doc.ext_region.x0 == region.x0 &&
                      doc.ext_region.y0 == region.y0 &&
                      doc.ext_region.x1 == region.x1 &&
                      doc.ext_region.y1 == region.y1;
  if (!params_match) {
    ExtensionParams p{eps, region, m};
    doc.extension = extend_cover(doc.prep.base, doc.dual, p);
    doc.has_extension = true;
    doc.ext_eps = eps;
    doc.ext_m = m;
    doc.ext_region = region;
  }
  std::vector<Homothet> family = doc.dual.inflated;
  family.insert(family.end(), doc.extension.translates.begin(),
                doc.extension.translates.end());
  std::vector<Pt> excluded;
  for (const DualPoint& dp : doc.dual.points) excluded.push_back(dp.q);
  v.params = {{"region", rat_str(region.x0) + "," + rat_str(region.y0) + "," +
                             rat_str(region.x1) + "," + rat_str(region.y1)},
              {"m", std::to_string(m)},
              {"epsilon", rat_str(eps)}};
  if (mode == "exhaustive") {
    CoverageReport rep = verify_depth(doc.prep.base, family, region, excluded);
    // Translates must keep every witness point strictly outside.
    std::uint64_t avoidance_violations = 0;
    for (const Homothet& t : doc.extension.translates) {
      Polygon body = realize_homothet(doc.prep.base, t);
      for (const Pt& q : excluded)
        if (point_in_polygon(q, body) != Location::Outside)
          ++avoidance_violations;
    }
    v.pass = rep.min_depth >= m && avoidance_violations == 0;
    v.counts = {{"translates", std::to_string(doc.extension.translates.size())},
                {"min_depth", std::to_string(rep.min_depth)},
                {"required", std::to_string(m)},
                {"witness", pt_str(rep.witness)},
                {"cells", std::to_string(rep.cells_checked)},
                {"avoidance_violations", std::to_string(avoidance_violations)}};
  } else if (mode == "random") {
    SampleReport sr =
        sample_depth_min(doc.prep.base, family, region, a.samples, kCliSeed);
    v.pass = sr.min_depth >= m;
    v.counts = {{"translates", std::to_string(doc.extension.translates.size())},
                {"samples", std::to_string(a.samples)},
                {"min_depth", std::to_string(sr.min_depth)},
                {"required", std::to_string(m)},
                {"witness", pt_str(sr.witness)}};
    v.params.emplace_back("seed", std::to_string(kCliSeed));
  } else {
    reject_mode(v.what, mode);
  }
  return v;
}

int cmd_verify(const VerifyArgs& a) {
  SceneDocument doc = read_scene_file(a.scene_path);
  std::string mode = a.mode;
  if (mode.empty())
    mode = a.what == "statement1" ? "random" : "exhaustive";
  VerificationVerdict v;
  if (a.what == "property1") {
    v = verify_property1(doc, a, mode);
  } else if (a.what == "dual") {
    v = verify_dual(doc, a, mode);
  } else if (a.what == "statement1") {
    v = verify_statement1(doc, a, mode);
  } else if (a.what == "bands") {
    v = verify_bands(doc, a, mode);
  } else if (a.what == "depth") {
    v = verify_depth_cmd(doc, a, mode);
  } else {
    fail(Errc::BadInput, "unknown --what '" + a.what + "'");
  }
  v.timestamp = now_utc_iso8601();
  doc.verdicts.push_back(v);
  write_scene_file(a.scene_path, doc);
  print_verdict(v);
  return v.pass ? 0 : 1;
}

struct BuildArgs {
  std::string polygon;
  int k = 0, l = 0;
  std::string delta;
  std::string out = "scene.json";
};

int cmd_build(const BuildArgs& a) {
  Polygon input = load_polygon_arg(a.polygon);
  PreparedPolygon pp = prepare(input);
  Rat request = a.delta.empty() ? Rat(1) : rat_parse(a.delta);
  BuildResult br = build_configuration(pp, a.k, a.l, request);
  SceneDocument doc;
  doc.source = a.polygon;
  doc.input_polygon = input;
  doc.prep = br.prep;
  doc.has_config = true;
  doc.config = br.config;
  doc.flipped = br.flipped;
  doc.delta_halvings = br.delta_halvings;
  write_scene_file(a.out, doc);
  std::cout << "built k=" << br.config.k << " l=" << br.config.l
            << " copies=" << br.config.copies.size()
            << " a_wedges=" << br.config.a_apices.size()
            << " b_wedges=" << br.config.b_apices.size()
            << " delta=" << rat_str(br.config.delta) << " -> " << a.out
            << "\n";
  return 0;
}

struct DualizeArgs {
  std::string scene_path;
  std::string out;  // empty: rewrite in place
};

// Rebuilds at the stored radius and dualizes; a drift retry shrinks the
// radius, so the stored configuration is replaced by the one actually used.
int cmd_dualize(const DualizeArgs& a) {
  SceneDocument doc = read_scene_file(a.scene_path);
  require_stage(doc.has_config, "configuration");
  DualBuild db =
      build_dual(doc.prep, doc.config.k, doc.config.l, doc.config.delta);
  doc.prep = db.build.prep;
  doc.flipped = doc.flipped != db.build.flipped;
  doc.delta_halvings += db.build.delta_halvings;
  doc.config = db.build.config;
  doc.has_dual = true;
  doc.dual = db.scene;
  doc.drift_retries = db.drift_retries;
  const std::string& out = a.out.empty() ? a.scene_path : a.out;
  write_scene_file(out, doc);
  std::cout << "dualized k=" << db.scene.k << " l=" << db.scene.l
            << " m=" << db.scene.m << " points=" << db.scene.points.size()
            << " inflated=" << db.scene.inflated.size()
            << " delta=" << rat_str(db.scene.delta)
            << " drift_retries=" << db.drift_retries << " -> " << out << "\n";
  return 0;
}

struct RenderArgs {
  std::string scene_path;
  std::string view;
  std::string out;
  bool labels = false;
};

int cmd_render(const RenderArgs& a) {
  SceneDocument doc = read_scene_file(a.scene_path);
  RenderOptions opt;
  opt.view = a.view;
  opt.labels = a.labels;
  std::string svg = render_scene_svg(doc, opt);
  write_svg_file(a.out, svg);
  std::cout << "rendered view=" << a.view << " -> " << a.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homcov: exact multiple coverings by homothets of a convex "
               "polygon"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read flag defaults from an INI file");

  BuildArgs build_args;
  CLI::App* build = app.add_subcommand(
      "build", "construct a wedge tower and write a scene file");
  build
      ->add_option("--polygon", build_args.polygon,
                   "polygon JSON file or preset:<" +
                       [] {
                         std::string names;
                         for (const auto& n : homcov::preset_names())
                           names += (names.empty() ? "" : "|") + n;
                         return names;
                       }() +
                       ">")
      ->required();
  build->add_option("--k", build_args.k, "a-side order, >= 1")
      ->required()
      ->check(CLI::PositiveNumber);
  build->add_option("--l", build_args.l, "b-side order, >= 1")
      ->required()
      ->check(CLI::PositiveNumber);
  build->add_option("--delta", build_args.delta,
                    "requested disc radius (rational, capped automatically)");
  build->add_option("--out", build_args.out, "output scene path")
      ->capture_default_str();

  DualizeArgs dualize_args;
  CLI::App* dualize = app.add_subcommand(
      "dualize", "replace wedges by witness points and inflate the copies");
  dualize->add_option("--scene", dualize_args.scene_path, "scene file")
      ->required();
  dualize->add_option("--out", dualize_args.out,
                      "output path (default: rewrite --scene in place)");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "check a scene property and record the verdict");
  verify->add_option("--scene", verify_args.scene_path, "scene file")
      ->required();
  verify
      ->add_option("--what", verify_args.what,
                   "property1|dual|depth|statement1|bands")
      ->required()
      ->check(CLI::IsMember(
          {"property1", "dual", "depth", "statement1", "bands"}));
  verify
      ->add_option("--mode", verify_args.mode,
                   "exhaustive|certificate|random (default depends on --what)")
      ->check(CLI::IsMember({"exhaustive", "certificate", "random"}));
  verify->add_option("--samples", verify_args.samples,
                     "sample count for certificate/random modes")
      ->capture_default_str();
  verify->add_option("--region", verify_args.region_text,
                     "depth region x0,y0,x1,y1 (rationals)");
  verify->add_option("--m", verify_args.m, "required depth for --what depth")
      ->check(CLI::PositiveNumber);
  verify->add_option("--epsilon", verify_args.epsilon,
                     "scale band half width (rational)");

  RenderArgs render_args;
  CLI::App* render =
      app.add_subcommand("render", "draw a scene view as an SVG file");
  render->add_option("--scene", render_args.scene_path, "scene file")
      ->required();
  render->add_option("--view", render_args.view,
                     "polygon|config|dual|extension")
      ->required()
      ->check(CLI::IsMember({"polygon", "config", "dual", "extension"}));
  render->add_option("--out", render_args.out, "output SVG path")->required();
  render->add_flag("--labels", render_args.labels, "draw text labels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return cmd_build(build_args);
    if (dualize->parsed()) return cmd_dualize(dualize_args);
    if (verify->parsed()) return cmd_verify(verify_args);
    if (render->parsed()) return cmd_render(render_args);
  } catch (const homcov::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
