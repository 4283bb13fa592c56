#include "homcov/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "homcov/errors.hpp"

namespace homcov {

namespace {

// 12 significant digits, plain decimal or %g exponent form; the one lossy
// step of the pipeline, display only
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s = buf;
  return s == "-0" ? "0" : s;
}

double dx(const Pt& p) { return rat_double(p.x); }
double dy(const Pt& p) { return rat_double(p.y); }

struct WorldBox {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool any = false;
  void add(double x, double y) {
    if (!any) {
      x0 = x1 = x;
      y0 = y1 = y;
      any = true;
      return;
    }
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  void add(const Pt& p) { add(dx(p), dy(p)); }
  void add(const Polygon& poly) {
    for (const Pt& p : poly) add(p);
  }
  void pad(double frac) {
    double m = std::max({x1 - x0, y1 - y0, 1e-9}) * frac;
    x0 -= m;
    x1 += m;
    y0 -= m;
    y1 += m;
  }
  double diag() const { return std::hypot(x1 - x0, y1 - y0); }
};

// world -> pixel map, y flipped, uniform scale, 40px margin
struct Canvas {
  WorldBox box;
  double scale = 1, margin = 40;
  std::ostringstream out;

  void open() {
    double m = std::max({box.x1 - box.x0, box.y1 - box.y0, 1e-9});
    scale = 800.0 / m;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << num(width()) << "\" height=\"" << num(height()) << "\" viewBox=\"0 0 "
        << num(width()) << " " << num(height()) << "\">\n"
        << "<rect width=\"" << num(width()) << "\" height=\"" << num(height())
        << "\" fill=\"white\"/>\n";
  }
  double width() const { return 2 * margin + (box.x1 - box.x0) * scale; }
  double height() const { return 2 * margin + (box.y1 - box.y0) * scale; }
  double X(double wx) const { return margin + (wx - box.x0) * scale; }
  double Y(double wy) const { return margin + (box.y1 - wy) * scale; }

  std::string pts_attr(const Polygon& poly) {
    std::string s;
    for (const Pt& p : poly) {
      if (!s.empty()) s += ' ';
      s += num(X(dx(p))) + "," + num(Y(dy(p)));
    }
    return s;
  }

  void poly(const Polygon& p, const std::string& fill, double fill_opacity,
            const std::string& stroke, double stroke_w,
            const char* dash = nullptr) {
    out << "<polygon points=\"" << pts_attr(p) << "\" fill=\"" << fill << "\"";
    if (fill != "none") out << " fill-opacity=\"" << num(fill_opacity) << "\"";
    out << " stroke=\"" << stroke << "\" stroke-width=\"" << num(stroke_w)
        << "\"";
    if (dash) out << " stroke-dasharray=\"" << dash << "\"";
    out << "/>\n";
  }

  void seg(double ax, double ay, double bx, double by, const std::string& stroke,
           double w, const char* dash = nullptr) {
    out << "<line x1=\"" << num(X(ax)) << "\" y1=\"" << num(Y(ay)) << "\" x2=\""
        << num(X(bx)) << "\" y2=\"" << num(Y(by)) << "\" stroke=\"" << stroke
        << "\" stroke-width=\"" << num(w) << "\"";
    if (dash) out << " stroke-dasharray=\"" << dash << "\"";
    out << "/>\n";
  }

  void dot(const Pt& p, double r_px, const std::string& fill) {
    out << "<circle cx=\"" << num(X(dx(p))) << "\" cy=\"" << num(Y(dy(p)))
        << "\" r=\"" << num(r_px) << "\" fill=\"" << fill << "\"/>\n";
  }

  // x-shaped marker, constant pixel size
  void cross(const Pt& p, double r_px, const std::string& stroke) {
    double cx = X(dx(p)), cy = Y(dy(p));
    out << "<path d=\"M" << num(cx - r_px) << " " << num(cy - r_px) << " L"
        << num(cx + r_px) << " " << num(cy + r_px) << " M" << num(cx - r_px)
        << " " << num(cy + r_px) << " L" << num(cx + r_px) << " "
        << num(cy - r_px) << "\" stroke=\"" << stroke
        << "\" stroke-width=\"2\" fill=\"none\"/>\n";
  }

  void text_at(double wx, double wy, double ox_px, double oy_px,
               const std::string& s, const std::string& fill = "#111111") {
    out << "<text x=\"" << num(X(wx) + ox_px) << "\" y=\""
        << num(Y(wy) + oy_px)
        << "\" font-family=\"monospace\" font-size=\"15\" fill=\"" << fill
        << "\">" << s << "</text>\n";
  }
  void text(const Pt& p, double ox_px, double oy_px, const std::string& s,
            const std::string& fill = "#111111") {
    text_at(dx(p), dy(p), ox_px, oy_px, s, fill);
  }

  // convex cone drawn as a long triangle; the viewport clips it
  void wedge(const Pt& apex, const Vec& d1, const Vec& d2, double reach,
             const std::string& fill, const std::string& stroke) {
    double nx1 = rat_double(d1.x), ny1 = rat_double(d1.y);
    double nx2 = rat_double(d2.x), ny2 = rat_double(d2.y);
    double n1 = std::hypot(nx1, ny1), n2 = std::hypot(nx2, ny2);
    double ax = dx(apex), ay = dy(apex);
    double p1x = ax + nx1 / n1 * reach, p1y = ay + ny1 / n1 * reach;
    double p2x = ax + nx2 / n2 * reach, p2y = ay + ny2 / n2 * reach;
    out << "<polygon points=\"" << num(X(ax)) << "," << num(Y(ay)) << " "
        << num(X(p1x)) << "," << num(Y(p1y)) << " " << num(X(p2x)) << ","
        << num(Y(p2y)) << "\" fill=\"" << fill
        << "\" fill-opacity=\"0.18\" stroke=\"" << stroke
        << "\" stroke-width=\"1\"/>\n";
  }

  std::string close() {
    out << "</svg>\n";
    return out.str();
  }
};

const char* kCopyFill = "#5b8db8";
const char* kCopyStroke = "#2c3e50";
const char* kAColor = "#c0392b";  // a family: downward wedges, a points
const char* kBColor = "#1f618d";  // b family
const char* kTranslateFill = "#7dbb8a";

void view_polygon(const SceneDocument& doc, const RenderOptions& opt, Canvas& c) {
  const Polygon& s = doc.prep.base.verts;
  c.box.add(s);
  c.box.add(doc.prep.support_quad);
  c.box.pad(0.08);
  c.open();
  c.poly(doc.prep.support_quad, "none", 0, "#888888", 1.5, "7 5");
  c.poly(s, kCopyFill, 0.3, kCopyStroke, 2);
  std::size_t vl = 0, vr = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].x < s[vl].x || (s[i].x == s[vl].x && s[i].y < s[vl].y)) vl = i;
    if (s[i].x > s[vr].x || (s[i].x == s[vr].x && s[i].y > s[vr].y)) vr = i;
  }
  for (const Pt& v : s) c.dot(v, 3.5, kCopyStroke);
  if (opt.labels) {
    c.text(s[doc.prep.a_index], 8, -8, "v_a", kAColor);
    c.text(s[doc.prep.b_index], 8, 18, "v_b", kBColor);
    c.text(s[vl], -34, 4, "v_l");
    c.text(s[vr], 10, 4, "v_r");
    Pt centroid(Rat(0), Rat(0));
    for (const Pt& v : s) centroid = centroid + v;
    Rat inv = rat(1, static_cast<long>(s.size()));
    centroid = Pt(centroid.x * inv, centroid.y * inv);
    c.text(centroid, -6, 5, "S");
    c.text(doc.prep.support_quad[1], 10, -6, "Q", "#555555");
  }
}

void view_config(const SceneDocument& doc, const RenderOptions& opt, Canvas& c) {
  if (!doc.has_config) fail(Errc::BadInput, "scene has no configuration stage");
  std::vector<Polygon> copies = realize_copies(doc.prep, doc.config);
  for (const Polygon& p : copies) c.box.add(p);
  for (const Pt& a : doc.config.a_apices) c.box.add(a);
  for (const Pt& b : doc.config.b_apices) c.box.add(b);
  c.box.pad(0.10);
  c.open();
  double reach = c.box.diag();
  for (const Pt& a : doc.config.a_apices)
    c.wedge(a, doc.prep.wedges.a_d1, doc.prep.wedges.a_d2, reach, kAColor,
            kAColor);
  for (const Pt& b : doc.config.b_apices)
    c.wedge(b, doc.prep.wedges.b_d1, doc.prep.wedges.b_d2, reach, kBColor,
            kBColor);
  for (const Polygon& p : copies) c.poly(p, kCopyFill, 0.35, kCopyStroke, 1.5);
  for (const Pt& a : doc.config.a_apices) c.dot(a, 4, kAColor);
  for (const Pt& b : doc.config.b_apices) c.dot(b, 4, kBColor);
  if (opt.labels) {
    for (std::size_t i = 0; i < copies.size(); ++i) {
      Pt anchor = doc.config.copies[i].anchor;
      c.text(anchor, -10, 4, "c" + std::to_string(i));
    }
    for (std::size_t i = 0; i < doc.config.a_apices.size(); ++i)
      c.text(doc.config.a_apices[i], 6, -6, "a" + std::to_string(i), kAColor);
    for (std::size_t i = 0; i < doc.config.b_apices.size(); ++i)
      c.text(doc.config.b_apices[i], 6, 16, "b" + std::to_string(i), kBColor);
  }
}

void view_dual(const SceneDocument& doc, const RenderOptions& opt, Canvas& c) {
  if (!doc.has_dual) fail(Errc::BadInput, "scene has no dual stage");
  std::vector<Polygon> infl;
  for (const Homothet& h : doc.dual.inflated)
    infl.push_back(realize_homothet(doc.prep.base, h));
  for (const Polygon& p : infl) c.box.add(p);
  for (const DualPoint& p : doc.dual.points) c.box.add(p.q);
  c.box.pad(0.08);
  c.open();
  for (const Polygon& p : infl) c.poly(p, kCopyFill, 0.25, kCopyStroke, 1.2);
  c.seg(c.box.x0, rat_double(doc.dual.line_a_y), c.box.x1,
        rat_double(doc.dual.line_a_y), kAColor, 1.2, "9 6");
  c.seg(c.box.x0, rat_double(doc.dual.line_b_y), c.box.x1,
        rat_double(doc.dual.line_b_y), kBColor, 1.2, "9 6");
  for (const DualPoint& p : doc.dual.points)
    c.cross(p.q, 5, p.a_side ? kAColor : kBColor);
  if (opt.labels) {
    c.text_at(c.box.x0, rat_double(doc.dual.line_a_y), 6, -6, "l_a", kAColor);
    c.text_at(c.box.x0, rat_double(doc.dual.line_b_y), 6, 16, "l_b", kBColor);
    for (std::size_t i = 0; i < doc.dual.points.size(); ++i)
      c.text(doc.dual.points[i].q, 7, -7,
             (doc.dual.points[i].a_side ? "qa" : "qb") +
                 std::to_string(doc.dual.points[i].wedge),
             doc.dual.points[i].a_side ? kAColor : kBColor);
  }
}

void view_extension(const SceneDocument& doc, const RenderOptions& opt,
                    Canvas& c) {
  if (!doc.has_extension) fail(Errc::BadInput, "scene has no extension stage");
  if (!doc.has_dual) fail(Errc::BadInput, "scene has no dual stage");
  Polygon region{Pt(doc.ext_region.x0, doc.ext_region.y0),
                 Pt(doc.ext_region.x0, doc.ext_region.y1),
                 Pt(doc.ext_region.x1, doc.ext_region.y1),
                 Pt(doc.ext_region.x1, doc.ext_region.y0)};
  c.box.add(region);
  std::vector<Polygon> infl;
  for (const Homothet& h : doc.dual.inflated)
    infl.push_back(realize_homothet(doc.prep.base, h));
  for (const Polygon& p : infl) c.box.add(p);
  c.box.pad(0.05);
  c.open();
  for (const Homothet& h : doc.extension.translates)
    c.poly(realize_homothet(doc.prep.base, h), kTranslateFill, 0.18, "#4e7d59",
           0.6);
  for (const Polygon& p : infl) c.poly(p, kCopyFill, 0.3, kCopyStroke, 1.2);
  for (const DualPoint& p : doc.dual.points)
    c.cross(p.q, 5, p.a_side ? kAColor : kBColor);
  c.poly(region, "none", 0, "#111111", 2, "12 6");
  if (opt.labels) {
    c.text(Pt(doc.ext_region.x0, doc.ext_region.y1), 4, -8,
           "min depth " + std::to_string(doc.extension.report.min_depth));
    c.cross(doc.extension.report.witness, 7, "#111111");
    c.text(doc.extension.report.witness, 9, 5, "w");
  }
}

}  // namespace

std::string render_scene_svg(const SceneDocument& doc,
                             const RenderOptions& opt) {
  Canvas c;
  if (opt.view == "polygon") {
    view_polygon(doc, opt, c);
  } else if (opt.view == "config") {
    view_config(doc, opt, c);
  } else if (opt.view == "dual") {
    view_dual(doc, opt, c);
  } else if (opt.view == "extension") {
    view_extension(doc, opt, c);
  } else {
    fail(Errc::BadInput, "unknown view '" + opt.view + "'");
  }
  return c.close();
}

void write_svg_file(const std::string& path, const std::string& svg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::BadInput, "cannot open '" + path + "' for writing");
  out << svg;
  if (!out) fail(Errc::BadInput, "failed writing '" + path + "'");
}

}  // namespace homcov
