#include "homcov/prep.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "homcov/errors.hpp"

namespace homcov {

namespace {

int sgn(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// p assumed collinear with the segment a-b.
bool on_segment(const Pt& a, const Pt& b, const Pt& p) {
  return rat_min(a.x, b.x) <= p.x && p.x <= rat_max(a.x, b.x) &&
         rat_min(a.y, b.y) <= p.y && p.y <= rat_max(a.y, b.y);
}

// Closed contact between segments p1-p2 and q1-q2.
bool segments_touch(const Pt& p1, const Pt& p2, const Pt& q1, const Pt& q2) {
  int d1 = sgn(cross(p2 - p1, q1 - p1));
  int d2 = sgn(cross(p2 - p1, q2 - p1));
  int d3 = sgn(cross(q2 - q1, p1 - q1));
  int d4 = sgn(cross(q2 - q1, p2 - q1));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(p1, p2, q1)) return true;
  if (d2 == 0 && on_segment(p1, p2, q2)) return true;
  if (d3 == 0 && on_segment(q1, q2, p1)) return true;
  if (d4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

// Contact between non-adjacent edges means the boundary self-intersects.
bool is_simple(const Polygon& poly) {
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_touch(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

Pt area_centroid(const Polygon& poly) {
  std::size_t n = poly.size();
  Rat a2(0);
  Pt c;
  for (std::size_t i = 0; i < n; ++i) {
    const Pt& u = poly[i];
    const Pt& v = poly[(i + 1) % n];
    Rat cr = cross(u, v);
    a2 += cr;
    c = c + cr * (u + v);
  }
  Rat inv = Rat(1) / (3 * a2);
  return inv * c;
}

// Scale keeping every vertex inside the unit disc without dropping the
// largest vertex norm much below 1/2.
Rat unit_disc_scale(const Polygon& poly) {
  Rat m2(0);
  for (const Pt& v : poly) m2 = rat_max(m2, norm2(v));
  if (m2 <= 1 && 4 * m2 >= 1) return Rat(1);
  Rat b = sqrt_lower_bound(Rat(1) / m2);
  return simplest_between(b / 2, b);
}

bool unique_extreme(const Polygon& poly, const Vec& nrm, std::size_t& out) {
  Rat best = dot(nrm, poly[0]);
  out = 0;
  for (std::size_t i = 1; i < poly.size(); ++i) {
    Rat h = dot(nrm, poly[i]);
    if (h > best) {
      best = h;
      out = i;
    }
  }
  int hits = 0;
  for (const Pt& v : poly)
    if (dot(nrm, v) == best) ++hits;
  return hits == 1;
}

struct Validated {
  Polygon poly;
  Vec shift;
  Rat scale;
};

Validated validate_impl(const Polygon& input) {
  std::size_t n = input.size();
  if (n < 4)
    fail(Errc::TooFewSides, "need at least 4 sides, got " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (input[i] == input[(i + 1) % n]) fail(Errc::DegenerateVertex, "repeated vertex");
  int pos = 0, neg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e0 = input[(i + 1) % n] - input[i];
    Vec e1 = input[(i + 2) % n] - input[(i + 1) % n];
    int s = sgn(cross(e0, e1));
    if (s == 0) fail(Errc::DegenerateVertex, "collinear vertex triple");
    (s > 0 ? pos : neg) += 1;
  }
  if (pos > 0 && neg > 0) {
    if (is_simple(input)) fail(Errc::Unsupported, "concave polygon");
    fail(Errc::NotConvex, "self-intersecting polygon");
  }
  Polygon poly = input;
  if (pos > 0) std::reverse(poly.begin(), poly.end());
  // locally convex chains can still wind several times; every vertex must lie
  // strictly inside every non-incident edge half-plane
  for (std::size_t i = 0; i < n; ++i) {
    Vec e = poly[(i + 1) % n] - poly[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || j == (i + 1) % n) continue;
      if (cross(e, poly[j] - poly[i]) >= 0)
        fail(Errc::NotConvex, "polygon winds more than once");
    }
  }
  Pt c = area_centroid(poly);
  for (Pt& v : poly) v = v - c;
  Rat s = unit_disc_scale(poly);
  if (s != 1)
    for (Pt& v : poly) v = s * v;
  return Validated{std::move(poly), Pt(-c.x, -c.y), s};
}

}  // namespace

Polygon validate_polygon(const Polygon& input) { return validate_impl(input).poly; }

DirectionChoice choose_direction(const Polygon& cw_poly, long max_radius) {
  std::size_t n = cw_poly.size();
  std::vector<Vec> edges(n);
  for (std::size_t i = 0; i < n; ++i) edges[i] = cw_poly[(i + 1) % n] - cw_poly[i];
  for (long r = 1; r <= max_radius; ++r) {
    for (long q = 0; q <= r; ++q) {
      for (long p = -r; p <= r; ++p) {
        long ap = p < 0 ? -p : p;
        if (std::max(ap, q) != r) continue;
        if (q == 0 && p <= 0) continue;  // canonical upper half-plane rep
        if (std::gcd(ap, q) != 1) continue;
        Vec d(rat(p), rat(q));
        bool parallel = false;
        for (const Vec& e : edges)
          if (cross(d, e) == 0) {
            parallel = true;
            break;
          }
        if (parallel) continue;
        std::size_t a, b;
        if (!unique_extreme(cw_poly, Vec(rat(-q), rat(p)), a)) continue;
        if (!unique_extreme(cw_poly, Vec(rat(q), rat(-p)), b)) continue;
        if ((a + 1) % n == b || (b + 1) % n == a) continue;
        return DirectionChoice{d, a, b};
      }
    }
  }
  fail(Errc::NoValidDirection,
       "no usable direction with height <= " + std::to_string(max_radius));
}

Polygon compute_support_quad(const Polygon& cw_poly, std::size_t a_index,
                             std::size_t b_index) {
  std::size_t n = cw_poly.size();
  auto prev = [n](std::size_t i) { return (i + n - 1) % n; };
  auto next = [n](std::size_t i) { return (i + 1) % n; };
  Vec ra = cw_poly[next(a_index)] - cw_poly[a_index];
  Vec rb = cw_poly[b_index] - cw_poly[prev(b_index)];
  Vec la = cw_poly[a_index] - cw_poly[prev(a_index)];
  Vec lb = cw_poly[next(b_index)] - cw_poly[b_index];
  if (cross(ra, rb) == 0 || cross(la, lb) == 0)
    fail(Errc::UnboundedQ, "parallel support lines, no bounded quadrilateral");
  Pt wr = line_intersect(cw_poly[a_index], ra, cw_poly[b_index], rb);
  Pt wl = line_intersect(cw_poly[a_index], la, cw_poly[b_index], lb);
  return Polygon{cw_poly[a_index], wr, cw_poly[b_index], wl};
}

WedgeTemplates wedge_templates(const Polygon& cw_poly, std::size_t a_index,
                               std::size_t b_index) {
  std::size_t n = cw_poly.size();
  auto prev = [n](std::size_t i) { return (i + n - 1) % n; };
  auto next = [n](std::size_t i) { return (i + 1) % n; };
  return WedgeTemplates{cw_poly[b_index] - cw_poly[prev(b_index)],
                        cw_poly[b_index] - cw_poly[next(b_index)],
                        cw_poly[a_index] - cw_poly[prev(a_index)],
                        cw_poly[a_index] - cw_poly[next(a_index)]};
}

PreparedPolygon prepare(const Polygon& input) {
  Validated val = validate_impl(input);
  Polygon poly = std::move(val.poly);
  std::size_t n = poly.size();

  DirectionChoice dc = choose_direction(poly);
  Mat2 rot{dc.d.x, dc.d.y, -dc.d.y, dc.d.x};  // d to +x axis, det > 0
  for (Pt& v : poly) v = rot.apply(v);

  Pt vl = *std::min_element(poly.begin(), poly.end(), pt_less);
  Pt vr = *std::max_element(poly.begin(), poly.end(), pt_less);
  bool reflected = vl.y < vr.y;
  if (reflected) {
    for (Pt& v : poly) v.x = -v.x;
    std::reverse(poly.begin(), poly.end());  // restore clockwise order
  }

  Rat post = unit_disc_scale(poly);
  if (post != 1)
    for (Pt& v : poly) v = post * v;

  std::size_t top = 0, bot = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (poly[i].y > poly[top].y) top = i;
    if (poly[i].y < poly[bot].y) bot = i;
  }
  std::rotate(poly.begin(), poly.begin() + top, poly.end());
  std::size_t b_index = (bot + n - top) % n;

  PreparedPolygon out;
  out.base.verts = poly;
  out.base.neg_verts.reserve(n);
  for (const Pt& v : poly) out.base.neg_verts.push_back(-v);
  out.a_index = 0;
  out.b_index = b_index;
  out.support_quad = compute_support_quad(out.base.verts, 0, b_index);
  out.wedges = wedge_templates(out.base.verts, 0, b_index);

  Mat2 lin = rot;
  if (reflected) lin = Mat2{Rat(-1), Rat(0), Rat(0), Rat(1)}.compose(lin);
  Rat total = val.scale * post;
  lin = Mat2{total, Rat(0), Rat(0), total}.compose(lin);
  out.norm = Normalization{val.shift, lin, reflected};
  out.direction = dc.d;
  return out;
}

PreparedPolygon flip_vertical(const PreparedPolygon& pp) {
  const Polygon& src = pp.base.verts;
  std::size_t n = src.size();
  Polygon poly;
  poly.reserve(n);
  for (auto it = src.rbegin(); it != src.rend(); ++it)
    poly.push_back(Pt(it->x, -it->y));  // mirror flips orientation; reversed

  std::size_t top = 0, bot = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (poly[i].y > poly[top].y) top = i;
    if (poly[i].y < poly[bot].y) bot = i;
  }
  std::rotate(poly.begin(), poly.begin() + top, poly.end());
  std::size_t b_index = (bot + n - top) % n;

  PreparedPolygon out;
  out.base.verts = poly;
  out.base.neg_verts.reserve(n);
  for (const Pt& v : poly) out.base.neg_verts.push_back(-v);
  out.a_index = 0;
  out.b_index = b_index;
  out.support_quad = compute_support_quad(out.base.verts, 0, b_index);
  out.wedges = wedge_templates(out.base.verts, 0, b_index);
  out.norm = Normalization{
      pp.norm.pre_translate,
      Mat2{Rat(1), Rat(0), Rat(0), Rat(-1)}.compose(pp.norm.linear),
      pp.norm.reflected};
  out.direction = pp.direction;
  return out;
}

}  // namespace homcov
