#include "homcov/geom.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "homcov/errors.hpp"

namespace homcov {

Mat2 Mat2::inverse() const {
  Rat dt = det();
  if (dt == 0) fail(Errc::BadInput, "singular 2x2 map");
  return Mat2{d / dt, -b / dt, -c / dt, a / dt};
}

Mat2 Mat2::compose(const Mat2& m) const {
  return Mat2{a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
}

Rat signed_area2(const Polygon& poly) {
  Rat s(0);
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) s += cross(poly[i], poly[(i + 1) % n]);
  return s;
}

bool is_clockwise_convex(const Polygon& poly) {
  size_t n = poly.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    const Pt& a = poly[i];
    const Pt& b = poly[(i + 1) % n];
    const Pt& c = poly[(i + 2) % n];
    if (cross(b - a, c - b) >= 0) return false;
  }
  return true;
}

Polygon realize_homothet(const BasePolygon& base, const Homothet& h) {
  const Polygon& src = h.reflected ? base.neg_verts : base.verts;
  Polygon out;
  out.reserve(src.size());
  for (const Pt& v : src) out.push_back(h.anchor + h.scale * v);
  return out;
}

namespace {

// Direction comparator for angles in [0, 2pi): upper half-plane first.
// half 0: y > 0, or y == 0 and x > 0; half 1: the rest.
int dir_half(const Vec& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }

bool dir_before(const Vec& a, const Vec& b) {
  int ha = dir_half(a), hb = dir_half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

size_t lowest_vertex_index(const Polygon& p) {
  size_t best = 0;
  for (size_t i = 1; i < p.size(); ++i) {
    if (p[i].y < p[best].y || (p[i].y == p[best].y && p[i].x < p[best].x)) best = i;
  }
  return best;
}

}  // namespace

Polygon minkowski_scale_sum(const BasePolygon& base, const Rat& alpha, const Rat& beta) {
  if (alpha < 0 || beta < 0 || (alpha == 0 && beta == 0))
    fail(Errc::BadInput, "minkowski_scale_sum needs alpha, beta >= 0, not both zero");
  size_t n = base.verts.size();
  // counter-clockwise copies scaled by alpha and beta
  auto ccw_scaled = [&](const Rat& s) {
    Polygon out(n);
    for (size_t i = 0; i < n; ++i) out[i] = s * base.verts[n - 1 - i];
    return out;
  };
  Polygon A = ccw_scaled(alpha);
  Polygon B = ccw_scaled(beta);
  auto edges_from = [&](const Polygon& p, const Rat& s) {
    std::vector<Vec> es;
    if (s == 0) return es;  // degenerate point contributes no edges
    size_t start = lowest_vertex_index(p);
    es.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      const Pt& cur = p[(start + i) % n];
      const Pt& nxt = p[(start + i + 1) % n];
      es.push_back(nxt - cur);
    }
    return es;
  };
  std::vector<Vec> ea = edges_from(A, alpha);
  std::vector<Vec> eb = edges_from(B, beta);
  Pt start = A[lowest_vertex_index(A)] + B[lowest_vertex_index(B)];

  Polygon ccw;
  ccw.push_back(start);
  size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    Vec step;
    if (i < ea.size() && j < eb.size() && cross(ea[i], eb[j]) == 0 && dot(ea[i], eb[j]) > 0) {
      step = ea[i] + eb[j];
      ++i, ++j;
    } else if (j == eb.size() || (i < ea.size() && dir_before(ea[i], eb[j]))) {
      step = ea[i++];
    } else {
      step = eb[j++];
    }
    ccw.push_back(ccw.back() + step);
  }
  ccw.pop_back();  // closing vertex repeats the start
  std::reverse(ccw.begin(), ccw.end());
  return ccw;
}

Location point_in_polygon(const Pt& q, const Polygon& poly) {
  bool on_edge = false;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    Rat c = cross(poly[(i + 1) % n] - poly[i], q - poly[i]);
    if (c > 0) return Location::Outside;
    if (c == 0) on_edge = true;
  }
  return on_edge ? Location::Boundary : Location::Inside;
}

Polygon clip_halfplane(const Polygon& poly, const Vec& n, const Rat& c) {
  Polygon out;
  size_t m = poly.size();
  if (m == 0) return out;
  for (size_t i = 0; i < m; ++i) {
    const Pt& cur = poly[i];
    const Pt& nxt = poly[(i + 1) % m];
    Rat dc = dot(n, cur) - c;
    Rat dn = dot(n, nxt) - c;
    if (dc <= 0) out.push_back(cur);
    if ((dc < 0 && dn > 0) || (dc > 0 && dn < 0)) {
      Rat t = dc / (dc - dn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

namespace {

bool all_equal(const Polygon& p) {
  for (size_t i = 1; i < p.size(); ++i)
    if (p[i] != p[0]) return false;
  return true;
}

// Edge half-planes of a clockwise convex polygon: interior is dot(n,x) <= c.
std::vector<std::pair<Vec, Rat>> edge_halfplanes(const Polygon& q) {
  std::vector<std::pair<Vec, Rat>> hs;
  size_t n = q.size();
  hs.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    Vec e = q[(i + 1) % n] - q[i];
    Vec nrm(-e.y, e.x);
    hs.emplace_back(nrm, dot(nrm, q[i]));
  }
  return hs;
}

Polygon convex_intersection(const Polygon& p, const Polygon& q) {
  Polygon cur = p;
  for (const auto& [n, c] : edge_halfplanes(q)) {
    cur = clip_halfplane(cur, n, c);
    if (cur.empty()) break;
  }
  return cur;
}

Rat abs_area2(const Polygon& p) {
  Rat s = signed_area2(p);
  return s < 0 ? Rat(-s) : s;
}

}  // namespace

bool polygons_intersect_closed(const Polygon& p, const Polygon& q) {
  if (p.empty() || q.empty()) return false;
  if (all_equal(p)) {
    if (all_equal(q)) return p[0] == q[0];
    return point_in_polygon(p[0], q) != Location::Outside;
  }
  if (all_equal(q)) return point_in_polygon(q[0], p) != Location::Outside;
  return !convex_intersection(p, q).empty();
}

bool polygons_intersect_open(const Polygon& p, const Polygon& q) {
  if (p.empty() || q.empty() || all_equal(p) || all_equal(q)) return false;
  Polygon ix = convex_intersection(p, q);
  return !ix.empty() && abs_area2(ix) > 0;
}

// The two half-planes whose intersection is the wedge.
// x in wedge  <=>  cross(x-apex, d2)/D >= 0  and  cross(d1, x-apex)/D >= 0
// with D = cross(d1, d2); rewritten as dot(n, x) <= dot(n, apex).
std::array<std::pair<Vec, Rat>, 2> wedge_halfplanes(const Wedge& w) {
  Rat D = cross(w.d1, w.d2);
  if (D == 0) fail(Errc::BadInput, "degenerate wedge");
  Vec n1(w.d2.y, -w.d2.x);   // dot(n1, x-a) = cross(x-a, d2)
  Vec n2(-w.d1.y, w.d1.x);   // dot(n2, x-a) = cross(d1, x-a)
  if (D > 0) {
    n1 = -n1;
    n2 = -n2;
  }
  return {std::make_pair(n1, dot(n1, w.apex)), std::make_pair(n2, dot(n2, w.apex))};
}

bool wedge_intersects_closed(const Wedge& w, const Polygon& poly) {
  Polygon cur = poly;
  for (const auto& [n, c] : wedge_halfplanes(w)) {
    cur = clip_halfplane(cur, n, c);
    if (cur.empty()) return false;
  }
  return true;
}

bool wedge_intersects_open(const Wedge& w, const Polygon& poly) {
  Polygon cur = poly;
  for (const auto& [n, c] : wedge_halfplanes(w)) {
    cur = clip_halfplane(cur, n, c);
    if (cur.empty()) return false;
  }
  return abs_area2(cur) > 0;
}

Location point_in_wedge(const Pt& q, const Wedge& w) {
  bool on_edge = false;
  for (const auto& [n, c] : wedge_halfplanes(w)) {
    Rat d = dot(n, q) - c;
    if (d > 0) return Location::Outside;
    if (d == 0) on_edge = true;
  }
  return on_edge ? Location::Boundary : Location::Inside;
}

Pt line_intersect(const Pt& p, const Vec& u, const Pt& q, const Vec& w) {
  Rat d = cross(u, w);
  if (d == 0) fail(Errc::BadInput, "line_intersect: parallel lines");
  return p + (cross(q - p, w) / d) * u;
}

bool cyclic_equal(const Polygon& a, const Polygon& b) {
  if (a.size() != b.size()) return false;
  size_t n = a.size();
  for (size_t shift = 0; shift < n; ++shift) {
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) ok = a[i] == b[(i + shift) % n];
    if (ok) return true;
  }
  return false;
}

void BBox::expand(const Pt& p) {
  x0 = rat_min(x0, p.x);
  y0 = rat_min(y0, p.y);
  x1 = rat_max(x1, p.x);
  y1 = rat_max(y1, p.y);
}

Rat BBox::half_extent() const { return rat_max(x1 - x0, y1 - y0) / 2; }

std::optional<BBox> bbox_of(const std::vector<Pt>& pts) {
  if (pts.empty()) return std::nullopt;
  BBox b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const Pt& p : pts) b.expand(p);
  return b;
}

}  // namespace homcov
