#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "homcov/rational.hpp"

namespace homcov {

struct Pt {
  Rat x, y;
  Pt() : x(0), y(0) {}
  Pt(Rat px, Rat py) : x(std::move(px)), y(std::move(py)) {}
  bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Pt& o) const { return !(*this == o); }
};
using Vec = Pt;

inline Pt operator+(const Pt& a, const Pt& b) { return Pt(a.x + b.x, a.y + b.y); }
inline Pt operator-(const Pt& a, const Pt& b) { return Pt(a.x - b.x, a.y - b.y); }
inline Pt operator-(const Pt& a) { return Pt(-a.x, -a.y); }
inline Pt operator*(const Rat& s, const Pt& a) { return Pt(s * a.x, s * a.y); }

inline Rat cross(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
inline Rat dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y; }
inline Rat norm2(const Vec& a) { return a.x * a.x + a.y * a.y; }

// Lexicographic x-then-y order, used for deterministic tie-breaks.
inline bool pt_less(const Pt& a, const Pt& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

// Vertex list of a convex polygon in clockwise order.
using Polygon = std::vector<Pt>;

// 2x2 rational linear map.
struct Mat2 {
  Rat a, b, c, d;  // [[a b] [c d]]
  Pt apply(const Pt& p) const { return Pt(a * p.x + b * p.y, c * p.x + d * p.y); }
  Rat det() const { return a * d - b * c; }
  Mat2 inverse() const;
  Mat2 compose(const Mat2& inner) const;  // this * inner
};

inline Mat2 mat2_identity() { return Mat2{Rat(1), Rat(0), Rat(0), Rat(1)}; }

// The convex generator polygon after normalization: vertices clockwise,
// centered so the chosen center o is the origin, every vertex within
// distance 1 of o. neg_verts[i] = -verts[i] (also clockwise).
struct BasePolygon {
  Polygon verts;
  Polygon neg_verts;
};

// scale * S translated by anchor; reflected picks -S instead of S.
struct Homothet {
  Rat scale;
  Pt anchor;
  bool reflected = false;
};

// Closed convex cone {apex + s*d1 + t*d2 : s,t >= 0}; cross(d1,d2) != 0.
struct Wedge {
  Pt apex;
  Vec d1, d2;
};

enum class Location { Inside, Boundary, Outside };

Rat signed_area2(const Polygon& poly);
bool is_clockwise_convex(const Polygon& poly);  // strict convexity, no collinear triple

Polygon realize_homothet(const BasePolygon& base, const Homothet& h);

// Vertices of alpha*S + beta*S computed by merging edge chains by direction;
// alpha, beta >= 0, not both 0. Result clockwise.
Polygon minkowski_scale_sum(const BasePolygon& base, const Rat& alpha, const Rat& beta);

// Convex polygon, clockwise. Boundary counts as the polygon (closed set);
// the Location result distinguishes the strict cases.
Location point_in_polygon(const Pt& q, const Polygon& poly);

// Clip by the closed half-plane {x : dot(n,x) <= c}. Output may carry
// duplicate vertices; empty result means empty intersection.
Polygon clip_halfplane(const Polygon& poly, const Vec& n, const Rat& c);

// The two half-planes {x : dot(n,x) <= c} whose intersection is the wedge.
std::array<std::pair<Vec, Rat>, 2> wedge_halfplanes(const Wedge& w);

// Closed-set intersection tests. "open" variants ask for interior overlap,
// i.e. positive intersection area; tangency is closed-only contact.
bool polygons_intersect_closed(const Polygon& p, const Polygon& q);
bool polygons_intersect_open(const Polygon& p, const Polygon& q);
bool wedge_intersects_closed(const Wedge& w, const Polygon& poly);
bool wedge_intersects_open(const Wedge& w, const Polygon& poly);
Location point_in_wedge(const Pt& q, const Wedge& w);

// Intersection of the lines p + t*u and q + s*w. Requires cross(u, w) != 0.
Pt line_intersect(const Pt& p, const Vec& u, const Pt& q, const Vec& w);

// Cyclic equality of vertex lists (same orientation, any starting index).
bool cyclic_equal(const Polygon& a, const Polygon& b);

struct BBox {
  Rat x0, y0, x1, y1;
  void expand(const Pt& p);
  Pt center() const { return Pt((x0 + x1) / 2, (y0 + y1) / 2); }
  Rat half_extent() const;  // L-infinity half width
};
std::optional<BBox> bbox_of(const std::vector<Pt>& pts);

}  // namespace homcov
