#pragma once

#include <cstddef>

#include "homcov/geom.hpp"

namespace homcov {

// Affine map applied to the input polygon: x -> linear * (x + pre_translate).
struct Normalization {
  Vec pre_translate;  // minus the area centroid of the input
  Mat2 linear;        // scale into the unit disc, rotate the chosen direction
                      // horizontal, optional y-axis reflection, rescale
  bool reflected = false;
  Pt apply(const Pt& p) const { return linear.apply(p + pre_translate); }
};

// Cone directions for the two translated wedge families. An a-wedge is the
// cone of -S at its height-maximal vertex and opens downward; a b-wedge is
// the cone of -S at its height-minimal vertex and opens upward. Boundary rays
// are parallel to the support lines at the extreme vertices of S.
struct WedgeTemplates {
  Vec a_d1, a_d2;  // strictly downward
  Vec b_d1, b_d2;  // strictly upward
};

inline Wedge make_a_wedge(const WedgeTemplates& t, const Pt& apex) {
  return Wedge{apex, t.a_d1, t.a_d2};
}
inline Wedge make_b_wedge(const WedgeTemplates& t, const Pt& apex) {
  return Wedge{apex, t.b_d1, t.b_d2};
}

struct DirectionChoice {
  Vec d;                // primitive integer vector
  std::size_t a_index;  // vertex extremal along d's left normal
  std::size_t b_index;  // opposite extreme
};

struct PreparedPolygon {
  BasePolygon base;      // clockwise, centered, inside the unit disc
  std::size_t a_index;   // top vertex; always 0 after preparation
  std::size_t b_index;   // bottom vertex
  Polygon support_quad;  // [v_a, w_r, v_b, w_l], clockwise
  WedgeTemplates wedges;
  Normalization norm;
  Vec direction;  // chosen direction, in input coordinates
};

// Checks the input is a strictly convex polygon with at least four sides,
// reorients it clockwise, moves the area centroid to the origin and scales it
// into the unit disc. Raises TooFewSides, DegenerateVertex (repeated vertex
// or collinear triple), Unsupported (simple but concave), NotConvex
// (self-intersecting or winding more than once).
Polygon validate_polygon(const Polygon& input);

// First primitive integer direction d, ordered by increasing max(|dx|,|dy|)
// then by a fixed scan, such that no side of the polygon is parallel to d and
// the two extremes along d's left normal are unique and non-adjacent. Raises
// NoValidDirection when no candidate with max(|dx|,|dy|) <= max_radius fits.
DirectionChoice choose_direction(const Polygon& cw_poly, long max_radius = 64);

// Quadrilateral bounded by the support lines of the four edges adjacent to
// the top and bottom vertices, listed [v_a, w_r, v_b, w_l] clockwise. Raises
// UnboundedQ when the two right lines or the two left lines are parallel;
// with unique non-adjacent extremes that cannot happen.
Polygon compute_support_quad(const Polygon& cw_poly, std::size_t a_index,
                             std::size_t b_index);

// Wedge cone directions read off the edges at the extreme vertices.
WedgeTemplates wedge_templates(const Polygon& cw_poly, std::size_t a_index,
                               std::size_t b_index);

// Full pipeline: validate, choose a direction, rotate it horizontal, reflect
// about the y-axis when the left x-extreme sits lower than the right one,
// rescale into the unit disc, and rotate the vertex list so the top vertex
// comes first.
PreparedPolygon prepare(const Polygon& input);

// Same polygon mirrored about the x-axis, re-canonicalized so all
// PreparedPolygon invariants hold again. Swaps the roles of the two wedge
// families; used as a fallback when connector placement fails in the
// original orientation. Involution up to exact equality.
PreparedPolygon flip_vertical(const PreparedPolygon& pp);

}  // namespace homcov
