#include <random>

#include "doctest.h"
#include "homcov/errors.hpp"
#include "homcov/geom.hpp"

using namespace homcov;

namespace {

BasePolygon make_base(Polygon verts) {
  BasePolygon b;
  b.verts = std::move(verts);
  b.neg_verts.reserve(b.verts.size());
  for (const Pt& v : b.verts) b.neg_verts.push_back(-v);
  return b;
}

BasePolygon diamond() {
  return make_base({Pt(rat(0), rat(1)), Pt(rat(1), rat(0)), Pt(rat(0), rat(-1)),
                    Pt(rat(-1), rat(0))});
}

BasePolygon pentagon() {
  return make_base({Pt(rat(0), rat(1)), Pt(rat(19, 20), rat(31, 100)), Pt(rat(3, 5), rat(-4, 5)),
                    Pt(rat(-3, 5), rat(-4, 5)), Pt(rat(-19, 20), rat(31, 100))});
}

BasePolygon skew_quad() {
  return make_base({Pt(rat(-7, 8), rat(1, 2)), Pt(rat(3, 4), rat(7, 8)), Pt(rat(1), rat(-1, 4)),
                    Pt(rat(-1, 2), rat(-7, 8))});
}

// Independent oracle: separating-axis test over edge normals of both
// polygons. Degenerate (single point) operands contribute no axes.
struct SatVerdict {
  bool closed;  // closed sets meet
  bool open;    // interiors meet
};

void axis_ranges(const Polygon& p, const Vec& n, Rat& lo, Rat& hi) {
  lo = hi = dot(n, p[0]);
  for (const Pt& v : p) {
    Rat d = dot(n, v);
    lo = rat_min(lo, d);
    hi = rat_max(hi, d);
  }
}

SatVerdict sat_polygons(const Polygon& p, const Polygon& q) {
  std::vector<Vec> axes;
  auto add_axes = [&](const Polygon& poly) {
    for (size_t i = 0; i < poly.size(); ++i) {
      Vec e = poly[(i + 1) % poly.size()] - poly[i];
      if (e.x == 0 && e.y == 0) continue;
      axes.push_back(Vec(-e.y, e.x));
    }
  };
  add_axes(p);
  add_axes(q);
  bool strict_sep = false, weak_sep = false;
  for (const Vec& n : axes) {
    Rat plo, phi, qlo, qhi;
    axis_ranges(p, n, plo, phi);
    axis_ranges(q, n, qlo, qhi);
    if (phi < qlo || qhi < plo) strict_sep = true;
    if (phi <= qlo || qhi <= plo) weak_sep = true;
  }
  if (axes.empty()) {  // two points
    bool same = p[0] == q[0];
    return {same, false};
  }
  auto degenerate = [](const Polygon& poly) {
    for (size_t i = 1; i < poly.size(); ++i)
      if (poly[i] != poly[0]) return false;
    return true;
  };
  bool open = !weak_sep && !degenerate(p) && !degenerate(q);
  return {!strict_sep, open};
}

// Independent oracle for wedge vs polygon: axes are the polygon's edge
// normals plus the wedge ray normals; an axis bounds the cone only when
// both ray directions have non-positive component along it.
SatVerdict sat_wedge(const Wedge& w, const Polygon& poly) {
  std::vector<Vec> axes;
  for (size_t i = 0; i < poly.size(); ++i) {
    Vec e = poly[(i + 1) % poly.size()] - poly[i];
    axes.push_back(Vec(-e.y, e.x));
    axes.push_back(Vec(e.y, -e.x));
  }
  for (const Vec& d : {w.d1, w.d2}) {
    axes.push_back(Vec(-d.y, d.x));
    axes.push_back(Vec(d.y, -d.x));
  }
  bool strict_sep = false, weak_sep = false;
  for (const Vec& n : axes) {
    if (dot(n, w.d1) > 0 || dot(n, w.d2) > 0) continue;  // cone unbounded along n
    Rat cone_hi = dot(n, w.apex);
    Rat plo, phi;
    axis_ranges(poly, n, plo, phi);
    if (cone_hi < plo) strict_sep = true;
    if (cone_hi <= plo) weak_sep = true;
  }
  return {!strict_sep, !weak_sep};
}

}  // namespace

TEST_CASE("realize_homothet identity and scaling") {
  BasePolygon d = diamond();
  Polygon id = realize_homothet(d, Homothet{rat(1), Pt(rat(0), rat(0)), false});
  CHECK(id == d.verts);

  Polygon big = realize_homothet(d, Homothet{rat(2), Pt(rat(3), rat(0)), false});
  Polygon expect = {Pt(rat(3), rat(2)), Pt(rat(5), rat(0)), Pt(rat(3), rat(-2)),
                    Pt(rat(1), rat(0))};
  CHECK(big == expect);
}

TEST_CASE("realize_homothet reflected matches per-vertex evaluation") {
  BasePolygon q = skew_quad();
  Homothet h{rat(1, 2), Pt(rat(1), rat(1)), true};
  Polygon got = realize_homothet(q, h);
  REQUIRE(got.size() == q.verts.size());
  for (size_t i = 0; i < q.verts.size(); ++i) {
    // oracle: anchor + scale * (-v_i), computed from the unreflected list
    CHECK(got[i].x == rat(1) + rat(1, 2) * (-q.verts[i].x));
    CHECK(got[i].y == rat(1) + rat(1, 2) * (-q.verts[i].y));
  }
  CHECK(is_clockwise_convex(got));
}

TEST_CASE("realized homothets stay clockwise convex") {
  for (const BasePolygon& b : {diamond(), pentagon(), skew_quad()}) {
    CHECK(is_clockwise_convex(b.verts));
    CHECK(is_clockwise_convex(b.neg_verts));
    for (bool refl : {false, true}) {
      Polygon r = realize_homothet(b, Homothet{rat(3, 7), Pt(rat(-2), rat(5)), refl});
      CHECK(is_clockwise_convex(r));
    }
  }
}

TEST_CASE("minkowski_scale_sum equals the combined homothet") {
  BasePolygon d = diamond();
  SUBCASE("unit plus zero") {
    CHECK(cyclic_equal(minkowski_scale_sum(d, rat(1), rat(0)), d.verts));
    CHECK(cyclic_equal(minkowski_scale_sum(d, rat(0), rat(1)), d.verts));
  }
  SUBCASE("one plus one gives the doubled polygon") {
    Polygon sum = minkowski_scale_sum(d, rat(1), rat(1));
    Polygon twice = realize_homothet(d, Homothet{rat(2), Pt(rat(0), rat(0)), false});
    CHECK(cyclic_equal(sum, twice));
  }
  SUBCASE("random scale pairs on all fixtures") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<long> num(0, 32);
    for (const BasePolygon& b : {diamond(), pentagon(), skew_quad()}) {
      for (int it = 0; it < 200; ++it) {
        Rat a = rat(num(rng), 16), c = rat(num(rng), 16);
        if (a == 0 && c == 0) continue;
        Polygon sum = minkowski_scale_sum(b, a, c);
        Polygon direct = realize_homothet(b, Homothet{a + c, Pt(rat(0), rat(0)), false});
        CHECK(cyclic_equal(sum, direct));
      }
    }
  }
}

TEST_CASE("point_in_polygon three-state answers") {
  Polygon d = diamond().verts;
  CHECK(point_in_polygon(Pt(rat(0), rat(0)), d) == Location::Inside);
  CHECK(point_in_polygon(Pt(rat(0), rat(1)), d) == Location::Boundary);
  CHECK(point_in_polygon(Pt(rat(1, 2), rat(1, 2)), d) == Location::Boundary);
  CHECK(point_in_polygon(Pt(rat(1), rat(1, 1000000)), d) == Location::Outside);
  CHECK(point_in_polygon(Pt(rat(1, 2), rat(1, 3)), d) == Location::Inside);
}

TEST_CASE("polygon intersection frozen cases") {
  BasePolygon d = diamond();
  Polygon a = d.verts;
  Polygon touch = realize_homothet(d, Homothet{rat(1), Pt(rat(2), rat(0)), false});
  CHECK(polygons_intersect_closed(a, touch));
  CHECK_FALSE(polygons_intersect_open(a, touch));

  Polygon apart = realize_homothet(d, Homothet{rat(1), Pt(rat(2), rat(1, 100)), false});
  CHECK_FALSE(polygons_intersect_closed(a, apart));

  Polygon nested = realize_homothet(d, Homothet{rat(1, 3), Pt(rat(0), rat(0)), false});
  CHECK(polygons_intersect_closed(a, nested));
  CHECK(polygons_intersect_open(a, nested));
}

TEST_CASE("polygon intersection agrees with separating-axis oracle") {
  std::mt19937 rng(991731);
  std::uniform_int_distribution<long> coord(-48, 48);
  std::uniform_int_distribution<long> scale(0, 24);
  std::uniform_int_distribution<int> which(0, 2);
  BasePolygon shapes[3] = {diamond(), pentagon(), skew_quad()};
  for (int it = 0; it < 600; ++it) {
    const BasePolygon& pb = shapes[which(rng)];
    const BasePolygon& qb = shapes[which(rng)];
    Polygon p = realize_homothet(pb, Homothet{rat(scale(rng), 8), Pt(rat(coord(rng), 16), rat(coord(rng), 16)), false});
    Polygon q = realize_homothet(qb, Homothet{rat(scale(rng), 8), Pt(rat(coord(rng), 16), rat(coord(rng), 16)), it % 2 == 0});
    SatVerdict oracle = sat_polygons(p, q);
    CHECK(polygons_intersect_closed(p, q) == oracle.closed);
    CHECK(polygons_intersect_open(p, q) == oracle.open);
  }
}

TEST_CASE("wedge intersection frozen cases") {
  Polygon d = diamond().verts;
  Wedge down{Pt(rat(0), rat(2)), Vec(rat(1), rat(-1)), Vec(rat(-1), rat(-1))};
  CHECK(wedge_intersects_closed(down, d));
  CHECK(wedge_intersects_open(down, d));

  Wedge below{Pt(rat(0), rat(-2)), Vec(rat(1), rat(-1)), Vec(rat(-1), rat(-1))};
  CHECK_FALSE(wedge_intersects_closed(below, d));

  Wedge graze{Pt(rat(2), rat(0)), Vec(rat(1), rat(1)), Vec(rat(1), rat(-1))};
  // apex on the polygon's rightmost vertex translated: cone points away, touch only
  Wedge touch{Pt(rat(1), rat(0)), Vec(rat(1), rat(1)), Vec(rat(1), rat(-1))};
  CHECK_FALSE(wedge_intersects_closed(graze, d));
  CHECK(wedge_intersects_closed(touch, d));
  CHECK_FALSE(wedge_intersects_open(touch, d));

  CHECK(point_in_wedge(Pt(rat(0), rat(1)), down) == Location::Inside);
  CHECK(point_in_wedge(Pt(rat(5), rat(-3)), down) == Location::Boundary);
  CHECK(point_in_wedge(Pt(rat(0), rat(3)), down) == Location::Outside);
}

TEST_CASE("wedge intersection agrees with separating-axis oracle") {
  std::mt19937 rng(442211);
  std::uniform_int_distribution<long> coord(-40, 40);
  std::uniform_int_distribution<long> scale(1, 16);
  std::uniform_int_distribution<int> which(0, 2);
  Vec dirs[6] = {Vec(rat(1), rat(-1)), Vec(rat(-1), rat(-1)), Vec(rat(1), rat(2)),
                 Vec(rat(-2), rat(1)), Vec(rat(3), rat(1)), Vec(rat(0), rat(-1))};
  BasePolygon shapes[3] = {diamond(), pentagon(), skew_quad()};
  int checked = 0;
  for (int it = 0; it < 900; ++it) {
    Vec d1 = dirs[which(rng) * 2], d2 = dirs[which(rng) * 2 + 1];
    if (cross(d1, d2) == 0) continue;
    Wedge w{Pt(rat(coord(rng), 8), rat(coord(rng), 8)), d1, d2};
    Polygon p = realize_homothet(shapes[which(rng)],
                                 Homothet{rat(scale(rng), 8), Pt(rat(coord(rng), 16), rat(coord(rng), 16)), false});
    SatVerdict oracle = sat_wedge(w, p);
    CHECK(wedge_intersects_closed(w, p) == oracle.closed);
    CHECK(wedge_intersects_open(w, p) == oracle.open);
    ++checked;
  }
  CHECK(checked > 500);
}

TEST_CASE("degenerate operands: points as polygons") {
  Polygon d = diamond().verts;
  Polygon pt_in = {Pt(rat(0), rat(0)), Pt(rat(0), rat(0)), Pt(rat(0), rat(0)),
                   Pt(rat(0), rat(0))};
  Polygon pt_on = {Pt(rat(1), rat(0)), Pt(rat(1), rat(0)), Pt(rat(1), rat(0)),
                   Pt(rat(1), rat(0))};
  Polygon pt_out = {Pt(rat(2), rat(0)), Pt(rat(2), rat(0)), Pt(rat(2), rat(0)),
                    Pt(rat(2), rat(0))};
  CHECK(polygons_intersect_closed(d, pt_in));
  CHECK(polygons_intersect_closed(pt_on, d));
  CHECK_FALSE(polygons_intersect_closed(d, pt_out));
  CHECK_FALSE(polygons_intersect_open(d, pt_in));
  CHECK(polygons_intersect_closed(pt_in, pt_in));
  CHECK_FALSE(polygons_intersect_closed(pt_in, pt_on));
}

TEST_CASE("bbox helper") {
  auto bb = bbox_of({Pt(rat(1), rat(2)), Pt(rat(-3), rat(5)), Pt(rat(2), rat(-1))});
  REQUIRE(bb.has_value());
  CHECK(bb->x0 == rat(-3));
  CHECK(bb->x1 == rat(2));
  CHECK(bb->y0 == rat(-1));
  CHECK(bb->y1 == rat(5));
  CHECK(bb->half_extent() == rat(3));
  CHECK(bb->center() == Pt(rat(-1, 2), rat(2)));
}

TEST_CASE("line_intersect solves exactly and rejects parallels") {
  Pt hit = line_intersect(Pt(rat(0), rat(0)), Vec(rat(1), rat(1)), Pt(rat(0), rat(2)),
                          Vec(rat(1), rat(-1)));
  CHECK(hit == Pt(rat(1), rat(1)));
  Pt skew = line_intersect(Pt(rat(2), rat(3)), Vec(rat(2), rat(6)), Pt(rat(7), rat(-1)),
                           Vec(rat(0), rat(5)));
  CHECK(skew == Pt(rat(7), rat(18)));
  CHECK_THROWS_AS(line_intersect(Pt(rat(0), rat(0)), Vec(rat(1), rat(2)),
                                 Pt(rat(5), rat(5)), Vec(rat(-2), rat(-4))),
                  Error);
}
