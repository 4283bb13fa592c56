#include "homcov/prep.hpp"

#include <algorithm>
#include <optional>

#include "doctest.h"
#include "homcov/errors.hpp"
#include "homcov/presets.hpp"

using namespace homcov;

namespace {

template <typename F>
std::optional<Errc> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

Polygon diamond() { return preset_polygon("diamond"); }

// Re-derives every invariant prepare() promises, from the output alone.
void check_prepared(const PreparedPolygon& pp) {
  const Polygon& v = pp.base.verts;
  std::size_t n = v.size();
  REQUIRE(n >= 4);
  CHECK(is_clockwise_convex(v));

  REQUIRE(pp.base.neg_verts.size() == n);
  for (std::size_t i = 0; i < n; ++i) CHECK(pp.base.neg_verts[i] == -v[i]);

  // inside the unit disc but not shrunk far below it
  Rat m2(0);
  for (const Pt& p : v) {
    CHECK(norm2(p) <= 1);
    m2 = rat_max(m2, norm2(p));
  }
  CHECK(5 * m2 >= 1);

  // no horizontal side, and strict unique extremes at a_index / b_index
  for (std::size_t i = 0; i < n; ++i) CHECK(v[(i + 1) % n].y != v[i].y);
  CHECK(pp.a_index == 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != pp.a_index) CHECK(v[i].y < v[pp.a_index].y);
    if (i != pp.b_index) CHECK(v[i].y > v[pp.b_index].y);
  }
  CHECK((pp.a_index + 1) % n != pp.b_index);
  CHECK((pp.b_index + 1) % n != pp.a_index);

  // wedge templates are the edge directions at the extremes
  auto prev = [n](std::size_t i) { return (i + n - 1) % n; };
  auto next = [n](std::size_t i) { return (i + 1) % n; };
  CHECK(pp.wedges.a_d1 == v[pp.b_index] - v[prev(pp.b_index)]);
  CHECK(pp.wedges.a_d2 == v[pp.b_index] - v[next(pp.b_index)]);
  CHECK(pp.wedges.b_d1 == v[pp.a_index] - v[prev(pp.a_index)]);
  CHECK(pp.wedges.b_d2 == v[pp.a_index] - v[next(pp.a_index)]);
  CHECK(pp.wedges.a_d1.y < 0);
  CHECK(pp.wedges.a_d2.y < 0);
  CHECK(pp.wedges.b_d1.y > 0);
  CHECK(pp.wedges.b_d2.y > 0);

  // support quad: clockwise, corners at the extremes, supports every vertex
  const Polygon& q = pp.support_quad;
  REQUIRE(q.size() == 4);
  CHECK(is_clockwise_convex(q));
  CHECK(q[0] == v[pp.a_index]);
  CHECK(q[2] == v[pp.b_index]);
  for (std::size_t i = 0; i < 4; ++i) {
    Vec e = q[(i + 1) % 4] - q[i];
    bool touches = false;
    for (const Pt& p : v) {
      Rat side = cross(e, p - q[i]);
      CHECK(side <= 0);
      if (side == 0) touches = true;
    }
    CHECK(touches);
  }
}

void check_maps_onto(const Normalization& norm, const Polygon& input, const Polygon& out) {
  for (const Pt& p : input) {
    Pt image = norm.apply(p);
    bool found = false;
    for (const Pt& q : out) found = found || q == image;
    CHECK(found);
  }
}

}  // namespace

TEST_CASE("validate_polygon rejects bad inputs with specific codes") {
  Polygon triangle{Pt(rat(0), rat(0)), Pt(rat(1), rat(0)), Pt(rat(0), rat(1))};
  CHECK(code_of([&] { validate_polygon(triangle); }) == Errc::TooFewSides);

  Polygon arrowhead{Pt(rat(0), rat(2)), Pt(rat(2), rat(-2)), Pt(rat(0), rat(-1)),
                    Pt(rat(-2), rat(-2))};
  CHECK(code_of([&] { validate_polygon(arrowhead); }) == Errc::Unsupported);

  Polygon bowtie{Pt(rat(0), rat(0)), Pt(rat(2), rat(2)), Pt(rat(2), rat(0)),
                 Pt(rat(0), rat(2))};
  CHECK(code_of([&] { validate_polygon(bowtie); }) == Errc::NotConvex);

  // locally convex at every vertex but winds twice
  Polygon star{Pt(rat(0), rat(5)), Pt(rat(3), rat(-4)), Pt(rat(-5), rat(1)),
               Pt(rat(5), rat(1)), Pt(rat(-3), rat(-4))};
  CHECK(code_of([&] { validate_polygon(star); }) == Errc::NotConvex);

  Polygon collinear{Pt(rat(0), rat(0)), Pt(rat(1), rat(1)), Pt(rat(2), rat(2)),
                    Pt(rat(0), rat(4))};
  CHECK(code_of([&] { validate_polygon(collinear); }) == Errc::DegenerateVertex);

  Polygon repeated{Pt(rat(0), rat(1)), Pt(rat(1), rat(0)), Pt(rat(1), rat(0)),
                   Pt(rat(-1), rat(0))};
  CHECK(code_of([&] { validate_polygon(repeated); }) == Errc::DegenerateVertex);
}

TEST_CASE("validate_polygon reorients, centers, rescales") {
  Polygon ccw{Pt(rat(0), rat(1)), Pt(rat(-1), rat(0)), Pt(rat(0), rat(-1)),
              Pt(rat(1), rat(0))};
  Polygon out = validate_polygon(ccw);
  CHECK(is_clockwise_convex(out));
  CHECK(cyclic_equal(out, diamond()));

  Polygon shifted = diamond();
  for (Pt& p : shifted) p = p + Vec(rat(2), rat(3));
  CHECK(cyclic_equal(validate_polygon(shifted), diamond()));

  Polygon big = diamond();
  for (Pt& p : big) p = rat(10) * p;
  Polygon scaled = validate_polygon(big);
  REQUIRE(scaled.size() == 4);
  Rat lambda = rat_abs(scaled[0].y);
  CHECK(lambda > 0);
  CHECK(lambda <= 1);
  CHECK(5 * lambda * lambda >= 1);
  for (std::size_t i = 0; i < 4; ++i) CHECK(scaled[i] == lambda * diamond()[i]);
}

TEST_CASE("choose_direction takes the first usable direction") {
  DirectionChoice dc = choose_direction(diamond());
  CHECK(dc.d == Vec(rat(1), rat(0)));
  CHECK(dc.a_index == 0);
  CHECK(dc.b_index == 2);

  // horizontal side forces the pentagon off (1,0)
  DirectionChoice pc = choose_direction(preset_polygon("pentagon"));
  CHECK(pc.d == Vec(rat(-1), rat(1)));
  CHECK(pc.a_index == 3);
  CHECK(pc.b_index == 1);
}

TEST_CASE("choose_direction exhaustion raises NoValidDirection") {
  // octagon with sides parallel to every primitive direction of height 1
  Polygon oct = validate_polygon(
      {Pt(rat(0), rat(0)), Pt(rat(1), rat(0)), Pt(rat(2), rat(1)), Pt(rat(2), rat(2)),
       Pt(rat(1), rat(3)), Pt(rat(0), rat(3)), Pt(rat(-1), rat(2)), Pt(rat(-1), rat(1))});
  CHECK(code_of([&] { choose_direction(oct, 1); }) == Errc::NoValidDirection);
  DirectionChoice dc = choose_direction(oct);
  std::size_t n = oct.size();
  for (std::size_t i = 0; i < n; ++i)
    CHECK(cross(dc.d, oct[(i + 1) % n] - oct[i]) != 0);
}

TEST_CASE("support quad of the diamond is the diamond") {
  Polygon q = compute_support_quad(diamond(), 0, 2);
  CHECK(q == diamond());
}

TEST_CASE("support quad rejects adjacent extremes") {
  Polygon quad{Pt(rat(0), rat(2)), Pt(rat(2), rat(-2)), Pt(rat(0), rat(-1)),
               Pt(rat(-2), rat(1))};
  CHECK(code_of([&] { compute_support_quad(quad, 0, 1); }) == Errc::UnboundedQ);
}

TEST_CASE("prepare: diamond is already canonical") {
  Polygon ccw{Pt(rat(0), rat(1)), Pt(rat(-1), rat(0)), Pt(rat(0), rat(-1)),
              Pt(rat(1), rat(0))};
  PreparedPolygon pp = prepare(ccw);
  check_prepared(pp);
  CHECK(pp.base.verts == diamond());
  CHECK(pp.b_index == 2);
  CHECK(pp.direction == Vec(rat(1), rat(0)));
  CHECK(pp.support_quad == diamond());
  CHECK(pp.wedges.a_d1 == Vec(rat(-1), rat(-1)));
  CHECK(pp.wedges.a_d2 == Vec(rat(1), rat(-1)));
  CHECK(pp.wedges.b_d1 == Vec(rat(1), rat(1)));
  CHECK(pp.wedges.b_d2 == Vec(rat(-1), rat(1)));
  CHECK_FALSE(pp.norm.reflected);
  CHECK(pp.norm.pre_translate == Vec(rat(0), rat(0)));
  check_maps_onto(pp.norm, ccw, pp.base.verts);

  Wedge wa = make_a_wedge(pp.wedges, Pt(rat(5), rat(7)));
  CHECK(wa.apex == Pt(rat(5), rat(7)));
  CHECK(wa.d1 == pp.wedges.a_d1);
  Wedge wb = make_b_wedge(pp.wedges, Pt(rat(5), rat(7)));
  CHECK(wb.d2 == pp.wedges.b_d2);
}

TEST_CASE("prepare: pentagon invariants and determinism") {
  Polygon in = preset_polygon("pentagon");
  PreparedPolygon pp = prepare(in);
  check_prepared(pp);
  CHECK(pp.direction == Vec(rat(-1), rat(1)));
  check_maps_onto(pp.norm, in, pp.base.verts);

  PreparedPolygon again = prepare(in);
  CHECK(again.base.verts == pp.base.verts);
  CHECK(again.support_quad == pp.support_quad);
  CHECK(again.b_index == pp.b_index);
  CHECK(again.direction == pp.direction);
}

TEST_CASE("prepare: trapezoid and its mirror normalize identically") {
  Polygon in = preset_polygon("trapezoid");
  PreparedPolygon pp = prepare(in);
  check_prepared(pp);
  CHECK(pp.direction == Vec(rat(1), rat(0)));
  CHECK_FALSE(pp.norm.reflected);
  check_maps_onto(pp.norm, in, pp.base.verts);

  Polygon mirrored = in;
  for (Pt& p : mirrored) p.x = -p.x;
  PreparedPolygon mp = prepare(mirrored);
  check_prepared(mp);
  CHECK(mp.norm.reflected);
  CHECK(mp.base.verts == pp.base.verts);
  check_maps_onto(mp.norm, mirrored, mp.base.verts);
}

TEST_CASE("prepare: rotated translated diamond still normalizes") {
  // rational rotation by the 3-4-5 angle plus a shift
  Mat2 rot{rat(3, 5), rat(4, 5), rat(-4, 5), rat(3, 5)};
  Polygon in;
  for (const Pt& p : diamond()) in.push_back(rot.apply(p) + Vec(rat(2), rat(-1)));
  PreparedPolygon pp = prepare(in);
  check_prepared(pp);
  CHECK(pp.norm.reflected);  // leftmost vertex lands below the rightmost
  check_maps_onto(pp.norm, in, pp.base.verts);
}

TEST_CASE("flip_vertical mirrors and stays canonical") {
  PreparedPolygon dia = prepare(diamond());
  PreparedPolygon fdia = flip_vertical(dia);
  CHECK(fdia.base.verts == dia.base.verts);  // symmetric under the flip

  PreparedPolygon pent = prepare(preset_polygon("pentagon"));
  PreparedPolygon fp = flip_vertical(pent);
  check_prepared(fp);
  CHECK(fp.base.verts != pent.base.verts);
  // same point set, mirrored about the x-axis
  for (const Pt& v : pent.base.verts) {
    Pt m(v.x, -v.y);
    CHECK(std::count(fp.base.verts.begin(), fp.base.verts.end(), m) == 1);
  }
  // wedge roles swap: downward cone of the flip mirrors the upward cone,
  // with the boundary rays exchanged by the orientation reversal
  CHECK(fp.wedges.a_d1 == Vec(pent.wedges.b_d2.x, -pent.wedges.b_d2.y));
  CHECK(fp.wedges.a_d2 == Vec(pent.wedges.b_d1.x, -pent.wedges.b_d1.y));
  CHECK(fp.wedges.b_d1 == Vec(pent.wedges.a_d2.x, -pent.wedges.a_d2.y));
  CHECK(fp.wedges.b_d2 == Vec(pent.wedges.a_d1.x, -pent.wedges.a_d1.y));
  // involution, including the normalization map
  PreparedPolygon back = flip_vertical(fp);
  CHECK(back.base.verts == pent.base.verts);
  CHECK(back.b_index == pent.b_index);
  CHECK(back.norm.linear.a == pent.norm.linear.a);
  CHECK(back.norm.linear.b == pent.norm.linear.b);
  CHECK(back.norm.linear.c == pent.norm.linear.c);
  CHECK(back.norm.linear.d == pent.norm.linear.d);
  // flipping maps the input onto the flipped vertex set
  check_maps_onto(fp.norm, preset_polygon("pentagon"), fp.base.verts);
}
