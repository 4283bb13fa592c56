#include "homcov/duality.hpp"

#include <random>
#include <string>
#include <utility>

#include "homcov/errors.hpp"
#include "homcov/parallel.hpp"

namespace homcov {

namespace {

// portable draw: mt19937_64 output is pinned by the standard, distributions
// are not
long draw(std::mt19937_64& g, long lo, long hi) {
  return lo + static_cast<long>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rat draw_rat(std::mt19937_64& g, long lo, long hi) {
  long den = draw(g, 1, 16);
  return rat(draw(g, lo * den, hi * den), den);
}

}  // namespace

ContainIntersectSides statement1_holds(const DualityQuery& query,
                                       const BasePolygon& S) {
  if (query.alpha < 0 || query.beta < 0)
    fail(Errc::BadInput, "negative homothety scale");
  Polygon sum =
      realize_homothet(S, Homothet{query.alpha + query.beta, query.p, false});
  Polygon left = realize_homothet(S, Homothet{query.alpha, query.p, false});
  Polygon right = realize_homothet(S, Homothet{query.beta, query.q, true});
  ContainIntersectSides out;
  out.lhs = polygons_intersect_closed(sum, Polygon{query.q});
  out.rhs = polygons_intersect_closed(left, right);
  return out;
}

std::vector<DualityQuery> sample_queries(std::uint64_t count,
                                         std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::vector<DualityQuery> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    DualityQuery q;
    q.alpha = draw_rat(g, 0, 2);
    q.beta = draw_rat(g, 0, 2);
    q.p = Pt(draw_rat(g, -3, 3), draw_rat(g, -3, 3));
    q.q = Pt(draw_rat(g, -3, 3), draw_rat(g, -3, 3));
    out.push_back(std::move(q));
  }
  return out;
}

std::uint64_t count_statement1_mismatches(
    const BasePolygon& S, const std::vector<DualityQuery>& queries) {
  unsigned workers = worker_count();
  std::vector<std::uint64_t> bad(workers, 0);
  parallel_chunks(queries.size(),
                  [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
                    for (std::uint64_t i = begin; i < end; ++i) {
                      ContainIntersectSides s =
                          statement1_holds(queries[i], S);
                      if (s.lhs != s.rhs) ++bad[w];
                    }
                  });
  std::uint64_t total = 0;
  for (std::uint64_t b : bad) total += b;
  return total;
}

std::vector<Homothet> wedges_to_neg_copies(const PreparedPolygon& pp,
                                           const Configuration& c) {
  const Pt& va = pp.base.verts[pp.a_index];
  const Pt& vb = pp.base.verts[pp.b_index];
  std::vector<Homothet> out;
  out.reserve(c.a_apices.size() + c.b_apices.size());
  // the reflected copy reaches its lowest point at -v_a and its highest at
  // -v_b, so the downward family pins -v_b to the apex, the upward family
  // pins -v_a
  for (const Pt& apex : c.a_apices)
    out.push_back(Homothet{Rat(1), apex + vb, true});
  for (const Pt& apex : c.b_apices)
    out.push_back(Homothet{Rat(1), apex + va, true});

  Hypergraph want = geometric_hypergraph(pp, c, true);
  std::vector<Polygon> copies = realize_copies(pp, c);
  for (std::size_t j = 0; j < out.size(); ++j) {
    bool a_side = j < c.a_apices.size();
    const Mask128& edge = a_side ? want.a_edges[j]
                                 : want.b_edges[j - c.a_apices.size()];
    Polygon neg = realize_homothet(pp.base, out[j]);
    for (std::size_t i = 0; i < copies.size(); ++i) {
      bool expect = edge.test(i);
      if (polygons_intersect_closed(neg, copies[i]) != expect ||
          polygons_intersect_open(neg, copies[i]) != expect)
        fail(Errc::IncidenceDrift,
             "reflected copy meets a different set than its wedge");
    }
  }
  return out;
}

DualScene dualize(const PreparedPolygon& pp, const Configuration& c) {
  std::vector<Homothet> neg = wedges_to_neg_copies(pp, c);
  DualScene s;
  s.k = c.k;
  s.l = c.l;
  s.m = c.k == c.l ? c.k : 0;
  s.delta = c.delta;
  s.disc_center = c.disc_center;
  s.inflated.reserve(c.copies.size());
  for (const Homothet& cp : c.copies)
    s.inflated.push_back(Homothet{1 + cp.scale, cp.anchor, false});
  s.points.reserve(neg.size());
  for (std::size_t i = 0; i < c.a_apices.size(); ++i)
    s.points.push_back(DualPoint{neg[i].anchor, true, i});
  for (std::size_t j = 0; j < c.b_apices.size(); ++j)
    s.points.push_back(
        DualPoint{neg[c.a_apices.size() + j].anchor, false, j});
  s.line_a_y = c.disc_center.y + pp.base.verts[pp.b_index].y;
  s.line_b_y = c.disc_center.y + pp.base.verts[pp.a_index].y;

  // independent recheck: membership is decided point by point, not inherited
  // from the wedge incidences that produced the scene
  Hypergraph want = geometric_hypergraph(pp, c, true);
  std::vector<Polygon> grown;
  grown.reserve(s.inflated.size());
  for (const Homothet& h : s.inflated)
    grown.push_back(realize_homothet(pp.base, h));
  for (const DualPoint& pt : s.points) {
    const Mask128& edge =
        pt.a_side ? want.a_edges[pt.wedge] : want.b_edges[pt.wedge];
    int depth = 0;
    for (std::size_t i = 0; i < grown.size(); ++i) {
      Location loc = point_in_polygon(pt.q, grown[i]);
      if (loc == Location::Boundary)
        fail(Errc::IncidenceDrift, "dual membership decided by contact");
      bool inside = loc == Location::Inside;
      if (inside != edge.test(i))
        fail(Errc::IncidenceDrift,
             "dual membership differs from the wedge incidence");
      if (inside) ++depth;
    }
    if (depth != (pt.a_side ? c.k : c.l))
      fail(Errc::CertificateFailure, "dual point depth law violated");
    Rat line = pt.a_side ? s.line_a_y : s.line_b_y;
    if (rat_abs(pt.q.y - line) > s.delta)
      fail(Errc::CertificateFailure, "dual point outside its band");
  }
  return s;
}

Hypergraph dual_hypergraph(const BasePolygon& base, const DualScene& scene,
                           bool closed) {
  if (scene.inflated.size() > 128) fail(Errc::TooLarge, "more than 128 copies");
  std::vector<Polygon> grown;
  grown.reserve(scene.inflated.size());
  for (const Homothet& h : scene.inflated)
    grown.push_back(realize_homothet(base, h));
  Hypergraph h;
  h.n = grown.size();
  for (const DualPoint& pt : scene.points) {
    Mask128 e;
    for (std::size_t i = 0; i < grown.size(); ++i) {
      Location loc = point_in_polygon(pt.q, grown[i]);
      bool in = closed ? loc != Location::Outside : loc == Location::Inside;
      if (in) e.set(i);
    }
    (pt.a_side ? h.a_edges : h.b_edges).push_back(e);
  }
  return h;
}

bool verify_scale_band(const DualScene& scene, const Rat& eps) {
  for (const Homothet& h : scene.inflated)
    if (h.scale < 1 - eps || h.scale > 1 + eps) return false;
  return true;
}

bool verify_point_bands(const DualScene& scene) {
  for (const DualPoint& pt : scene.points) {
    Rat line = pt.a_side ? scene.line_a_y : scene.line_b_y;
    if (rat_abs(pt.q.y - line) > scene.delta) return false;
  }
  return true;
}

DualBuild build_dual(const PreparedPolygon& pp, int k, int l,
                     const Rat& delta_request) {
  Rat d = delta_request;
  std::string last = "reflected copies keep drifting";
  for (int retry = 0; retry <= 8; ++retry) {
    BuildResult br = build_configuration(pp, k, l, d);
    d = br.config.delta / 2;  // next attempt shrinks the accepted disc
    try {
      DualScene sc = dualize(br.prep, br.config);
      return DualBuild{std::move(br), std::move(sc), retry};
    } catch (const Error& e) {
      if (e.code() != Errc::IncidenceDrift) throw;
      last = e.what();
    }
  }
  fail(Errc::IncidenceDrift, last);
}

}  // namespace homcov
