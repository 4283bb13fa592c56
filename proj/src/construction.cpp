#include "homcov/construction.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "homcov/errors.hpp"
#include "homcov/hypergraph.hpp"

namespace homcov {

long config_copies(int k, int l) {
  if (k < 1 || l < 1) fail(Errc::BadInput, "tower indices must be positive");
  // binomial(k+l, k) - 1, computed exactly
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (l + i) / i;
    if (r > (1LL << 50)) fail(Errc::TooLarge, "size law overflow");
  }
  return static_cast<long>(r - 1);
}

long config_a_wedges(int k, int l) {
  if (k < 1 || l < 1) fail(Errc::BadInput, "tower indices must be positive");
  std::vector<std::vector<long long>> t(k + 1, std::vector<long long>(l + 1, 0));
  for (int kk = 1; kk <= k; ++kk) t[kk][1] = 1;
  for (int ll = 1; ll <= l; ++ll) t[1][ll] = ll;
  for (int kk = 2; kk <= k; ++kk)
    for (int ll = 2; ll <= l; ++ll) {
      t[kk][ll] = t[kk - 1][ll] + t[kk][ll - 1];
      if (t[kk][ll] > (1LL << 50)) fail(Errc::TooLarge, "size law overflow");
    }
  return static_cast<long>(t[k][l]);
}

long config_b_wedges(int k, int l) { return config_a_wedges(l, k); }

Rat max_inverse_slope(const WedgeTemplates& t) {
  // explicit Rat return: gmpxx lazy expressions must not escape the lambda
  auto ratio = [](const Vec& d) -> Rat { return rat_abs(d.x) / rat_abs(d.y); };
  return rat_max(rat_max(ratio(t.a_d1), ratio(t.a_d2)),
                 rat_max(ratio(t.b_d1), ratio(t.b_d2)));
}

Rat delta_cap(const WedgeTemplates& t) {
  Rat cap = Rat(1) / (Rat(8) * (Rat(1) + max_inverse_slope(t)));
  Rat d(1);
  while (d > cap) d /= 2;
  return d;
}

std::vector<Polygon> realize_copies(const PreparedPolygon& pp,
                                    const Configuration& c) {
  std::vector<Polygon> out;
  out.reserve(c.copies.size());
  for (const Homothet& h : c.copies) out.push_back(realize_homothet(pp.base, h));
  return out;
}

namespace {

// Open interval; nonempty iff lo < hi.
struct EPiece {
  Rat lo, hi;
};

// Parameter range {e : w0 + e*v in wedge}, clipped to [0, cap]. The strict
// variant asks for interior membership; both are exact intervals because a
// wedge is an intersection of two half-planes.
struct ERange {
  bool empty = false;
  Rat lo, hi;
};

ERange ray_range(const Pt& w0, const Vec& v, const Wedge& w, bool strict,
                 const Rat& cap) {
  ERange r;
  r.lo = Rat(0);
  r.hi = cap;
  for (const auto& [n, c] : wedge_halfplanes(w)) {
    Rat a = dot(n, v);
    Rat b = c - dot(n, w0);
    if (a == 0) {
      if (strict ? !(b > 0) : !(b >= 0)) r.empty = true;
    } else if (a > 0) {
      r.hi = rat_min(r.hi, b / a);
    } else {
      r.lo = rat_max(r.lo, b / a);
    }
    if (r.empty) return r;
  }
  if (strict ? !(r.lo < r.hi) : !(r.lo <= r.hi)) r.empty = true;
  return r;
}

// Keep only the part of each piece inside the open interval (r.lo, r.hi).
void intersect_open(std::vector<EPiece>& ps, const ERange& r) {
  if (r.empty) {
    ps.clear();
    return;
  }
  std::vector<EPiece> out;
  for (const EPiece& p : ps) {
    Rat lo = rat_max(p.lo, r.lo), hi = rat_min(p.hi, r.hi);
    if (lo < hi) out.push_back(EPiece{lo, hi});
  }
  ps = std::move(out);
}

// Remove the closed interval [r.lo, r.hi] from each piece.
void subtract_closed(std::vector<EPiece>& ps, const ERange& r) {
  if (r.empty) return;
  std::vector<EPiece> out;
  for (const EPiece& p : ps) {
    if (p.lo < r.lo) out.push_back(EPiece{p.lo, rat_min(p.hi, r.lo)});
    if (r.hi < p.hi) out.push_back(EPiece{rat_max(p.lo, r.hi), p.hi});
  }
  std::vector<EPiece> kept;
  for (const EPiece& p : out)
    if (p.lo < p.hi) kept.push_back(p);
  ps = std::move(kept);
}

Configuration translated(Configuration c, const Vec& v) {
  for (Homothet& h : c.copies) h.anchor = h.anchor + v;
  for (Pt& a : c.a_apices) a = a + v;
  for (Pt& b : c.b_apices) b = b + v;
  c.disc_center = c.disc_center + v;
  return c;
}

class Builder {
 public:
  Builder(const PreparedPolygon& p, Rat d)
      : pp(p), delta(std::move(d)), mhat(max_inverse_slope(p.wedges)) {}

  Configuration build(int k, int l) {
    auto key = std::make_pair(k, l);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Configuration c;
    if (l == 1)
      c = base_row_a(k);
    else if (k == 1)
      c = base_row_b(l);
    else
      c = combine(k, l);
    verify_configuration(pp, c);
    memo.emplace(key, c);
    return c;
  }

 private:
  const PreparedPolygon& pp;
  Rat delta;
  Rat mhat;
  std::map<std::pair<int, int>, Configuration> memo;

  const Pt& va() const { return pp.base.verts[pp.a_index]; }
  const Pt& vb() const { return pp.base.verts[pp.b_index]; }

  // Shrinks and recenters so the bounding box of all copy vertices and
  // apexes has L-infinity half extent in (delta/2, 7*delta/10]; then every
  // element is within delta of the origin in Euclidean distance.
  void rescale_into_disc(Configuration& c) const {
    std::vector<Pt> pts;
    for (const Polygon& poly : realize_copies(pp, c))
      pts.insert(pts.end(), poly.begin(), poly.end());
    pts.insert(pts.end(), c.a_apices.begin(), c.a_apices.end());
    pts.insert(pts.end(), c.b_apices.begin(), c.b_apices.end());
    BBox bb = *bbox_of(pts);
    Pt c0 = bb.center();
    Rat he = bb.half_extent();
    if (!(he > 0)) fail(Errc::CertificateFailure, "configuration has no extent");
    Rat t = simplest_between(delta / (2 * he), Rat(7) * delta / (10 * he));
    for (Homothet& h : c.copies) {
      h.anchor = t * (h.anchor - c0);
      h.scale *= t;
    }
    for (Pt& a : c.a_apices) a = t * (a - c0);
    for (Pt& b : c.b_apices) b = t * (b - c0);
    c.disc_center = Pt(Rat(0), Rat(0));
  }

  // Row of k unit copies with one a-wedge meeting all of them and one
  // pinned b-wedge per copy meeting only it.
  Configuration base_row_a(int k) {
    Configuration c;
    c.k = k;
    c.l = 1;
    c.delta = delta;
    Rat g = Rat(16) * (Rat(1) + mhat);
    for (int i = 0; i < k; ++i)
      c.copies.push_back(Homothet{Rat(1), Pt(Rat(i) * g, Rat(0)), false});
    std::vector<Polygon> polys = realize_copies(pp, c);

    // Join of the upward shadow cones at the copies' bottom vertices, in
    // cone coordinates, pushed one unit inside both boundary rays. The
    // shadow cone directions are the negated a-template rays, not the
    // b-template; they only coincide for centrally symmetric polygons.
    Mat2 mb{-pp.wedges.a_d1.x, -pp.wedges.a_d2.x, -pp.wedges.a_d1.y,
            -pp.wedges.a_d2.y};
    Mat2 inv = mb.inverse();
    Rat smax, tmax;
    for (int i = 0; i < k; ++i) {
      Pt cc = inv.apply(c.copies[i].anchor + vb());
      if (i == 0 || cc.x > smax) smax = cc.x;
      if (i == 0 || cc.y > tmax) tmax = cc.y;
    }
    Pt apex = mb.apply(Pt(smax + 1, tmax + 1));
    c.a_apices.push_back(apex);
    for (int i = 0; i < k; ++i)
      if (!wedge_intersects_open(make_a_wedge(pp.wedges, apex), polys[i]))
        fail(Errc::CertificateFailure, "row a-wedge misses a copy");

    // b-apexes sit just inside each copy, below its top vertex; tighten
    // until each pinned wedge isolates its own copy.
    Vec step = pp.wedges.b_d1 + pp.wedges.b_d2;
    Rat t = rat(1, 4);
    for (int tries = 0;; ++tries) {
      if (tries > 40) fail(Errc::SearchExhausted, "pinned b-wedge separation");
      c.b_apices.clear();
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        Pt b = c.copies[i].anchor + va() - t * step;
        c.b_apices.push_back(b);
        Wedge w = make_b_wedge(pp.wedges, b);
        ok = wedge_intersects_open(w, polys[i]);
        for (int j = 0; j < k && ok; ++j)
          if (j != i) ok = !wedge_intersects_closed(w, polys[j]);
      }
      if (ok && static_cast<int>(c.b_apices.size()) == k) break;
      t /= 2;
    }
    rescale_into_disc(c);
    return c;
  }

  // Mirror row: one b-wedge meets all l copies, pinned a-wedges isolate.
  Configuration base_row_b(int l) {
    Configuration c;
    c.k = 1;
    c.l = l;
    c.delta = delta;
    Rat g = Rat(16) * (Rat(1) + mhat);
    for (int i = 0; i < l; ++i)
      c.copies.push_back(Homothet{Rat(1), Pt(Rat(i) * g, Rat(0)), false});
    std::vector<Polygon> polys = realize_copies(pp, c);

    Mat2 ma{-pp.wedges.b_d1.x, -pp.wedges.b_d2.x, -pp.wedges.b_d1.y,
            -pp.wedges.b_d2.y};
    Mat2 inv = ma.inverse();
    Rat smax, tmax;
    for (int i = 0; i < l; ++i) {
      Pt cc = inv.apply(c.copies[i].anchor + va());
      if (i == 0 || cc.x > smax) smax = cc.x;
      if (i == 0 || cc.y > tmax) tmax = cc.y;
    }
    Pt apex = ma.apply(Pt(smax + 1, tmax + 1));
    c.b_apices.push_back(apex);
    for (int i = 0; i < l; ++i)
      if (!wedge_intersects_open(make_b_wedge(pp.wedges, apex), polys[i]))
        fail(Errc::CertificateFailure, "row b-wedge misses a copy");

    Vec step = pp.wedges.a_d1 + pp.wedges.a_d2;
    Rat t = rat(1, 4);
    for (int tries = 0;; ++tries) {
      if (tries > 40) fail(Errc::SearchExhausted, "pinned a-wedge separation");
      c.a_apices.clear();
      bool ok = true;
      for (int i = 0; i < l && ok; ++i) {
        Pt a = c.copies[i].anchor + vb() - t * step;
        c.a_apices.push_back(a);
        Wedge w = make_a_wedge(pp.wedges, a);
        ok = wedge_intersects_open(w, polys[i]);
        for (int j = 0; j < l && ok; ++j)
          if (j != i) ok = !wedge_intersects_closed(w, polys[j]);
      }
      if (ok && static_cast<int>(c.a_apices.size()) == l) break;
      t /= 2;
    }
    rescale_into_disc(c);
    return c;
  }

  // A copy meets an upward wedge iff its top vertex does, and a downward
  // wedge iff its bottom vertex does; so with anchor p and scale e the four
  // connector requirements are interval conditions on e along the rays
  // p + e*va and p + e*vb. Anchors sweep a dyadic grid between the clusters.
  std::optional<Homothet> find_connector(const Configuration& left,
                                         const Configuration& right) const {
    std::vector<Wedge> need_b, need_a, avoid_b, avoid_a;
    for (const Pt& b : left.b_apices) need_b.push_back(make_b_wedge(pp.wedges, b));
    for (const Pt& a : right.a_apices) need_a.push_back(make_a_wedge(pp.wedges, a));
    for (const Pt& b : right.b_apices) avoid_b.push_back(make_b_wedge(pp.wedges, b));
    for (const Pt& a : left.a_apices) avoid_a.push_back(make_a_wedge(pp.wedges, a));

    std::vector<Rat> qs;
    Rat qbase = Rat(3) * delta / 2;
    qs.push_back(qbase);
    for (int j = 1; j <= 20; ++j) {
      Rat off = Rat(j) * delta / 8;
      qs.push_back(qbase + off);
      qs.push_back(qbase - off);
    }
    for (int j = 5; j <= 12; ++j) {
      Rat off = Rat(j) * delta / 2;
      qs.push_back(qbase + off);
      qs.push_back(qbase - off);
    }
    std::vector<Rat> pxs;
    for (int lev = 1; lev <= 6; ++lev)
      for (long num = 1; num < (1L << lev); num += 2)
        pxs.push_back(rat(num, 1L << lev));

    const Rat cap(2);
    for (const Rat& q : qs) {
      for (const Rat& px : pxs) {
        Pt p(px, q);
        std::vector<EPiece> pieces{EPiece{Rat(0), cap}};
        for (const Wedge& w : need_b)
          intersect_open(pieces, ray_range(p, va(), w, true, cap));
        for (const Wedge& w : need_a)
          intersect_open(pieces, ray_range(p, vb(), w, true, cap));
        if (pieces.empty()) continue;
        for (const Wedge& w : avoid_b)
          subtract_closed(pieces, ray_range(p, va(), w, false, cap));
        for (const Wedge& w : avoid_a)
          subtract_closed(pieces, ray_range(p, vb(), w, false, cap));
        if (pieces.empty()) continue;
        const EPiece* best = &pieces[0];
        for (const EPiece& cand : pieces)
          if (cand.hi - cand.lo > best->hi - best->lo) best = &cand;
        return Homothet{simplest_between(best->lo, best->hi), p, false};
      }
    }
    return std::nullopt;
  }

  Configuration combine(int k, int l) {
    Configuration left = build(k, l - 1);
    Configuration right = translated(build(k - 1, l), Vec(Rat(1), Rat(3) * delta));
    std::optional<Homothet> conn = find_connector(left, right);
    if (!conn) fail(Errc::SearchExhausted, "connector placement");

    Configuration c;
    c.k = k;
    c.l = l;
    c.delta = delta;
    c.copies = left.copies;
    c.copies.insert(c.copies.end(), right.copies.begin(), right.copies.end());
    c.copies.push_back(*conn);
    c.a_apices = left.a_apices;
    c.a_apices.insert(c.a_apices.end(), right.a_apices.begin(),
                      right.a_apices.end());
    c.b_apices = left.b_apices;
    c.b_apices.insert(c.b_apices.end(), right.b_apices.begin(),
                      right.b_apices.end());
    rescale_into_disc(c);
    return c;
  }
};

}  // namespace

BuildResult build_configuration(const PreparedPolygon& pp, int k, int l,
                                const Rat& delta_request) {
  if (k < 1 || l < 1) fail(Errc::BadInput, "tower indices must be positive");
  if (!(delta_request > 0)) fail(Errc::BadInput, "delta must be positive");
  if (config_copies(k, l) > 128) fail(Errc::TooLarge, "more than 128 copies");

  PreparedPolygon flipped = flip_vertical(pp);
  std::string last = "connector placement";
  for (int halvings = 0; halvings <= 8; ++halvings) {
    for (int variant = 0; variant < 2; ++variant) {
      const PreparedPolygon& use = variant ? flipped : pp;
      Rat d = rat_min(delta_request, delta_cap(use.wedges));
      for (int i = 0; i < halvings; ++i) d /= 2;
      try {
        Builder b(use, d);
        Configuration cfg = b.build(k, l);  // throws before the aggregate
        return BuildResult{use, variant == 1, halvings, std::move(cfg)};
      } catch (const Error& e) {
        if (e.code() != Errc::SearchExhausted) throw;
        last = e.what();
      }
    }
  }
  fail(Errc::SearchExhausted, last);
}

void verify_configuration(const PreparedPolygon& pp, const Configuration& c) {
  if (c.k < 1 || c.l < 1) fail(Errc::BadInput, "tower indices must be positive");
  if (!(c.delta > 0)) fail(Errc::BadInput, "delta must be positive");
  if (static_cast<long>(c.copies.size()) != config_copies(c.k, c.l))
    fail(Errc::CertificateFailure, "copy count breaks the size law");
  if (static_cast<long>(c.a_apices.size()) != config_a_wedges(c.k, c.l))
    fail(Errc::CertificateFailure, "a-wedge count breaks the size law");
  if (static_cast<long>(c.b_apices.size()) != config_b_wedges(c.k, c.l))
    fail(Errc::CertificateFailure, "b-wedge count breaks the size law");

  for (const Homothet& h : c.copies) {
    if (!(h.scale > 0) || h.scale > 1)
      fail(Errc::CertificateFailure, "copy scale outside (0,1]");
    if (h.reflected)
      fail(Errc::CertificateFailure, "reflected copy in configuration");
  }

  Rat d2 = c.delta * c.delta;
  auto inside = [&](const Pt& p) { return norm2(p - c.disc_center) <= d2; };
  for (const Polygon& poly : realize_copies(pp, c))
    for (const Pt& v : poly)
      if (!inside(v)) fail(Errc::CertificateFailure, "copy leaves the disc");
  for (const Pt& a : c.a_apices)
    if (!inside(a)) fail(Errc::CertificateFailure, "a-apex leaves the disc");
  for (const Pt& b : c.b_apices)
    if (!inside(b)) fail(Errc::CertificateFailure, "b-apex leaves the disc");

  Hypergraph open = geometric_hypergraph(pp, c, false);
  Hypergraph closed = geometric_hypergraph(pp, c, true);
  if (!(open == closed)) fail(Errc::CertificateFailure, "tangent incidence");
  if (!(open == structural_hypergraph(c.k, c.l)))
    fail(Errc::CertificateFailure, "incidence structure mismatch");
}

}  // namespace homcov
