#include "homcov/extension.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>

#include "homcov/errors.hpp"
#include "homcov/parallel.hpp"

namespace homcov {

namespace {

// largest power of two <= x; x > 0
Rat dyadic_at_most(const Rat& x) {
  if (x <= 0) fail(Errc::BadInput, "pitch bound must be positive");
  Rat r(1);
  while (r > x) r /= 2;
  while (r * 2 <= x) r *= 2;
  return r;
}

// outward normal of the clockwise edge u -> v
Vec outward_normal(const Pt& u, const Pt& v) {
  Vec e = v - u;
  return Vec(-e.y, e.x);
}

// rational lower bound on the distance from the origin to every edge line;
// requires the origin strictly inside, which preparation guarantees
Rat inradius_lb(const Polygon& verts) {
  Rat best;
  bool first = true;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Pt& u = verts[i];
    const Pt& v = verts[(i + 1) % verts.size()];
    Vec n = outward_normal(u, v);
    Rat c = dot(n, u);
    if (c <= 0) fail(Errc::BadInput, "origin not interior to the polygon");
    Rat d = sqrt_lower_bound(c * c / norm2(n), 24);
    if (first || d < best) {
      best = d;
      first = false;
    }
  }
  if (first || best <= 0) fail(Errc::BadInput, "degenerate polygon");
  return best;
}

Rat rat_of(const mpz_class& n, const mpz_class& d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

// exact point x = xn/d, y = yn/d with d > 0
struct IPt {
  mpz_class xn, yn, d;

  void reduce() {
    mpz_class g = gcd(gcd(abs(xn), abs(yn)), d);
    if (g > 1) {
      xn /= g;
      yn /= g;
      d /= g;
    }
  }
  Pt to_pt() const { return Pt(rat_of(xn, d), rat_of(yn, d)); }
};

IPt ipt_of(const Pt& p) {
  mpz_class l = lcm(p.x.get_den(), p.y.get_den());
  IPt q;
  q.xn = p.x.get_num() * (l / p.x.get_den());
  q.yn = p.y.get_num() * (l / p.y.get_den());
  q.d = l;
  return q;
}

constexpr int kFastBits = 62;   // operand fits a signed 64-bit register
constexpr int kFastSum = 120;   // product plus slack stays inside __int128

int bits_of(const mpz_class& z) {
  return z == 0 ? 1 : static_cast<int>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

// cached narrow view of a point for the __int128 membership fast path
struct PtView {
  const IPt* p;
  bool fits;
  long long x = 0, y = 0, d = 0;
  int bits = 0;
  double fx, fy;

  explicit PtView(const IPt& q) : p(&q) {
    bits = std::max(bits_of(q.xn), std::max(bits_of(q.yn), bits_of(q.d)));
    fits = bits <= kFastBits && q.xn.fits_slong_p() && q.yn.fits_slong_p() &&
           q.d.fits_slong_p();
    if (fits) {
      x = q.xn.get_si();
      y = q.yn.get_si();
      d = q.d.get_si();
    }
    fx = mpz_get_d(q.xn.get_mpz_t()) / mpz_get_d(q.d.get_mpz_t());
    fy = mpz_get_d(q.yn.get_mpz_t()) / mpz_get_d(q.d.get_mpz_t());
  }
};

// perturbation direction with the same narrow caching
struct DirView {
  mpz_class x, y;
  bool fits = false;
  long long lx = 0, ly = 0;
  int bits = 0;

  DirView() = default;
  DirView(const mpz_class& a, const mpz_class& b) : x(a), y(b) {
    bits = std::max(bits_of(x), bits_of(y));
    fits = bits <= kFastBits && x.fits_slong_p() && y.fits_slong_p();
    if (fits) {
      lx = x.get_si();
      ly = y.get_si();
    }
  }
};

// half-plane A*x + B*y <= C with primitive integer coefficients
struct EdgeInts {
  mpz_class A, B, C;
};

EdgeInts edge_ints(const Pt& u, const Pt& v) {
  Vec n = outward_normal(u, v);
  Rat c = dot(n, u);
  mpz_class l = lcm(lcm(n.x.get_den(), n.y.get_den()), c.get_den());
  EdgeInts e;
  e.A = n.x.get_num() * (l / n.x.get_den());
  e.B = n.y.get_num() * (l / n.y.get_den());
  e.C = c.get_num() * (l / c.get_den());
  mpz_class g = gcd(gcd(abs(e.A), abs(e.B)), abs(e.C));
  if (g > 1) {
    e.A /= g;
    e.B /= g;
    e.C /= g;
  }
  return e;
}

// {x : a*x + b*y = c}, sign-normalized so parallel duplicates collapse
struct LineKey {
  mpz_class a, b, c;
  bool operator<(const LineKey& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }
};

LineKey key_of(const EdgeInts& e) {
  LineKey k{e.A, e.B, e.C};
  if (k.a < 0 || (k.a == 0 && k.b < 0)) {
    k.a = -k.a;
    k.b = -k.b;
    k.c = -k.c;
  }
  return k;
}

struct PolyRec {
  std::array<double, 4> box;  // padded double bbox: x0, x1, y0, y1
  std::vector<EdgeInts> edges;
  std::vector<std::array<long long, 3>> fe;
  bool fast = false;
  int coeff_bits = 0;
};

// realized family with integer edge data, bucketed on a unit grid
struct DepthIndex {
  std::vector<Polygon> polys;
  std::vector<PolyRec> recs;
  std::map<std::pair<long, long>, std::vector<std::uint32_t>> grid;

  DepthIndex(const BasePolygon& base, const std::vector<Homothet>& family) {
    polys.reserve(family.size());
    for (const Homothet& h : family) polys.push_back(realize_homothet(base, h));
    recs.reserve(polys.size());
    for (std::size_t i = 0; i < polys.size(); ++i) {
      PolyRec r;
      Rat x0 = polys[i][0].x, x1 = x0, y0 = polys[i][0].y, y1 = y0;
      for (const Pt& v : polys[i]) {
        x0 = rat_min(x0, v.x);
        y0 = rat_min(y0, v.y);
        x1 = rat_max(x1, v.x);
        y1 = rat_max(y1, v.y);
      }
      r.box = {rat_double(x0) - 1e-6, rat_double(x1) + 1e-6,
               rat_double(y0) - 1e-6, rat_double(y1) + 1e-6};
      r.fast = true;
      for (std::size_t e = 0; e < polys[i].size(); ++e) {
        EdgeInts ei = edge_ints(polys[i][e], polys[i][(e + 1) % polys[i].size()]);
        r.coeff_bits = std::max(
            r.coeff_bits,
            std::max(bits_of(ei.A), std::max(bits_of(ei.B), bits_of(ei.C))));
        r.fast = r.fast && ei.A.fits_slong_p() && ei.B.fits_slong_p() &&
                 ei.C.fits_slong_p();
        r.edges.push_back(std::move(ei));
      }
      if (r.coeff_bits > kFastBits) r.fast = false;
      if (r.fast)
        for (const EdgeInts& e : r.edges)
          r.fe.push_back({e.A.get_si(), e.B.get_si(), e.C.get_si()});
      recs.push_back(std::move(r));

      const std::array<double, 4>& b = recs.back().box;
      long cx0 = static_cast<long>(std::floor(b[0]));
      long cx1 = static_cast<long>(std::floor(b[1]));
      long cy0 = static_cast<long>(std::floor(b[2]));
      long cy1 = static_cast<long>(std::floor(b[3]));
      for (long cx = cx0; cx <= cx1; ++cx)
        for (long cy = cy0; cy <= cy1; ++cy)
          grid[{cx, cy}].push_back(static_cast<std::uint32_t>(i));
    }
  }

  bool contains_closed(const PolyRec& r, const PtView& v) const {
    if (r.fast && v.fits && r.coeff_bits + v.bits <= kFastSum) {
      for (const std::array<long long, 3>& e : r.fe) {
        __int128 s = static_cast<__int128>(e[0]) * v.x +
                     static_cast<__int128>(e[1]) * v.y -
                     static_cast<__int128>(e[2]) * v.d;
        if (s > 0) return false;
      }
      return true;
    }
    for (const EdgeInts& e : r.edges) {
      mpz_class s = e.A * v.p->xn + e.B * v.p->yn - e.C * v.p->d;
      if (s > 0) return false;
    }
    return true;
  }

  // membership of v + 0+*dir; boundary ties resolved by the direction,
  // which is never parallel to an edge through the sample point
  bool contains_perturbed(const PolyRec& r, const PtView& v,
                          const DirView& n) const {
    if (r.fast && v.fits && n.fits && r.coeff_bits + v.bits <= kFastSum &&
        r.coeff_bits + n.bits <= kFastSum) {
      for (const std::array<long long, 3>& e : r.fe) {
        __int128 s = static_cast<__int128>(e[0]) * v.x +
                     static_cast<__int128>(e[1]) * v.y -
                     static_cast<__int128>(e[2]) * v.d;
        if (s > 0) return false;
        if (s == 0) {
          __int128 t = static_cast<__int128>(e[0]) * n.lx +
                       static_cast<__int128>(e[1]) * n.ly;
          if (t > 0) return false;
        }
      }
      return true;
    }
    for (const EdgeInts& e : r.edges) {
      mpz_class s = e.A * v.p->xn + e.B * v.p->yn - e.C * v.p->d;
      if (s > 0) return false;
      if (s == 0) {
        mpz_class t = e.A * n.x + e.B * n.y;
        if (t > 0) return false;
      }
    }
    return true;
  }

  const std::vector<std::uint32_t>* near(const PtView& v) const {
    auto it = grid.find({static_cast<long>(std::floor(v.fx)),
                         static_cast<long>(std::floor(v.fy))});
    return it == grid.end() ? nullptr : &it->second;
  }

  int depth_closed(const PtView& v) const {
    const std::vector<std::uint32_t>* c = near(v);
    if (!c) return 0;
    int depth = 0;
    for (std::uint32_t i : *c) {
      const PolyRec& r = recs[i];
      if (v.fx < r.box[0] || v.fx > r.box[1] || v.fy < r.box[2] ||
          v.fy > r.box[3])
        continue;
      if (contains_closed(r, v)) ++depth;
    }
    return depth;
  }

  int depth_perturbed(const PtView& v, const DirView& n) const {
    const std::vector<std::uint32_t>* c = near(v);
    if (!c) return 0;
    int depth = 0;
    for (std::uint32_t i : *c) {
      const PolyRec& r = recs[i];
      if (v.fx < r.box[0] || v.fx > r.box[1] || v.fy < r.box[2] ||
          v.fy > r.box[3])
        continue;
      if (contains_perturbed(r, v, n)) ++depth;
    }
    return depth;
  }
};

int zbits(const mpz_class& v) {
  return mpz_sgn(v.get_mpz_t()) == 0
             ? 1
             : static_cast<int>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

mpz_class mpz_i128(__int128 v) {
  unsigned __int128 u = v < 0 ? -static_cast<unsigned __int128>(v)
                              : static_cast<unsigned __int128>(v);
  mpz_class r(static_cast<unsigned long>(u >> 64));
  r <<= 64;
  r += static_cast<unsigned long>(u);
  return v < 0 ? mpz_class(-r) : r;
}

Rat frac_i128(__int128 n, long long d) {
  return rat_of(mpz_i128(n), mpz_class(static_cast<long>(d)));
}

// each line is keyed by the coordinate that varies more along it, so key
// order equals point order; the window is the key span where the line's
// generating segments meet the region, and faces only border the line there
struct LineRec {
  mpz_class a, b, c;
  int side = -1;        // region boundary index, or -1 for an edge line
  bool axis_x = true;   // key = x when set, else y
  bool small = false;   // coefficients fit the int64 crossing path
  long long la = 0, lb = 0, lc = 0;
  bool has_hull = false;
  Rat hull_lo, hull_hi;  // key span of the generating segments
  bool usable = false;
  Rat win_lo, win_hi;  // key window: region clip, narrowed to the hull
  bool win_small = false;
  long long wn0 = 0, wd0 = 1, wn1 = 0, wd1 = 1;
};

struct ScanBest {
  int depth = INT_MAX;
  std::size_t line = SIZE_MAX;
  long seq = -1;
  Pt witness;

  void offer(int d, std::size_t ln, long sq, const IPt& w) {
    if (d < depth || (d == depth && (ln < line || (ln == line && sq < seq)))) {
      depth = d;
      line = ln;
      seq = sq;
      witness = w.to_pt();
    }
  }
  void merge(const ScanBest& o) {
    if (o.line == SIZE_MAX) return;
    if (o.depth < depth || (o.depth == depth &&
                            (o.line < line || (o.line == line && o.seq < seq)))) {
      depth = o.depth;
      line = o.line;
      seq = o.seq;
      witness = o.witness;
    }
  }
};

// exact minimum of coverage depth over the closed region. Depth is constant
// on each open face of the arrangement of clipped edge segments, and since
// membership is closed, the depth anywhere on a face closure is at least the
// face value; the region minimum is therefore attained on some face, and one
// perturbed sample per face edge suffices. Corners and excluded points get
// closed evaluations on top. Failures (depth < fail_below) are collected
// when a sink is given, in deterministic line order.
CoverageReport scan_depth(const BasePolygon& base,
                          const std::vector<Homothet>& family,
                          const BBox& region, const std::vector<Pt>& excluded,
                          int fail_below, std::vector<Pt>* failures) {
  if (!(region.x0 < region.x1 && region.y0 < region.y1))
    fail(Errc::RegionEmpty, "region rectangle has no interior");
  DepthIndex idx(base, family);

  const Pt corners[4] = {Pt(region.x0, region.y0), Pt(region.x1, region.y0),
                         Pt(region.x1, region.y1), Pt(region.x0, region.y1)};
  const long inward[4][2] = {{0, 1}, {-1, 0}, {0, -1}, {1, 0}};

  std::map<LineKey, std::size_t> seen;
  std::vector<LineRec> lines;
  auto line_at = [&](const LineKey& k, int side) -> LineRec& {
    auto ins = seen.emplace(k, lines.size());
    if (ins.second) {
      LineRec lr;
      lr.a = k.a;
      lr.b = k.b;
      lr.c = k.c;
      lr.side = side;
      lr.axis_x = mpz_cmpabs(k.b.get_mpz_t(), k.a.get_mpz_t()) >= 0;
      lines.push_back(std::move(lr));
    }
    return lines[ins.first->second];
  };
  for (int s = 0; s < 4; ++s)
    line_at(key_of(edge_ints(corners[s], corners[(s + 1) % 4])), s);
  // an edge whose bounding box misses the region bounds no face inside it,
  // so its supporting line adds nothing to the candidate set
  for (std::size_t pi = 0; pi < idx.polys.size(); ++pi) {
    const Polygon& poly = idx.polys[pi];
    for (std::size_t ei = 0; ei < poly.size(); ++ei) {
      const Pt& u = poly[ei];
      const Pt& v = poly[(ei + 1) % poly.size()];
      if (rat_max(u.x, v.x) < region.x0 || rat_min(u.x, v.x) > region.x1 ||
          rat_max(u.y, v.y) < region.y0 || rat_min(u.y, v.y) > region.y1)
        continue;
      LineRec& lr = line_at(key_of(idx.recs[pi].edges[ei]), -1);
      if (lr.side >= 0) continue;  // already a region boundary line
      Rat ku = lr.axis_x ? u.x : u.y;
      Rat kv = lr.axis_x ? v.x : v.y;
      Rat klo = rat_min(ku, kv);
      Rat khi = rat_max(ku, kv);
      if (!lr.has_hull) {
        lr.hull_lo = klo;
        lr.hull_hi = khi;
        lr.has_hull = true;
      } else {
        lr.hull_lo = rat_min(lr.hull_lo, klo);
        lr.hull_hi = rat_max(lr.hull_hi, khi);
      }
    }
  }

  const int kLineBits = 24;
  const int kWinBits = 40;
  for (LineRec& L : lines) {
    L.small = zbits(L.a) <= kLineBits && zbits(L.b) <= kLineBits &&
              zbits(L.c) <= kLineBits;
    if (L.small) {
      L.la = L.a.get_si();
      L.lb = L.b.get_si();
      L.lc = L.c.get_si();
    }
    Rat aq(L.a), bq(L.b), cq(L.c);
    Rat lo, hi;
    bool empty = false;
    if (L.axis_x) {
      lo = region.x0;
      hi = region.x1;
      if (L.a == 0) {
        Rat yv = cq / bq;
        empty = yv < region.y0 || yv > region.y1;
      } else {
        Rat xa = (cq - bq * region.y0) / aq;
        Rat xb = (cq - bq * region.y1) / aq;
        lo = rat_max(lo, rat_min(xa, xb));
        hi = rat_min(hi, rat_max(xa, xb));
      }
    } else {
      lo = region.y0;
      hi = region.y1;
      if (L.b == 0) {
        Rat xv = cq / aq;
        empty = xv < region.x0 || xv > region.x1;
      } else {
        Rat ya = (cq - aq * region.x0) / bq;
        Rat yb = (cq - aq * region.x1) / bq;
        lo = rat_max(lo, rat_min(ya, yb));
        hi = rat_min(hi, rat_max(ya, yb));
      }
    }
    if (L.side < 0 && L.has_hull) {
      lo = rat_max(lo, L.hull_lo);
      hi = rat_min(hi, L.hull_hi);
    }
    L.win_lo = lo;
    L.win_hi = hi;
    L.usable = !empty && lo <= hi;
    if (L.usable) {
      const mpz_class& n0 = lo.get_num();
      const mpz_class& d0 = lo.get_den();
      const mpz_class& n1 = hi.get_num();
      const mpz_class& d1 = hi.get_den();
      L.win_small = zbits(n0) <= kWinBits && zbits(d0) <= kWinBits &&
                    zbits(n1) <= kWinBits && zbits(d1) <= kWinBits;
      if (L.win_small) {
        L.wn0 = n0.get_si();
        L.wd0 = d0.get_si();
        L.wn1 = n1.get_si();
        L.wd1 = d1.get_si();
      }
    }
  }

  std::vector<DirView> dir_in(4), dir_pos, dir_neg;
  for (int s = 0; s < 4; ++s)
    dir_in[s] = DirView(mpz_class(inward[s][0]), mpz_class(inward[s][1]));
  dir_pos.reserve(lines.size());
  dir_neg.reserve(lines.size());
  for (const LineRec& l : lines) {
    dir_pos.emplace_back(l.a, l.b);
    dir_neg.emplace_back(mpz_class(-l.a), mpz_class(-l.b));
  }

  unsigned workers = worker_count();
  std::vector<ScanBest> best(workers);
  std::vector<long> counts(workers, 0);
  std::vector<std::vector<Pt>> fails(workers);
  const long fail_cap = 512;

  struct SC {
    __int128 kn;
    long long kd;  // kd > 0
  };

  parallel_chunks(lines.size(), [&](unsigned w, std::uint64_t lb,
                                    std::uint64_t le) {
    std::vector<SC> sc;
    std::vector<Rat> bc, rs;
    for (std::uint64_t li = lb; li < le; ++li) {
      const LineRec& L = lines[li];
      if (!L.usable) continue;
      Rat aq(L.a), bq(L.b), cq(L.c);
      sc.clear();
      bc.clear();
      for (std::size_t j = 0; j < lines.size(); ++j) {
        if (j == li) continue;
        const LineRec& M = lines[j];
        if (!M.usable) continue;
        if (L.small && M.small) {
          long long det = L.la * M.lb - M.la * L.lb;
          if (det == 0) continue;
          long long xn = L.lc * M.lb - M.lc * L.lb;
          long long yn = L.la * M.lc - M.la * L.lc;
          if (det < 0) {
            det = -det;
            xn = -xn;
            yn = -yn;
          }
          long long kn = L.axis_x ? xn : yn;
          if (L.win_small) {
            if (static_cast<__int128>(kn) * L.wd0 <
                static_cast<__int128>(L.wn0) * det)
              continue;
            if (static_cast<__int128>(kn) * L.wd1 >
                static_cast<__int128>(L.wn1) * det)
              continue;
          } else {
            Rat k = frac_i128(kn, det);
            if (k < L.win_lo || k > L.win_hi) continue;
          }
          long long mn = M.axis_x ? xn : yn;
          if (M.win_small) {
            if (static_cast<__int128>(mn) * M.wd0 <
                static_cast<__int128>(M.wn0) * det)
              continue;
            if (static_cast<__int128>(mn) * M.wd1 >
                static_cast<__int128>(M.wn1) * det)
              continue;
          } else {
            Rat k = frac_i128(mn, det);
            if (k < M.win_lo || k > M.win_hi) continue;
          }
          sc.push_back(SC{kn, det});
        } else {
          mpz_class det = L.a * M.b - M.a * L.b;
          if (det == 0) continue;
          mpz_class xn = L.c * M.b - M.c * L.b;
          mpz_class yn = L.a * M.c - M.a * L.c;
          if (det < 0) {
            det = -det;
            xn = -xn;
            yn = -yn;
          }
          Rat k = rat_of(L.axis_x ? xn : yn, det);
          if (k < L.win_lo || k > L.win_hi) continue;
          Rat km = rat_of(M.axis_x ? xn : yn, det);
          if (km < M.win_lo || km > M.win_hi) continue;
          bc.push_back(k);
        }
      }
      auto push_key = [&](const Rat& k) {
        const mpz_class& n = k.get_num();
        const mpz_class& d = k.get_den();
        if (zbits(n) <= 45 && zbits(d) <= 45 && n.fits_slong_p() &&
            d.fits_slong_p()) {
          sc.push_back(SC{n.get_si(), d.get_si()});
        } else {
          bc.push_back(k);
        }
      };
      push_key(L.win_lo);
      if (L.win_lo != L.win_hi) push_key(L.win_hi);

      long seq = 0;
      auto consider = [&](int d, const IPt& p) {
        best[w].offer(d, li, seq, p);
        ++seq;
        ++counts[w];
        if (failures && d < fail_below &&
            static_cast<long>(fails[w].size()) < fail_cap)
          fails[w].push_back(p.to_pt());
      };
      auto sample = [&](const IPt& p) {
        PtView v(p);
        if (L.side >= 0) {
          consider(idx.depth_perturbed(v, dir_in[L.side]), p);
        } else {
          consider(idx.depth_perturbed(v, dir_pos[li]), p);
          consider(idx.depth_perturbed(v, dir_neg[li]), p);
        }
      };
      auto sample_exact = [&](const Rat& k1, const Rat& k2) {
        Rat km = simplest_between(k1, k2);
        Pt p = L.axis_x ? Pt(km, (cq - aq * km) / bq)
                        : Pt((cq - bq * km) / aq, km);
        sample(ipt_of(p));
      };

      if (bc.empty()) {
        std::sort(sc.begin(), sc.end(), [](const SC& u, const SC& v) {
          return u.kn * v.kd < v.kn * u.kd;
        });
        sc.erase(std::unique(sc.begin(), sc.end(),
                             [](const SC& u, const SC& v) {
                               return u.kn * v.kd == v.kn * u.kd;
                             }),
                 sc.end());
        for (std::size_t i = 0; i + 1 < sc.size(); ++i) {
          const SC& u = sc[i];
          const SC& v = sc[i + 1];
          // pick a dyadic key strictly between the pair when one with a
          // small exponent exists; the comparisons below are exact
          long long num = 0;
          int ke = -1;
          double f1 = static_cast<double>(u.kn) / static_cast<double>(u.kd);
          double f2 = static_cast<double>(v.kn) / static_cast<double>(v.kd);
          if (std::fabs(f1) < 1e12 && std::fabs(f2) < 1e12) {
            double midf = (f1 + f2) * 0.5;
            double gap = f2 - f1;
            int k0 = gap > 1e-13 ? std::max(2, std::min(40, 3 - std::ilogb(gap)))
                                 : 40;
            for (int k = k0; k <= 40 && ke < 0; k += 7) {
              double scaled = std::ldexp(midf, k);
              if (std::fabs(scaled) > 9e17) break;
              long long base_n = static_cast<long long>(std::floor(scaled));
              __int128 pw = static_cast<__int128>(1) << k;
              for (long long cand : {base_n, base_n + 1, base_n - 1,
                                     base_n + 2}) {
                if (u.kn * pw < static_cast<__int128>(cand) * u.kd &&
                    static_cast<__int128>(cand) * v.kd < v.kn * pw) {
                  num = cand;
                  ke = k;
                  break;
                }
              }
            }
          }
          if (ke >= 0) {
            __int128 pw = static_cast<__int128>(1) << ke;
            __int128 xn, yn, dd;
            if (L.axis_x) {
              xn = static_cast<__int128>(num) * L.lb;
              yn = static_cast<__int128>(L.lc) * pw -
                   static_cast<__int128>(L.la) * num;
              dd = static_cast<__int128>(L.lb) * pw;
            } else {
              yn = static_cast<__int128>(num) * L.la;
              xn = static_cast<__int128>(L.lc) * pw -
                   static_cast<__int128>(L.lb) * num;
              dd = static_cast<__int128>(L.la) * pw;
            }
            if (dd < 0) {
              xn = -xn;
              yn = -yn;
              dd = -dd;
            }
            IPt p;
            p.xn = mpz_i128(xn);
            p.yn = mpz_i128(yn);
            p.d = mpz_i128(dd);
            p.reduce();
            sample(p);
          } else {
            sample_exact(frac_i128(u.kn, u.kd), frac_i128(v.kn, v.kd));
          }
        }
      } else {
        rs.clear();
        rs.reserve(sc.size() + bc.size());
        for (const SC& t : sc) rs.push_back(frac_i128(t.kn, t.kd));
        for (const Rat& t : bc) rs.push_back(t);
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        for (std::size_t i = 0; i + 1 < rs.size(); ++i)
          sample_exact(rs[i], rs[i + 1]);
      }
    }
  });

  ScanBest total;
  for (const ScanBest& b : best) total.merge(b);
  long count = 0;
  for (long c : counts) count += c;
  if (failures)
    for (const std::vector<Pt>& f : fails)
      for (const Pt& p : f) failures->push_back(p);

  long seq = 0;
  auto tail = [&](const Pt& p) {
    IPt ip = ipt_of(p);
    PtView v(ip);
    int d = idx.depth_closed(v);
    total.offer(d, lines.size(), seq, ip);
    ++seq;
    ++count;
    if (failures && d < fail_below) failures->push_back(p);
  };
  for (const Pt& c : corners) tail(c);
  for (const Pt& q : excluded)
    if (q.x >= region.x0 && q.x <= region.x1 && q.y >= region.y0 &&
        q.y <= region.y1)
      tail(q);

  CoverageReport out;
  out.min_depth = total.line == SIZE_MAX ? 0 : total.depth;
  out.witness = total.witness;
  out.cells_checked = count;
  return out;
}

bool avoids_all(const BasePolygon& base, const Homothet& h,
                const std::vector<Pt>& pts) {
  Polygon poly = realize_homothet(base, h);
  for (const Pt& q : pts)
    if (point_in_polygon(q, poly) != Location::Outside) return false;
  return true;
}

// largest halving of delta/4 whose centered square stays inside every
// inflated homothet that strictly contains q
Rat interior_margin(const Pt& q, const std::vector<Polygon>& inflated,
                    const Rat& delta) {
  std::vector<const Polygon*> covering;
  for (const Polygon& p : inflated)
    if (point_in_polygon(q, p) == Location::Inside) covering.push_back(&p);
  Rat mu = delta / 4;
  for (int step = 0; step < 80; ++step) {
    bool ok = true;
    for (const Polygon* p : covering) {
      const Pt sq[4] = {Pt(q.x - mu, q.y - mu), Pt(q.x + mu, q.y - mu),
                        Pt(q.x + mu, q.y + mu), Pt(q.x - mu, q.y + mu)};
      for (const Pt& c : sq)
        if (point_in_polygon(c, *p) == Location::Outside) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok) return mu;
    mu /= 2;
  }
  fail(Errc::CertificateFailure, "no interior margin at an excluded point");
}

// per-edge slide data of the scaled copy, reused by replacements and repairs
struct EdgeFrame {
  Vec n;      // outward normal, unnormalized
  Rat l1;     // |n.x| + |n.y|, scales lengths into dot units
  Rat n2;     // norm2(n)
  Rat off_s;  // dot(n, edge point) of the unit base
  Pt mid;     // edge midpoint of the unit base
};

std::vector<EdgeFrame> edge_frames(const Polygon& verts) {
  std::vector<EdgeFrame> out;
  out.reserve(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Pt& u = verts[i];
    const Pt& v = verts[(i + 1) % verts.size()];
    EdgeFrame f;
    f.n = outward_normal(u, v);
    f.l1 = rat_abs(f.n.x) + rat_abs(f.n.y);
    f.n2 = norm2(f.n);
    f.off_s = dot(f.n, u);
    f.mid = Pt((u.x + v.x) / 2, (u.y + v.y) / 2);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

std::vector<Homothet> generate_avoiding_translates(const BasePolygon& base,
                                                   const DualScene& scene,
                                                   const ExtensionParams& p) {
  if (!(p.eps > 0 && p.eps < 1))
    fail(Errc::BadInput, "translate shrink factor outside (0,1)");
  if (p.m < 1) fail(Errc::BadInput, "depth target below one");
  Rat s = 1 - p.eps;
  Rat pitch = dyadic_at_most(inradius_lb(base.verts) * s / (2 * p.m));
  Rat margin = 2 * s;  // circumradius is at most one after preparation

  std::vector<Pt> pts;
  pts.reserve(scene.points.size());
  for (const DualPoint& dp : scene.points) pts.push_back(dp.q);

  std::vector<Homothet> out;
  std::set<std::pair<Rat, Rat>> taken;
  auto push = [&](const Homothet& h) {
    if (taken.emplace(h.anchor.x, h.anchor.y).second) out.push_back(h);
  };

  long i0 = rat_floor((p.region.x0 - margin) / pitch).get_si();
  long i1 = rat_ceil((p.region.x1 + margin) / pitch).get_si();
  long j0 = rat_floor((p.region.y0 - margin) / pitch).get_si();
  long j1 = rat_ceil((p.region.y1 + margin) / pitch).get_si();
  std::vector<Homothet> removed;
  for (long j = j0; j <= j1; ++j)
    for (long i = i0; i <= i1; ++i) {
      Homothet h{s, Pt(i * pitch, j * pitch), false};
      if (avoids_all(base, h, pts))
        push(h);
      else
        removed.push_back(h);
    }
  if (pts.empty()) return out;

  // every removed copy is re-added once per edge, slid inward until the
  // edge line clears all blocking points; the slid copies share supporting
  // lines, so the verification arrangement stays small
  std::vector<Polygon> grown;
  grown.reserve(scene.inflated.size());
  for (const Homothet& h : scene.inflated)
    grown.push_back(realize_homothet(base, h));
  Rat t_len = pitch;
  for (const Pt& q : pts)
    t_len = rat_min(t_len, interior_margin(q, grown, scene.delta));
  t_len /= 8;

  std::vector<EdgeFrame> frames = edge_frames(base.verts);
  for (const Homothet& h : removed)
    for (const EdgeFrame& f : frames) {
      Pt a = h.anchor;
      bool placed = false;
      for (std::size_t iter = 0; iter <= pts.size() && !placed; ++iter) {
        Homothet cur{s, a, false};
        Polygon poly = realize_homothet(base, cur);
        Rat mv;
        bool blocked = false;
        for (const Pt& q : pts)
          if (point_in_polygon(q, poly) != Location::Outside) {
            Rat dq = dot(f.n, q);
            if (!blocked || dq < mv) mv = dq;
            blocked = true;
          }
        if (!blocked) {
          push(cur);
          placed = true;
          break;
        }
        Rat off_cur = dot(f.n, a) + s * f.off_s;
        Rat off_new = mv - t_len * f.l1;
        if (off_new >= off_cur) off_new = off_cur - t_len * f.l1;
        Rat step = (off_new - off_cur) / f.n2;
        a = Pt(a.x + step * f.n.x, a.y + step * f.n.y);
      }
    }
  return out;
}

CoverageReport verify_depth(const BasePolygon& base,
                            const std::vector<Homothet>& family,
                            const BBox& region,
                            const std::vector<Pt>& excluded) {
  return scan_depth(base, family, region, excluded, 0, nullptr);
}

SampleReport sample_depth_min(const BasePolygon& base,
                              const std::vector<Homothet>& family,
                              const BBox& region, std::uint64_t count,
                              std::uint64_t seed) {
  if (!(region.x0 < region.x1 && region.y0 < region.y1))
    fail(Errc::RegionEmpty, "region rectangle has no interior");
  DepthIndex idx(base, family);
  std::mt19937_64 g(seed);
  const long fine = 1 << 20;
  SampleReport out;
  out.min_depth = INT_MAX;
  for (std::uint64_t i = 0; i < count; ++i) {
    Rat fx = rat(static_cast<long>(g() % (fine + 1)), fine);
    Rat fy = rat(static_cast<long>(g() % (fine + 1)), fine);
    Pt p(region.x0 + fx * (region.x1 - region.x0),
         region.y0 + fy * (region.y1 - region.y0));
    IPt ip = ipt_of(p);
    PtView v(ip);
    int d = idx.depth_closed(v);
    if (d < out.min_depth) {
      out.min_depth = d;
      out.witness = p;
    }
  }
  if (out.min_depth == INT_MAX) out.min_depth = 0;
  return out;
}

ExtendedCover extend_cover(const BasePolygon& base, const DualScene& scene,
                           const ExtensionParams& p) {
  ExtendedCover out;
  out.translates = generate_avoiding_translates(base, scene, p);
  std::vector<Pt> pts;
  pts.reserve(scene.points.size());
  for (const DualPoint& dp : scene.points) pts.push_back(dp.q);

  Rat s = 1 - p.eps;
  std::size_t nv = base.verts.size();
  std::vector<EdgeFrame> frames = edge_frames(base.verts);
  std::vector<Pt> coarse;  // offsets in the unit base placing x well inside
  coarse.push_back(Pt(Rat(0), Rat(0)));
  for (const Pt& u : base.verts) coarse.push_back(Pt(u.x / 2, u.y / 2));
  for (const EdgeFrame& f : frames)
    coarse.push_back(Pt(f.mid.x / 2, f.mid.y / 2));

  const std::size_t fail_budget = 64;
  const int max_rounds = 6;
  for (int round = 0;; ++round) {
    std::vector<Homothet> family = scene.inflated;
    family.insert(family.end(), out.translates.begin(), out.translates.end());
    std::vector<Pt> failures;
    out.report = scan_depth(base, family, p.region, pts, p.m, &failures);
    out.repair_rounds = round;
    if (out.report.min_depth >= p.m || round >= max_rounds ||
        failures.empty())
      break;
    // canonical order, so repair does not depend on the worker split
    std::sort(failures.begin(), failures.end(), pt_less);
    failures.erase(std::unique(failures.begin(), failures.end()),
                   failures.end());
    if (failures.size() > fail_budget) failures.resize(fail_budget);

    std::set<std::pair<Rat, Rat>> taken;
    for (const Homothet& h : out.translates)
      taken.emplace(h.anchor.x, h.anchor.y);
    auto offer = [&](const Homothet& h, const Pt& x) {
      if (!taken.emplace(h.anchor.x, h.anchor.y).second) return;
      Polygon poly = realize_homothet(base, h);
      if (point_in_polygon(x, poly) != Location::Inside) return;
      for (const Pt& q : pts)
        if (point_in_polygon(q, poly) != Location::Outside) return;
      out.translates.push_back(h);
    };
    std::size_t before = out.translates.size();
    for (const Pt& x : failures) {
      for (const Pt& c : coarse)
        offer(Homothet{s, Pt(x.x - s * c.x, x.y - s * c.y), false}, x);
      // corner pins: both edge lines at a vertex are placed strictly
      // between x and the nearest excluded point further out, so the copy
      // covers the quadrant at x while threading between cluster points
      for (std::size_t vi = 0; vi < nv; ++vi) {
        const EdgeFrame& f1 = frames[(vi + nv - 1) % nv];
        const EdgeFrame& f2 = frames[vi];
        Rat det = cross(f1.n, f2.n);
        if (det == 0) continue;
        Rat d1 = dot(f1.n, x), d2 = dot(f2.n, x);
        Rat gap1 = scene.delta * f1.l1, gap2 = scene.delta * f2.l1;
        bool has1 = false, has2 = false;
        for (const Pt& q : pts) {
          Rat q1 = dot(f1.n, q);
          if (q1 > d1 && (!has1 || q1 - d1 < gap1)) {
            gap1 = rat_min(gap1, q1 - d1);
            has1 = true;
          }
          Rat q2 = dot(f2.n, q);
          if (q2 > d2 && (!has2 || q2 - d2 < gap2)) {
            gap2 = rat_min(gap2, q2 - d2);
            has2 = true;
          }
        }
        for (int r = 0; r < p.m; ++r) {
          Rat fr = rat(r + 1, p.m + 1);
          Rat o1 = d1 + gap1 * fr;
          Rat o2 = d2 + gap2 * fr;
          Rat r1 = o1 - s * f1.off_s;
          Rat r2 = o2 - s * f2.off_s;
          Pt a((r1 * f2.n.y - r2 * f1.n.y) / det,
               (f1.n.x * r2 - f2.n.x * r1) / det);
          offer(Homothet{s, a, false}, x);
        }
      }
    }
    if (out.translates.size() == before) break;
  }
  return out;
}

BandFit validate_bands(const DualScene& scene) {
  Rat sum_a(0), sum_b(0);
  long n_a = 0, n_b = 0;
  for (const DualPoint& p : scene.points) {
    if (p.a_side) {
      sum_a += p.q.y;
      ++n_a;
    } else {
      sum_b += p.q.y;
      ++n_b;
    }
  }
  if (n_a == 0 || n_b == 0) fail(Errc::BadInput, "scene has an empty family");
  BandFit fit;
  fit.line_a = sum_a / n_a;
  fit.line_b = sum_b / n_b;
  fit.max_dev = Rat(0);
  for (const DualPoint& p : scene.points) {
    Rat dev = rat_abs(p.q.y - (p.a_side ? fit.line_a : fit.line_b));
    if (dev > fit.max_dev) fit.max_dev = dev;
  }
  if (fit.max_dev > scene.delta)
    fail(Errc::BandViolation, "point strays from its band");
  Rat want = scene.line_b_y - scene.line_a_y;
  if (rat_abs((fit.line_b - fit.line_a) - want) > 2 * scene.delta)
    fail(Errc::BandViolation, "band gap drifts from the vertical extent");
  return fit;
}

}  // namespace homcov
