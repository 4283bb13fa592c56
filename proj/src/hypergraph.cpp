#include "homcov/hypergraph.hpp"

#include <vector>

#include "homcov/errors.hpp"
#include "homcov/parallel.hpp"

namespace homcov {

Mask128 Mask128::bit(std::size_t i) {
  if (i >= 128) fail(Errc::BadInput, "mask bit out of range");
  Mask128 m;
  if (i < 64)
    m.lo = std::uint64_t{1} << i;
  else
    m.hi = std::uint64_t{1} << (i - 64);
  return m;
}

Mask128 Mask128::first_n(std::size_t n) {
  if (n > 128) fail(Errc::BadInput, "mask width out of range");
  Mask128 m;
  if (n >= 64) {
    m.lo = ~std::uint64_t{0};
    m.hi = n == 128 ? ~std::uint64_t{0} : (std::uint64_t{1} << (n - 64)) - 1;
  } else {
    m.lo = (std::uint64_t{1} << n) - 1;
  }
  return m;
}

bool Mask128::test(std::size_t i) const {
  if (i >= 128) fail(Errc::BadInput, "mask bit out of range");
  return i < 64 ? (lo >> i) & 1 : (hi >> (i - 64)) & 1;
}

void Mask128::set(std::size_t i) {
  if (i >= 128) fail(Errc::BadInput, "mask bit out of range");
  if (i < 64)
    lo |= std::uint64_t{1} << i;
  else
    hi |= std::uint64_t{1} << (i - 64);
}

int Mask128::count() const {
  return __builtin_popcountll(lo) + __builtin_popcountll(hi);
}

Mask128 Mask128::shifted_left(std::size_t s) const {
  Mask128 m;
  if (s == 0) return *this;
  if (s >= 128) return m;
  if (s >= 64) {
    m.hi = lo << (s - 64);
  } else {
    m.lo = lo << s;
    m.hi = (hi << s) | (lo >> (64 - s));
  }
  return m;
}

Mask128 Mask128::shifted_right(std::size_t s) const {
  Mask128 m;
  if (s == 0) return *this;
  if (s >= 128) return m;
  if (s >= 64) {
    m.lo = hi >> (s - 64);
  } else {
    m.lo = (lo >> s) | (hi << (64 - s));
    m.hi = hi >> s;
  }
  return m;
}

Mask128 operator|(const Mask128& a, const Mask128& b) {
  return Mask128{a.lo | b.lo, a.hi | b.hi};
}

Mask128 operator&(const Mask128& a, const Mask128& b) {
  return Mask128{a.lo & b.lo, a.hi & b.hi};
}

bool mask_less(const Mask128& a, const Mask128& b) {
  return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
}

Hypergraph structural_hypergraph(int k, int l) {
  long n = config_copies(k, l);
  if (n > 128) fail(Errc::TooLarge, "more than 128 copies");
  Hypergraph h;
  h.n = static_cast<std::size_t>(n);
  if (l == 1) {
    h.a_edges.push_back(Mask128::first_n(h.n));
    for (long i = 0; i < n; ++i)
      h.b_edges.push_back(Mask128::bit(static_cast<std::size_t>(i)));
    return h;
  }
  if (k == 1) {
    for (long i = 0; i < n; ++i)
      h.a_edges.push_back(Mask128::bit(static_cast<std::size_t>(i)));
    h.b_edges.push_back(Mask128::first_n(h.n));
    return h;
  }
  Hypergraph left = structural_hypergraph(k, l - 1);
  Hypergraph right = structural_hypergraph(k - 1, l);
  Mask128 conn = Mask128::bit(left.n + right.n);
  h.a_edges = left.a_edges;
  for (const Mask128& e : right.a_edges)
    h.a_edges.push_back(e.shifted_left(left.n) | conn);
  for (const Mask128& e : left.b_edges) h.b_edges.push_back(e | conn);
  for (const Mask128& e : right.b_edges)
    h.b_edges.push_back(e.shifted_left(left.n));
  return h;
}

Hypergraph geometric_hypergraph(const PreparedPolygon& pp,
                                const Configuration& c, bool closed) {
  if (c.copies.size() > 128) fail(Errc::TooLarge, "more than 128 copies");
  std::vector<Polygon> polys = realize_copies(pp, c);
  auto hits = [&](const Wedge& w) {
    Mask128 m;
    for (std::size_t i = 0; i < polys.size(); ++i) {
      bool in = closed ? wedge_intersects_closed(w, polys[i])
                       : wedge_intersects_open(w, polys[i]);
      if (in) m.set(i);
    }
    return m;
  };
  Hypergraph h;
  h.n = polys.size();
  for (const Pt& a : c.a_apices) h.a_edges.push_back(hits(make_a_wedge(pp.wedges, a)));
  for (const Pt& b : c.b_apices) h.b_edges.push_back(hits(make_b_wedge(pp.wedges, b)));
  return h;
}

bool coloring_defeated(const Hypergraph& h, const Mask128& red) {
  for (const Mask128& e : h.a_edges)
    if ((red & e) == e) return true;
  for (const Mask128& e : h.b_edges)
    if ((red & e).none()) return true;
  return false;
}

ColoringCheck check_all_colorings(const Hypergraph& h) {
  if (h.n > 25) fail(Errc::TooLarge, "coloring space too large to enumerate");
  std::uint64_t total = std::uint64_t{1} << h.n;
  unsigned workers = worker_count();
  std::vector<std::uint64_t> fail_at(workers >= 1 ? workers : 1, total);
  parallel_chunks(total, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t m = begin; m < end; ++m) {
      if (!coloring_defeated(h, Mask128{m, 0})) {
        fail_at[w] = m;
        return;
      }
    }
  });
  ColoringCheck out;
  out.checked = total;
  for (std::uint64_t f : fail_at)
    if (f < total) {
      out.holds = false;
      out.first_failure = Mask128{f, 0};
      out.checked = f;  // every coloring below the first failure passed
      break;
    }
  return out;
}

WitnessStep certificate_witness(int k, int l, const Mask128& red) {
  long n = config_copies(k, l);
  if (n > 128) fail(Errc::TooLarge, "more than 128 copies");
  std::size_t un = static_cast<std::size_t>(n);
  if (l == 1) {
    Mask128 all = Mask128::first_n(un);
    if ((red & all) == all) return WitnessStep{true, 0};
    std::size_t i = 0;
    while (red.test(i)) ++i;
    return WitnessStep{false, i};
  }
  if (k == 1) {
    if ((red & Mask128::first_n(un)).none()) return WitnessStep{false, 0};
    std::size_t i = 0;
    while (!red.test(i)) ++i;
    return WitnessStep{true, i};
  }
  std::size_t nl = static_cast<std::size_t>(config_copies(k, l - 1));
  std::size_t nr = static_cast<std::size_t>(config_copies(k - 1, l));
  if (red.test(nl + nr)) {
    Mask128 sub = red.shifted_right(nl) & Mask128::first_n(nr);
    WitnessStep w = certificate_witness(k - 1, l, sub);
    std::size_t base = w.a_side ? static_cast<std::size_t>(config_a_wedges(k, l - 1))
                                : static_cast<std::size_t>(config_b_wedges(k, l - 1));
    return WitnessStep{w.a_side, base + w.edge};
  }
  return certificate_witness(k, l - 1, red & Mask128::first_n(nl));
}

}  // namespace homcov
