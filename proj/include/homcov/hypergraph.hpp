#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "homcov/construction.hpp"

namespace homcov {

// Subset of up to 128 vertices.
struct Mask128 {
  std::uint64_t lo = 0, hi = 0;

  static Mask128 bit(std::size_t i);
  static Mask128 first_n(std::size_t n);  // bits [0, n)
  bool test(std::size_t i) const;
  void set(std::size_t i);
  int count() const;
  bool none() const { return lo == 0 && hi == 0; }
  Mask128 shifted_left(std::size_t s) const;
  Mask128 shifted_right(std::size_t s) const;
  bool operator==(const Mask128&) const = default;
};

Mask128 operator|(const Mask128& a, const Mask128& b);
Mask128 operator&(const Mask128& a, const Mask128& b);
bool mask_less(const Mask128& a, const Mask128& b);  // numeric order

// Vertices are copies; each wedge contributes the edge of copies it meets.
// Edge order follows the apex order of the configuration.
struct Hypergraph {
  std::size_t n = 0;
  std::vector<Mask128> a_edges;
  std::vector<Mask128> b_edges;
  bool operator==(const Hypergraph&) const = default;
};

// Incidence structure T(k,l) must have, derived purely from the recursion:
// rows T(k,1) have one a-edge over all copies and singleton b-edges, T(1,l)
// mirrored; a combined tower keeps left a-edges and right b-edges, and adds
// the connector to every right a-edge and every left b-edge. Raises TooLarge
// past 128 copies.
Hypergraph structural_hypergraph(int k, int l);

// Incidences measured from the geometry. Closed semantics counts tangent
// contact, open semantics requires interior overlap; accepted configurations
// make them equal.
Hypergraph geometric_hypergraph(const PreparedPolygon& pp,
                                const Configuration& c, bool closed);

// A coloring defeats the hypergraph when some a-edge is entirely red or some
// b-edge entirely blue (red = set bits).
bool coloring_defeated(const Hypergraph& h, const Mask128& red);

struct ColoringCheck {
  bool holds = true;
  std::uint64_t checked = 0;
  Mask128 first_failure;  // meaningful only when !holds
};

// Exhaustively checks every red/blue coloring; n > 25 raises TooLarge.
// Parallel over workers, result independent of the worker count.
ColoringCheck check_all_colorings(const Hypergraph& h);

struct WitnessStep {
  bool a_side = false;
  std::size_t edge = 0;
};

// For any coloring, walks the recursion to an edge of
// structural_hypergraph(k,l) that is all red (a side) or all blue (b side):
// a red connector defers to the right subtower, a blue one to the left. Ties
// in the row bases resolve to the lowest edge index, a side first.
WitnessStep certificate_witness(int k, int l, const Mask128& red);

}  // namespace homcov
