#pragma once

#include "homcov/prep.hpp"

namespace homcov {

// Recursive wedge tower T(k,l). Element order is fixed so the incidence
// structure can be rebuilt combinatorially: copies are
// [left subtower..., right subtower..., connector], wedge apexes are
// [left..., right...]. Rows T(k,1) list copies left to right; the a-apex of
// a row comes before nothing (single entry) and b-apexes follow copy order.
struct Configuration {
  int k = 0, l = 0;
  Rat delta;       // disc radius; every element lies within it
  Pt disc_center;  // origin for freshly built configurations
  std::vector<Homothet> copies;
  std::vector<Pt> a_apices;  // downward wedges, one edge each
  std::vector<Pt> b_apices;  // upward wedges
};

// Size laws. copies(k,l) = copies(k-1,l) + copies(k,l-1) + 1 with
// copies(k,1) = k, copies(1,l) = l; the wedge counts satisfy the same
// recurrence with bases a(k,1) = 1, a(1,l) = l and b mirrored.
long config_copies(int k, int l);
long config_a_wedges(int k, int l);
long config_b_wedges(int k, int l);

// Largest ratio |dx/dy| over the four wedge boundary rays.
Rat max_inverse_slope(const WedgeTemplates& t);

// Largest power of two not exceeding 1 / (8 (1 + max_inverse_slope)). With
// the disc radius at most this value, wedges rooted in one subtower cannot
// reach copies of the other at the fixed (1, 3*delta) placement offset.
Rat delta_cap(const WedgeTemplates& t);

std::vector<Polygon> realize_copies(const PreparedPolygon& pp,
                                    const Configuration& c);

struct BuildResult {
  PreparedPolygon prep;  // orientation actually used; may be flipped
  bool flipped = false;
  int delta_halvings = 0;
  Configuration config;
};

// Builds T(k,l) for the prepared polygon, trying the given disc radius
// (capped by delta_cap) and halving it up to eight times; at each radius the
// mirrored orientation is attempted before giving up. Every recursion node
// is verified exactly before use. Raises BadInput for k or l < 1, TooLarge
// past 128 copies, SearchExhausted when no connector placement exists.
BuildResult build_configuration(const PreparedPolygon& pp, int k, int l,
                                const Rat& delta_request);

// Exact post-conditions of a built configuration: element counts match the
// size laws, scales lie in (0,1], everything sits within delta of the disc
// center, and the wedge/copy incidences, computed with open and with closed
// predicates, agree with each other and with the combinatorial recursion.
// Raises CertificateFailure on any violation.
void verify_configuration(const PreparedPolygon& pp, const Configuration& c);

}  // namespace homcov
