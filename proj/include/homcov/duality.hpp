#pragma once

#include <cstdint>
#include <vector>

#include "homcov/construction.hpp"
#include "homcov/hypergraph.hpp"

namespace homcov {

// Containment-versus-intersection query: does (alpha+beta)*S(p) contain q,
// and do alpha*S(p) and -beta*S(q) meet? For convex S the answers agree.
struct DualityQuery {
  Rat alpha, beta;  // both >= 0
  Pt p, q;
};

struct ContainIntersectSides {
  bool lhs = false;  // q in (alpha+beta)*S(p), closed
  bool rhs = false;  // alpha*S(p) meets -beta*S(q), closed
};

// Evaluates both predicates independently; BadInput on a negative scale.
// A zero scale collapses that side to a single point.
ContainIntersectSides statement1_holds(const DualityQuery& query,
                                       const BasePolygon& S);

// Deterministic query stream: alpha, beta in [0,2], p, q in [-3,3]^2, small
// denominators. Same (count, seed) always yields the same list.
std::vector<DualityQuery> sample_queries(std::uint64_t count,
                                         std::uint64_t seed);

// Number of sampled queries whose two sides disagree; parallel over batches,
// result independent of the worker count.
std::uint64_t count_statement1_mismatches(
    const BasePolygon& S, const std::vector<DualityQuery>& queries);

// Witness point standing in for one wedge of the source configuration: the
// anchor of a reflected unit copy whose vertex cone matches the wedge.
struct DualPoint {
  Pt q;
  bool a_side = false;
  std::size_t wedge = 0;  // index within its family's apex list
};

// Inflated homothets plus witness points. inflated follows the copy order
// and points list the a family first, each family in apex order, so masks
// over this scene align with the configuration's hypergraph edges.
struct DualScene {
  int k = 0, l = 0;
  int m = 0;  // uniform point depth when k == l, else 0
  Rat delta;
  Pt disc_center;
  std::vector<Homothet> inflated;  // scale 1 + eps_i, anchor p_i
  std::vector<DualPoint> points;
  Rat line_a_y, line_b_y;  // band centerlines for the two point families
};

// One reflected unit copy per wedge, a family first, translated so the
// vertex whose cone matches the wedge sits at the apex. Each copy's open and
// closed incidence sets against the configuration must equal its wedge's
// edge; any mismatch or tangency raises IncidenceDrift.
std::vector<Homothet> wedges_to_neg_copies(const PreparedPolygon& pp,
                                           const Configuration& c);

// Full dual scene: every copy inflated by 1 + its own scale, the reflected
// copies' anchors as points. Every point is then rechecked against every
// inflated homothet by direct membership: strictly inside exactly on its
// wedge's edge, strictly outside elsewhere; boundary contact raises
// IncidenceDrift. Per-point depth (k for the a family, l for the b family)
// and band distances are recounted.
DualScene dualize(const PreparedPolygon& pp, const Configuration& c);

// Membership hypergraph of the scene, edge order matching the source
// configuration. closed counts boundary contact as membership.
Hypergraph dual_hypergraph(const BasePolygon& base, const DualScene& scene,
                           bool closed);

// Every inflated scale lies in [1-eps, 1+eps].
bool verify_scale_band(const DualScene& scene, const Rat& eps);

// Every point sits within delta of its family's centerline.
bool verify_point_bands(const DualScene& scene);

struct DualBuild {
  BuildResult build;
  DualScene scene;
  int drift_retries = 0;  // rebuilds forced by IncidenceDrift
};

// build_configuration followed by dualize; when the reflected copies drift
// from their wedges the disc radius is halved and the tower rebuilt, a
// bounded number of times.
DualBuild build_dual(const PreparedPolygon& pp, int k, int l,
                     const Rat& delta_request);

}  // namespace homcov
