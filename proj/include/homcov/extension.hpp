#pragma once

#include <cstdint>
#include <vector>

#include "homcov/duality.hpp"

namespace homcov {

// Target for extending a dual scene to a verified covering of a rectangle.
struct ExtensionParams {
  Rat eps;      // added translates have scale exactly 1 - eps; 0 < eps < 1
  BBox region;  // closed rectangle that must reach the required depth
  int m = 1;    // required depth
};

struct CoverageReport {
  int min_depth = 0;
  Pt witness;              // first candidate attaining the minimum
  long cells_checked = 0;  // number of evaluated candidates
};

struct ExtendedCover {
  std::vector<Homothet> translates;  // scale 1 - eps each
  CoverageReport report;             // final pass over scene + translates
  int repair_rounds = 0;             // extra verify/repair rounds used
};

// Anchor lattice with pitch at most inradius((1-eps)S)/(2m), covering the
// region inflated by one diameter, filtered to translates that keep every
// scene point strictly outside; each dropped translate is replaced, per
// polygon edge, by a copy slid inward along the edge normal until the
// scene points clear that edge by a small safety gap.
std::vector<Homothet> generate_avoiding_translates(const BasePolygon& base,
                                                   const DualScene& scene,
                                                   const ExtensionParams& p);

// Exact minimum coverage depth over the closed region, which must satisfy
// x0 < x1 and y0 < y1 (else RegionEmpty). Depth is constant on the open
// faces of the arrangement of in-region edge segments, and closed
// membership makes it upper semicontinuous, so the minimum is attained on
// some face; the scan samples one point strictly inside every face edge,
// deciding membership for an infinitesimal step to either side so no
// numeric offset is involved, plus closed evaluations at the region
// corners and the excluded points. Parallel over lines; minimum, witness
// and count do not depend on the worker count.
CoverageReport verify_depth(const BasePolygon& base,
                            const std::vector<Homothet>& family,
                            const BBox& region,
                            const std::vector<Pt>& excluded);

// Depth minimum over a deterministic pseudo-random point sample; acts as a
// cross-check for verify_depth and can never fall below its exact minimum.
struct SampleReport {
  int min_depth = 0;
  Pt witness;
};
SampleReport sample_depth_min(const BasePolygon& base,
                              const std::vector<Homothet>& family,
                              const BBox& region, std::uint64_t count,
                              std::uint64_t seed);

// generate_avoiding_translates, then verify_depth over scene.inflated plus
// the translates. When the minimum falls short of p.m, avoiding translates
// aimed at the failing candidates are added and the family re-verified, a
// bounded number of rounds; the final report is returned either way.
ExtendedCover extend_cover(const BasePolygon& base, const DualScene& scene,
                           const ExtensionParams& p);

// Horizontal fit of the two point families: line through the mean y of each
// family and the largest deviation from it. BandViolation when a deviation
// exceeds delta or the fitted gap strays from the stored centerline gap by
// more than 2*delta.
struct BandFit {
  Rat line_a, line_b;
  Rat max_dev;
};
BandFit validate_bands(const DualScene& scene);

}  // namespace homcov
