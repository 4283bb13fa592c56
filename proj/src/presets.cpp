#include "homcov/presets.hpp"

#include "homcov/errors.hpp"

namespace homcov {

// diamond: centrally symmetric, axis-aligned extremes.
// pentagon: mirror-symmetric, one horizontal side, no parallel side pair.
// trapezoid: no symmetry, no parallel sides, not contained in the unit disc.
Polygon preset_polygon(const std::string& name) {
  if (name == "diamond")
    return {Pt(rat(0), rat(1)), Pt(rat(1), rat(0)), Pt(rat(0), rat(-1)),
            Pt(rat(-1), rat(0))};
  if (name == "pentagon")
    return {Pt(rat(0), rat(1)), Pt(rat(19, 20), rat(31, 100)), Pt(rat(3, 5), rat(-4, 5)),
            Pt(rat(-3, 5), rat(-4, 5)), Pt(rat(-19, 20), rat(31, 100))};
  if (name == "trapezoid")
    return {Pt(rat(-7, 8), rat(1, 2)), Pt(rat(3, 4), rat(7, 8)), Pt(rat(1), rat(-1, 4)),
            Pt(rat(-1, 2), rat(-7, 8))};
  fail(Errc::BadInput, "unknown preset polygon '" + name + "'");
}

std::vector<std::string> preset_names() { return {"diamond", "pentagon", "trapezoid"}; }

}  // namespace homcov
