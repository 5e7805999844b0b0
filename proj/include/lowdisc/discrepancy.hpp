#pragma once

#include <vector>

#include "lowdisc/pointset.hpp"

namespace lowdisc {

/// Anchor box witnessing a discrepancy value: one grid index per axis into the
/// per-axis critical grids, plus the box kind. Closed boxes hold too many
/// points, open boxes too few.
struct BoxWitness {
  std::vector<int> grid_index;
  bool closed = false;
};

struct DiscrepancyValue {
  double value = 0.0;
  BoxWitness witness;
};

/// Full grid of local discrepancies over the critical anchors of a 2D set.
/// Tables are row-major over (x index, y index).
struct LocalDiscrepancyMap {
  int n = 0;
  std::vector<double> grid_x;  // sorted distinct x coordinates plus 1
  std::vector<double> grid_y;
  std::vector<double> open;    // volume minus strict point fraction
  std::vector<double> closed;  // non-strict point fraction minus volume

  double open_at(int ix, int iy) const {
    return open[static_cast<std::size_t>(ix) * grid_y.size() +
                static_cast<std::size_t>(iy)];
  }
  double closed_at(int ix, int iy) const {
    return closed[static_cast<std::size_t>(ix) * grid_y.size() +
                  static_cast<std::size_t>(iy)];
  }
};

/// Exact star discrepancy by critical-grid enumeration, any dimension >= 1.
/// The witness is the lexicographically smallest (grid indices, closed-first)
/// anchor attaining the maximum.
DiscrepancyValue star_discrepancy(const PointSet& ps);

/// All open and closed local discrepancies of a 2D set; the map maximum equals
/// star_discrepancy(ps).
LocalDiscrepancyMap local_discrepancy_map(const PointSet& ps);

/// Recomputes the local discrepancy of a witness box by direct counting.
double reevaluate_witness(const PointSet& ps, const BoxWitness& w);

/// Independent brute-force evaluator used for cross-checks; shares no counting
/// code with star_discrepancy. Intended for small n only.
double oracle_star_discrepancy(const PointSet& ps);

}  // namespace lowdisc
