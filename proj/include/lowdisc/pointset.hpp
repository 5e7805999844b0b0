#pragma once

#include <string>
#include <vector>

#include "lowdisc/errors.hpp"

namespace lowdisc {

/// Finite point set in [0,1]^dim, row-major coordinate storage.
struct PointSet {
  int dim = 2;
  int n = 0;
  std::vector<double> coords;  // n * dim values, point-major
  std::string provenance;      // generator descriptor, "optimized", or "external"
  bool general_position = false;

  double at(int i, int k) const {
    return coords[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim) +
                  static_cast<std::size_t>(k)];
  }
  double& at(int i, int k) {
    return coords[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim) +
                  static_cast<std::size_t>(k)];
  }

  /// Throws invalid_input if sizes disagree, a coordinate leaves [0,1], or the
  /// general-position flag is set while some axis carries a duplicate value.
  void validate() const;
};

/// Checks pairwise distinctness of values on every axis.
bool in_general_position(const PointSet& ps);

/// Bijection on {1..n}; values are 1-indexed.
struct Permutation {
  int n = 0;
  std::vector<int> map;  // map[i-1] = pi(i)

  int operator()(int i) const { return map[static_cast<std::size_t>(i) - 1]; }

  void validate() const;  // throws invalid_input unless bijective on 1..n
};

/// Pair of bijections for 3D sets: sigma ranks the second coordinate and tau
/// the third, both relative to first-coordinate order.
struct Permutation3D {
  int n = 0;
  Permutation sigma;
  Permutation tau;
};

/// Prefix-count table C(i,j) = |{u <= i : pi(u) <= j}|, indices 0..n.
struct CountTable {
  int n = 0;
  std::vector<int> c;  // (n+1)*(n+1)

  int at(int i, int j) const {
    return c[static_cast<std::size_t>(i) * static_cast<std::size_t>(n + 1) +
             static_cast<std::size_t>(j)];
  }
};

/// C(i,j,k) = |{u <= i : sigma(u) <= j and tau(u) <= k}|, indices 0..n.
struct CountTable3D {
  int n = 0;
  std::vector<int> c;  // (n+1)^3

  int at(int i, int j, int k) const {
    std::size_t m = static_cast<std::size_t>(n + 1);
    return c[(static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m +
             static_cast<std::size_t>(k)];
  }
};

/// Sorted coordinate values x_1 < ... < x_n in [0,1]; the dummy x_{n+1} = 1 is
/// implicit and never stored.
struct CoordinateFamily {
  int n = 0;
  std::vector<double> values;

  void validate(double epsilon) const;  // gap >= epsilon, bounds [0,1]
};

/// Ranks the second coordinate against first-coordinate order. Ties on either
/// axis are broken by ascending original index, so the result is total.
Permutation extract_permutation(const PointSet& ps);

/// Same ranking applied independently to the second and third coordinates.
Permutation3D extract_permutation3d(const PointSet& ps);

CountTable cumulative_counts(const Permutation& p);
CountTable3D cumulative_counts(const Permutation3D& p);

/// Point i = (x_i, y_{pi(i)}).
PointSet assemble(const CoordinateFamily& x, const CoordinateFamily& y,
                  const Permutation& p);

/// Point i = (x_i, y_{sigma(i)}, z_{tau(i)}).
PointSet assemble(const CoordinateFamily& x, const CoordinateFamily& y,
                  const CoordinateFamily& z, const Permutation3D& p);

/// Prepends the leading coordinate i/n, i = 0..n-1, to each input value
/// (1D -> 2D). Input values must lie in [0,1).
PointSet lift(const std::vector<double>& values);

/// Prepends i/n to each point of a 2D set (2D -> 3D).
PointSet lift(const PointSet& ps);

/// Sorts values and enforces gaps >= epsilon inside [0,1] by a forward then
/// backward sweep. Throws invalid_input if (n-1)*epsilon > 1.
CoordinateFamily project_to_gaps(std::vector<double> values, double epsilon);

/// Lattice-style point set of a permutation: point i = ((i-1)/n, (pi(i)-1)/n).
PointSet permutation_pointset(const Permutation& p);

}  // namespace lowdisc
