#include "lowdisc/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gaps.hpp"

namespace lowdisc {

void PointSet::validate() const {
  if (dim < 1) throw invalid_input("point set dimension must be >= 1");
  if (n < 1) throw invalid_input("point set must contain at least one point");
  if (coords.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(dim))
    throw invalid_input("coordinate storage size disagrees with n * dim");
  for (double v : coords) {
    if (!(v >= 0.0 && v <= 1.0))
      throw invalid_input("coordinate outside [0,1]");
  }
  if (general_position && !in_general_position(*this))
    throw invalid_input("general-position flag set on a set with duplicate coordinates");
}

bool in_general_position(const PointSet& ps) {
  for (int k = 0; k < ps.dim; ++k) {
    std::set<double> seen;
    for (int i = 0; i < ps.n; ++i) {
      if (!seen.insert(ps.at(i, k)).second) return false;
    }
  }
  return true;
}

void Permutation::validate() const {
  if (n < 1) throw invalid_input("permutation size must be >= 1");
  if (map.size() != static_cast<std::size_t>(n))
    throw invalid_input("permutation storage size disagrees with n");
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : map) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
      throw invalid_input("permutation is not a bijection on 1..n");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

void CoordinateFamily::validate(double epsilon) const {
  if (n < 1) throw invalid_input("coordinate family must hold at least one value");
  if (values.size() != static_cast<std::size_t>(n))
    throw invalid_input("coordinate family storage size disagrees with n");
  for (int i = 0; i < n; ++i) {
    double v = values[static_cast<std::size_t>(i)];
    if (!(v >= 0.0 && v <= 1.0))
      throw invalid_input("coordinate value outside [0,1]");
    if (i > 0 && !(v - values[static_cast<std::size_t>(i) - 1] >= epsilon))
      throw invalid_input("coordinate family gap below epsilon");
  }
}

namespace {

// Ranks of one coordinate axis with ties broken by ascending position in
// `order` (which itself lists point indices sorted by the first axis).
std::vector<int> ranks_along(const PointSet& ps, const std::vector<int>& order,
                             int axis) {
  int n = ps.n;
  std::vector<int> slot(static_cast<std::size_t>(n));
  std::iota(slot.begin(), slot.end(), 0);
  std::sort(slot.begin(), slot.end(), [&](int a, int b) {
    double va = ps.at(order[static_cast<std::size_t>(a)], axis);
    double vb = ps.at(order[static_cast<std::size_t>(b)], axis);
    if (va != vb) return va < vb;
    return a < b;
  });
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) rank[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])] = r + 1;
  return rank;
}

std::vector<int> first_axis_order(const PointSet& ps) {
  std::vector<int> order(static_cast<std::size_t>(ps.n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    double va = ps.at(a, 0);
    double vb = ps.at(b, 0);
    if (va != vb) return va < vb;
    return a < b;
  });
  return order;
}

}  // namespace

Permutation extract_permutation(const PointSet& ps) {
  ps.validate();
  if (ps.dim != 2) throw invalid_input("extract_permutation requires a 2D set");
  std::vector<int> order = first_axis_order(ps);
  Permutation p;
  p.n = ps.n;
  p.map = ranks_along(ps, order, 1);
  return p;
}

Permutation3D extract_permutation3d(const PointSet& ps) {
  ps.validate();
  if (ps.dim != 3) throw invalid_input("extract_permutation3d requires a 3D set");
  std::vector<int> order = first_axis_order(ps);
  Permutation3D p;
  p.n = ps.n;
  p.sigma.n = ps.n;
  p.sigma.map = ranks_along(ps, order, 1);
  p.tau.n = ps.n;
  p.tau.map = ranks_along(ps, order, 2);
  return p;
}

CountTable cumulative_counts(const Permutation& p) {
  p.validate();
  int n = p.n;
  CountTable t;
  t.n = n;
  std::size_t m = static_cast<std::size_t>(n + 1);
  t.c.assign(m * m, 0);
  for (int i = 1; i <= n; ++i) {
    int pi = p(i);
    for (int j = 0; j <= n; ++j) {
      t.c[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)] =
          t.c[static_cast<std::size_t>(i - 1) * m + static_cast<std::size_t>(j)] +
          (pi <= j ? 1 : 0);
    }
  }
  return t;
}

CountTable3D cumulative_counts(const Permutation3D& p) {
  p.sigma.validate();
  p.tau.validate();
  if (p.sigma.n != p.n || p.tau.n != p.n)
    throw invalid_input("permutation pair sizes disagree");
  int n = p.n;
  CountTable3D t;
  t.n = n;
  std::size_t m = static_cast<std::size_t>(n + 1);
  t.c.assign(m * m * m, 0);
  for (int i = 1; i <= n; ++i) {
    int s = p.sigma(i);
    int u = p.tau(i);
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k) {
        t.c[(static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m +
            static_cast<std::size_t>(k)] =
            t.c[(static_cast<std::size_t>(i - 1) * m + static_cast<std::size_t>(j)) * m +
                static_cast<std::size_t>(k)] +
            ((s <= j && u <= k) ? 1 : 0);
      }
    }
  }
  return t;
}

PointSet assemble(const CoordinateFamily& x, const CoordinateFamily& y,
                  const Permutation& p) {
  if (x.n != p.n || y.n != p.n)
    throw invalid_input("assemble: family and permutation sizes disagree");
  p.validate();
  PointSet ps;
  ps.dim = 2;
  ps.n = p.n;
  ps.coords.resize(static_cast<std::size_t>(p.n) * 2);
  for (int i = 1; i <= p.n; ++i) {
    ps.at(i - 1, 0) = x.values[static_cast<std::size_t>(i) - 1];
    ps.at(i - 1, 1) = y.values[static_cast<std::size_t>(p(i)) - 1];
  }
  ps.provenance = "optimized";
  ps.general_position = in_general_position(ps);
  return ps;
}

PointSet assemble(const CoordinateFamily& x, const CoordinateFamily& y,
                  const CoordinateFamily& z, const Permutation3D& p) {
  if (x.n != p.n || y.n != p.n || z.n != p.n)
    throw invalid_input("assemble: family and permutation sizes disagree");
  p.sigma.validate();
  p.tau.validate();
  PointSet ps;
  ps.dim = 3;
  ps.n = p.n;
  ps.coords.resize(static_cast<std::size_t>(p.n) * 3);
  for (int i = 1; i <= p.n; ++i) {
    ps.at(i - 1, 0) = x.values[static_cast<std::size_t>(i) - 1];
    ps.at(i - 1, 1) = y.values[static_cast<std::size_t>(p.sigma(i)) - 1];
    ps.at(i - 1, 2) = z.values[static_cast<std::size_t>(p.tau(i)) - 1];
  }
  ps.provenance = "optimized";
  ps.general_position = in_general_position(ps);
  return ps;
}

PointSet lift(const std::vector<double>& values) {
  int n = static_cast<int>(values.size());
  if (n < 1) throw invalid_input("lift: need at least one value");
  for (double v : values) {
    if (!(v >= 0.0 && v < 1.0)) throw invalid_input("lift: value outside [0,1)");
  }
  PointSet ps;
  ps.dim = 2;
  ps.n = n;
  ps.coords.resize(static_cast<std::size_t>(n) * 2);
  for (int i = 0; i < n; ++i) {
    ps.at(i, 0) = static_cast<double>(i) / n;
    ps.at(i, 1) = values[static_cast<std::size_t>(i)];
  }
  ps.provenance = "lifted";
  return ps;
}

PointSet lift(const PointSet& in) {
  in.validate();
  if (in.dim != 2) throw invalid_input("lift: 2D input required for 3D lift");
  PointSet ps;
  ps.dim = 3;
  ps.n = in.n;
  ps.coords.resize(static_cast<std::size_t>(in.n) * 3);
  for (int i = 0; i < in.n; ++i) {
    ps.at(i, 0) = static_cast<double>(i) / in.n;
    ps.at(i, 1) = in.at(i, 0);
    ps.at(i, 2) = in.at(i, 1);
  }
  ps.provenance = "lifted(" + in.provenance + ")";
  return ps;
}

CoordinateFamily project_to_gaps(std::vector<double> values, double epsilon) {
  int n = static_cast<int>(values.size());
  if (n < 1) throw invalid_input("projection: need at least one value");
  if (!(epsilon > 0.0)) throw invalid_input("projection: epsilon must be positive");
  if (static_cast<double>(n - 1) * epsilon > 1.0)
    throw invalid_input("projection: gap chain does not fit inside [0,1]");
  std::sort(values.begin(), values.end());
  values[0] = std::max(values[0], 0.0);
  for (int i = 1; i < n; ++i) {
    values[static_cast<std::size_t>(i)] =
        std::max(values[static_cast<std::size_t>(i)],
                 detail::gap_up(values[static_cast<std::size_t>(i) - 1], epsilon));
  }
  values[static_cast<std::size_t>(n) - 1] =
      std::min(values[static_cast<std::size_t>(n) - 1], 1.0);
  for (int i = n - 2; i >= 0; --i) {
    values[static_cast<std::size_t>(i)] =
        std::min(values[static_cast<std::size_t>(i)],
                 detail::gap_down(values[static_cast<std::size_t>(i) + 1], epsilon));
  }
  CoordinateFamily fam;
  fam.n = n;
  fam.values = std::move(values);
  fam.validate(epsilon);
  return fam;
}

PointSet permutation_pointset(const Permutation& p) {
  p.validate();
  PointSet ps;
  ps.dim = 2;
  ps.n = p.n;
  ps.coords.resize(static_cast<std::size_t>(p.n) * 2);
  for (int i = 1; i <= p.n; ++i) {
    ps.at(i - 1, 0) = static_cast<double>(i - 1) / p.n;
    ps.at(i - 1, 1) = static_cast<double>(p(i) - 1) / p.n;
  }
  ps.provenance = "permutation";
  ps.general_position = true;
  return ps;
}

}  // namespace lowdisc
