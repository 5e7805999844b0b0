#include "lowdisc/discrepancy.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace lowdisc {

namespace {

// Sorted distinct coordinates of one axis, with 1 appended when absent.
std::vector<double> build_grid(const PointSet& ps, int axis) {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(ps.n) + 1);
  for (int i = 0; i < ps.n; ++i) g.push_back(ps.at(i, axis));
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  if (g.back() != 1.0) g.push_back(1.0);
  return g;
}

int grid_index_of(const std::vector<double>& g, double v) {
  return static_cast<int>(std::lower_bound(g.begin(), g.end(), v) - g.begin());
}

// Single pass over the 2D anchor grid: x index ascending, then y index
// ascending, closed term before open term, strictly-greater updates. The
// closed histogram advances with the x sweep; open counts at column ix are the
// closed counts of column ix-1 shifted down one y index.
void sweep_2d(const PointSet& ps, LocalDiscrepancyMap* map_out, double* max_out,
              BoxWitness* witness_out) {
  int n = ps.n;
  double dn = static_cast<double>(n);
  std::vector<double> gx = build_grid(ps, 0);
  std::vector<double> gy = build_grid(ps, 1);
  std::size_t nx = gx.size();
  std::size_t ny = gy.size();

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ps.at(a, 0) < ps.at(b, 0); });
  std::vector<int> ybucket(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ybucket[static_cast<std::size_t>(i)] = grid_index_of(gy, ps.at(i, 1));

  if (map_out) {
    map_out->n = n;
    map_out->grid_x = gx;
    map_out->grid_y = gy;
    map_out->open.assign(nx * ny, 0.0);
    map_out->closed.assign(nx * ny, 0.0);
  }

  std::vector<int> hist(ny, 0);
  std::vector<int> closed_pref(ny, 0);
  std::vector<int> prev_pref(ny, 0);
  double best = -std::numeric_limits<double>::infinity();
  BoxWitness bw;
  std::size_t pos = 0;

  for (std::size_t ix = 0; ix < nx; ++ix) {
    while (pos < static_cast<std::size_t>(n) &&
           ps.at(order[pos], 0) == gx[ix]) {
      ++hist[static_cast<std::size_t>(ybucket[static_cast<std::size_t>(order[pos])])];
      ++pos;
    }
    int acc = 0;
    for (std::size_t iy = 0; iy < ny; ++iy) {
      acc += hist[iy];
      closed_pref[iy] = acc;
    }
    for (std::size_t iy = 0; iy < ny; ++iy) {
      double vol = gx[ix] * gy[iy];
      double closed_term = closed_pref[iy] / dn - vol;
      int open_cnt = (ix == 0 || iy == 0) ? 0 : prev_pref[iy - 1];
      double open_term = vol - open_cnt / dn;
      if (closed_term > best) {
        best = closed_term;
        bw.grid_index = {static_cast<int>(ix), static_cast<int>(iy)};
        bw.closed = true;
      }
      if (open_term > best) {
        best = open_term;
        bw.grid_index = {static_cast<int>(ix), static_cast<int>(iy)};
        bw.closed = false;
      }
      if (map_out) {
        map_out->closed[ix * ny + iy] = closed_term;
        map_out->open[ix * ny + iy] = open_term;
      }
    }
    std::swap(prev_pref, closed_pref);
  }
  if (max_out) *max_out = best;
  if (witness_out) *witness_out = bw;
}

// Anchor-by-anchor enumeration for any dimension; same scan order and term
// expressions as the 2D sweep.
void enumerate_naive(const PointSet& ps, double* max_out, BoxWitness* witness_out) {
  int n = ps.n;
  int d = ps.dim;
  double dn = static_cast<double>(n);
  std::vector<std::vector<double>> grids(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) grids[static_cast<std::size_t>(k)] = build_grid(ps, k);
  std::vector<std::vector<int>> bucket(
      static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(d)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k)
      bucket[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          grid_index_of(grids[static_cast<std::size_t>(k)], ps.at(i, k));

  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  double best = -std::numeric_limits<double>::infinity();
  BoxWitness bw;
  for (;;) {
    double vol = 1.0;
    for (int k = 0; k < d; ++k)
      vol = vol * grids[static_cast<std::size_t>(k)][static_cast<std::size_t>(
                idx[static_cast<std::size_t>(k)])];
    int closed_cnt = 0;
    int open_cnt = 0;
    for (int i = 0; i < n; ++i) {
      bool in_closed = true;
      bool in_open = true;
      for (int k = 0; k < d; ++k) {
        int b = bucket[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        int a = idx[static_cast<std::size_t>(k)];
        if (b > a) in_closed = false;
        if (b >= a) in_open = false;
        if (!in_closed && !in_open) break;
      }
      closed_cnt += in_closed ? 1 : 0;
      open_cnt += in_open ? 1 : 0;
    }
    double closed_term = closed_cnt / dn - vol;
    double open_term = vol - open_cnt / dn;
    if (closed_term > best) {
      best = closed_term;
      bw.grid_index = idx;
      bw.closed = true;
    }
    if (open_term > best) {
      best = open_term;
      bw.grid_index = idx;
      bw.closed = false;
    }
    int k = d - 1;
    while (k >= 0) {
      if (++idx[static_cast<std::size_t>(k)] <
          static_cast<int>(grids[static_cast<std::size_t>(k)].size()))
        break;
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  if (max_out) *max_out = best;
  if (witness_out) *witness_out = bw;
}

}  // namespace

DiscrepancyValue star_discrepancy(const PointSet& ps) {
  ps.validate();
  if (ps.dim != 2 && ps.dim != 3)
    throw unsupported_dimension("star discrepancy supports d in {2,3}");
  DiscrepancyValue out;
  if (ps.dim == 2) {
    sweep_2d(ps, nullptr, &out.value, &out.witness);
  } else {
    enumerate_naive(ps, &out.value, &out.witness);
  }
  return out;
}

LocalDiscrepancyMap local_discrepancy_map(const PointSet& ps) {
  ps.validate();
  if (ps.dim != 2)
    throw unsupported_dimension("local discrepancy maps require a 2D set");
  LocalDiscrepancyMap map;
  sweep_2d(ps, &map, nullptr, nullptr);
  return map;
}

double reevaluate_witness(const PointSet& ps, const BoxWitness& w) {
  ps.validate();
  int d = ps.dim;
  if (static_cast<int>(w.grid_index.size()) != d)
    throw invalid_input("witness index count disagrees with dimension");
  std::vector<double> anchor(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    std::vector<double> g = build_grid(ps, k);
    int ik = w.grid_index[static_cast<std::size_t>(k)];
    if (ik < 0 || ik >= static_cast<int>(g.size()))
      throw invalid_input("witness grid index out of range");
    anchor[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(ik)];
  }
  double vol = 1.0;
  for (int k = 0; k < d; ++k) vol = vol * anchor[static_cast<std::size_t>(k)];
  int cnt = 0;
  for (int i = 0; i < ps.n; ++i) {
    bool inside = true;
    for (int k = 0; k < d; ++k) {
      double v = ps.at(i, k);
      double a = anchor[static_cast<std::size_t>(k)];
      if (w.closed ? (v > a) : (v >= a)) {
        inside = false;
        break;
      }
    }
    cnt += inside ? 1 : 0;
  }
  double dn = static_cast<double>(ps.n);
  return w.closed ? cnt / dn - vol : vol - cnt / dn;
}

// Deliberately naive and self-contained: candidate anchors are raw coordinate
// lists (duplicates kept) plus 1, counting is a direct scan per anchor.
double oracle_star_discrepancy(const PointSet& ps) {
  ps.validate();
  if (ps.dim != 2 && ps.dim != 3)
    throw unsupported_dimension("oracle supports d in {2,3}");
  int n = ps.n;
  int d = ps.dim;
  std::vector<std::vector<double>> cand(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < n; ++i)
      cand[static_cast<std::size_t>(k)].push_back(ps.at(i, k));
    cand[static_cast<std::size_t>(k)].push_back(1.0);
  }
  std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
  double best = 0.0;
  for (;;) {
    double volume = 1.0;
    for (int k = 0; k < d; ++k)
      volume *= cand[static_cast<std::size_t>(k)][pick[static_cast<std::size_t>(k)]];
    int strict = 0;
    int loose = 0;
    for (int i = 0; i < n; ++i) {
      bool all_strict = true;
      bool all_loose = true;
      for (int k = 0; k < d; ++k) {
        double q = cand[static_cast<std::size_t>(k)][pick[static_cast<std::size_t>(k)]];
        double v = ps.at(i, k);
        all_strict = all_strict && (v < q);
        all_loose = all_loose && (v <= q);
      }
      if (all_strict) ++strict;
      if (all_loose) ++loose;
    }
    double a = volume - static_cast<double>(strict) / n;
    double b = static_cast<double>(loose) / n - volume;
    if (a > best) best = a;
    if (b > best) best = b;
    int k = d - 1;
    while (k >= 0) {
      if (++pick[static_cast<std::size_t>(k)] <
          cand[static_cast<std::size_t>(k)].size())
        break;
      pick[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return best;
}

}  // namespace lowdisc
