#include "lowdisc/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <utility>

#include "gaps.hpp"
#include "lowdisc/discrepancy.hpp"
#include "lowdisc/rng.hpp"

namespace lowdisc {

namespace {

void check_family(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw invalid_input(std::string(what) + ": empty coordinate family");
  double prev = -1.0;
  for (double t : v) {
    if (!(t >= 0.0 && t <= 1.0))
      throw invalid_input(std::string(what) + ": coordinate outside [0,1]");
    if (!(t > prev))
      throw invalid_input(std::string(what) + ": coordinates not strictly increasing");
    prev = t;
  }
}

std::vector<double> with_dummy(const std::vector<double>& v) {
  std::vector<double> e = v;
  e.push_back(1.0);
  return e;
}

}  // namespace

void OptimizationProblem::validate() const {
  if (dim != 2 && dim != 3)
    throw unsupported_dimension("optimization supports dimensions 2 and 3");
  if (n < 1) throw invalid_input("problem size must be >= 1");
  if (!(epsilon > 0.0)) throw invalid_input("epsilon must be positive");
  if (static_cast<double>(n - 1) * epsilon > 1.0)
    throw invalid_input("epsilon gap chain does not fit inside [0,1]");
  if (dim == 2) {
    perm.validate();
    if (perm.n != n) throw invalid_input("permutation size disagrees with n");
    CountTable expect = cumulative_counts(perm);
    if (counts.n != n || counts.c != expect.c)
      throw invalid_input("count table inconsistent with permutation");
  } else {
    if (perm3.n != n || perm3.sigma.n != n || perm3.tau.n != n)
      throw invalid_input("permutation pair size disagrees with n");
    CountTable3D expect = cumulative_counts(perm3);
    if (counts3.n != n || counts3.c != expect.c)
      throw invalid_input("count table inconsistent with permutation pair");
  }
  auto check_init = [&](const std::vector<double>& v, const char* what) {
    if (!v.empty() && static_cast<int>(v.size()) != n)
      throw invalid_input(std::string(what) + ": initial coordinates size disagrees with n");
  };
  check_init(init_x, "init_x");
  check_init(init_y, "init_y");
  check_init(init_z, "init_z");
}

void SolverConfig::validate() const {
  if (!(time_limit > 0.0)) throw invalid_input("time limit must be positive");
  if (max_outer_iterations < 1)
    throw invalid_input("iteration cap must be positive");
  if (!(improvement_tolerance >= 1e-12))
    throw invalid_input("improvement tolerance must be >= 1e-12");
  if (restarts < 0) throw invalid_input("restart count must be >= 0");
  if (!(perturbation_scale > 0.0))
    throw invalid_input("perturbation scale must be positive");
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::time_limit: return "time_limit";
    case SolveStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

double evaluate_model_f(const std::vector<double>& x, const std::vector<double>& y,
                        const CountTable& counts) {
  int n = counts.n;
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw invalid_input("family size disagrees with count table");
  check_family(x, "x");
  check_family(y, "y");
  double dn = static_cast<double>(n);
  double best = 0.0;
  for (int i = 1; i <= n; ++i) {
    double xi = x[static_cast<std::size_t>(i) - 1];
    for (int j = 1; j <= n; ++j) {
      double t = counts.at(i, j) / dn - xi * y[static_cast<std::size_t>(j) - 1];
      if (t > best) best = t;
    }
  }
  for (int i = 1; i <= n + 1; ++i) {
    double xi = i <= n ? x[static_cast<std::size_t>(i) - 1] : 1.0;
    for (int j = 1; j <= n + 1; ++j) {
      double yj = j <= n ? y[static_cast<std::size_t>(j) - 1] : 1.0;
      double t = xi * yj - counts.at(i - 1, j - 1) / dn;
      if (t > best) best = t;
    }
  }
  return best;
}

double evaluate_model_f(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>& z, const CountTable3D& counts) {
  int n = counts.n;
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n ||
      static_cast<int>(z.size()) != n)
    throw invalid_input("family size disagrees with count table");
  check_family(x, "x");
  check_family(y, "y");
  check_family(z, "z");
  double dn = static_cast<double>(n);
  double best = 0.0;
  for (int i = 1; i <= n; ++i) {
    double xi = x[static_cast<std::size_t>(i) - 1];
    for (int j = 1; j <= n; ++j) {
      double xy = xi * y[static_cast<std::size_t>(j) - 1];
      for (int k = 1; k <= n; ++k) {
        double t = counts.at(i, j, k) / dn - xy * z[static_cast<std::size_t>(k) - 1];
        if (t > best) best = t;
      }
    }
  }
  for (int i = 1; i <= n + 1; ++i) {
    double xi = i <= n ? x[static_cast<std::size_t>(i) - 1] : 1.0;
    for (int j = 1; j <= n + 1; ++j) {
      double yj = j <= n ? y[static_cast<std::size_t>(j) - 1] : 1.0;
      double xy = xi * yj;
      for (int k = 1; k <= n + 1; ++k) {
        double zk = k <= n ? z[static_cast<std::size_t>(k) - 1] : 1.0;
        double t = xy * zk - counts.at(i - 1, j - 1, k - 1) / dn;
        if (t > best) best = t;
      }
    }
  }
  return best;
}

BlockSolve solve_block_lp(int axis, const std::vector<double>& free_warm,
                          const std::vector<double>& fixed1,
                          const std::vector<double>& fixed2,
                          const OptimizationProblem& prob) {
  int n = prob.n;
  bool is3d = prob.dim == 3;
  double eps = prob.epsilon;
  double dn = static_cast<double>(n);
  if (axis < 0 || axis >= prob.dim) throw invalid_input("block axis out of range");
  if (static_cast<int>(free_warm.size()) != n ||
      static_cast<int>(fixed1.size()) != n ||
      (is3d && static_cast<int>(fixed2.size()) != n))
    throw invalid_input("block solve: family size disagrees with n");
  check_family(free_warm, "free");
  check_family(fixed1, "fixed");
  if (is3d) check_family(fixed2, "fixed");

  std::vector<double> f1e = with_dummy(fixed1);
  std::vector<double> f2e = is3d ? with_dummy(fixed2) : std::vector<double>{};

  // Count lookups with the free axis mapped back to its model slot; fixed axes
  // stay in ascending axis order.
  auto cnt2 = [&](int a, int b) {
    return axis == 0 ? prob.counts.at(a, b) : prob.counts.at(b, a);
  };
  auto cnt3 = [&](int a, int b1, int b2) {
    if (axis == 0) return prob.counts3.at(a, b1, b2);
    if (axis == 1) return prob.counts3.at(b1, a, b2);
    return prob.counts3.at(b1, b2, a);
  };

  // Rows that involve no free value bound f directly: closed rows whose fixed
  // weight vanishes and open rows at the free dummy index n+1.
  double pure = 0.0;
  if (!is3d) {
    for (int b = 1; b <= n; ++b) {
      if (fixed1[static_cast<std::size_t>(b) - 1] == 0.0) {
        double t = cnt2(n, b) / dn;
        if (t > pure) pure = t;
      }
    }
    for (int b = 1; b <= n + 1; ++b) {
      double t = f1e[static_cast<std::size_t>(b) - 1] - cnt2(n, b - 1) / dn;
      if (t > pure) pure = t;
    }
  } else {
    for (int b1 = 1; b1 <= n; ++b1) {
      for (int b2 = 1; b2 <= n; ++b2) {
        if (fixed1[static_cast<std::size_t>(b1) - 1] *
                fixed2[static_cast<std::size_t>(b2) - 1] ==
            0.0) {
          double t = cnt3(n, b1, b2) / dn;
          if (t > pure) pure = t;
        }
      }
    }
    for (int b1 = 1; b1 <= n + 1; ++b1) {
      double w1 = f1e[static_cast<std::size_t>(b1) - 1];
      for (int b2 = 1; b2 <= n + 1; ++b2) {
        double t = w1 * f2e[static_cast<std::size_t>(b2) - 1] -
                   cnt3(n, b1 - 1, b2 - 1) / dn;
        if (t > pure) pure = t;
      }
    }
  }

  std::vector<double> lo(static_cast<std::size_t>(n));
  std::vector<double> hi(static_cast<std::size_t>(n));
  std::vector<double> plo(static_cast<std::size_t>(n));
  std::vector<double> phi(static_cast<std::size_t>(n));

  auto bounds_at = [&](double f) {
    for (int a = 1; a <= n; ++a) {
      double L = 0.0;
      double U = 1.0;
      if (!is3d) {
        for (int b = 1; b <= n; ++b) {
          double w = fixed1[static_cast<std::size_t>(b) - 1];
          if (w > 0.0) {
            double v = (cnt2(a, b) / dn - f) / w;
            if (v > L) L = v;
          }
        }
        for (int b = 1; b <= n + 1; ++b) {
          double w = f1e[static_cast<std::size_t>(b) - 1];
          if (w > 0.0) {
            double v = (cnt2(a - 1, b - 1) / dn + f) / w;
            if (v < U) U = v;
          }
        }
      } else {
        for (int b1 = 1; b1 <= n; ++b1) {
          double w1 = fixed1[static_cast<std::size_t>(b1) - 1];
          if (w1 == 0.0) continue;
          for (int b2 = 1; b2 <= n; ++b2) {
            double w = w1 * fixed2[static_cast<std::size_t>(b2) - 1];
            if (w > 0.0) {
              double v = (cnt3(a, b1, b2) / dn - f) / w;
              if (v > L) L = v;
            }
          }
        }
        for (int b1 = 1; b1 <= n + 1; ++b1) {
          double w1 = f1e[static_cast<std::size_t>(b1) - 1];
          if (w1 == 0.0) continue;
          for (int b2 = 1; b2 <= n + 1; ++b2) {
            double w = w1 * f2e[static_cast<std::size_t>(b2) - 1];
            if (w > 0.0) {
              double v = (cnt3(a - 1, b1 - 1, b2 - 1) / dn + f) / w;
              if (v < U) U = v;
            }
          }
        }
      }
      lo[static_cast<std::size_t>(a) - 1] = L;
      hi[static_cast<std::size_t>(a) - 1] = U;
    }
  };

  auto chain_feasible = [&]() {
    plo[0] = lo[0];
    for (int a = 1; a < n; ++a)
      plo[static_cast<std::size_t>(a)] =
          std::max(lo[static_cast<std::size_t>(a)],
                   detail::gap_up(plo[static_cast<std::size_t>(a) - 1], eps));
    phi[static_cast<std::size_t>(n) - 1] = hi[static_cast<std::size_t>(n) - 1];
    for (int a = n - 2; a >= 0; --a)
      phi[static_cast<std::size_t>(a)] =
          std::min(hi[static_cast<std::size_t>(a)],
                   detail::gap_down(phi[static_cast<std::size_t>(a) + 1], eps));
    for (int a = 0; a < n; ++a)
      if (!(plo[static_cast<std::size_t>(a)] <= phi[static_cast<std::size_t>(a)]))
        return false;
    return true;
  };

  auto feasible = [&](double f) {
    if (f < pure) return false;
    bounds_at(f);
    return chain_feasible();
  };

  // The warm configuration certifies an upper endpoint for the bisection.
  double f_warm;
  if (is3d) {
    std::vector<std::vector<double>> fam(3);
    fam[static_cast<std::size_t>(axis)] = free_warm;
    fam[axis == 0 ? 1 : 0] = fixed1;
    fam[axis == 2 ? 1 : 2] = fixed2;
    f_warm = evaluate_model_f(fam[0], fam[1], fam[2], prob.counts3);
  } else {
    f_warm = axis == 0 ? evaluate_model_f(free_warm, fixed1, prob.counts)
                       : evaluate_model_f(fixed1, free_warm, prob.counts);
  }
  double f_hi = f_warm;
  int grow = 0;
  while (!feasible(f_hi)) {
    f_hi += std::max(1e-15, f_hi * 1e-15);
    if (++grow > 64)
      throw solver_failure(
          "block solve: incumbent objective could not be certified feasible");
  }

  double fstar;
  if (feasible(pure)) {
    fstar = pure;
  } else {
    double a = pure;
    double b = f_hi;
    while (b - a > 1e-15) {
      double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (feasible(mid))
        b = mid;
      else
        a = mid;
    }
    fstar = b;
  }

  bounds_at(fstar);
  if (!chain_feasible())
    throw solver_failure("block solve: certified objective lost feasibility");

  // phi already carries the backward separation caps, so any forward choice in
  // [max(plo, prev + eps), phi] extends to a full feasible assignment. Taking
  // the interval midpoint keeps the solve from parking on a face boundary,
  // which would freeze the outer descent at points no single block can leave.
  BlockSolve out;
  out.values.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    double lb = plo[static_cast<std::size_t>(a)];
    if (a > 0)
      lb = std::max(lb, detail::gap_up(out.values[static_cast<std::size_t>(a) - 1], eps));
    double ub = phi[static_cast<std::size_t>(a)];
    if (!(lb <= ub))
      throw solver_failure("block solve: reconstruction interval collapsed");
    out.values[static_cast<std::size_t>(a)] = 0.5 * (lb + ub);
  }
  out.f = fstar;
  return out;
}

namespace {

std::vector<double> midpoint_start(int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = (2.0 * i + 1.0) / (2.0 * n);
  return v;
}

}  // namespace

OptimizationResult optimize(const OptimizationProblem& prob, const SolverConfig& cfg) {
  prob.validate();
  cfg.validate();
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  auto deadline = t0 + std::chrono::duration_cast<clock::duration>(
                           std::chrono::duration<double>(cfg.time_limit));
  int n = prob.n;
  bool is3d = prob.dim == 3;

  auto start_axis = [&](const std::vector<double>& given) {
    std::vector<double> v = given.empty() ? midpoint_start(n) : given;
    return project_to_gaps(std::move(v), prob.epsilon).values;
  };

  std::vector<std::vector<double>> cur(static_cast<std::size_t>(prob.dim));
  cur[0] = start_axis(prob.init_x);
  cur[1] = start_axis(prob.init_y);
  if (is3d) cur[2] = start_axis(prob.init_z);

  auto model_f = [&](const std::vector<std::vector<double>>& c) {
    return is3d ? evaluate_model_f(c[0], c[1], c[2], prob.counts3)
                : evaluate_model_f(c[0], c[1], prob.counts);
  };

  OptimizationResult res;
  std::vector<std::vector<double>> best;
  double best_f = std::numeric_limits<double>::infinity();
  SplitMix64 rng(cfg.seed);
  bool hit_time = false;
  bool hit_iter = false;
  int total_iters = 0;
  int restarts_used = 0;

  auto push_trace = [&](double f) {
    res.trace.push_back(res.trace.empty() ? f : std::min(f, res.trace.back()));
  };
  auto out_of_time = [&]() { return clock::now() >= deadline; };

  for (int run = 0; run <= cfg.restarts; ++run) {
    if (run > 0) {
      if (out_of_time()) {
        hit_time = true;
        break;
      }
      double scale = cfg.perturbation_scale / n;
      for (int a = 0; a < prob.dim; ++a) {
        std::vector<double> v = best[static_cast<std::size_t>(a)];
        for (double& t : v) {
          t += (rng.next_double() * 2.0 - 1.0) * scale;
          t = std::min(std::max(t, 0.0), 1.0);
        }
        cur[static_cast<std::size_t>(a)] =
            project_to_gaps(std::move(v), prob.epsilon).values;
      }
      ++restarts_used;
    }

    double f_cur = model_f(cur);
    push_trace(f_cur);
    int stalled = 0;
    for (int iter = 0;; ++iter) {
      if (iter >= cfg.max_outer_iterations) {
        hit_iter = true;
        break;
      }
      if (out_of_time()) {
        hit_time = true;
        break;
      }
      static const std::vector<double> kNoFamily;
      std::vector<std::vector<double>> prev = cur;
      for (int a = 0; a < prob.dim; ++a) {
        const std::vector<double>& f1 = cur[a == 0 ? 1 : 0];
        const std::vector<double>& f2 = is3d ? cur[a == 2 ? 1 : 2] : kNoFamily;
        BlockSolve bs =
            solve_block_lp(a, cur[static_cast<std::size_t>(a)], f1, f2, prob);
        cur[static_cast<std::size_t>(a)] = std::move(bs.values);
      }
      double f_new = model_f(cur);
      ++total_iters;
      if (f_new > f_cur) {
        cur = std::move(prev);
        push_trace(f_cur);
        break;
      }
      double improved = f_cur - f_new;
      f_cur = f_new;
      push_trace(f_cur);
      // A flat cycle can still move coordinates inside their optimal bands and
      // unlock progress next cycle, so stop only after two flat cycles in a row.
      stalled = improved < cfg.improvement_tolerance ? stalled + 1 : 0;
      if (stalled >= 2) break;
    }

    if (f_cur < best_f) {
      best_f = f_cur;
      best = cur;
    }
    if (hit_time) break;
  }

  res.x = best[0];
  res.y = best[1];
  if (is3d) res.z = best[2];
  res.f = best_f;
  res.iterations = total_iters;
  res.restarts_used = restarts_used;
  res.status = hit_time ? SolveStatus::time_limit
                        : (hit_iter ? SolveStatus::iteration_limit
                                    : SolveStatus::converged);

  CoordinateFamily fx{n, res.x};
  CoordinateFamily fy{n, res.y};
  if (is3d) {
    CoordinateFamily fz{n, res.z};
    res.exact = star_discrepancy(assemble(fx, fy, fz, prob.perm3)).value;
  } else {
    res.exact = star_discrepancy(assemble(fx, fy, prob.perm)).value;
  }
  res.wall_time_seconds =
      std::chrono::duration<double>(clock::now() - t0).count();
  return res;
}

OptimizationProblem build_problem(const PointSet& ps, double epsilon,
                                  bool use_coords_as_init) {
  ps.validate();
  if (ps.dim != 2 && ps.dim != 3)
    throw unsupported_dimension("optimization supports dimensions 2 and 3");
  OptimizationProblem prob;
  prob.n = ps.n;
  prob.dim = ps.dim;
  prob.epsilon = epsilon;
  if (ps.dim == 2) {
    prob.perm = extract_permutation(ps);
    prob.counts = cumulative_counts(prob.perm);
  } else {
    prob.perm3 = extract_permutation3d(ps);
    prob.counts3 = cumulative_counts(prob.perm3);
  }
  if (use_coords_as_init) {
    auto axis_sorted = [&](int k) {
      std::vector<double> v(static_cast<std::size_t>(ps.n));
      for (int i = 0; i < ps.n; ++i) v[static_cast<std::size_t>(i)] = ps.at(i, k);
      return project_to_gaps(std::move(v), epsilon).values;
    };
    prob.init_x = axis_sorted(0);
    prob.init_y = axis_sorted(1);
    if (ps.dim == 3) prob.init_z = axis_sorted(2);
  }
  return prob;
}

OptimizationProblem build_problem(const Permutation& p, double epsilon) {
  p.validate();
  OptimizationProblem prob;
  prob.n = p.n;
  prob.dim = 2;
  prob.epsilon = epsilon;
  prob.perm = p;
  prob.counts = cumulative_counts(p);
  return prob;
}

OptimizationProblem build_problem(const Permutation3D& p, double epsilon) {
  OptimizationProblem prob;
  prob.n = p.n;
  prob.dim = 3;
  prob.epsilon = epsilon;
  prob.perm3 = p;
  prob.counts3 = cumulative_counts(p);
  return prob;
}

}  // namespace lowdisc
