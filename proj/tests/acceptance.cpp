// Acceptance checks for the toolkit. Each criterion prints one PASS/FAIL line;
// the process exits nonzero when any requested criterion fails. Run a single
// criterion with --criterion N, or everything with no arguments.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "lowdisc/discrepancy.hpp"
#include "lowdisc/generators.hpp"
#include "lowdisc/harness.hpp"
#include "lowdisc/io.hpp"
#include "lowdisc/optimizer.hpp"
#include "lowdisc/pointset.hpp"

using namespace lowdisc;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

struct Failure {
  std::string detail;
};

std::vector<std::string> g_notes;

void note(const std::string& s) { g_notes.push_back(s); }

bool report(int id, const char* title, bool pass) {
  std::printf("criterion %d: %s - %s\n", id, pass ? "PASS" : "FAIL", title);
  for (const std::string& s : g_notes) std::printf("  %s\n", s.c_str());
  g_notes.clear();
  return pass;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// ---- criterion 1: exact evaluation of the shift-1 lattice family ----

bool criterion1() {
  struct Row {
    int n;
    double value;
    double tol;
  };
  const Row rows[] = {
      {20, 0.105883, 5e-6},  {50, 0.049165, 5e-6},  {100, 0.026105, 5e-6},
      {180, 0.015165, 5e-6}, {220, 0.012407, 5e-6}, {260, 0.010894, 5e-6},
      {350, 0.008731, 5e-6}, {420, 0.00728, 5e-5},  {500, 0.00611, 5e-5},
  };
  bool pass = true;
  for (const Row& r : rows) {
    double t0 = now_seconds();
    double star = star_discrepancy(fibonacci_set(r.n, 1)).value;
    double dt = now_seconds() - t0;
    bool ok = std::fabs(star - r.value) <= r.tol && dt < 10.0;
    if (!ok) {
      note("n=" + std::to_string(r.n) + ": got " + fmt(star) + ", want " +
           fmt(r.value) + " +/- " + fmt(r.tol) + " in <10s (took " + fmt(dt) + "s)");
      pass = false;
    }
  }
  return report(1, "exact values of the shift-1 lattice family", pass);
}

// ---- criterion 2: exact evaluation of the unshifted lattice at n=100 ----

bool criterion2() {
  const double expected = 0.027485;
  const double tol = 5e-6;
  double star = star_discrepancy(fibonacci_set(100, 0)).value;
  bool pass = std::fabs(star - expected) <= tol;
  if (!pass)
    note("got " + fmt(star) + ", want " + fmt(expected) + " +/- " + fmt(tol) +
         " (deviation " + fmt(std::fabs(star - expected)) + ")");
  return report(2, "exact value of the unshifted lattice at n=100", pass);
}

// ---- criterion 3: analytic one-point cases ----

bool criterion3() {
  bool pass = true;

  PointSet center;
  center.n = 1;
  center.dim = 2;
  center.coords = {0.5, 0.5};
  double v1 = star_discrepancy(center).value;
  if (v1 != 0.75) {
    note("point (0.5,0.5): got " + fmt(v1) + ", want exactly 0.75");
    pass = false;
  }

  PointSet corner;
  corner.n = 1;
  corner.dim = 2;
  corner.coords = {1.0, 1.0};
  double v2 = star_discrepancy(corner).value;
  if (v2 != 1.0) {
    note("point (1,1): got " + fmt(v2) + ", want exactly 1.0");
    pass = false;
  }

  OptimizationProblem prob = build_problem(Permutation{1, {1}}, 1e-6);
  SolverConfig cfg;
  cfg.time_limit = 10.0;
  OptimizationResult res = optimize(prob, cfg);
  if (std::fabs(res.f - 0.618034) > 1e-6) {
    note("optimized single point: got " + fmt(res.f) + ", want 0.618034 +/- 1e-6");
    pass = false;
  }
  return report(3, "analytic one-point values and optimum", pass);
}

// ---- criterion 4: evaluator equals the independent oracle ----

PointSet random_set(std::mt19937_64& rng, int n, int dim, bool snapped) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PointSet ps;
  ps.n = n;
  ps.dim = dim;
  ps.coords.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(dim));
  for (double& c : ps.coords) {
    double v = u(rng);
    c = snapped ? std::floor(v * 4.0) / 4.0 : v;
  }
  return ps;
}

bool oracle_battery(std::uint64_t seed, int trials, int dims_lo, int dims_hi,
                    bool& pass) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    int n = 1 + static_cast<int>(rng() % 8);
    int dim = dims_lo + static_cast<int>(rng() % (dims_hi - dims_lo + 1));
    bool snapped = t % 4 == 3;
    PointSet ps = random_set(rng, n, dim, snapped);
    double sweep = star_discrepancy(ps).value;
    double oracle = oracle_star_discrepancy(ps);
    if (std::fabs(sweep - oracle) > 1e-12) {
      note("trial " + std::to_string(t) + " (n=" + std::to_string(n) + ", d=" +
           std::to_string(dim) + "): evaluator " + fmt(sweep) + " vs oracle " +
           fmt(oracle));
      pass = false;
      return false;
    }
  }
  return true;
}

bool criterion4() {
  bool pass = true;
  double t0 = now_seconds();
  oracle_battery(20240816, 200, 2, 3, pass);
  double dt = now_seconds() - t0;
  if (dt >= 30.0) {
    note("200 comparisons took " + fmt(dt) + "s, budget 30s");
    pass = false;
  }
  return report(4, "evaluator equals the independent oracle on 200 seeded sets",
                pass);
}

// ---- criterion 5: optimizer output invariants ----

bool check_invariants(const OptimizationProblem& prob, const OptimizationResult& res,
                      const std::string& tag, bool& pass) {
  CoordinateFamily fx{prob.n, res.x};
  CoordinateFamily fy{prob.n, res.y};
  double exact = prob.dim == 3
                     ? star_discrepancy(
                           assemble(fx, fy, CoordinateFamily{prob.n, res.z},
                                    prob.perm3))
                           .value
                     : star_discrepancy(assemble(fx, fy, prob.perm)).value;
  bool ok = true;
  if (std::fabs(res.f - exact) > 1e-9) {
    note(tag + ": |f - exact| = " + fmt(std::fabs(res.f - exact)) + " > 1e-9");
    ok = false;
  }
  for (std::size_t i = 0; i + 1 < res.trace.size(); ++i) {
    if (res.trace[i + 1] > res.trace[i]) {
      note(tag + ": trace increases at step " + std::to_string(i));
      ok = false;
      break;
    }
  }
  const std::vector<double>* fams[] = {&res.x, &res.y, &res.z};
  for (int a = 0; a < prob.dim; ++a) {
    const std::vector<double>& v = *fams[a];
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] >= 0.0 && v[i] <= 1.0)) {
        note(tag + ": coordinate outside [0,1]");
        ok = false;
      }
      if (i + 1 < v.size() && v[i + 1] - v[i] < prob.epsilon) {
        note(tag + ": gap below epsilon on axis " + std::to_string(a));
        ok = false;
      }
    }
  }
  if (prob.dim == 2 && prob.n >= 4 && exact < 1.0 / prob.n) {
    note(tag + ": exact " + fmt(exact) + " below the 1/n floor");
    ok = false;
  }
  if (!ok) pass = false;
  return ok;
}

bool criterion5() {
  bool pass = true;
  SolverConfig cfg;
  cfg.time_limit = 10.0;
  cfg.restarts = 2;
  cfg.improvement_tolerance = 1e-9;

  std::vector<std::pair<std::string, OptimizationProblem>> probs;
  probs.emplace_back("lattice n=8",
                     build_problem(extract_permutation(fibonacci_set(8, 0)), 1e-6));
  probs.emplace_back("random n=5", build_problem(random_permutation(5, 7), 1e-6));
  probs.emplace_back("random n=12", build_problem(random_permutation(12, 42), 1e-6));
  probs.emplace_back(
      "radical-inverse n=16",
      build_problem(extract_permutation(van_der_corput_lifted(16, 0)), 1e-6));
  probs.emplace_back("coords-start n=20",
                     build_problem(fibonacci_set(20, 1), 1e-6, true));
  probs.emplace_back(
      "3d lifted n=6",
      build_problem(extract_permutation3d(lift(sobol(6, 2, 0))), 1e-6));
  probs.emplace_back(
      "3d random n=5",
      build_problem(Permutation3D{5, random_permutation(5, 11),
                                  random_permutation(5, 12)},
                    1e-6));

  for (auto& [tag, prob] : probs) {
    OptimizationResult res = optimize(prob, cfg);
    check_invariants(prob, res, tag, pass);
  }
  return report(5, "optimizer outputs satisfy the model invariants", pass);
}

// ---- criterion 6: optimization quality on the shift-1 lattice ----

bool criterion6() {
  bool pass = true;

  PointSet ps20 = fibonacci_set(20, 1);
  OptimizationProblem p20 = build_problem(ps20, 1e-6, true);
  SolverConfig cfg20;
  cfg20.time_limit = 10.0;
  cfg20.restarts = 4;
  cfg20.seed = 1;
  OptimizationResult r20 = optimize(p20, cfg20);
  if (!(r20.f <= 0.0630)) {
    note("n=20: f = " + fmt(r20.f) + ", want <= 0.0630 within 60s");
    pass = false;
  } else {
    note("n=20: f = " + fmt(r20.f) + " (budget 10s of the allowed 60s)");
  }

  PointSet ps100 = fibonacci_set(100, 1);
  OptimizationProblem p100 = build_problem(ps100, 1e-6, true);
  SolverConfig cfg100;
  cfg100.time_limit = 120.0;
  cfg100.restarts = 4;
  cfg100.seed = 1;
  OptimizationResult r100 = optimize(p100, cfg100);
  if (!(r100.f <= 0.0155)) {
    note("n=100: f = " + fmt(r100.f) + ", want <= 0.0155 within 600s");
    pass = false;
  } else {
    note("n=100: f = " + fmt(r100.f) + " (budget 120s of the allowed 600s)");
  }
  return report(6, "optimization quality on the shift-1 lattice", pass);
}

// ---- criterion 7: random batch statistics against the shift scan ----

bool criterion7() {
  bool pass = true;
  HarnessOptions opt;
  apply_fast_profile(opt.solver);
  opt.jobs = 1;

  auto scan = shift_scan(100, 0, 49, opt);
  double best_scan = scan[best_record(scan)].f;

  auto batch = random_batch(100, 50, 7, opt);
  double med = median_f(batch);
  if (!(med >= 0.028 && med <= 0.047)) {
    note("random median f = " + fmt(med) + ", want within [0.028, 0.047]");
    pass = false;
  } else {
    note("random median f = " + fmt(med) + ", best scan f = " + fmt(best_scan));
  }
  for (const ExperimentRecord& r : batch) {
    if (!(r.f > best_scan)) {
      note("random draw " + r.param + " reached f = " + fmt(r.f) +
           ", not above the best scan f = " + fmt(best_scan));
      pass = false;
    }
  }
  return report(7, "random permutations stay above the scanned lattice optima",
                pass);
}

// ---- criterion 8: lattice enumeration structure and sweep quality ----

long long independent_totient_sum(int n) {
  long long sum = 0;
  for (int k = 1; k <= n; ++k) {
    int phi = k;
    int m = k;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        phi -= phi / p;
        while (m % p == 0) m /= p;
      }
    }
    if (m > 1) phi -= phi / m;
    sum += phi;
  }
  return sum;
}

bool criterion8() {
  bool pass = true;

  for (int n = 2; n <= 100; ++n) {
    auto gens = enumerate_kronecker_generators(n);
    long long fractions = 0;
    for (const auto& g : gens)
      if (g.rational) ++fractions;
    if (fractions != independent_totient_sum(n)) {
      note("n=" + std::to_string(n) + ": " + std::to_string(fractions) +
           " fractions, want totient sum " +
           std::to_string(independent_totient_sum(n)));
      pass = false;
      break;
    }
    if (n < 3) continue;
    for (const auto& [perm, g] : dedupe_permutations(gens)) {
      if (!three_value_check(perm).passes) {
        note("n=" + std::to_string(n) + ", r=" + g.origin +
             ": consecutive differences take more than three values");
        pass = false;
        break;
      }
    }
    if (!pass) break;
  }

  HarnessOptions opt;
  apply_fast_profile(opt.solver);
  opt.jobs = 1;
  auto sweep = kronecker_sweep(50, opt);
  double best = sweep[best_record(sweep)].f;
  if (!(best <= 0.035)) {
    note("sweep n=50: best f = " + fmt(best) + ", want <= 0.035");
    pass = false;
  } else {
    note("sweep n=50: " + std::to_string(sweep.size()) +
         " permutations, best f = " + fmt(best));
  }
  return report(8, "lattice enumeration structure and sweep quality", pass);
}

// ---- criterion 9: 3D optimization and evaluation ----

bool criterion9() {
  bool pass = true;

  PointSet base = lift(sobol(14, 2, 0));
  OptimizationProblem prob = build_problem(base, 1e-6, true);
  SolverConfig cfg;
  cfg.time_limit = 60.0;
  cfg.restarts = 4;
  cfg.seed = 1;
  OptimizationResult res = optimize(prob, cfg);
  if (!(res.f <= 0.16)) {
    note("lifted 2D low-discrepancy order at n=14: f = " + fmt(res.f) +
         ", want <= 0.16 within 600s");
    pass = false;
  } else {
    note("lifted order n=14: f = " + fmt(res.f) + " (budget 60s of the allowed 600s)");
  }

  bool oracle_ok = true;
  oracle_battery(909, 60, 3, 3, oracle_ok);
  if (!oracle_ok) pass = false;

  double s14 = star_discrepancy(sobol(14, 3, 0)).value;
  double s50 = star_discrepancy(sobol(50, 3, 0)).value;
  note("soft: native 3D sequence n=14 star = " + fmt(s14) +
       " vs reference 0.23096 (reported only)");
  note("soft: native 3D sequence n=50 star = " + fmt(s50) +
       " vs reference 0.08997 (reported only)");
  return report(9, "3D optimization quality and oracle agreement", pass);
}

// ---- criterion 10: local discrepancy map integrity ----

bool criterion10() {
  bool pass = true;
  PointSet ps = fibonacci_set(100, 1);
  LocalDiscrepancyMap map = local_discrepancy_map(ps);
  double star = star_discrepancy(ps).value;

  double peak = 0.0;
  for (double v : map.open) peak = std::max(peak, v);
  for (double v : map.closed) peak = std::max(peak, v);
  if (std::fabs(peak - star) > 1e-12) {
    note("map max " + fmt(peak) + " vs star " + fmt(star));
    pass = false;
  }

  std::string path = "/tmp/lowdisc_acceptance_heatmap.csv";
  write_heatmap_csv(path, map);
  LocalDiscrepancyMap back = read_heatmap_csv(path);
  std::remove(path.c_str());
  if (back.grid_x != map.grid_x || back.grid_y != map.grid_y ||
      back.open != map.open || back.closed != map.closed) {
    note("CSV round-trip changed at least one value");
    pass = false;
  }
  return report(10, "local discrepancy map matches and round-trips", pass);
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
      ++i;
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }

  bool (*checks[])() = {criterion1, criterion2, criterion3, criterion4,
                        criterion5, criterion6, criterion7, criterion8,
                        criterion9, criterion10};
  const int total = static_cast<int>(sizeof(checks) / sizeof(checks[0]));
  if (only < 0 || only > total) {
    std::fprintf(stderr, "criterion out of range: %d\n", only);
    return 2;
  }

  bool all = true;
  for (int c = 1; c <= total; ++c) {
    if (only != 0 && c != only) continue;
    if (!checks[c - 1]()) all = false;
  }
  return all ? 0 : 1;
}
