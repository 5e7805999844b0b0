#include "lowdisc.h"

#include <algorithm>
#include <cstdio>
#include <string>

#include "lowdisc/discrepancy.hpp"
#include "lowdisc/generators.hpp"
#include "lowdisc/harness.hpp"
#include "lowdisc/io.hpp"
#include "lowdisc/optimizer.hpp"
#include "lowdisc/pointset.hpp"
#include "lowdisc/rng.hpp"

struct ld_pointset {
  lowdisc::PointSet ps;
};

struct ld_result {
  lowdisc::OptimizationProblem prob;
  lowdisc::OptimizationResult res;
  lowdisc::PointSet assembled;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
int guard(Fn&& fn) {
  try {
    fn();
    return LD_OK;
  } catch (const lowdisc::invalid_input& e) {
    return fail(LD_ERR_INVALID_ARGUMENT, e.what());
  } catch (const lowdisc::unsupported_dimension& e) {
    return fail(LD_ERR_UNSUPPORTED_DIMENSION, e.what());
  } catch (const lowdisc::solver_failure& e) {
    return fail(LD_ERR_SOLVER_FAILURE, e.what());
  } catch (const lowdisc::io_error& e) {
    return fail(LD_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(LD_ERR_INTERNAL, e.what());
  }
}

lowdisc::SolverConfig solver_from(const ld_config& c) {
  lowdisc::SolverConfig s;
  s.time_limit = c.time_limit;
  s.max_outer_iterations = c.max_outer_iterations;
  s.improvement_tolerance = c.improvement_tolerance;
  s.restarts = c.restarts;
  s.perturbation_scale = c.perturbation_scale;
  s.seed = c.seed;
  if (c.fast != 0) lowdisc::apply_fast_profile(s);
  return s;
}

lowdisc::HarnessOptions harness_from(const ld_config& c) {
  lowdisc::HarnessOptions opt;
  opt.solver = solver_from(c);
  opt.epsilon = c.epsilon;
  opt.jobs = c.jobs;
  return opt;
}

lowdisc::PointSet generate_from(const ld_genspec& g) {
  if (g.family == nullptr) throw lowdisc::invalid_input("generator family is null");
  std::string fam = g.family;
  if (g.dim != 2 && g.dim != 3)
    throw lowdisc::unsupported_dimension("dim must be 2 or 3");
  if (fam == "fibonacci") {
    lowdisc::PointSet ps = lowdisc::fibonacci_set(g.n, g.shift);
    return g.dim == 3 ? lowdisc::lift(ps) : ps;
  }
  if (fam == "kronecker") {
    lowdisc::KroneckerGenerator kg =
        g.use_rational != 0 ? lowdisc::KroneckerGenerator::from_rational(g.n, g.p, g.q)
                            : lowdisc::KroneckerGenerator::from_real(g.n, g.r);
    lowdisc::PointSet ps = lowdisc::kronecker_lattice(kg);
    return g.dim == 3 ? lowdisc::lift(ps) : ps;
  }
  if (fam == "vdc") {
    lowdisc::PointSet ps = lowdisc::van_der_corput_lifted(g.n, g.shift);
    return g.dim == 3 ? lowdisc::lift(ps) : ps;
  }
  if (fam == "sobol") return lowdisc::sobol(g.n, g.dim, g.skip);
  if (fam == "random") {
    if (g.dim == 2)
      return lowdisc::permutation_pointset(
          lowdisc::random_permutation(g.n, g.seed));
    lowdisc::Permutation sigma =
        lowdisc::random_permutation(g.n, lowdisc::SplitMix64::derive(g.seed, 0));
    lowdisc::Permutation tau =
        lowdisc::random_permutation(g.n, lowdisc::SplitMix64::derive(g.seed, 1));
    lowdisc::PointSet ps;
    ps.dim = 3;
    ps.n = g.n;
    ps.provenance = "random";
    ps.coords.resize(static_cast<std::size_t>(g.n) * 3);
    double dn = static_cast<double>(g.n);
    for (int i = 1; i <= g.n; ++i) {
      ps.coords[static_cast<std::size_t>(i - 1) * 3] = (i - 1) / dn;
      ps.coords[static_cast<std::size_t>(i - 1) * 3 + 1] = (sigma(i) - 1) / dn;
      ps.coords[static_cast<std::size_t>(i - 1) * 3 + 2] = (tau(i) - 1) / dn;
    }
    ps.general_position = lowdisc::in_general_position(ps);
    ps.validate();
    return ps;
  }
  throw lowdisc::invalid_input("unknown generator family: " + fam);
}

void fill_summary(const std::vector<lowdisc::ExperimentRecord>& records,
                  ld_batch_summary* out) {
  if (out == nullptr) return;
  out->count = static_cast<int>(records.size());
  std::size_t b = lowdisc::best_record(records);
  out->best_f = records[b].f;
  out->median_f = lowdisc::median_f(records);
  std::snprintf(out->best_param, sizeof(out->best_param), "%s",
                records[b].param.c_str());
}

void write_batch_outputs(const std::vector<lowdisc::ExperimentRecord>& records,
                         const char* jsonl_path, const char* csv_path,
                         const char* hist_path, int hist_bins) {
  if (jsonl_path != nullptr) lowdisc::append_records_jsonl(jsonl_path, records);
  if (csv_path != nullptr) lowdisc::write_summary_csv(csv_path, records);
  if (hist_path != nullptr) {
    std::vector<double> fs;
    for (const lowdisc::ExperimentRecord& r : records)
      if (r.error.empty()) fs.push_back(r.f);
    lowdisc::write_histogram_csv(hist_path, lowdisc::histogram(fs, hist_bins));
  }
}

}  // namespace

extern "C" {

const char* ld_strerror(int code) {
  switch (code) {
    case LD_OK: return "ok";
    case LD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LD_ERR_IO: return "io error";
    case LD_ERR_UNSUPPORTED_DIMENSION: return "unsupported dimension";
    case LD_ERR_SOLVER_FAILURE: return "solver failure";
    case LD_ERR_REGRESSION: return "regression failure";
    case LD_ERR_INTERNAL: return "internal error";
    default: return "unknown error";
  }
}

const char* ld_last_error(void) { return g_last_error.c_str(); }

ld_config ld_config_default(void) {
  ld_config c;
  lowdisc::SolverConfig s;
  c.time_limit = s.time_limit;
  c.max_outer_iterations = s.max_outer_iterations;
  c.improvement_tolerance = s.improvement_tolerance;
  c.restarts = s.restarts;
  c.perturbation_scale = s.perturbation_scale;
  c.seed = s.seed;
  c.epsilon = 1e-6;
  c.jobs = 0;
  c.fast = 0;
  return c;
}

ld_genspec ld_genspec_default(void) {
  ld_genspec g;
  g.family = "fibonacci";
  g.n = 100;
  g.dim = 2;
  g.shift = 0;
  g.skip = 0;
  g.p = 0;
  g.q = 0;
  g.r = 0.0;
  g.use_rational = 0;
  g.seed = 1;
  return g;
}

int ld_generate(const ld_genspec* spec, ld_pointset** out) {
  if (spec == nullptr || out == nullptr)
    return fail(LD_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&]() { *out = new ld_pointset{generate_from(*spec)}; });
}

int ld_pointset_read(const char* path, ld_pointset** out) {
  if (path == nullptr || out == nullptr)
    return fail(LD_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&]() { *out = new ld_pointset{lowdisc::read_pointset_text(path)}; });
}

int ld_pointset_write(const ld_pointset* ps, const char* path) {
  if (ps == nullptr || path == nullptr)
    return fail(LD_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&]() { lowdisc::write_pointset_text(path, ps->ps); });
}

int ld_pointset_n(const ld_pointset* ps) { return ps == nullptr ? 0 : ps->ps.n; }

int ld_pointset_dim(const ld_pointset* ps) {
  return ps == nullptr ? 0 : ps->ps.dim;
}

int ld_pointset_coord(const ld_pointset* ps, int i, int k, double* out) {
  if (ps == nullptr || out == nullptr)
    return fail(LD_ERR_INVALID_ARGUMENT, "null pointer argument");
  if (i < 0 || i >= ps->ps.n || k < 0 || k >= ps->ps.dim)
    return fail(LD_ERR_INVALID_ARGUMENT, "coordinate index out of range");
  *out = ps->ps.at(i, k);
  return LD_OK;
}

void ld_pointset_free(ld_pointset* ps) { delete ps; }

int ld_star_discrepancy(const ld_pointset* ps, double* value) {
  if (ps == nullptr || value == nullptr)
    return fail(LD_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&]() { *value = lowdisc::star_discrepancy(ps->ps).value; });
}

int ld_heatmap_csv(const ld_pointset* ps, const char* path, double* max_out) {
  if (ps == nullptr || path == nullptr)
    return fail(LD_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&]() {
    lowdisc::LocalDiscrepancyMap map = lowdisc::local_discrepancy_map(ps->ps);
    lowdisc::write_heatmap_csv(path, map);
    if (max_out != nullptr) {
      double best = 0.0;
      for (double v : map.open) best = std::max(best, v);
      for (double v : map.closed) best = std::max(best, v);
      *max_out = best;
    }
  });
}

int ld_optimize(const ld_pointset* ps, const ld_config* cfg, ld_result** out) {
  if (ps == nullptr || cfg == nullptr || out == nullptr)
    return fail(LD_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&]() {
    lowdisc::OptimizationProblem prob =
        lowdisc::build_problem(ps->ps, cfg->epsilon, true);
    lowdisc::OptimizationResult res = lowdisc::optimize(prob, solver_from(*cfg));
    lowdisc::CoordinateFamily fx{prob.n, res.x};
    lowdisc::CoordinateFamily fy{prob.n, res.y};
    lowdisc::PointSet assembled =
        prob.dim == 3
            ? lowdisc::assemble(fx, fy, lowdisc::CoordinateFamily{prob.n, res.z},
                                prob.perm3)
            : lowdisc::assemble(fx, fy, prob.perm);
    *out = new ld_result{std::move(prob), std::move(res), std::move(assembled)};
  });
}

double ld_result_f(const ld_result* res) { return res == nullptr ? 0.0 : res->res.f; }

double ld_result_exact(const ld_result* res) {
  return res == nullptr ? 0.0 : res->res.exact;
}

const char* ld_result_status(const ld_result* res) {
  return res == nullptr ? "" : lowdisc::to_string(res->res.status);
}

int ld_result_iterations(const ld_result* res) {
  return res == nullptr ? 0 : res->res.iterations;
}

int ld_result_restarts(const ld_result* res) {
  return res == nullptr ? 0 : res->res.restarts_used;
}

double ld_result_seconds(const ld_result* res) {
  return res == nullptr ? 0.0 : res->res.wall_time_seconds;
}

int ld_result_write_json(const ld_result* res, const char* path) {
  if (res == nullptr || path == nullptr)
    return fail(LD_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&]() { lowdisc::write_result_json(path, res->prob, res->res); });
}

int ld_result_pointset(const ld_result* res, ld_pointset** out) {
  if (res == nullptr || out == nullptr)
    return fail(LD_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&]() { *out = new ld_pointset{res->assembled}; });
}

void ld_result_free(ld_result* res) { delete res; }

int ld_shift_scan(int n, long long shift_lo, long long shift_hi,
                  const ld_config* cfg, const char* jsonl_path,
                  const char* csv_path, ld_batch_summary* out) {
  if (cfg == nullptr) return fail(LD_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&]() {
    std::vector<lowdisc::ExperimentRecord> records =
        lowdisc::shift_scan(n, shift_lo, shift_hi, harness_from(*cfg));
    write_batch_outputs(records, jsonl_path, csv_path, nullptr, 0);
    fill_summary(records, out);
  });
}

int ld_kronecker_sweep(int n, const ld_config* cfg, const char* jsonl_path,
                       const char* csv_path, const char* hist_path,
                       int hist_bins, ld_batch_summary* out) {
  if (cfg == nullptr) return fail(LD_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&]() {
    std::vector<lowdisc::ExperimentRecord> records =
        lowdisc::kronecker_sweep(n, harness_from(*cfg));
    lowdisc::rank_records(records);
    write_batch_outputs(records, jsonl_path, csv_path, hist_path, hist_bins);
    fill_summary(records, out);
  });
}

int ld_random_batch(int n, int count, uint64_t seed, const ld_config* cfg,
                    const char* jsonl_path, const char* csv_path,
                    const char* hist_path, int hist_bins,
                    ld_batch_summary* out) {
  if (cfg == nullptr) return fail(LD_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&]() {
    std::vector<lowdisc::ExperimentRecord> records =
        lowdisc::random_batch(n, count, seed, harness_from(*cfg));
    write_batch_outputs(records, jsonl_path, csv_path, hist_path, hist_bins);
    fill_summary(records, out);
  });
}

int ld_regress(const ld_config* cfg, double slack, int include_optimized,
               const char* csv_path, ld_regress_summary* out) {
  if (cfg == nullptr) return fail(LD_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&]() {
    lowdisc::RegressionReport rep =
        lowdisc::run_regression(harness_from(*cfg), slack, include_optimized != 0,
                                nullptr);
    if (csv_path != nullptr) lowdisc::write_regression_csv(csv_path, rep);
    if (out != nullptr) {
      out->rows = static_cast<int>(rep.rows.size());
      out->passed = 0;
      out->missing = 0;
      for (const lowdisc::RegressionRow& r : rep.rows) {
        if (r.pass) ++out->passed;
        if (!r.found) ++out->missing;
      }
      out->hard_failures = rep.hard_failures;
    }
  });
}

int ld_curves_csv(const char* path, int n_max) {
  if (path == nullptr) return fail(LD_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&]() { lowdisc::write_curves_csv(path, n_max); });
}

}  // extern "C"
