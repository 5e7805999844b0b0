#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "lowdisc.h"

namespace {

int exit_code_for(int ld_code) {
  switch (ld_code) {
    case LD_OK:
      return 0;
    case LD_ERR_SOLVER_FAILURE:
    case LD_ERR_INTERNAL:
      return 2;
    case LD_ERR_REGRESSION:
      return 3;
    default:
      return 1;
  }
}

int report(int ld_code) {
  if (ld_code != LD_OK)
    std::fprintf(stderr, "error: %s: %s\n", ld_strerror(ld_code), ld_last_error());
  return exit_code_for(ld_code);
}

struct GenFlags {
  std::string gen = "fibonacci";
  int n = 100;
  int dim = 2;
  long long shift = 0;
  long long skip = 0;
  std::string rational;
  double r = 0.0;
  bool r_set = false;
  std::uint64_t seed = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--gen", gen, "generator family")
        ->check(CLI::IsMember({"fibonacci", "kronecker", "vdc", "sobol", "random"}));
    cmd->add_option("--n", n, "number of points");
    cmd->add_option("--dim", dim, "dimension")->check(CLI::IsMember({2, 3}));
    cmd->add_option("--shift", shift, "sequence shift");
    cmd->add_option("--skip", skip, "leading points to drop");
    cmd->add_option("--rational", rational, "rational lattice generator p/q");
    cmd->add_option("--r", r, "real lattice generator in (0,1]")
        ->each([this](const std::string&) { r_set = true; });
    cmd->add_option("--seed", seed, "random seed");
  }

  int build(ld_pointset** out) const {
    ld_genspec spec = ld_genspec_default();
    spec.family = gen.c_str();
    spec.n = n;
    spec.dim = dim;
    spec.shift = shift;
    spec.skip = skip;
    spec.seed = seed;
    if (!rational.empty()) {
      long long p = 0;
      long long q = 0;
      if (std::sscanf(rational.c_str(), "%lld/%lld", &p, &q) != 2) {
        std::fprintf(stderr, "error: --rational expects p/q, got %s\n",
                     rational.c_str());
        return LD_ERR_INVALID_ARGUMENT;
      }
      spec.p = p;
      spec.q = q;
      spec.use_rational = 1;
    } else if (r_set) {
      spec.r = r;
    } else if (gen == "kronecker") {
      std::fprintf(stderr, "error: kronecker needs --rational p/q or --r\n");
      return LD_ERR_INVALID_ARGUMENT;
    }
    return ld_generate(&spec, out);
  }
};

struct ConfigFlags {
  ld_config cfg = ld_config_default();
  bool fast = false;

  // The solver seed is wired per subcommand so families that also draw random
  // input share one --seed flag.
  void attach(CLI::App* cmd) {
    cmd->add_option("--epsilon", cfg.epsilon, "minimum coordinate separation");
    cmd->add_option("--time-limit", cfg.time_limit, "seconds per optimize call");
    cmd->add_option("--restarts", cfg.restarts, "perturbed restarts per call");
    cmd->add_option("--jobs", cfg.jobs, "parallel batch workers");
    cmd->add_flag("--fast", fast, "2 s per-instance profile");
  }

  ld_config resolved() const {
    ld_config c = cfg;
    c.fast = fast ? 1 : 0;
    return c;
  }
};

/// Loads a point set from the positional input when present, otherwise from
/// the generator flags.
int load_input(const std::string& input, const GenFlags& gen, ld_pointset** out) {
  if (!input.empty()) return ld_pointset_read(input.c_str(), out);
  return gen.build(out);
}

void print_summary(const ld_batch_summary& s, const char* what, double seconds) {
  std::printf("%s: %d runs, best f = %.6g (param %s), median f = %.6g (%.3f s)\n",
              what, s.count, s.best_f, s.best_param, s.median_f, seconds);
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-discrepancy point set toolkit"};
  app.require_subcommand(1);

  // generate
  auto* c_gen = app.add_subcommand("generate", "write a generated point set");
  GenFlags g_gen;
  g_gen.attach(c_gen);
  std::string gen_out;
  c_gen->add_option("--out", gen_out, "output path")->required();

  // evaluate
  auto* c_eval = app.add_subcommand("evaluate", "exact star discrepancy of a file");
  std::string eval_input;
  c_eval->add_option("input", eval_input, "point set file")->required();

  // optimize
  auto* c_opt = app.add_subcommand("optimize", "optimize coordinate placements");
  std::string opt_input;
  c_opt->add_option("input", opt_input, "point set file (omit to use --gen)");
  GenFlags g_opt;
  g_opt.attach(c_opt);
  ConfigFlags k_opt;
  k_opt.attach(c_opt);
  std::string opt_out;
  std::string opt_format = "txt";
  c_opt->add_option("--out", opt_out, "output path");
  c_opt->add_option("--format", opt_format, "output format")
      ->check(CLI::IsMember({"txt", "json"}));

  // heatmap
  auto* c_heat = app.add_subcommand("heatmap", "local discrepancy map CSV");
  std::string heat_input;
  c_heat->add_option("input", heat_input, "point set file (omit to use --gen)");
  GenFlags g_heat;
  g_heat.attach(c_heat);
  std::string heat_out;
  c_heat->add_option("--out", heat_out, "output CSV path")->required();

  // shift-scan
  auto* c_scan = app.add_subcommand("shift-scan", "optimize across sequence shifts");
  int scan_n = 100;
  long long scan_lo = 0;
  long long scan_hi = 199;
  c_scan->add_option("--n", scan_n, "number of points");
  c_scan->add_option("--shift-min", scan_lo, "first shift");
  c_scan->add_option("--shift-max", scan_hi, "last shift");
  ConfigFlags k_scan;
  k_scan.attach(c_scan);
  c_scan->add_option("--seed", k_scan.cfg.seed, "solver seed");
  std::string scan_out;
  std::string scan_format = "csv";
  c_scan->add_option("--out", scan_out, "records output path");
  c_scan->add_option("--format", scan_format, "records format")
      ->check(CLI::IsMember({"csv", "json"}));

  // sweep
  auto* c_sweep = app.add_subcommand("sweep", "optimize all Kronecker permutations");
  int sweep_n = 100;
  c_sweep->add_option("--n", sweep_n, "number of points");
  ConfigFlags k_sweep;
  k_sweep.attach(c_sweep);
  c_sweep->add_option("--seed", k_sweep.cfg.seed, "solver seed");
  std::string sweep_out;
  std::string sweep_format = "csv";
  std::string sweep_hist;
  int sweep_bins = 20;
  c_sweep->add_option("--out", sweep_out, "records output path");
  c_sweep->add_option("--format", sweep_format, "records format")
      ->check(CLI::IsMember({"csv", "json"}));
  c_sweep->add_option("--hist", sweep_hist, "histogram CSV path");
  c_sweep->add_option("--bins", sweep_bins, "histogram bin count");

  // random-batch
  auto* c_rand = app.add_subcommand("random-batch", "optimize random permutations");
  int rand_n = 100;
  int rand_count = 50;
  std::uint64_t rand_seed = 1;
  c_rand->add_option("--n", rand_n, "number of points");
  c_rand->add_option("--count", rand_count, "number of draws");
  c_rand->add_option("--seed", rand_seed, "batch seed");
  ConfigFlags k_rand;
  k_rand.attach(c_rand);
  std::string rand_out;
  std::string rand_format = "csv";
  std::string rand_hist;
  int rand_bins = 20;
  c_rand->add_option("--out", rand_out, "records output path");
  c_rand->add_option("--format", rand_format, "records format")
      ->check(CLI::IsMember({"csv", "json"}));
  c_rand->add_option("--hist", rand_hist, "histogram CSV path");
  c_rand->add_option("--bins", rand_bins, "histogram bin count");

  // regress
  auto* c_reg = app.add_subcommand("regress", "compare against reference values");
  double reg_slack = 1.02;
  c_reg->add_option("--slack", reg_slack, "multiplier for optimized rows");
  ConfigFlags k_reg;
  k_reg.attach(c_reg);
  std::string reg_out;
  c_reg->add_option("--out", reg_out, "report CSV path");

  // curves
  auto* c_curves = app.add_subcommand("curves", "reference curve CSV");
  int curves_max = 500;
  c_curves->add_option("--n-max", curves_max, "largest n");
  std::string curves_out;
  c_curves->add_option("--out", curves_out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  double t0 = now_seconds();

  if (*c_gen) {
    ld_pointset* ps = nullptr;
    int rc = g_gen.build(&ps);
    if (rc != LD_OK) return report(rc);
    rc = ld_pointset_write(ps, gen_out.c_str());
    if (rc != LD_OK) {
      ld_pointset_free(ps);
      return report(rc);
    }
    double star = 0.0;
    rc = ld_star_discrepancy(ps, &star);
    ld_pointset_free(ps);
    if (rc != LD_OK) return report(rc);
    std::printf("wrote %s: n=%d d=%d star = %.6g (%.3f s)\n", gen_out.c_str(),
                g_gen.n, g_gen.dim, star, now_seconds() - t0);
    return 0;
  }

  if (*c_eval) {
    ld_pointset* ps = nullptr;
    int rc = ld_pointset_read(eval_input.c_str(), &ps);
    if (rc != LD_OK) return report(rc);
    double star = 0.0;
    rc = ld_star_discrepancy(ps, &star);
    ld_pointset_free(ps);
    if (rc != LD_OK) return report(rc);
    std::printf("star = %.6g (%.3f s)\n", star, now_seconds() - t0);
    return 0;
  }

  if (*c_opt) {
    ld_pointset* ps = nullptr;
    int rc = load_input(opt_input, g_opt, &ps);
    if (rc != LD_OK) return report(rc);
    ld_config cfg = k_opt.resolved();
    cfg.seed = g_opt.seed;
    ld_result* res = nullptr;
    rc = ld_optimize(ps, &cfg, &res);
    ld_pointset_free(ps);
    if (rc != LD_OK) return report(rc);
    if (!opt_out.empty()) {
      if (opt_format == "json") {
        rc = ld_result_write_json(res, opt_out.c_str());
      } else {
        ld_pointset* opt_ps = nullptr;
        rc = ld_result_pointset(res, &opt_ps);
        if (rc == LD_OK) {
          rc = ld_pointset_write(opt_ps, opt_out.c_str());
          ld_pointset_free(opt_ps);
        }
      }
      if (rc != LD_OK) {
        ld_result_free(res);
        return report(rc);
      }
    }
    std::printf("f = %.6g exact = %.6g status = %s (%.3f s)\n", ld_result_f(res),
                ld_result_exact(res), ld_result_status(res), now_seconds() - t0);
    ld_result_free(res);
    return 0;
  }

  if (*c_heat) {
    ld_pointset* ps = nullptr;
    int rc = load_input(heat_input, g_heat, &ps);
    if (rc != LD_OK) return report(rc);
    double max_local = 0.0;
    rc = ld_heatmap_csv(ps, heat_out.c_str(), &max_local);
    ld_pointset_free(ps);
    if (rc != LD_OK) return report(rc);
    std::printf("wrote %s: max local = %.6g (%.3f s)\n", heat_out.c_str(),
                max_local, now_seconds() - t0);
    return 0;
  }

  if (*c_scan) {
    ld_config cfg = k_scan.resolved();
    ld_batch_summary s;
    const char* jsonl = scan_format == "json" && !scan_out.empty() ? scan_out.c_str() : nullptr;
    const char* csv = scan_format == "csv" && !scan_out.empty() ? scan_out.c_str() : nullptr;
    int rc = ld_shift_scan(scan_n, scan_lo, scan_hi, &cfg, jsonl, csv, &s);
    if (rc != LD_OK) return report(rc);
    print_summary(s, "shift-scan", now_seconds() - t0);
    return 0;
  }

  if (*c_sweep) {
    ld_config cfg = k_sweep.resolved();
    ld_batch_summary s;
    const char* jsonl = sweep_format == "json" && !sweep_out.empty() ? sweep_out.c_str() : nullptr;
    const char* csv = sweep_format == "csv" && !sweep_out.empty() ? sweep_out.c_str() : nullptr;
    const char* hist = sweep_hist.empty() ? nullptr : sweep_hist.c_str();
    int rc = ld_kronecker_sweep(sweep_n, &cfg, jsonl, csv, hist, sweep_bins, &s);
    if (rc != LD_OK) return report(rc);
    print_summary(s, "sweep", now_seconds() - t0);
    return 0;
  }

  if (*c_rand) {
    ld_config cfg = k_rand.resolved();
    cfg.seed = rand_seed;
    ld_batch_summary s;
    const char* jsonl = rand_format == "json" && !rand_out.empty() ? rand_out.c_str() : nullptr;
    const char* csv = rand_format == "csv" && !rand_out.empty() ? rand_out.c_str() : nullptr;
    const char* hist = rand_hist.empty() ? nullptr : rand_hist.c_str();
    int rc = ld_random_batch(rand_n, rand_count, rand_seed, &cfg, jsonl, csv, hist,
                             rand_bins, &s);
    if (rc != LD_OK) return report(rc);
    print_summary(s, "random-batch", now_seconds() - t0);
    return 0;
  }

  if (*c_reg) {
    ld_config cfg = k_reg.resolved();
    ld_regress_summary s;
    int include_optimized = cfg.fast != 0 ? 0 : 1;
    int rc = ld_regress(&cfg, reg_slack, include_optimized,
                        reg_out.empty() ? nullptr : reg_out.c_str(), &s);
    if (rc != LD_OK) return report(rc);
    std::printf("regress: %d/%d rows passed, %d missing, %d hard failures (%.3f s)\n",
                s.passed, s.rows, s.missing, s.hard_failures, now_seconds() - t0);
    return s.hard_failures > 0 ? 3 : 0;
  }

  if (*c_curves) {
    int rc = ld_curves_csv(curves_out.c_str(), curves_max);
    if (rc != LD_OK) return report(rc);
    std::printf("wrote %s: n = 1..%d (%.3f s)\n", curves_out.c_str(), curves_max,
                now_seconds() - t0);
    return 0;
  }

  return 1;
}
