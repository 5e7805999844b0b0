#include "lowdisc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>
#include <thread>

#include <json.hpp>

#include "lowdisc/discrepancy.hpp"
#include "lowdisc/generators.hpp"
#include "lowdisc/io.hpp"
#include "lowdisc/rng.hpp"

namespace lowdisc {

namespace {

std::string iso_timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm g{};
  gmtime_r(&t, &g);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &g);
  return buf;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  jobs = std::min(jobs, count);
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    });
  }
  for (std::thread& t : workers) t.join();
}

ExperimentRecord run_one(const OptimizationProblem& prob, SolverConfig cfg,
                         std::uint64_t seed, const std::string& label,
                         const std::string& param, double param_num) {
  cfg.seed = seed;
  ExperimentRecord rec;
  rec.id = label + "/" + param;
  rec.label = label;
  rec.param = param;
  rec.param_num = param_num;
  rec.n = prob.n;
  rec.dim = prob.dim;
  rec.seed = seed;
  rec.config = cfg;
  rec.timestamp = iso_timestamp();
  try {
    OptimizationResult res = optimize(prob, cfg);
    rec.f = res.f;
    rec.exact = res.exact;
    rec.status = to_string(res.status);
    rec.iterations = res.iterations;
    rec.restarts_used = res.restarts_used;
    rec.seconds = res.wall_time_seconds;
  } catch (const std::exception& e) {
    rec.status = "failed";
    rec.error = e.what();
    rec.f = std::numeric_limits<double>::quiet_NaN();
    rec.exact = std::numeric_limits<double>::quiet_NaN();
  }
  return rec;
}

nlohmann::ordered_json record_to_json(const ExperimentRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["label"] = r.label;
  j["param"] = r.param;
  j["param_num"] = r.param_num;
  j["n"] = r.n;
  j["dim"] = r.dim;
  j["seed"] = r.seed;
  nlohmann::ordered_json c;
  c["time_limit"] = r.config.time_limit;
  c["max_outer_iterations"] = r.config.max_outer_iterations;
  c["improvement_tolerance"] = r.config.improvement_tolerance;
  c["restarts"] = r.config.restarts;
  c["perturbation_scale"] = r.config.perturbation_scale;
  c["seed"] = r.config.seed;
  j["config"] = c;
  j["f"] = r.f;
  j["exact"] = r.exact;
  j["status"] = r.status;
  j["iterations"] = r.iterations;
  j["restarts_used"] = r.restarts_used;
  j["seconds"] = r.seconds;
  j["timestamp"] = r.timestamp;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

ExperimentRecord record_from_json(const nlohmann::json& j) {
  ExperimentRecord r;
  r.id = j.at("id").get<std::string>();
  r.label = j.at("label").get<std::string>();
  r.param = j.at("param").get<std::string>();
  r.param_num = j.at("param_num").get<double>();
  r.n = j.at("n").get<int>();
  r.dim = j.at("dim").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  const auto& c = j.at("config");
  r.config.time_limit = c.at("time_limit").get<double>();
  r.config.max_outer_iterations = c.at("max_outer_iterations").get<int>();
  r.config.improvement_tolerance = c.at("improvement_tolerance").get<double>();
  r.config.restarts = c.at("restarts").get<int>();
  r.config.perturbation_scale = c.at("perturbation_scale").get<double>();
  r.config.seed = c.at("seed").get<std::uint64_t>();
  r.f = j.at("f").get<double>();
  r.exact = j.at("exact").get<double>();
  r.status = j.at("status").get<std::string>();
  r.iterations = j.at("iterations").get<int>();
  r.restarts_used = j.at("restarts_used").get<int>();
  r.seconds = j.at("seconds").get<double>();
  r.timestamp = j.at("timestamp").get<std::string>();
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  return r;
}

}  // namespace

void apply_fast_profile(SolverConfig& cfg) {
  cfg.time_limit = 2.0;
  cfg.restarts = 1;
  cfg.improvement_tolerance = 1e-9;
}

std::vector<ExperimentRecord> shift_scan(int n, long long shift_lo,
                                         long long shift_hi,
                                         const HarnessOptions& opt) {
  if (n < 2) throw invalid_input("shift_scan: n must be >= 2");
  if (shift_lo < 0 || shift_hi < shift_lo)
    throw invalid_input("shift_scan: bad shift range");
  int count = static_cast<int>(shift_hi - shift_lo + 1);
  std::vector<ExperimentRecord> records(static_cast<std::size_t>(count));
  parallel_for(count, opt.jobs, [&](int idx) {
    long long s = shift_lo + idx;
    PointSet ps = fibonacci_set(n, s);
    OptimizationProblem prob = build_problem(ps, opt.epsilon, true);
    std::uint64_t seed =
        SplitMix64::derive(opt.solver.seed, static_cast<std::uint64_t>(s));
    records[static_cast<std::size_t>(idx)] =
        run_one(prob, opt.solver, seed, "fibonacci", std::to_string(s),
                static_cast<double>(s));
  });
  return records;
}

std::vector<ExperimentRecord> kronecker_sweep(int n, const HarnessOptions& opt) {
  std::vector<KroneckerGenerator> gens = enumerate_kronecker_generators(n);
  std::vector<std::pair<Permutation, KroneckerGenerator>> uniq =
      dedupe_permutations(gens);
  int count = static_cast<int>(uniq.size());
  std::vector<ExperimentRecord> records(static_cast<std::size_t>(count));
  parallel_for(count, opt.jobs, [&](int idx) {
    const KroneckerGenerator& g = uniq[static_cast<std::size_t>(idx)].second;
    PointSet ps = kronecker_lattice(g);
    OptimizationProblem prob = build_problem(ps, opt.epsilon, true);
    std::string param = g.rational
                            ? std::to_string(g.p) + "/" + std::to_string(g.q)
                            : format_g17(g.r);
    std::uint64_t seed =
        SplitMix64::derive(opt.solver.seed, static_cast<std::uint64_t>(idx));
    records[static_cast<std::size_t>(idx)] =
        run_one(prob, opt.solver, seed, "kronecker", param, g.r);
  });
  return records;
}

std::vector<ExperimentRecord> random_batch(int n, int count, std::uint64_t seed,
                                           const HarnessOptions& opt) {
  if (count < 1) throw invalid_input("random_batch: count must be >= 1");
  std::vector<ExperimentRecord> records(static_cast<std::size_t>(count));
  parallel_for(count, opt.jobs, [&](int idx) {
    std::uint64_t draw_seed =
        SplitMix64::derive(seed, static_cast<std::uint64_t>(idx));
    Permutation p = random_permutation(n, draw_seed);
    OptimizationProblem prob = build_problem(p, opt.epsilon);
    records[static_cast<std::size_t>(idx)] =
        run_one(prob, opt.solver, draw_seed, "random", std::to_string(idx),
                static_cast<double>(idx));
  });
  return records;
}

std::size_t best_record(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw invalid_input("best_record: empty record list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const ExperimentRecord& a = records[i];
    const ExperimentRecord& b = records[best];
    bool a_ok = !std::isnan(a.f);
    bool b_ok = !std::isnan(b.f);
    if (!a_ok) continue;
    if (!b_ok || a.f < b.f ||
        (a.f == b.f && (a.param_num < b.param_num ||
                        (a.param_num == b.param_num && a.id < b.id))))
      best = i;
  }
  return best;
}

void rank_records(std::vector<ExperimentRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const ExperimentRecord& a, const ExperimentRecord& b) {
                     bool a_ok = !std::isnan(a.f);
                     bool b_ok = !std::isnan(b.f);
                     if (a_ok != b_ok) return a_ok;
                     if (a.f != b.f) return a.f < b.f;
                     if (a.param_num != b.param_num) return a.param_num < b.param_num;
                     return a.id < b.id;
                   });
}

double median_f(const std::vector<ExperimentRecord>& records) {
  std::vector<double> v;
  for (const ExperimentRecord& r : records)
    if (!std::isnan(r.f)) v.push_back(r.f);
  if (v.empty()) throw invalid_input("median_f: no finite objectives");
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  if (v.size() % 2 == 1) return v[m];
  return 0.5 * (v[m - 1] + v[m]);
}

void append_records_jsonl(const std::string& path,
                          const std::vector<ExperimentRecord>& records) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw io_error(path + ": cannot open for writing");
  for (const ExperimentRecord& r : records)
    out << record_to_json(r).dump() << '\n';
  if (!out) throw io_error(path + ": write failed");
}

std::vector<ExperimentRecord> read_records_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path + ": cannot open for reading");
  std::vector<ExperimentRecord> records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      records.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw io_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return records;
}

void write_summary_csv(const std::string& path,
                       const std::vector<ExperimentRecord>& records) {
  std::ofstream out(path);
  if (!out) throw io_error(path + ": cannot open for writing");
  out << "label,param,n,dim,f,exact,status,seconds\n";
  for (const ExperimentRecord& r : records) {
    out << r.label << ',' << r.param << ',' << r.n << ',' << r.dim << ','
        << format_g17(r.f) << ',' << format_g17(r.exact) << ',' << r.status << ','
        << format_g17(r.seconds) << '\n';
  }
  if (!out) throw io_error(path + ": write failed");
}

std::vector<HistogramBin> histogram(const std::vector<double>& values, int bins) {
  if (bins < 1) throw invalid_input("histogram: bin count must be >= 1");
  std::vector<HistogramBin> out;
  if (values.empty()) return out;
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  if (lo == hi) {
    out.push_back({lo, hi, static_cast<int>(values.size())});
    return out;
  }
  out.resize(static_cast<std::size_t>(bins));
  double span = hi - lo;
  for (int b = 0; b < bins; ++b) {
    out[static_cast<std::size_t>(b)].lo = lo + span * b / bins;
    out[static_cast<std::size_t>(b)].hi =
        b + 1 == bins ? hi : lo + span * (b + 1) / bins;
  }
  out[0].lo = lo;
  for (double v : values) {
    int b = static_cast<int>((v - lo) / span * bins);
    if (b < 0) b = 0;
    if (b >= bins) b = bins - 1;
    // guard against rounding placing v outside its half-open bin
    while (b > 0 && v < out[static_cast<std::size_t>(b)].lo) --b;
    while (b + 1 < bins && v >= out[static_cast<std::size_t>(b)].hi) ++b;
    ++out[static_cast<std::size_t>(b)].count;
  }
  return out;
}

void write_histogram_csv(const std::string& path,
                         const std::vector<HistogramBin>& bins) {
  std::ofstream out(path);
  if (!out) throw io_error(path + ": cannot open for writing");
  out << "bin_lo,bin_hi,count\n";
  for (const HistogramBin& b : bins)
    out << format_g17(b.lo) << ',' << format_g17(b.hi) << ',' << b.count << '\n';
  if (!out) throw io_error(path + ": write failed");
}

ReferenceTable builtin_references() {
  ReferenceTable t;
  auto add = [&](const std::string& label, int n, double value, ReferenceKind kind) {
    t.rows.push_back({label, n, value, kind, "published benchmark"});
  };
  add("exact/fibonacci+1/n=20", 20, 0.105883, ReferenceKind::exact);
  add("exact/fibonacci+1/n=50", 50, 0.049165, ReferenceKind::exact);
  add("exact/fibonacci+1/n=100", 100, 0.026105, ReferenceKind::exact);
  add("exact/fibonacci+1/n=180", 180, 0.015165, ReferenceKind::exact);
  add("exact/fibonacci+1/n=220", 220, 0.012407, ReferenceKind::exact);
  add("exact/fibonacci+1/n=260", 260, 0.010894, ReferenceKind::exact);
  add("exact/fibonacci+1/n=350", 350, 0.008731, ReferenceKind::exact);
  add("exact/fibonacci+1/n=420", 420, 0.00728, ReferenceKind::exact);
  add("exact/fibonacci+1/n=500", 500, 0.00611, ReferenceKind::exact);
  add("exact/fibonacci+0/n=100", 100, 0.027485, ReferenceKind::exact);
  add("soft/sobol3d/n=14", 14, 0.23096, ReferenceKind::soft_exact);
  add("soft/sobol3d/n=50", 50, 0.08997, ReferenceKind::soft_exact);
  add("opt/fibonacci+1/n=20", 20, 0.06219, ReferenceKind::optimized);
  add("opt/fibonacci+1/n=100", 100, 0.01492, ReferenceKind::optimized);
  add("opt/vdc/n=100", 100, 0.01588, ReferenceKind::optimized);
  return t;
}

RegressionReport regression_compare(const std::vector<ExperimentRecord>& records,
                                    const ReferenceTable& table, double slack) {
  if (!(slack >= 1.0)) throw invalid_input("regression: slack must be >= 1");
  RegressionReport rep;
  if (records.empty()) return rep;
  for (const ReferenceRow& row : table.rows) {
    RegressionRow out;
    out.label = row.label;
    out.kind = row.kind;
    out.expected = row.value;
    const ExperimentRecord* rec = nullptr;
    for (const ExperimentRecord& r : records) {
      if (r.id == row.label) {
        rec = &r;
        break;
      }
    }
    if (rec == nullptr) {
      out.found = false;
      out.pass = false;
      out.note = "no record";
      rep.rows.push_back(out);
      continue;
    }
    out.found = true;
    if (!rec->error.empty()) {
      out.pass = false;
      out.note = "solver failed: " + rec->error;
      if (row.kind != ReferenceKind::soft_exact) ++rep.hard_failures;
      rep.rows.push_back(out);
      continue;
    }
    if (row.kind == ReferenceKind::optimized) {
      out.achieved = rec->f;
      out.pass = rec->f <= row.value * slack;
      if (!out.pass) {
        out.note = "f above " + format_g17(row.value * slack);
        ++rep.hard_failures;
      }
    } else {
      out.achieved = rec->exact;
      double diff = std::fabs(rec->exact - row.value);
      out.pass = diff <= 5e-6;
      if (!out.pass) {
        out.note = "deviation " + format_g17(diff);
        if (row.kind == ReferenceKind::exact) ++rep.hard_failures;
      }
      if (row.kind == ReferenceKind::soft_exact && !out.pass)
        out.note += " (soft row, not counted)";
    }
    rep.rows.push_back(out);
  }
  return rep;
}

RegressionReport run_regression(const HarnessOptions& opt, double slack,
                                bool include_optimized,
                                std::vector<ExperimentRecord>* records_out) {
  ReferenceTable table = builtin_references();
  std::vector<ExperimentRecord> records;

  auto evaluated_record = [&](const std::string& id, const PointSet& ps) {
    ExperimentRecord rec;
    rec.id = id;
    rec.label = id;
    rec.param = ps.provenance;
    rec.n = ps.n;
    rec.dim = ps.dim;
    rec.config = opt.solver;
    rec.timestamp = iso_timestamp();
    try {
      double v = star_discrepancy(ps).value;
      rec.f = v;
      rec.exact = v;
      rec.status = "evaluated";
    } catch (const std::exception& e) {
      rec.status = "failed";
      rec.error = e.what();
      rec.f = std::numeric_limits<double>::quiet_NaN();
      rec.exact = std::numeric_limits<double>::quiet_NaN();
    }
    records.push_back(std::move(rec));
  };

  for (const ReferenceRow& row : table.rows) {
    if (row.kind == ReferenceKind::exact) {
      long long shift = row.label.find("fibonacci+1") != std::string::npos ? 1 : 0;
      evaluated_record(row.label, fibonacci_set(row.n, shift));
    } else if (row.kind == ReferenceKind::soft_exact) {
      evaluated_record(row.label, sobol(row.n, 3, 0));
    } else if (include_optimized) {
      PointSet ps = row.label.find("vdc") != std::string::npos
                        ? van_der_corput_lifted(row.n, 0)
                        : fibonacci_set(row.n, 1);
      OptimizationProblem prob = build_problem(ps, opt.epsilon, true);
      ExperimentRecord rec = run_one(prob, opt.solver, opt.solver.seed, row.label,
                                     ps.provenance, static_cast<double>(row.n));
      rec.id = row.label;
      records.push_back(std::move(rec));
    }
  }
  RegressionReport rep = regression_compare(records, table, slack);
  if (records_out != nullptr) *records_out = std::move(records);
  return rep;
}

void write_regression_csv(const std::string& path, const RegressionReport& report) {
  std::ofstream out(path);
  if (!out) throw io_error(path + ": cannot open for writing");
  out << "label,kind,expected,achieved,pass,note\n";
  for (const RegressionRow& r : report.rows) {
    const char* kind = r.kind == ReferenceKind::exact
                           ? "exact"
                           : (r.kind == ReferenceKind::optimized ? "optimized"
                                                                 : "soft");
    out << r.label << ',' << kind << ',' << format_g17(r.expected) << ','
        << (r.found ? format_g17(r.achieved) : std::string("-")) << ','
        << (r.pass ? "pass" : "fail") << ',' << r.note << '\n';
  }
  if (!out) throw io_error(path + ": write failed");
}

}  // namespace lowdisc
