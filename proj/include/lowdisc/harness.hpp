#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lowdisc/optimizer.hpp"

namespace lowdisc {

/// One optimized instance of a batch experiment. Replaying the descriptor with
/// the same seed and config reproduces f exactly on a fixed platform.
struct ExperimentRecord {
  std::string id;       // label/param, unique within a batch
  std::string label;    // generator family
  std::string param;    // shift, lattice parameter, or draw index
  double param_num = 0.0;  // numeric form of param, used for ranking ties
  int n = 0;
  int dim = 2;
  std::uint64_t seed = 0;
  SolverConfig config;
  double f = 0.0;
  double exact = 0.0;
  std::string status;
  int iterations = 0;
  int restarts_used = 0;
  double seconds = 0.0;
  std::string timestamp;  // UTC, ISO 8601
  std::string error;      // nonempty when the solver failed on this instance
};

struct HarnessOptions {
  SolverConfig solver;
  double epsilon = 1e-6;
  int jobs = 0;  // 0 selects the hardware concurrency
};

/// Drops the per-instance budget to 2 seconds, a single restart, and a looser
/// convergence tolerance, trading the last digits of f for batch throughput.
void apply_fast_profile(SolverConfig& cfg);

/// Optimizes the shifted-lattice permutation for every shift in [lo, hi].
std::vector<ExperimentRecord> shift_scan(int n, long long shift_lo,
                                         long long shift_hi,
                                         const HarnessOptions& opt);

/// Optimizes every distinct lattice permutation with denominator <= n.
std::vector<ExperimentRecord> kronecker_sweep(int n, const HarnessOptions& opt);

/// Optimizes `count` seeded random permutations drawn from `seed`.
std::vector<ExperimentRecord> random_batch(int n, int count, std::uint64_t seed,
                                           const HarnessOptions& opt);

/// Index of the best record: lowest f, ties by ascending parameter.
std::size_t best_record(const std::vector<ExperimentRecord>& records);

/// Sorts by (f ascending, param_num ascending, id).
void rank_records(std::vector<ExperimentRecord>& records);

/// Median of the f values (mean of the middle pair for even counts).
double median_f(const std::vector<ExperimentRecord>& records);

void append_records_jsonl(const std::string& path,
                          const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_records_jsonl(const std::string& path);

/// Header `label,param,n,dim,f,exact,status,seconds`.
void write_summary_csv(const std::string& path,
                       const std::vector<ExperimentRecord>& records);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
};

/// Equal-width bins covering [min, max] exactly; counts sum to the value count.
std::vector<HistogramBin> histogram(const std::vector<double>& values, int bins);

/// Header `bin_lo,bin_hi,count`.
void write_histogram_csv(const std::string& path,
                         const std::vector<HistogramBin>& bins);

enum class ReferenceKind { exact, optimized, soft_exact };

struct ReferenceRow {
  std::string label;
  int n = 0;
  double value = 0.0;
  ReferenceKind kind = ReferenceKind::exact;
  std::string source;
};

struct ReferenceTable {
  std::vector<ReferenceRow> rows;
};

/// Published benchmark constants for the shifted lattice sets, the classical
/// permutations after optimization, and the 3D sequences.
ReferenceTable builtin_references();

struct RegressionRow {
  std::string label;
  ReferenceKind kind = ReferenceKind::exact;
  double expected = 0.0;
  double achieved = 0.0;
  bool found = false;
  bool pass = false;
  std::string note;
};

struct RegressionReport {
  std::vector<RegressionRow> rows;
  int hard_failures = 0;  // failing rows excluding soft and missing ones
};

/// Matches records to table rows by label. Optimized rows pass when
/// f <= value * slack; exact rows when |exact - value| <= 5e-6. Soft rows and
/// missing labels are reported but never counted as hard failures.
RegressionReport regression_compare(const std::vector<ExperimentRecord>& records,
                                    const ReferenceTable& table, double slack);

/// Evaluates (and, when include_optimized is set, optimizes) the point sets
/// behind every builtin reference row, then compares. Rows skipped by the
/// flag show up as missing, which is reported but not fatal.
RegressionReport run_regression(const HarnessOptions& opt, double slack,
                                bool include_optimized,
                                std::vector<ExperimentRecord>* records_out);

void write_regression_csv(const std::string& path, const RegressionReport& report);

}  // namespace lowdisc
