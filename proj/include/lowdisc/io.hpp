#pragma once

#include <string>
#include <vector>

#include "lowdisc/discrepancy.hpp"
#include "lowdisc/optimizer.hpp"
#include "lowdisc/pointset.hpp"

namespace lowdisc {

/// 17-significant-digit decimal form; round-trips through strtod bit-exactly.
std::string format_g17(double v);

/// Text format: line 1 `n d`, then n lines of d space-separated coordinates.
void write_pointset_text(const std::string& path, const PointSet& ps);
PointSet read_pointset_text(const std::string& path);

/// Text format: line 1 `n`, line 2 the n values pi(1..n).
void write_permutation_text(const std::string& path, const Permutation& p);
Permutation read_permutation_text(const std::string& path);

/// CSV with header `i,j,x,y,open,closed`, one row per grid anchor.
void write_heatmap_csv(const std::string& path, const LocalDiscrepancyMap& map);
LocalDiscrepancyMap read_heatmap_csv(const std::string& path);

/// Result document with deterministic field order: n, dim, permutation (sigma
/// for 3D), tau (3D only), epsilon, f, exact_discrepancy, status, iterations,
/// restarts_used, wall_time_seconds, coordinates, trace.
std::string result_to_json(const OptimizationProblem& prob,
                           const OptimizationResult& res);
void write_result_json(const std::string& path, const OptimizationProblem& prob,
                       const OptimizationResult& res);

/// Reference curves c*ln(n)/n for n = 1..n_max; natural logarithm, noted in
/// the header.
void write_curves_csv(const std::string& path, int n_max);

}  // namespace lowdisc
