#pragma once

#include <optional>
#include <string>
#include <vector>

#include "momentflow/ensembles.hpp"
#include "momentflow/oracle.hpp"

namespace momentflow {

/// One row of the comparison table.
struct MethodRow {
  std::string method;
  std::optional<MetricReport> report;  // empty when the method itself failed
};

struct BenchmarkResult {
  std::vector<MethodRow> rows;  // fixed order: pseudo-true, analytic,
                                // mean-field, linear, unscented95, unscented02
};

/// Runs the full comparison protocol on one network: QMC ground truth over
/// `replicates` independent realizations of `samples` points each, then the
/// five approximating methods. Replicates are generated concurrently;
/// assembly is deterministic.
BenchmarkResult run_benchmark(const Network& net, const Gaussian& input,
                              Eigen::Index samples, int replicates,
                              std::uint64_t seed);

/// CSV with header
///   method,mean,variance,wasserstein,wasserstein_se,kl_y1_to_m,kl_m_to_y1,kl_se
/// Infinite values are written as the literal "inf"; a failed method row
/// keeps its moments blank and reports infinite divergences.
std::string benchmark_to_csv(const BenchmarkResult& result);

/// Same table as JSON.
std::string benchmark_to_json(const BenchmarkResult& result);

/// Five-number summary of one method's KL(Y1||method) values across several
/// benchmark report files.
struct MethodSummary {
  std::string method;
  double min = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, max = 0.0;
};

/// Parses benchmark CSVs and aggregates per-method KL distributions.
std::vector<MethodSummary> summarize_reports(
    const std::vector<std::string>& csv_texts);

std::string summaries_to_csv(const std::vector<MethodSummary>& summaries);

/// Deterministic formatting used in every CSV cell ("%.12e"; "inf"/"-inf"
/// for infinities).
std::string format_cell(double v);

}  // namespace momentflow
