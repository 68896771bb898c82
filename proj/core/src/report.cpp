#include "momentflow/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "momentflow/parallel.hpp"
#include "momentflow/propagation.hpp"

namespace momentflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr const char* kMethodOrder[6] = {"pseudo-true", "analytic",
                                         "mean-field", "linear",
                                         "unscented95", "unscented02"};

Gaussian pooled_pseudo_true(const std::vector<SampleSet>& replicates) {
  Eigen::Index total = 0;
  for (const auto& s : replicates) total += s.samples.rows();
  Eigen::MatrixXd pooled(total, replicates.front().samples.cols());
  Eigen::Index at = 0;
  for (const auto& s : replicates) {
    pooled.middleRows(at, s.samples.rows()) = s.samples;
    at += s.samples.rows();
  }
  return pseudo_true(SampleSet{std::move(pooled), -1, replicates.front().seed});
}

}  // namespace

BenchmarkResult run_benchmark(const Network& net, const Gaussian& input,
                              Eigen::Index samples, int replicates,
                              std::uint64_t seed) {
  if (net.output_dim() != 1) {
    throw std::invalid_argument("run_benchmark: network output must be scalar");
  }

  std::vector<SampleSet> truth(replicates);
  parallel_for(static_cast<std::size_t>(replicates), [&](std::size_t r) {
    truth[r] = qmc_sample_network(net, input, samples, seed,
                                  static_cast<int>(r));
  });

  std::vector<std::optional<Gaussian>> approximations(6);
  approximations[0] = pooled_pseudo_true(truth);
  const auto guarded = [&](int slot, auto&& fn) {
    try {
      approximations[slot] = fn();
    } catch (const numerical_error&) {
      approximations[slot].reset();
    }
  };
  guarded(1, [&] { return propagate_analytic(net, input).back(); });
  guarded(2, [&] { return propagate_mean_field(net, input); });
  guarded(3, [&] { return propagate_linear(net, input); });
  guarded(4, [&] {
    return propagate_unscented(net, input, SigmaPointScheme::u95());
  });
  guarded(5, [&] {
    return propagate_unscented(net, input, SigmaPointScheme::u02());
  });

  BenchmarkResult result;
  for (int i = 0; i < 6; ++i) {
    MethodRow row;
    row.method = kMethodOrder[i];
    if (approximations[i].has_value()) {
      row.report = evaluate_method(*approximations[i], truth);
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string format_cell(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

std::string benchmark_to_csv(const BenchmarkResult& result) {
  std::ostringstream out;
  out << "method,mean,variance,wasserstein,wasserstein_se,kl_y1_to_m,"
         "kl_m_to_y1,kl_se\n";
  for (const auto& row : result.rows) {
    out << row.method << ',';
    if (row.report.has_value()) {
      const MetricReport& r = *row.report;
      out << format_cell(r.moments.mean()(0)) << ','
          << format_cell(r.moments.cov()(0, 0)) << ','
          << format_cell(r.wasserstein) << ',' << format_cell(r.wasserstein_se)
          << ',' << format_cell(r.kl_truth_to_method) << ','
          << format_cell(r.kl_method_to_truth) << ',' << format_cell(r.kl_se);
    } else {
      out << ",,,," << "inf,inf,";
    }
    out << '\n';
  }
  return out.str();
}

std::string benchmark_to_json(const BenchmarkResult& result) {
  using nlohmann::json;
  const auto cell = [](double v) -> json {
    if (std::isfinite(v)) return v;
    return format_cell(v);
  };
  json rows = json::array();
  for (const auto& row : result.rows) {
    json jr{{"method", row.method}};
    if (row.report.has_value()) {
      const MetricReport& r = *row.report;
      jr["mean"] = cell(r.moments.mean()(0));
      jr["variance"] = cell(r.moments.cov()(0, 0));
      jr["wasserstein"] = cell(r.wasserstein);
      jr["wasserstein_se"] = cell(r.wasserstein_se);
      jr["kl_y1_to_m"] = cell(r.kl_truth_to_method);
      jr["kl_m_to_y1"] = cell(r.kl_method_to_truth);
      jr["kl_se"] = cell(r.kl_se);
    } else {
      jr["kl_y1_to_m"] = "inf";
      jr["kl_m_to_y1"] = "inf";
    }
    rows.push_back(std::move(jr));
  }
  return json{{"rows", std::move(rows)}}.dump(2) + "\n";
}

namespace {

double parse_cell(const std::string& cell) {
  if (cell == "inf") return kInf;
  if (cell == "-inf") return -kInf;
  if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::stod(cell);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

// Interpolated quantile of sorted values.
double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.size() == 1) return sorted.front();
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

std::vector<MethodSummary> summarize_reports(
    const std::vector<std::string>& csv_texts) {
  std::map<std::string, std::vector<double>> kl_by_method;
  for (const auto& text : csv_texts) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto cells = split_line(line);
      if (cells.size() < 6) continue;
      kl_by_method[cells[0]].push_back(parse_cell(cells[5]));
    }
  }
  std::vector<MethodSummary> out;
  for (const char* method : kMethodOrder) {
    auto found = kl_by_method.find(method);
    if (found == kl_by_method.end()) continue;
    std::vector<double>& xs = found->second;
    std::sort(xs.begin(), xs.end());
    MethodSummary s;
    s.method = method;
    s.min = xs.front();
    s.q25 = quantile(xs, 0.25);
    s.median = quantile(xs, 0.5);
    s.q75 = quantile(xs, 0.75);
    s.max = xs.back();
    out.push_back(std::move(s));
  }
  return out;
}

std::string summaries_to_csv(const std::vector<MethodSummary>& summaries) {
  std::ostringstream out;
  out << "method,min,q25,median,q75,max\n";
  for (const auto& s : summaries) {
    out << s.method << ',' << format_cell(s.min) << ',' << format_cell(s.q25)
        << ',' << format_cell(s.median) << ',' << format_cell(s.q75) << ','
        << format_cell(s.max) << '\n';
  }
  return out.str();
}

}  // namespace momentflow
