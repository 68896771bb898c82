// Command-line driver: propagate a serialized network, run the random-network
// benchmark, or aggregate benchmark reports for box plotting.
//
// Exit codes: 0 success, 2 input validation, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "momentflow/diagnostics.hpp"
#include "momentflow/propagation.hpp"
#include "momentflow/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace momentflow;

namespace {

struct Options {
  std::string command;
  std::string network_path;
  std::string architecture = "wide";
  std::string activation = "probit";
  bool residual = false;
  std::string variance = "medium";
  long samples = 1L << 16;
  int replicates = 20;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format;  // propagate defaults to json, the rest to csv
  std::string mean_spec;
  std::string cov_spec;
  std::string reports_dir;
  bool bounds = false;
};

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    out.push_back(std::stod(cell));
  }
  return out;
}

// --mean: comma list (or one number broadcast to the input dimension).
// --cov: one number -> scalar * I; comma list -> diagonal; semicolon-separated
// rows of comma lists -> full matrix.
Gaussian parse_input_gaussian(const Options& opt, Eigen::Index dim) {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  if (!opt.mean_spec.empty()) {
    const auto values = parse_number_list(opt.mean_spec);
    if (values.size() == 1) {
      mean.setConstant(values[0]);
    } else if (static_cast<Eigen::Index>(values.size()) == dim) {
      for (Eigen::Index i = 0; i < dim; ++i) mean(i) = values[i];
    } else {
      throw std::invalid_argument("--mean: expected 1 or " +
                                  std::to_string(dim) + " entries");
    }
  }
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(dim, dim);
  if (!opt.cov_spec.empty()) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(opt.cov_spec);
    std::string row;
    while (std::getline(in, row, ';')) rows.push_back(parse_number_list(row));
    if (rows.size() == 1 && rows[0].size() == 1) {
      cov *= rows[0][0];
    } else if (rows.size() == 1 &&
               static_cast<Eigen::Index>(rows[0].size()) == dim) {
      for (Eigen::Index i = 0; i < dim; ++i) cov(i, i) = rows[0][i];
    } else if (static_cast<Eigen::Index>(rows.size()) == dim) {
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (static_cast<Eigen::Index>(rows[i].size()) != dim) {
          throw std::invalid_argument("--cov: ragged matrix rows");
        }
        for (Eigen::Index j = 0; j < dim; ++j) cov(i, j) = rows[i][j];
      }
    } else {
      throw std::invalid_argument("--cov: expected a scalar, a diagonal or a "
                                  "full matrix");
    }
  }
  return Gaussian(std::move(mean), std::move(cov));
}

void write_output(const Options& opt, const std::string& text) {
  if (opt.out_path.empty() || opt.out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot open output file: " + opt.out_path);
  }
  out << text;
}

json gaussian_to_json(const Gaussian& g) {
  json mean = json::array();
  for (Eigen::Index i = 0; i < g.dim(); ++i) mean.push_back(g.mean()(i));
  json cov = json::array();
  for (Eigen::Index i = 0; i < g.dim(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < g.dim(); ++j) row.push_back(g.cov()(i, j));
    cov.push_back(std::move(row));
  }
  return json{{"mean", std::move(mean)}, {"cov", std::move(cov)}};
}

int cmd_propagate(const Options& opt) {
  if (opt.network_path.empty()) {
    std::cerr << "propagate: --network is required\n";
    return 2;
  }
  const Network net = load_network(opt.network_path);
  const Gaussian input = parse_input_gaussian(opt, net.input_dim());
  const std::vector<Gaussian> states = propagate_analytic(net, input);
  std::vector<LayerBound> bounds;
  if (opt.bounds) bounds = error_recursion(net, input);

  if (opt.format == "csv") {
    std::ostringstream out;
    out << "layer,dim,mean_norm,cov_trace";
    if (opt.bounds) out << ",lipschitz,nonnormality,cumulative";
    out << '\n';
    for (std::size_t k = 0; k < states.size(); ++k) {
      out << (k + 1) << ',' << states[k].dim() << ','
          << format_cell(states[k].mean().norm()) << ','
          << format_cell(states[k].cov().trace());
      if (opt.bounds) {
        out << ',' << format_cell(bounds[k].lipschitz) << ','
            << format_cell(bounds[k].nonnormality) << ','
            << format_cell(bounds[k].cumulative);
      }
      out << '\n';
    }
    write_output(opt, out.str());
  } else {
    json layers = json::array();
    for (std::size_t k = 0; k < states.size(); ++k) {
      json entry = gaussian_to_json(states[k]);
      entry["layer"] = k + 1;
      if (opt.bounds) {
        entry["lipschitz"] = format_cell(bounds[k].lipschitz);
        entry["nonnormality"] = format_cell(bounds[k].nonnormality);
        entry["cumulative"] = format_cell(bounds[k].cumulative);
      }
      layers.push_back(std::move(entry));
    }
    json doc{{"input", gaussian_to_json(input)}, {"layers", std::move(layers)}};
    write_output(opt, doc.dump(2) + "\n");
  }
  return 0;
}

int cmd_benchmark(const Options& opt) {
  EnsembleSpec spec;
  spec.architecture = architecture_from_string(opt.architecture);
  spec.activation = activation_from_string(opt.activation);
  spec.residual = opt.residual;
  spec.variance = variance_from_string(opt.variance);
  spec.seed = opt.seed;

  const Network net = build_network(spec);
  const Gaussian input = input_gaussian(spec);
  const BenchmarkResult result =
      run_benchmark(net, input, opt.samples, opt.replicates, opt.seed);
  write_output(opt, opt.format == "json" ? benchmark_to_json(result)
                                         : benchmark_to_csv(result));
  return 0;
}

int cmd_compare(const Options& opt) {
  if (opt.reports_dir.empty()) {
    std::cerr << "compare: --reports is required\n";
    return 2;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(opt.reports_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "compare: no .csv reports in " << opt.reports_dir << "\n";
    return 2;
  }
  std::vector<std::string> texts;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::ostringstream buf;
    buf << in.rdbuf();
    texts.push_back(buf.str());
  }
  write_output(opt, summaries_to_csv(summarize_reports(texts)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian moment propagation through residual networks"};
  Options opt;

  app.add_option("--command", opt.command, "propagate | benchmark | compare")
      ->required()
      ->check(CLI::IsMember({"propagate", "benchmark", "compare"}));
  app.add_option("--network", opt.network_path, "network JSON file");
  app.add_option("--architecture", opt.architecture, "wide | deep")
      ->check(CLI::IsMember({"wide", "deep"}));
  app.add_option("--activation", opt.activation,
                 "probit | gelu | relu | heaviside | sine")
      ->check(CLI::IsMember({"probit", "gelu", "relu", "heaviside", "sine"}));
  app.add_flag("--residual", opt.residual, "identity skip connections");
  app.add_option("--variance", opt.variance, "small | medium | large")
      ->check(CLI::IsMember({"small", "medium", "large"}));
  app.add_option("--samples", opt.samples, "QMC samples per replicate")
      ->check(CLI::PositiveNumber);
  app.add_option("--replicates", opt.replicates, "independent realizations")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "root seed");
  app.add_option("--out", opt.out_path, "output file (default stdout)");
  app.add_option("--format", opt.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--mean", opt.mean_spec, "input mean (comma list)");
  app.add_option("--cov", opt.cov_spec,
                 "input covariance (scalar, diagonal, or ;-rows)");
  app.add_option("--reports", opt.reports_dir,
                 "directory of benchmark CSVs (compare)");
  app.add_flag("--bounds", opt.bounds, "append per-layer error bounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (opt.format.empty()) {
    opt.format = opt.command == "propagate" ? "json" : "csv";
  }

  try {
    if (opt.command == "propagate") return cmd_propagate(opt);
    if (opt.command == "benchmark") return cmd_benchmark(opt);
    return cmd_compare(opt);
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
