#include <fstream>
#include <sstream>

#include <json.hpp>

#include "momentflow/network.hpp"

namespace momentflow {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw std::invalid_argument(where + ": expected a nested array");
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols) {
      throw std::invalid_argument(where + ": ragged rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

Eigen::VectorXd vector_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) {
    throw std::invalid_argument(where + ": expected an array");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = j[i].get<double>();
  return v;
}

}  // namespace

Network parse_network(const std::string& json_text) {
  json doc = json::parse(json_text);
  if (!doc.contains("layers") || !doc["layers"].is_array()) {
    throw std::invalid_argument("network document: missing \"layers\" array");
  }
  std::vector<LayerParams> layers;
  std::size_t index = 0;
  for (const auto& jl : doc["layers"]) {
    const std::string tag = "layer " + std::to_string(index);
    LayerParams layer;
    layer.kind = activation_from_string(jl.at("kind").get<std::string>());
    layer.a = matrix_from_json(jl.at("a"), tag + " a");
    layer.b = vector_from_json(jl.at("b"), tag + " b");
    layer.c = matrix_from_json(jl.at("c"), tag + " c");
    layer.d = vector_from_json(jl.at("d"), tag + " d");
    layers.push_back(std::move(layer));
    ++index;
  }
  return Network(std::move(layers));
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open network file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

std::string network_to_json(const Network& net) {
  json layers = json::array();
  for (const auto& layer : net.layers()) {
    layers.push_back({{"kind", to_string(layer.kind)},
                      {"a", matrix_to_json(layer.a)},
                      {"b", vector_to_json(layer.b)},
                      {"c", matrix_to_json(layer.c)},
                      {"d", vector_to_json(layer.d)}});
  }
  return json{{"layers", std::move(layers)}}.dump(2) + "\n";
}

void save_network(const Network& net, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot write network file: " + path.string());
  }
  out << network_to_json(net);
}

}  // namespace momentflow
