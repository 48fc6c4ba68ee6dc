#include "kridge/io.hpp"
#include "kridge/model.hpp"
#include "kridge/version.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <vector>

namespace kridge {

namespace {

using json = nlohmann::json;

json to_rowmajor(const Matrix& m) {
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
  return json(flat);
}

Matrix from_rowmajor(const json& arr, Eigen::Index rows, Eigen::Index cols,
                     const char* what) {
  if (!arr.is_array() ||
      arr.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    throw parse_error(std::string("model JSON: field '") + what +
                      "' has wrong length");
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const json& v = arr[k++];
      if (!v.is_number())
        throw parse_error(std::string("model JSON: field '") + what +
                          "' contains a non-numeric entry");
      m(i, j) = v.get<double>();
    }
  return m;
}

}  // namespace

std::string model_to_json(const FittedModel& model) {
  json j;
  j["schema"] = "kridge-model";
  j["tool_version"] = version_string;
  j["method"] = std::string(to_string(model.method));
  j["nu"] = model.kernel.nu;
  j["d"] = model.kernel.dim;
  j["n"] = model.Xtrain.rows();
  j["p"] = model.coeff.rows();
  j["lambda"] = model.lambda;
  if (model.r1) j["r1"] = *model.r1;
  if (model.lambda2) j["lambda2"] = *model.lambda2;
  j["effective_rank"] = model.effective_rank;
  j["xtrain"] = to_rowmajor(model.Xtrain);
  j["coeff"] = to_rowmajor(model.coeff);
  return j.dump(2);
}

FittedModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("model JSON: ") + e.what());
  }
  try {
    for (const char* key : {"method", "nu", "d", "n", "p", "lambda", "xtrain",
                            "coeff"})
      if (!j.contains(key))
        throw parse_error(std::string("model JSON: missing field '") + key +
                          "'");
    const Eigen::Index n = j.at("n").get<Eigen::Index>();
    const Eigen::Index p = j.at("p").get<Eigen::Index>();
    const int d = j.at("d").get<int>();
    if (n < 1 || p < 1 || d < 1)
      throw parse_error("model JSON: shapes must be positive");
    FittedModel model{
        .coeff = from_rowmajor(j.at("coeff"), p, n, "coeff"),
        .Xtrain = from_rowmajor(j.at("xtrain"), n, d, "xtrain"),
        .kernel = KernelSpec(j.at("nu").get<double>(), d),
        .lambda = j.at("lambda").get<double>(),
        .method = method_from_string(j.at("method").get<std::string>())};
    if (j.contains("r1")) model.r1 = j.at("r1").get<int>();
    if (j.contains("lambda2")) model.lambda2 = j.at("lambda2").get<double>();
    model.effective_rank = j.contains("effective_rank")
                               ? j.at("effective_rank").get<int>()
                               : effective_rank(model.coeff);
    return model;
  } catch (const json::exception& e) {
    throw parse_error(std::string("model JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    // bad method tag or kernel parameters in a hand-edited file
    throw parse_error(std::string("model JSON: ") + e.what());
  }
}

void save_model(const FittedModel& model, const std::filesystem::path& path) {
  write_text_atomic(path, model_to_json(model));
}

FittedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace kridge
