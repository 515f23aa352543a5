#pragma once

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>

#include "sasim/common.hpp"
#include "sasim/lti/synthesis.hpp"

namespace sasim {

/// Realization as a JSON document: dimensions plus A, B, C, D row-major.
inline nlohmann::json state_space_to_json(const StateSpace& sys) {
  const auto mat = [](const Mat<double>& M) {
    nlohmann::json a = nlohmann::json::array();
    for (Index i = 0; i < M.rows(); ++i)
      for (Index j = 0; j < M.cols(); ++j) a.push_back(M(i, j));
    return a;
  };
  return nlohmann::json{{"states", sys.states()},
                        {"inputs", sys.inputs()},
                        {"outputs", sys.outputs()},
                        {"A", mat(sys.A)},
                        {"B", mat(sys.B)},
                        {"C", mat(sys.C)},
                        {"D", mat(sys.D)}};
}

inline StateSpace state_space_from_json(const nlohmann::json& j) {
  const auto mat = [&](const char* name, Index rows, Index cols) {
    const auto& a = j.at(name);
    require(a.is_array() && static_cast<Index>(a.size()) == rows * cols,
            "config-error",
            std::string("controller json: field '") + name +
                "' has the wrong element count");
    Mat<double> M(rows, cols);
    Index k = 0;
    for (Index i = 0; i < rows; ++i)
      for (Index c = 0; c < cols; ++c) M(i, c) = a[static_cast<size_t>(k++)];
    return M;
  };
  const Index n = j.at("states"), m = j.at("inputs"), p = j.at("outputs");
  return StateSpace(mat("A", n, n), mat("B", n, m), mat("C", p, n),
                    mat("D", p, m));
}

inline nlohmann::json controller_to_json(const HinfController& ctl,
                                         const std::string& key = {}) {
  nlohmann::json j = state_space_to_json(ctl.K);
  j["gamma_achieved"] = ctl.gamma_achieved;
  if (!key.empty()) j["cache_key"] = key;
  return j;
}

inline HinfController controller_from_json(const nlohmann::json& j) {
  HinfController ctl;
  ctl.K = state_space_from_json(j);
  ctl.gamma_achieved = j.at("gamma_achieved");
  return ctl;
}

inline void save_controller(const std::filesystem::path& path,
                            const HinfController& ctl,
                            const std::string& key = {}) {
  std::ofstream f(path);
  require(f.good(), "io-error", "cannot open " + path.string());
  f << controller_to_json(ctl, key).dump(1) << '\n';
}

inline HinfController load_controller(const std::filesystem::path& path) {
  std::ifstream f(path);
  require(f.good(), "io-error", "cannot open " + path.string());
  nlohmann::json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw Error("config-error",
                path.string() + ": invalid controller json: " + e.what());
  }
  return controller_from_json(j);
}

}  // namespace sasim
