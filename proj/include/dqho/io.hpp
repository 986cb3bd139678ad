#ifndef DQHO_IO_HPP
#define DQHO_IO_HPP

// State files: {"s": int, "basis": "energy"|"position", "amplitudes": [[re, im], ...]}

#include <fstream>
#include <string>
#include <variant>

#include "dqho/errors.hpp"
#include "dqho/states.hpp"
#include "json.hpp"

namespace dqho::io {

using AnyState = std::variant<EnergyState, PositionState>;

inline nlohmann::json amplitudes_json(const Eigen::VectorXcd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back({v(i).real(), v(i).imag()});
  return arr;
}

inline nlohmann::json to_json(const EnergyState& psi) {
  return {{"s", psi.s}, {"basis", "energy"}, {"amplitudes", amplitudes_json(psi.d)}};
}

inline nlohmann::json to_json(const PositionState& psi) {
  return {{"s", psi.s}, {"basis", "position"}, {"amplitudes", amplitudes_json(psi.a)}};
}

inline nlohmann::json to_json(const AnyState& psi) {
  return std::visit([](const auto& x) { return to_json(x); }, psi);
}

inline AnyState state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("state file: expected a JSON object");
  const int s = j.at("s").get<int>();
  const std::string basis = j.at("basis").get<std::string>();
  const auto& amps = j.at("amplitudes");
  if (!amps.is_array()) throw std::invalid_argument("state file: amplitudes must be an array");
  if (s < 0) throw domain_error("state file: resolution must be non-negative");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto& pair = amps[i];
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("state file: each amplitude must be [re, im]");
    v(static_cast<Eigen::Index>(i)) = cplx(pair[0].get<double>(), pair[1].get<double>());
  }
  if (basis == "energy") return EnergyState(s, std::move(v));
  if (basis == "position") return PositionState(s, std::move(v));
  throw std::invalid_argument("state file: basis must be \"energy\" or \"position\"");
}

inline AnyState read_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("state file " + path + ": " + e.what());
  }
  return state_from_json(j);
}

}  // namespace dqho::io

#endif  // DQHO_IO_HPP
