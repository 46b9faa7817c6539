#pragma once

// Wire formats for laws and candidate joints.
//
//   counts CSV   header `z,x,y,count`; one row per observed cell; missing
//                (z,x,y) combinations mean count zero; arms ordered by first
//                appearance. Integer counts select exact rational mode.
//   law JSON     {"arms": [{"label": "...", "pmf": {"00": p, ...}}]} with
//                "xy" digit keys; numbers for float mode, "num/den" strings
//                for exact mode. Serialization round-trips in both modes.
//   joint JSON   {"pi": {"00": p, "01": p, "10": p, "11": p}} with "y ytilde"
//                digit keys.

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ivb/law.hpp"

namespace ivb {

std::vector<CountRow> parse_counts_csv(std::istream& in);

inline ObservedLaw<Rat> law_from_counts_csv(std::istream& in) {
  return law_from_counts(parse_counts_csv(in));
}

namespace detail {

inline const nlohmann::json& pmf_entry(const nlohmann::json& pmf, const char* key) {
  if (!pmf.contains(key))
    throw std::invalid_argument(std::string("pmf missing cell '") + key + "'");
  return pmf.at(key);
}

template <typename T>
T scalar_from_json(const nlohmann::json& v);

template <>
inline double scalar_from_json<double>(const nlohmann::json& v) {
  if (v.is_string()) return to_double(rat_from_string(v.get<std::string>()));
  if (!v.is_number()) throw std::invalid_argument("probability must be a number");
  return v.get<double>();
}

template <>
inline Rat scalar_from_json<Rat>(const nlohmann::json& v) {
  if (v.is_string()) return rat_from_string(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long>());
  if (v.is_number_float()) return Rat(v.get<double>());  // exact binary expansion
  throw std::invalid_argument("probability must be a number or \"num/den\" string");
}

template <typename T>
nlohmann::ordered_json scalar_to_json(const T& v) {
  if constexpr (scalar_traits<T>::exact)
    return rat_to_string(v);
  else
    return v;
}

}  // namespace detail

template <typename T>
ObservedLaw<T> law_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("arms") || !j.at("arms").is_array())
    throw std::invalid_argument("law JSON must carry an \"arms\" array");
  ObservedLaw<T> law;
  static const char* kCellKeys[4] = {"00", "01", "10", "11"};  // "xy"
  for (const auto& arm : j.at("arms")) {
    if (!arm.is_object() || !arm.contains("label") || !arm.contains("pmf"))
      throw std::invalid_argument("each arm needs \"label\" and \"pmf\"");
    law.arm_labels.push_back(arm.at("label").get<std::string>());
    std::array<T, 4> cells;
    for (int c = 0; c < 4; ++c)
      cells[c] = detail::scalar_from_json<T>(detail::pmf_entry(arm.at("pmf"), kCellKeys[c]));
    law.cells.push_back(cells);
  }
  law.K = static_cast<int>(law.cells.size());
  if (law.K == 0) throw std::invalid_argument("law JSON has no arms");
  return law;
}

template <typename T>
nlohmann::ordered_json law_to_json(const ObservedLaw<T>& law) {
  nlohmann::ordered_json arms = nlohmann::ordered_json::array();
  static const char* kCellKeys[4] = {"00", "01", "10", "11"};
  for (int a = 0; a < law.K; ++a) {
    nlohmann::ordered_json pmf;
    for (int c = 0; c < 4; ++c) pmf[kCellKeys[c]] = detail::scalar_to_json<T>(law.cells[a][c]);
    arms.push_back({{"label", law.arm_labels[a]}, {"pmf", pmf}});
  }
  return nlohmann::ordered_json{{"arms", arms}};
}

template <typename T>
CounterfactualJoint<T> joint_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("pi") || !j.at("pi").is_object())
    throw std::invalid_argument("joint JSON must carry a \"pi\" object");
  static const char* kPiKeys[4] = {"00", "01", "10", "11"};  // "y ytilde"
  CounterfactualJoint<T> joint;
  for (int c = 0; c < 4; ++c)
    joint.pi[c] = detail::scalar_from_json<T>(detail::pmf_entry(j.at("pi"), kPiKeys[c]));
  return joint;
}

template <typename T>
nlohmann::ordered_json joint_to_json(const CounterfactualJoint<T>& joint) {
  static const char* kPiKeys[4] = {"00", "01", "10", "11"};
  nlohmann::ordered_json pi;
  for (int c = 0; c < 4; ++c) pi[kPiKeys[c]] = detail::scalar_to_json<T>(joint.pi[c]);
  return nlohmann::ordered_json{{"pi", pi}};
}

}  // namespace ivb
