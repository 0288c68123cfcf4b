#pragma once

#include <string>

#include <json.hpp>

#include "pk/kinematics.hpp"

namespace pk {

// Wire format: {"k":3,"n":6,"s":{"1,2,4":"-1",...}} with subsets in
// lexicographic order and rationals as canonical "p/q" strings.
inline std::string kinematic_to_json(const KinematicPoint& p) {
  nlohmann::ordered_json j;
  j["k"] = p.k();
  j["n"] = p.n();
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  for (const auto& [J, v] : p.values()) s[subset_key(J)] = format_rational(v);
  j["s"] = std::move(s);
  return j.dump();
}

inline KinematicPoint kinematic_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  KinematicPoint p(j.at("k").get<int>(), j.at("n").get<int>());
  for (const auto& [key, val] : j.at("s").items())
    p.set(parse_subset_key(key), parse_rational(val.get<std::string>()));
  return p;
}

}  // namespace pk
