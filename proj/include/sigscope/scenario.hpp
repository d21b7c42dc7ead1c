// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sigscope/angular_path.hpp"

namespace sigscope {

// A named path instance. `path` is the path's own angular function (beta);
// modules that need the time reversal (alpha) reverse it themselves.
struct Scenario {
  std::string kind;  // "custom" | "polygon" | "tree_like" | "singular_cusp"
  std::string name;
  AngularPath path;
  std::optional<SingularCuspSpec> cusp;  // singular_cusp only
  int resolution = 0;                    // singular_cusp only
  std::optional<RegularCuspHypothesis> hypothesis;

  // defining data, kept for exact serialization
  std::vector<Segment> custom_segments;
  std::vector<std::array<double, 2>> vertices;
  double tree_angle = 0.0;
  double tree_half_length = 0.0;
};

// Throws ParseError with a message naming the offending field.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& filename);
std::string scenario_to_json(const Scenario& s);

const std::vector<std::string>& builtin_scenario_names();
Scenario builtin_scenario(const std::string& name);

}  // namespace sigscope
