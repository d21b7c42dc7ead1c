// SPDX-License-Identifier: Apache-2.0
#include "sigscope/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sigscope/angle_utils.hpp"
#include "sigscope/emit.hpp"
#include "sigscope/errors.hpp"

namespace sigscope {

namespace {

using nlohmann::json;

double need_number(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number()) {
    throw ParseError(std::string("scenario: missing or non-numeric field '") +
                     field + "'");
  }
  return j[field].get<double>();
}

AngularPath path_from_segments(const std::vector<Segment>& segs) {
  try {
    return AngularPath(segs);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("scenario: field 'segments': ") + e.what());
  }
}

Scenario parse_custom(const json& j) {
  if (!j.contains("segments") || !j["segments"].is_array() ||
      j["segments"].empty()) {
    throw ParseError("scenario: field 'segments' must be a non-empty array");
  }
  std::vector<Segment> segs;
  for (const auto& row : j["segments"]) {
    segs.push_back({need_number(row, "duration"), need_number(row, "angle")});
  }
  Scenario s{"custom", "", path_from_segments(segs)};
  s.custom_segments = std::move(segs);
  return s;
}

Scenario parse_polygon(const json& j) {
  if (!j.contains("vertices") || !j["vertices"].is_array() ||
      j["vertices"].size() < 2) {
    throw ParseError("scenario: field 'vertices' must list at least 2 points");
  }
  std::vector<std::array<double, 2>> vertices;
  for (const auto& row : j["vertices"]) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_number() ||
        !row[1].is_number()) {
      throw ParseError("scenario: field 'vertices' entries must be [x, y]");
    }
    vertices.push_back({row[0].get<double>(), row[1].get<double>()});
  }
  std::vector<Segment> segs;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const double dx = vertices[i][0] - vertices[i - 1][0];
    const double dy = vertices[i][1] - vertices[i - 1][1];
    const double dist = std::hypot(dx, dy);
    if (!(dist > 0.0)) {
      throw ParseError("scenario: field 'vertices' has a repeated point");
    }
    segs.push_back({dist, std::atan2(dy, dx)});
  }
  Scenario s{"polygon", "", path_from_segments(segs)};
  s.vertices = std::move(vertices);
  return s;
}

Scenario parse_tree_like(const json& j) {
  const double angle = need_number(j, "angle");
  const double half = need_number(j, "half_length");
  if (!(half > 0.0)) {
    throw ParseError("scenario: field 'half_length' must be > 0");
  }
  Scenario s{"tree_like", "", make_tree_like(angle, half)};
  s.tree_angle = angle;
  s.tree_half_length = half;
  return s;
}

Scenario parse_singular_cusp(const json& j) {
  const double L = need_number(j, "L");
  const double r = need_number(j, "r");
  const double a = need_number(j, "a");
  const double c = need_number(j, "c");
  if (!j.contains("resolution") || !j["resolution"].is_number_integer()) {
    throw ParseError("scenario: missing integer field 'resolution'");
  }
  const int resolution = j["resolution"].get<int>();
  std::vector<std::array<double, 2>> knots;
  if (!j.contains("theta")) {
    throw ParseError("scenario: missing field 'theta'");
  }
  if (j["theta"].is_string() && j["theta"].get<std::string>() == "linear") {
    knots = {{0.0, a - r}, {L / 2, a}};
  } else if (j["theta"].is_array()) {
    for (const auto& row : j["theta"]) {
      if (!row.is_array() || row.size() != 2) {
        throw ParseError("scenario: field 'theta' rows must be [t, value]");
      }
      knots.push_back({row[0].get<double>(), row[1].get<double>()});
    }
  } else {
    throw ParseError("scenario: field 'theta' must be \"linear\" or a table");
  }
  try {
    SingularCuspSpec spec(L, r, a, c, ThetaTable(std::move(knots)));
    // the scenario stores the path's own angular function beta = reversed alpha
    Scenario s{"singular_cusp", "",
               make_singular_cusp(spec, resolution).reversed()};
    s.cusp = std::move(spec);
    s.resolution = resolution;
    return s;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("scenario: singular_cusp: ") + e.what());
  }
}

RegularCuspHypothesis parse_hypothesis(const json& j) {
  RegularCuspHypothesis hyp;
  hyp.a = need_number(j, "a");
  if (!j.contains("witnesses") || !j["witnesses"].is_array()) {
    throw ParseError(
        "scenario: field 'regular_cusp_hypothesis.witnesses' must be an array");
  }
  for (const auto& row : j["witnesses"]) {
    CuspWitness w;
    w.delta = need_number(row, "delta");
    w.a_delta = need_number(row, "a_delta");
    w.b_delta = need_number(row, "b_delta");
    std::vector<std::array<double, 2>> intervals;
    if (!row.contains("F") || !row["F"].is_array()) {
      throw ParseError("scenario: witness field 'F' must be an array");
    }
    for (const auto& iv : row["F"]) {
      if (!iv.is_array() || iv.size() != 2) {
        throw ParseError("scenario: witness field 'F' rows must be [lo, hi]");
      }
      intervals.push_back({iv[0].get<double>(), iv[1].get<double>()});
    }
    w.F = IntervalSet(std::move(intervals));
    hyp.witnesses.push_back(std::move(w));
  }
  return hyp;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ParseError("scenario: missing string field 'kind'");
  }
  const std::string kind = j["kind"].get<std::string>();
  Scenario s = [&] {
    if (kind == "custom") return parse_custom(j);
    if (kind == "polygon") return parse_polygon(j);
    if (kind == "tree_like") return parse_tree_like(j);
    if (kind == "singular_cusp") return parse_singular_cusp(j);
    throw ParseError("scenario: unknown 'kind' value '" + kind + "'");
  }();
  if (j.contains("name")) {
    if (!j["name"].is_string()) {
      throw ParseError("scenario: field 'name' must be a string");
    }
    s.name = j["name"].get<std::string>();
  }
  if (j.contains("regular_cusp_hypothesis")) {
    s.hypothesis = parse_hypothesis(j["regular_cusp_hypothesis"]);
  }
  return s;
}

Scenario load_scenario(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ParseError("scenario: cannot open file '" + filename + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& s) {
  JsonWriter w;
  w.begin_object();
  w.key("kind").value(std::string_view(s.kind));
  w.key("name").value(std::string_view(s.name));
  if (s.kind == "custom") {
    w.key("segments").begin_array();
    for (const auto& seg : s.custom_segments) {
      w.begin_object();
      w.key("duration").value(seg.duration);
      w.key("angle").value(seg.angle);
      w.end_object();
    }
    w.end_array();
  } else if (s.kind == "polygon") {
    w.key("vertices").begin_array();
    for (const auto& v : s.vertices) {
      w.begin_array().value(v[0]).value(v[1]).end_array();
    }
    w.end_array();
  } else if (s.kind == "tree_like") {
    w.key("angle").value(s.tree_angle);
    w.key("half_length").value(s.tree_half_length);
  } else if (s.kind == "singular_cusp") {
    w.key("L").value(s.cusp->total_length);
    w.key("r").value(s.cusp->r);
    w.key("a").value(s.cusp->a);
    w.key("c").value(s.cusp->c);
    w.key("resolution").value(s.resolution);
    w.key("theta").begin_array();
    for (const auto& knot : s.cusp->theta.knots()) {
      w.begin_array().value(knot[0]).value(knot[1]).end_array();
    }
    w.end_array();
  }
  if (s.hypothesis) {
    w.key("regular_cusp_hypothesis").begin_object();
    w.key("a").value(s.hypothesis->a);
    w.key("witnesses").begin_array();
    for (const auto& wit : s.hypothesis->witnesses) {
      w.begin_object();
      w.key("delta").value(wit.delta);
      w.key("a_delta").value(wit.a_delta);
      w.key("b_delta").value(wit.b_delta);
      w.key("F").begin_array();
      for (const auto& iv : wit.F.intervals()) {
        w.begin_array().value(iv[0]).value(iv[1]).end_array();
      }
      w.end_array();
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_object();
  return w.take();
}

namespace {

Scenario make_line() {
  Scenario s{"custom", "line", AngularPath({{1.0, 0.0}})};
  s.custom_segments = {{1.0, 0.0}};
  return s;
}

Scenario make_lshape() {
  std::vector<std::array<double, 2>> vertices{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}};
  Scenario s{"polygon", "lshape",
             AngularPath({{1.0, 0.0}, {1.0, kPi / 2}})};
  s.vertices = std::move(vertices);
  return s;
}

Scenario make_treelike() {
  Scenario s{"tree_like", "treelike", make_tree_like(0.0, 1.0)};
  s.tree_angle = 0.0;
  s.tree_half_length = 1.0;
  return s;
}

// A cusp at t = 1 approached with decreasing turning rate on each side: the
// angle descends 0.4 -> ~0 before the turn and departs just below pi, staying
// inside [0, pi] with the extremes only reached at the cusp itself.
Scenario make_regular_cusp_staircase() {
  constexpr int kSteps = 60;
  const double step = 1.0 / kSteps;
  std::vector<Segment> segs;
  for (int i = 0; i < kSteps; ++i) {
    segs.push_back({step, 0.4 * (1.0 - (i + 0.5) / kSteps)});
  }
  for (int i = 0; i < kSteps; ++i) {
    segs.push_back({step, kPi - 0.4 * (i + 0.5) / kSteps});
  }
  Scenario s{"custom", "regular_cusp_staircase", AngularPath(segs)};
  s.custom_segments = std::move(segs);

  RegularCuspHypothesis hyp;
  hyp.a = 0.0;
  for (double delta : {0.2, 0.1, 0.05}) {
    CuspWitness w;
    w.delta = delta;
    // leave out one step on each side of the cusp; the surviving extreme is
    // the second-to-last midpoint sample
    w.F = IntervalSet({{0.0, 1.0 - step}, {1.0 + step, 2.0}});
    w.a_delta = 0.4 * 1.5 / kSteps;
    w.b_delta = kPi - 0.4 * 1.5 / kSteps;
    hyp.witnesses.push_back(std::move(w));
  }
  s.hypothesis = std::move(hyp);
  return s;
}

Scenario make_singular(const std::string& name, double c) {
  JsonWriter w;
  w.begin_object();
  w.key("kind").value(std::string_view("singular_cusp"));
  w.key("name").value(std::string_view(name));
  w.key("L").value(2.0);
  w.key("r").value(0.2);
  w.key("a").value(0.0);
  w.key("c").value(c);
  w.key("resolution").value(10000);
  w.key("theta").value(std::string_view("linear"));
  w.end_object();
  return parse_scenario(w.take());
}

}  // namespace

const std::vector<std::string>& builtin_scenario_names() {
  static const std::vector<std::string> names{
      "line",
      "lshape",
      "treelike",
      "regular_cusp_staircase",
      "singular_cusp_c25",
      "singular_cusp_c50",
      "singular_cusp_c75",
      "singular_cusp_c99",
      "singular_cusp_c100",
  };
  return names;
}

Scenario builtin_scenario(const std::string& name) {
  if (name == "line") return make_line();
  if (name == "lshape") return make_lshape();
  if (name == "treelike") return make_treelike();
  if (name == "regular_cusp_staircase") return make_regular_cusp_staircase();
  if (name == "singular_cusp_c25") return make_singular(name, 0.25);
  if (name == "singular_cusp_c50") return make_singular(name, 0.5);
  if (name == "singular_cusp_c75") return make_singular(name, 0.75);
  if (name == "singular_cusp_c99") return make_singular(name, 0.99);
  if (name == "singular_cusp_c100") return make_singular(name, 1.0);
  throw ParseError("unknown builtin scenario '" + name + "'");
}

}  // namespace sigscope
