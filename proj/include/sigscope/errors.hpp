// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace sigscope {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A reported lower bound exceeded the true length: always a bug, never a
// discovery. Surfaced as its own exit code by the CLI.
struct SoundnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CoverageError : std::runtime_error {
  CoverageError(double point, const std::string& msg)
      : std::runtime_error(msg), uncovered_point(point) {}
  double uncovered_point;
};

}  // namespace sigscope
