// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sigscope {

// 17 significant digits: round-trip exact and byte-stable across runs.
std::string format_double(double v);

// Minimal streaming JSON writer with fixed field order. All report emission
// goes through this (never through a generic serializer) so that equal inputs
// produce byte-identical documents.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(unsigned long long v);
  JsonWriter& value(std::size_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& raw(std::string_view text);

  std::string take() { return std::move(out_); }

 private:
  void prefix();
  std::string out_;
  std::vector<bool> has_items_;
  bool pending_key_ = false;
};

class CsvWriter {
 public:
  explicit CsvWriter(std::string_view header) {
    out_.append(header);
    out_.push_back('\n');
  }
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(std::string_view v);
  CsvWriter& end_row();
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
  bool row_open_ = false;
};

}  // namespace sigscope
