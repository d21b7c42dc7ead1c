// SPDX-License-Identifier: Apache-2.0
#include "sigscope/emit.hpp"

#include <cmath>
#include <cstdio>

namespace sigscope {

std::string format_double(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonWriter::prefix() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!has_items_.empty()) {
    if (has_items_.back()) out_.push_back(',');
    has_items_.back() = true;
  }
}

JsonWriter& JsonWriter::begin_object() {
  prefix();
  out_.push_back('{');
  has_items_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_.push_back('}');
  has_items_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  prefix();
  out_.push_back('[');
  has_items_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_.push_back(']');
  has_items_.pop_back();
  return *this;
}

static void append_escaped(std::string& out, std::string_view v) {
  out.push_back('"');
  for (char c : v) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

JsonWriter& JsonWriter::key(std::string_view k) {
  if (has_items_.back()) out_.push_back(',');
  has_items_.back() = true;
  append_escaped(out_, k);
  out_.push_back(':');
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  prefix();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<long long>(v)); }

JsonWriter& JsonWriter::value(long long v) {
  prefix();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(unsigned long long v) {
  prefix();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::size_t v) {
  return value(static_cast<unsigned long long>(v));
}

JsonWriter& JsonWriter::value(bool v) {
  prefix();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  prefix();
  append_escaped(out_, v);
  return *this;
}

JsonWriter& JsonWriter::raw(std::string_view text) {
  prefix();
  out_ += text;
  return *this;
}

CsvWriter& CsvWriter::cell(double v) {
  if (row_open_) out_.push_back(',');
  row_open_ = true;
  out_ += format_double(v);
  return *this;
}

CsvWriter& CsvWriter::cell(long long v) {
  if (row_open_) out_.push_back(',');
  row_open_ = true;
  out_ += std::to_string(v);
  return *this;
}

CsvWriter& CsvWriter::cell(std::string_view v) {
  if (row_open_) out_.push_back(',');
  row_open_ = true;
  out_.append(v);
  return *this;
}

CsvWriter& CsvWriter::end_row() {
  out_.push_back('\n');
  row_open_ = false;
  return *this;
}

}  // namespace sigscope
