// Copyright (c) 2026 The ordeval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace ordeval::detail {

// Emitter with fixed key order and fixed number formatting, so equal
// reports render byte-for-byte equal. Not a general-purpose serializer.
class JsonWriter {
 public:
  std::string str() const { return out_.str(); }

  void begin_object() { open('{', false); }
  void end_object() { close('}'); }
  // Compact arrays stay on one line; used for scalar rows.
  void begin_array(bool compact = true) { open('[', compact); }
  void end_array() { close(']'); }

  void key(const char* name) {
    separate();
    out_ << '"' << name << "\": ";
    pending_value_ = true;
  }

  void value(double v) {
    separate();
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    out_ << buffer;
  }
  void value(std::int64_t v) {
    separate();
    out_ << v;
  }
  void value(std::size_t v) { value(static_cast<std::int64_t>(v)); }
  void value(int v) { value(static_cast<std::int64_t>(v)); }
  void value(bool v) {
    separate();
    out_ << (v ? "true" : "false");
  }
  void value(std::string_view v) {
    separate();
    out_ << '"';
    for (char c : v) {
      if (c == '"' || c == '\\') out_ << '\\';
      out_ << c;
    }
    out_ << '"';
  }
  // Keeps string literals away from the bool overload.
  void value(const char* v) { value(std::string_view(v)); }

  void null() {
    separate();
    out_ << "null";
  }

  template <typename T>
  void optional_value(const std::optional<T>& v) {
    if (v)
      value(*v);
    else
      null();
  }

 private:
  struct Level {
    bool needs_comma;
    bool compact;
  };

  void open(char c, bool compact) {
    separate();
    out_ << c;
    levels_.push_back({false, compact});
    ++depth_;
  }
  void close(char c) {
    const bool compact = levels_.back().compact;
    --depth_;
    levels_.pop_back();
    if (!compact) newline();
    out_ << c;
    if (!levels_.empty()) levels_.back().needs_comma = true;
  }
  void separate() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (levels_.empty()) return;
    if (levels_.back().compact) {
      if (levels_.back().needs_comma) out_ << ", ";
      levels_.back().needs_comma = true;
      return;
    }
    if (levels_.back().needs_comma) out_ << ',';
    levels_.back().needs_comma = true;
    newline();
  }
  void newline() {
    out_ << '\n';
    for (int i = 0; i < depth_ * 2; ++i) out_ << ' ';
  }

  std::ostringstream out_;
  std::vector<Level> levels_;
  int depth_ = 0;
  bool pending_value_ = false;
};

}  // namespace ordeval::detail
