// Copyright 2026 The Authors.
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


#include "json_text.h"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace fdc {
namespace {

void write_string(std::ostringstream& out, const std::string& s) {
  // nlohmann handles escaping; reuse it for strings only.
  out << nlohmann::json(s).dump();
}

void write_value(std::ostringstream& out, const nlohmann::json& j, int indent,
                 int depth) {
  const std::string pad = indent > 0 ? std::string((depth + 1) * indent, ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(depth * indent, ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{" << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << "," << nl;
        first = false;
        out << pad;
        write_string(out, it.key());
        out << (indent > 0 ? ": " : ":");
        write_value(out, it.value(), indent, depth + 1);
      }
      out << nl << close_pad << "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const auto& e : j) scalars = scalars && !e.is_structured();
      if (scalars || indent == 0) {
        out << "[";
        bool first = true;
        for (const auto& e : j) {
          if (!first) out << (indent > 0 ? ", " : ",");
          first = false;
          write_value(out, e, indent, depth + 1);
        }
        out << "]";
        return;
      }
      out << "[" << nl;
      bool first = true;
      for (const auto& e : j) {
        if (!first) out << "," << nl;
        first = false;
        out << pad;
        write_value(out, e, indent, depth + 1);
      }
      out << nl << close_pad << "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << buf;
      return;
    }
    case nlohmann::json::value_t::string:
      write_string(out, j.get<std::string>());
      return;
    default:
      out << j.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j, int indent) {
  std::ostringstream out;
  write_value(out, j, indent, 0);
  if (indent > 0) out << "\n";
  return out.str();
}

}  // namespace fdc
