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


#include "fdc/dataset.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fdc/errors.h"
#include "json_text.h"

namespace fdc {

PointSet::PointSet(std::size_t dim, std::vector<IntVec> points)
    : dim_(dim), points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const IntVec& p = points_[i];
    if (p.size() != dim_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "point has " + std::to_string(p.size()) + " coordinates, expected " +
                      std::to_string(dim_),
                  static_cast<long>(i + 1));
    }
    const int b = max_bit_length(p);
    if (b == 0) {
      throw Error(ErrorCode::kZeroPoint, "zero vector", static_cast<long>(i + 1));
    }
    bits_ = std::max(bits_, b);
  }
}

PointSet PointSet::subset(const std::vector<std::size_t>& indices) const {
  std::vector<IntVec> pts;
  pts.reserve(indices.size());
  for (std::size_t i : indices) pts.push_back(points_.at(i));
  return PointSet(dim_, std::move(pts));
}

FileFormat format_for_path(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == "json") return FileFormat::kJson;
  }
  return FileFormat::kCsv;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

bool looks_numeric(const std::string& tok) {
  if (tok.empty()) return false;
  char* end = nullptr;
  std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size();
}

std::int64_t parse_integer(const std::string& tok, long line) {
  std::int64_t v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec == std::errc() && res.ptr == last && first != last) return v;
  if (res.ec == std::errc::result_out_of_range) {
    throw Error(ErrorCode::kParseError, "integer out of range: " + tok, line);
  }
  if (looks_numeric(tok)) {
    throw Error(ErrorCode::kNonInteger, "non-integer coordinate: " + tok, line);
  }
  throw Error(ErrorCode::kParseError, "cannot parse token '" + tok + "'", line);
}

int parse_label(std::int64_t v, long line) {
  if (v != 1 && v != -1) {
    throw Error(ErrorCode::kParseError, "label must be -1 or 1", line);
  }
  return static_cast<int>(v);
}

}  // namespace

LoadedPoints parse_csv(const std::string& text, LabelColumn labels) {
  std::istringstream in(text);
  std::string raw;
  long line_no = 0;
  bool labeled = labels == LabelColumn::kLast;
  bool first_content = true;
  std::size_t width = 0;
  std::vector<IntVec> pts;
  std::vector<int> ys;
  std::vector<long> lines;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> toks = split_commas(line);
    if (first_content) {
      first_content = false;
      if (!looks_numeric(toks[0])) {
        if (labels == LabelColumn::kAuto) labeled = (toks.back() == "y");
        width = toks.size();
        continue;
      }
    }
    if (width == 0) width = toks.size();
    if (toks.size() != width) {
      throw Error(ErrorCode::kParseError,
                  "expected " + std::to_string(width) + " columns, got " +
                      std::to_string(toks.size()),
                  line_no);
    }
    const std::size_t ncoord = labeled ? width - 1 : width;
    if (ncoord == 0) throw Error(ErrorCode::kParseError, "no coordinates", line_no);
    IntVec x(ncoord);
    for (std::size_t i = 0; i < ncoord; ++i) x[i] = parse_integer(toks[i], line_no);
    if (max_bit_length(x) == 0) throw Error(ErrorCode::kZeroPoint, "zero vector", line_no);
    if (labeled) ys.push_back(parse_label(parse_integer(toks.back(), line_no), line_no));
    pts.push_back(std::move(x));
    lines.push_back(line_no);
  }
  if (pts.empty()) throw Error(ErrorCode::kEmptyInput, "no points in CSV input");
  LoadedPoints out;
  const std::size_t dim = pts[0].size();
  out.points = PointSet(dim, std::move(pts));
  if (labeled) out.labels = std::move(ys);
  return out;
}

LoadedPoints parse_json(const std::string& text, LabelColumn labels) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what(), 0);
  }
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
    throw Error(ErrorCode::kParseError, "expected an object with a points array", 0);
  }
  const auto& jp = j["points"];
  std::size_t dim = j.contains("dim") ? j["dim"].get<std::size_t>() : 0;
  std::vector<IntVec> pts;
  for (std::size_t i = 0; i < jp.size(); ++i) {
    const long where = static_cast<long>(i + 1);
    if (!jp[i].is_array()) throw Error(ErrorCode::kParseError, "point is not an array", where);
    IntVec x;
    for (const auto& e : jp[i]) {
      if (e.is_number_integer()) {
        x.push_back(e.get<std::int64_t>());
      } else if (e.is_number()) {
        throw Error(ErrorCode::kNonInteger, "non-integer coordinate " + e.dump(), where);
      } else {
        throw Error(ErrorCode::kParseError, "coordinate is not a number", where);
      }
    }
    if (dim == 0) dim = x.size();
    if (x.size() != dim) throw Error(ErrorCode::kParseError, "dimension mismatch", where);
    if (max_bit_length(x) == 0) throw Error(ErrorCode::kZeroPoint, "zero vector", where);
    pts.push_back(std::move(x));
  }
  if (pts.empty()) throw Error(ErrorCode::kEmptyInput, "no points in JSON input");
  LoadedPoints out;
  out.points = PointSet(dim, std::move(pts));
  const bool has_labels = j.contains("labels") && !j["labels"].is_null();
  if (labels == LabelColumn::kLast && !has_labels) {
    throw Error(ErrorCode::kParseError, "labels required", 0);
  }
  if (has_labels && labels != LabelColumn::kNone) {
    std::vector<int> ys;
    for (std::size_t i = 0; i < j["labels"].size(); ++i) {
      const auto& e = j["labels"][i];
      if (!e.is_number_integer()) throw Error(ErrorCode::kParseError, "bad label", static_cast<long>(i + 1));
      ys.push_back(parse_label(e.get<std::int64_t>(), static_cast<long>(i + 1)));
    }
    if (ys.size() != out.points.size()) {
      throw Error(ErrorCode::kParseError, "labels and points differ in length", 0);
    }
    out.labels = std::move(ys);
  }
  return out;
}

LoadedPoints load_file(const std::string& path, FileFormat format, LabelColumn labels) {
  const std::string text = read_text_file(path);
  return format == FileFormat::kJson ? parse_json(text, labels) : parse_csv(text, labels);
}

PointSet load_points(const std::string& path, FileFormat format) {
  return load_file(path, format, LabelColumn::kAuto).points;
}

LabeledDataset load_labeled(const std::string& path, FileFormat format) {
  LoadedPoints lp = load_file(path, format, LabelColumn::kLast);
  LabeledDataset out;
  out.base = std::move(lp.points);
  out.labels = std::move(*lp.labels);
  return out;
}

void write_csv(const std::string& path, const PointSet& points, const std::vector<int>* labels) {
  std::ostringstream out;
  for (std::size_t i = 0; i < points.dim(); ++i) out << (i ? "," : "") << "x" << (i + 1);
  if (labels) out << ",y";
  out << "\n";
  for (std::size_t r = 0; r < points.size(); ++r) {
    const IntVec& x = points[r];
    for (std::size_t i = 0; i < x.size(); ++i) out << (i ? "," : "") << x[i];
    if (labels) out << "," << (*labels)[r];
    out << "\n";
  }
  write_text_file(path, out.str());
}

void write_json(const std::string& path, const PointSet& points, const std::vector<int>* labels) {
  nlohmann::json j;
  j["dim"] = points.dim();
  j["points"] = points.points();
  if (labels) j["labels"] = *labels;
  write_text_file(path, dump_json(j, 0));
}

}  // namespace fdc
