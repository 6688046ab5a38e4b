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


#ifndef FDC_DATASET_H_
#define FDC_DATASET_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fdc/exact.h"

namespace fdc {

// Finite multiset of nonzero integer points.
class PointSet {
 public:
  PointSet() = default;
  // Throws ZeroPoint (line = 1-based row) or InvalidArgument on ragged rows.
  PointSet(std::size_t dim, std::vector<IntVec> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const IntVec& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<IntVec>& points() const { return points_; }
  // Smallest b with |coordinate| < 2^b for every coordinate.
  int bit_complexity() const { return bits_; }

  PointSet subset(const std::vector<std::size_t>& indices) const;

 private:
  std::size_t dim_ = 0;
  std::vector<IntVec> points_;
  int bits_ = 0;
};

struct LabeledDataset {
  PointSet base;
  std::vector<int> labels;  // entries in {-1, +1}

  std::size_t size() const { return base.size(); }
};

enum class FileFormat { kCsv, kJson };

// csv unless the extension is .json.
FileFormat format_for_path(const std::string& path);

struct LoadedPoints {
  PointSet points;
  std::optional<std::vector<int>> labels;
};

enum class LabelColumn {
  kAuto,  // labeled iff a CSV header names the last column "y" (or JSON has labels)
  kNone,
  kLast,  // last CSV column is the label; JSON must carry labels
};

LoadedPoints load_file(const std::string& path, FileFormat format,
                       LabelColumn labels = LabelColumn::kAuto);
LoadedPoints parse_csv(const std::string& text, LabelColumn labels);
LoadedPoints parse_json(const std::string& text, LabelColumn labels);

PointSet load_points(const std::string& path, FileFormat format);
LabeledDataset load_labeled(const std::string& path, FileFormat format);

void write_csv(const std::string& path, const PointSet& points,
               const std::vector<int>* labels = nullptr);
void write_json(const std::string& path, const PointSet& points,
                const std::vector<int>* labels = nullptr);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fdc

#endif  // FDC_DATASET_H_
