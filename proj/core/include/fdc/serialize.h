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

#ifndef FDC_SERIALIZE_H_
#define FDC_SERIALIZE_H_

#include <cstdint>
#include <string>

#include "fdc/dataset.h"
#include "fdc/forster.h"
#include "fdc/learner.h"

namespace fdc {

// Hex SHA-256 of the canonical CSV rendering of the points (one row per
// point, no header).
std::string point_set_digest(const PointSet& s);

// JSON documents. Floats are written with 17 significant digits so values
// read back bit-for-bit. Parsers throw ParseError.
std::string piece_to_json(const ForsterPiece& piece);
ForsterPiece piece_from_json(const std::string& text);

struct DecompositionFile {
  std::vector<ForsterPiece> pieces;
  std::string source_digest;
  std::size_t source_points = 0;
  std::size_t dim = 0;
  double delta = 0.0;
  std::string created_at;
};

std::string decomposition_to_json(const ForsterDecomposition& d, double delta,
                                  const std::string& created_at);
DecompositionFile decomposition_from_json(const std::string& text);

struct ClassifierFile {
  PartialClassifier classifier;
  LearnerConfig config;
  std::uint64_t seed = 0;
  std::string created_at;
};

std::string classifier_to_json(const LearnResult& result, const LearnerConfig& config,
                               std::uint64_t seed, const std::string& created_at);
ClassifierFile classifier_from_json(const std::string& text);

}  // namespace fdc

#endif  // FDC_SERIALIZE_H_
