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


#include "fdc/serialize.h"

#include <gtest/gtest.h>

#include "fdc/errors.h"
#include "support/test_support.h"

namespace fdc {
namespace {

using testing::points;

void expect_same_piece(const ForsterPiece& a, const ForsterPiece& b) {
  EXPECT_TRUE(a.subspace == b.subspace);
  EXPECT_EQ(a.basis.data(), b.basis.data());
  EXPECT_EQ(a.transform.data(), b.transform.data());
  EXPECT_EQ(a.weights.c_sq, b.weights.c_sq);
  EXPECT_EQ(a.member_indices, b.member_indices);
  EXPECT_EQ(a.certificate.lambda_min, b.certificate.lambda_min);
  EXPECT_EQ(a.certificate.lambda_max, b.certificate.lambda_max);
  EXPECT_EQ(a.certificate.delta, b.certificate.delta);
  EXPECT_EQ(a.solver, b.solver);
}

TEST(Digest, KnownValues) {
  // sha256 of "1,0\n0,1\n" and "-3,4,5\n"
  EXPECT_EQ(point_set_digest(points(2, {{1, 0}, {0, 1}})),
            "28d9679320141cb843249a311e9cbd982b4155c8d857a7c1a1d9a40d9c21531f");
  EXPECT_EQ(point_set_digest(points(3, {{-3, 4, 5}})),
            "9ccfa5ca60e82c7b7390dbd41e4fc1652ae73431f4a7901cadc2038cc220805e");
}

TEST(PieceJson, RoundTripIsExact) {
  const PointSet s = testing::random_points(4, 30, 1000, 8);
  const ForsterPiece p = forster_transform(s, 1e-3);
  const std::string text = piece_to_json(p);
  const ForsterPiece q = piece_from_json(text);
  expect_same_piece(p, q);
  EXPECT_EQ(piece_to_json(q), text);
  EXPECT_TRUE(verify_piece(q, s).pass);
  for (const char* key : {"subspace_basis", "transform", "weights", "members", "certificate"}) {
    EXPECT_NE(text.find(std::string("\"") + key + "\""), std::string::npos) << key;
  }
}

TEST(DecompositionJson, RoundTrip) {
  std::vector<IntVec> rows = testing::points_in_span({{1, 2, 0, 1}}, 12, 5, 3);
  const auto rest = testing::random_points(4, 20, 50, 4).points();
  rows.insert(rows.end(), rest.begin(), rest.end());
  const PointSet s(4, rows);
  const ForsterDecomposition d = forster_decompose(s, 1e-3);
  ASSERT_GE(d.pieces.size(), 2u);
  const std::string text = decomposition_to_json(d, 1e-3, "2026-01-01T00:00:00Z");
  const DecompositionFile f = decomposition_from_json(text);
  EXPECT_EQ(f.source_digest, point_set_digest(s));
  EXPECT_EQ(f.source_points, s.size());
  EXPECT_EQ(f.dim, 4u);
  EXPECT_EQ(f.delta, 1e-3);
  EXPECT_EQ(f.created_at, "2026-01-01T00:00:00Z");
  ASSERT_EQ(f.pieces.size(), d.pieces.size());
  for (std::size_t i = 0; i < f.pieces.size(); ++i) {
    expect_same_piece(d.pieces[i], f.pieces[i]);
    EXPECT_TRUE(verify_piece(f.pieces[i], s).pass);
  }
  // Only the timestamp differs between two writes.
  const std::string later = decomposition_to_json(d, 1e-3, "2027-05-05T00:00:00Z");
  EXPECT_EQ(decomposition_from_json(later).pieces.size(), f.pieces.size());
  EXPECT_EQ(text.size(), later.size());
}

TEST(ClassifierJson, RoundTripPredictions) {
  const MassartModel m = hard_model(6, 30, 0.1, 4);
  ModelOracle o(m, 4);
  LearnerConfig cfg;
  cfg.eta = 0.1;
  cfg.eps = 0.1;
  const LearnResult r = learn_halfspace(o, cfg, 2);
  const std::string text = classifier_to_json(r, cfg, 2, "t");
  const ClassifierFile f = classifier_from_json(text);
  EXPECT_EQ(f.seed, 2u);
  EXPECT_EQ(f.config.eps, 0.1);
  EXPECT_EQ(f.config.c, cfg.c);
  ASSERT_EQ(f.classifier.stages().size(), r.classifier.stages().size());
  const LabeledDataset test = massart_draw(m, 3000, 99);
  for (std::size_t i = 0; i < test.size(); ++i) {
    EXPECT_EQ(f.classifier.eval(test.base[i]), r.classifier.eval(test.base[i]));
  }
  EXPECT_NE(text.find("\"telemetry\""), std::string::npos);
}

TEST(Json, ParseErrors) {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code([] { piece_from_json("{"); }), ErrorCode::kParseError);
  EXPECT_EQ(code([] { piece_from_json("{}"); }), ErrorCode::kParseError);
  EXPECT_EQ(code([] { decomposition_from_json("[1,2]"); }), ErrorCode::kParseError);
  EXPECT_EQ(code([] {
              classifier_from_json(
                  R"({"dim":2,"stages":[{"subspace_basis":[[1,0],[2,0]],"frame":[[1],[0]],)"
                  R"("transform":[[1]],"w":[1],"threshold":0}],"config":{}})");
            }),
            ErrorCode::kParseError);
}

}  // namespace
}  // namespace fdc
