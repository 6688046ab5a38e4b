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


#include "fdc/exact.h"

#include <gtest/gtest.h>

namespace fdc {
namespace {

TEST(BitLength, Values) {
  EXPECT_EQ(bit_length(0), 0);
  EXPECT_EQ(bit_length(1), 1);
  EXPECT_EQ(bit_length(-16), 5);
  EXPECT_EQ(bit_length(std::int64_t{1} << 40), 41);
  EXPECT_EQ(bit_length(INT64_MIN), 64);
}

TEST(LineKey, SignAndGcd) {
  EXPECT_EQ(line_key({-4, 6, 0}), (IntVec{2, -3, 0}));
  EXPECT_EQ(line_key({0, -5}), (IntVec{0, 1}));
  EXPECT_EQ(line_key({3, 4}), line_key({-6, -8}));
}

TEST(ExactRank, NearlyParallelLargeVectors) {
  const std::int64_t big = std::int64_t{1} << 40;
  EXPECT_EQ(exact_rank({{big, 1}, {big, 2}}), 2);
  EXPECT_EQ(exact_rank({{big, 1}, {2 * big, 2}}), 1);
  EXPECT_EQ(exact_rank({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}), 2);
}

TEST(RationalSubspace, MembershipIsExact) {
  const std::int64_t big = std::int64_t{1} << 52;
  const auto w = RationalSubspace::span({{big, 1, 0}}, 3);
  EXPECT_EQ(w.dim(), 1u);
  EXPECT_TRUE(w.contains(IntVec{-big, -1, 0}));
  EXPECT_FALSE(w.contains(IntVec{big, 2, 0}));
  EXPECT_FALSE(w.contains(IntVec{big + 1, 1, 0}));
}

TEST(RationalSubspace, PlaneAndChart) {
  const auto w = RationalSubspace::span({{1, 1, 0}, {1, -1, 0}, {2, 0, 0}}, 3);
  EXPECT_EQ(w.dim(), 2u);
  EXPECT_TRUE(w.contains(IntVec{5, -9, 0}));
  EXPECT_FALSE(w.contains(IntVec{0, 0, 1}));
  EXPECT_EQ(w.chart(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(w.chart_coordinates({5, -9, 0}), (IntVec{5, -9}));
  EXPECT_TRUE(w == RationalSubspace::span({{0, 3, 0}, {7, 0, 0}}, 3));
  const Matrix q = w.orthonormal_basis();
  EXPECT_EQ(q.cols(), 2u);
}

TEST(RationalSubspace, WideEntriesFallBackToBigIntegers) {
  // Annihilator entries exceed 64 bits.
  const std::int64_t a = (std::int64_t{1} << 61) - 1;
  const std::int64_t b = (std::int64_t{1} << 61) - 3;
  const auto w = RationalSubspace::span({{a, b, 1, 0}, {b, a, 0, 1}}, 4);
  EXPECT_EQ(w.dim(), 2u);
  EXPECT_TRUE(w.contains(IntVec{a + b, a + b, 1, 1}));
  EXPECT_FALSE(w.contains(IntVec{a + b, a + b, 1, 2}));
}

}  // namespace
}  // namespace fdc
