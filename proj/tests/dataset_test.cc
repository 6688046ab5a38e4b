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

#include <gtest/gtest.h>

#include <cstdio>
#include <functional>
#include <filesystem>

#include "fdc/errors.h"

namespace fdc {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

TEST(ParseCsv, PlainRows) {
  const auto lp = parse_csv("1,0\n0,1\n", LabelColumn::kAuto);
  EXPECT_EQ(lp.points.dim(), 2u);
  EXPECT_EQ(lp.points.size(), 2u);
  EXPECT_EQ(lp.points.bit_complexity(), 1);
  EXPECT_FALSE(lp.labels.has_value());
}

TEST(ParseCsv, HeaderWithLabels) {
  const auto lp = parse_csv("x1,x2,y\n3,-4,1\n-16,2,-1\n", LabelColumn::kAuto);
  EXPECT_EQ(lp.points.dim(), 2u);
  ASSERT_TRUE(lp.labels.has_value());
  EXPECT_EQ(*lp.labels, (std::vector<int>{1, -1}));
  EXPECT_EQ(lp.points.bit_complexity(), 5);
}

TEST(ParseCsv, Errors) {
  EXPECT_EQ(code_of([] { parse_csv("1,2\n0,0\n", LabelColumn::kAuto); }), ErrorCode::kZeroPoint);
  EXPECT_EQ(code_of([] { parse_csv("1,2\n1.5,0\n", LabelColumn::kAuto); }), ErrorCode::kNonInteger);
  EXPECT_EQ(code_of([] { parse_csv("1,2\n1,abc\n", LabelColumn::kAuto); }), ErrorCode::kParseError);
  EXPECT_EQ(code_of([] { parse_csv("1,2\n1,2,3\n", LabelColumn::kAuto); }), ErrorCode::kParseError);
  try {
    parse_csv("1,2\n3,4\n0,0\n", LabelColumn::kAuto);
  } catch (const Error& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(ParseJson, LargeEntryBitLength) {
  const auto lp = parse_json(R"({"dim":3,"points":[[1,0,0],[0,1099511627776,0],[0,0,-1]]})",
                             LabelColumn::kAuto);
  EXPECT_EQ(lp.points.bit_complexity(), 41);
  EXPECT_EQ(code_of([] { parse_json(R"({"dim":2,"points":[[1,0.5]]})", LabelColumn::kAuto); }),
            ErrorCode::kNonInteger);
  EXPECT_EQ(code_of([] { parse_json(R"({"dim":2,"points":[[0,0]]})", LabelColumn::kAuto); }),
            ErrorCode::kZeroPoint);
}

TEST(Files, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path();
  const PointSet pts(3, {{1, -2, 3}, {4, 5, -6}});
  const std::vector<int> ys{1, -1};
  const std::string csv = (dir / "fdc_dataset_roundtrip.csv").string();
  const std::string json = (dir / "fdc_dataset_roundtrip.json").string();
  write_csv(csv, pts, &ys);
  write_json(json, pts, &ys);
  for (const std::string& path : {csv, json}) {
    const LabeledDataset back = load_labeled(path, format_for_path(path));
    EXPECT_EQ(back.base.points(), pts.points());
    EXPECT_EQ(back.labels, ys);
  }
  std::remove(csv.c_str());
  std::remove(json.c_str());
}

}  // namespace
}  // namespace fdc
