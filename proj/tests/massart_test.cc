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


#include "fdc/massart.h"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "fdc/errors.h"

namespace fdc {
namespace {

MassartModel finite_model(std::vector<IntVec> support, Vector w, double eta) {
  MassartModel m;
  m.w_star = std::move(w);
  m.eta_bound = eta;
  m.eta.value = eta;
  m.marginal.kind = Marginal::Kind::kFinite;
  m.marginal.dim = m.w_star.size();
  m.marginal.support = std::move(support);
  return m;
}

TEST(MassartDraw, NoiselessLabelsAreSigns) {
  const MassartModel m = gaussian_model(5, 16, 0.0, 4);
  const LabeledDataset data = massart_draw(m, 2000, 9);
  for (std::size_t i = 0; i < data.size(); ++i) {
    EXPECT_EQ(data.labels[i], halfspace_label(m.w_star, data.base[i]));
  }
}

TEST(MassartDraw, FlipFraction) {
  const MassartModel m = gaussian_model(6, 20, 0.2, 11);
  const LabeledDataset data = massart_draw(m, 100000, 3);
  std::size_t flips = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.labels[i] != halfspace_label(m.w_star, data.base[i])) ++flips;
  }
  EXPECT_NEAR(static_cast<double>(flips) / 1e5, 0.2, 0.01);
}

TEST(MassartDraw, BoundaryLabelIsPlus) {
  const MassartModel m = finite_model({{0, 5}, {0, -3}}, {1.0, 0.0}, 0.0);
  const LabeledDataset data = massart_draw(m, 50, 1);
  for (int y : data.labels) EXPECT_EQ(y, 1);
}

TEST(MassartDraw, FlipFrequencyAtFixedPoint) {
  const MassartModel m = finite_model({{2, 1}}, {0.6, 0.8}, 0.3);
  const std::size_t n = 20000;
  const LabeledDataset data = massart_draw(m, n, 5);
  std::size_t flips = 0;
  for (int y : data.labels) flips += y == -1;
  const double f = static_cast<double>(flips) / static_cast<double>(n);
  EXPECT_LE(std::fabs(f - 0.3), 3 * std::sqrt(0.3 * 0.7 / static_cast<double>(n)));
}

TEST(MassartDraw, Reproducible) {
  const MassartModel m = hard_model(6, 24, 0.1, 2);
  const LabeledDataset a = massart_draw(m, 500, 8), b = massart_draw(m, 500, 8);
  EXPECT_EQ(a.base.points(), b.base.points());
  EXPECT_EQ(a.labels, b.labels);
  const LabeledDataset tail = massart_draw(m, 100, 8, 400);
  for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(tail.base[i], a.base[400 + i]);
}

TEST(MassartModel, Validation) {
  MassartModel m = gaussian_model(3, 16, 0.1, 1);
  EXPECT_NO_THROW(m.validate());
  m.eta_bound = 0.5;
  EXPECT_THROW(m.validate(), Error);
  m = gaussian_model(3, 16, 0.1, 1);
  m.w_star[0] += 1e-6;
  EXPECT_THROW(m.validate(), Error);
  m = gaussian_model(3, 16, 0.1, 1);
  m.eta.value = 0.2;
  EXPECT_THROW(massart_draw(m, 1, 0), Error);
  EXPECT_THROW(massart_draw(gaussian_model(3, 16, 0.1, 1), 0, 0), Error);
}

TEST(MassartModel, MarginInverseRespectsBound) {
  MassartModel m = gaussian_model(4, 16, 0.3, 6);
  m.eta.kind = EtaFunction::Kind::kMarginInverse;
  const LabeledDataset data = massart_draw(m, 1000, 2);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = m.eta(data.base[i], m.w_star);
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 0.3);
  }
}

TEST(HardInstance, RangeAndShape) {
  const HardInstance h = gen_hard_instance(2, 4, 4, 0.1, 3);
  ASSERT_EQ(h.data.size(), 4u);
  for (const IntVec& x : h.data.base.points()) {
    ASSERT_EQ(x.size(), 2u);
    for (std::int64_t e : x) {
      EXPECT_GE(e, -16);
      EXPECT_LE(e, 16);
    }
  }
  EXPECT_THROW(gen_hard_instance(2, 4, 3, 0.1, 3), Error);
}

TEST(HardInstance, Deterministic) {
  const HardInstance a = gen_hard_instance(5, 300, 20, 0.2, 7);
  const HardInstance b = gen_hard_instance(5, 300, 20, 0.2, 7);
  EXPECT_EQ(a.data.base.points(), b.data.base.points());
  EXPECT_EQ(a.data.labels, b.data.labels);
}

TEST(HardInstance, BitsChangeOnlyScales) {
  const HardInstance lo = gen_hard_instance(10, 2000, 16, 0.2, 12);
  const HardInstance hi = gen_hard_instance(10, 2000, 48, 0.2, 12);
  EXPECT_EQ(lo.model.w_star, hi.model.w_star);
  EXPECT_EQ(lo.data.labels, hi.data.labels);
  EXPECT_LE(lo.data.base.bit_complexity(), 17);
  EXPECT_GE(hi.data.base.bit_complexity(), 40);
  std::size_t scaled = 0;
  for (std::size_t i = 0; i < lo.data.size(); ++i) {
    EXPECT_EQ(line_key(lo.data.base[i]), line_key(hi.data.base[i]));
    EXPECT_EQ(unit_direction(lo.data.base[i]), unit_direction(hi.data.base[i]));
    if (lo.data.base[i] != hi.data.base[i]) ++scaled;
  }
  EXPECT_GT(scaled, 1000u);
}

TEST(HardInstance, MassOnExactPlane) {
  const HardInstance h = gen_hard_instance(10, 4000, 32, 0.2, 5);
  const auto& plane = h.model.marginal.exact_plane;
  ASSERT_EQ(plane.size(), 2u);
  std::size_t in = 0;
  for (const IntVec& x : h.data.base.points()) {
    std::vector<IntVec> rows = plane;
    rows.push_back(x);
    if (exact_rank(rows) == 2) ++in;
  }
  // Heavy: more than a 2/10 fraction lies on the plane.
  EXPECT_GT(static_cast<double>(in) / 4000.0, 0.2);
}

TEST(Oracles, ModelOracleMatchesDraw) {
  const MassartModel m = gaussian_model(3, 16, 0.1, 2);
  ModelOracle o(m, 5, 10);
  CountingOracle c(o);
  const LabeledDataset ref = massart_draw(m, 20, 5, 10);
  for (std::size_t i = 0; i < 20; ++i) {
    const LabeledExample ex = c.draw();
    EXPECT_EQ(ex.x, ref.base[i]);
    EXPECT_EQ(ex.y, ref.labels[i]);
  }
  EXPECT_EQ(c.count(), 20u);
  EXPECT_EQ(c.dim(), 3u);
}

TEST(Oracles, DatasetOracleResamples) {
  LabeledDataset data;
  data.base = PointSet(2, {{1, 0}, {0, 1}, {1, 1}});
  data.labels = {1, -1, 1};
  DatasetOracle a(data, 4), b(data, 4);
  std::set<IntVec> seen;
  for (int i = 0; i < 200; ++i) {
    const LabeledExample x = a.draw(), y = b.draw();
    EXPECT_EQ(x.x, y.x);
    EXPECT_EQ(x.y, y.y);
    seen.insert(x.x);
    for (std::size_t j = 0; j < 3; ++j) {
      if (data.base[j] == x.x) EXPECT_EQ(data.labels[j], x.y);
    }
  }
  EXPECT_EQ(seen.size(), 3u);
}

}  // namespace
}  // namespace fdc
