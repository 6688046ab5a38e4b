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


#ifndef FDC_MASSART_H_
#define FDC_MASSART_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fdc/dataset.h"
#include "fdc/exact.h"
#include "fdc/linalg.h"

namespace fdc {

// sign(w . x) with sign(0) = +1.
int halfspace_label(std::span<const double> w, const IntVec& x);

struct EtaFunction {
  enum class Kind { kConstant, kMarginInverse, kTable };
  Kind kind = Kind::kConstant;
  double value = 0.0;          // constant rate, or the cap for the other kinds
  double margin_scale = 0.1;   // kMarginInverse: value / (1 + |w.u| / scale)
  std::map<IntVec, double> table;  // kTable: keyed by line_key(x)
  double table_default = 0.0;

  double operator()(const IntVec& x, std::span<const double> w_star) const;
};

struct Marginal {
  enum class Kind { kFinite, kGaussian, kLogConcaveMixture, kHardScaled };
  Kind kind = Kind::kGaussian;
  std::size_t dim = 0;
  int bits = 16;

  std::vector<IntVec> support;  // kFinite: uniform over these rows

  Vector scales;  // kGaussian: per-coordinate standard deviations

  // kLogConcaveMixture: Laplace components centred at `means` with per
  // component scales.
  std::vector<Vector> means;
  std::vector<double> component_scales;

  // kHardScaled: directions on a dir_bits grid, scaled by 2^s.
  int dir_bits = 8;
  std::vector<IntVec> exact_plane;     // integer basis of an exact subspace
  std::vector<Vector> near_subspace;   // real basis of a nearby subspace
  double exact_weight = 0.25;
  double near_weight = 0.2;
  double near_noise = 0.05;

  IntVec draw(std::uint64_t seed, std::uint64_t index) const;
};

struct MassartModel {
  Vector w_star;
  double eta_bound = 0.0;
  EtaFunction eta;
  Marginal marginal;

  std::size_t dim() const { return w_star.size(); }
  // Throws InvalidArgument if the model breaks its invariants.
  void validate() const;
};

struct LabeledExample {
  IntVec x;
  int y = 1;
};

// Draw `index` of the model stream: the point and its noisy label.
LabeledExample massart_example(const MassartModel& model, std::uint64_t seed,
                               std::uint64_t index);
LabeledDataset massart_draw(const MassartModel& model, std::size_t n,
                            std::uint64_t seed, std::uint64_t offset = 0);

// Random unit vector from the model stream of `seed`.
Vector random_unit_vector(std::size_t dim, std::uint64_t seed, std::uint64_t index);

MassartModel gaussian_model(std::size_t dim, int bits, double eta, std::uint64_t seed);
// Marginal with coordinates scaled by powers of two up to 2^bits and mass on
// and near low-dimensional subspaces. Directions, w*, and labels depend only
// on `seed`, not on `bits`.
MassartModel hard_model(std::size_t dim, int bits, double eta, std::uint64_t seed);

struct HardInstance {
  MassartModel model;
  LabeledDataset data;
};
HardInstance gen_hard_instance(std::size_t dim, std::size_t n, int bits, double eta,
                               std::uint64_t seed);

// Source of labeled examples for the learner. Single consumer.
class ExampleOracle {
 public:
  virtual ~ExampleOracle() = default;
  virtual LabeledExample draw() = 0;
  virtual std::size_t dim() const = 0;
};

class ModelOracle : public ExampleOracle {
 public:
  ModelOracle(MassartModel model, std::uint64_t seed, std::uint64_t offset = 0)
      : model_(std::move(model)), seed_(seed), next_(offset) {}
  LabeledExample draw() override { return massart_example(model_, seed_, next_++); }
  std::size_t dim() const override { return model_.dim(); }

 private:
  MassartModel model_;
  std::uint64_t seed_;
  std::uint64_t next_;
};

// Uniform resampling with replacement from a labeled file.
class DatasetOracle : public ExampleOracle {
 public:
  DatasetOracle(LabeledDataset data, std::uint64_t seed)
      : data_(std::move(data)), seed_(seed) {}
  LabeledExample draw() override;
  std::size_t dim() const override { return data_.base.dim(); }

 private:
  LabeledDataset data_;
  std::uint64_t seed_;
  std::uint64_t next_ = 0;
};

class CountingOracle : public ExampleOracle {
 public:
  explicit CountingOracle(ExampleOracle& inner) : inner_(inner) {}
  LabeledExample draw() override {
    ++count_;
    return inner_.draw();
  }
  std::size_t dim() const override { return inner_.dim(); }
  std::uint64_t count() const { return count_; }

 private:
  ExampleOracle& inner_;
  std::uint64_t count_ = 0;
};

}  // namespace fdc

#endif  // FDC_MASSART_H_
