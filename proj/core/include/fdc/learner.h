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


#ifndef FDC_LEARNER_H_
#define FDC_LEARNER_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fdc/dataset.h"
#include "fdc/exact.h"
#include "fdc/forster.h"
#include "fdc/linalg.h"
#include "fdc/massart.h"

namespace fdc {

// One link of a partial classifier: claims x when x lies in V and
// |w · f_A(x)| >= threshold, answering sign(w · f_A(x)).
struct Stage {
  RationalSubspace subspace;
  Matrix basis;      // d x k orthonormal basis of V
  Matrix transform;  // k x k
  Vector w;          // in basis coordinates
  double threshold = 0.0;

  // -1 / +1 when claimed, 0 otherwise.
  int eval(const IntVec& x) const;
};

class PartialClassifier {
 public:
  PartialClassifier() = default;
  explicit PartialClassifier(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  const std::vector<Stage>& stages() const { return stages_; }
  void add_stage(Stage s) { stages_.push_back(std::move(s)); }

  // First claiming stage, or 0 (abstain).
  int eval(const IntVec& x) const;
  // Abstentions resolved to +1.
  int predict(const IntVec& x) const {
    const int e = eval(x);
    return e == 0 ? 1 : e;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Stage> stages_;
};

struct LearnerConfig {
  double eta = 0.2;
  double eps = 0.05;
  double delta = 0.1;
  double c = 64.0;               // check-sample constant
  double forster_constant = 0.05;
  double weak_constant = 1.0 / 16.0;
  double forster_delta = 1e-2;
  double coverage_floor = 1e-3;
  double rejection_factor = 12.0;
  int descent_iterations = 400;

  void validate() const;

  double eps_prime() const { return eps / 2.0; }
  double leak() const { return eta + eps_prime() / 4.0; }
  double gamma(std::size_t k) const { return 4.0 * static_cast<double>(k); }
  std::size_t check_sample_size(std::size_t d) const;
  std::size_t forster_sample_size(std::size_t d) const;
  std::size_t weak_sample_size(std::size_t d, std::size_t k) const;
  std::size_t iteration_cap(std::size_t d) const;
  double delta_prime(std::size_t d) const;
};

// max_x sqrt(xᵀ Σ⁻¹ x) with Σ the second moment of the vectors.
// Throws DegenerateSecondMoment.
double outlier_bound(const std::vector<Vector>& points);

struct WeakStage {
  Vector w;
  double threshold = 0.0;
  double val_coverage = 0.0;
  double val_error = 0.0;
  double train_loss = 0.0;
};

// LeakyReLU minimization on unit vectors followed by a band chosen on a
// held-out third of the samples. Throws CoverageFailure.
WeakStage weak_partial_learner(const std::vector<Vector>& z, const std::vector<int>& y,
                               double eta, double gamma, double eps_prime, double delta_prime,
                               const LearnerConfig& config);

// Empirical LeakyReLU loss E[max((1-λ) m, λ m)] with m = -y (w·z).
double leaky_relu_loss(const std::vector<Vector>& z, const std::vector<int>& y,
                       const Vector& w, double leak);

struct IterationTelemetry {
  std::size_t iteration = 0;
  double check_uncovered = 0.0;
  std::size_t forster_points = 0;
  std::size_t piece_dim = 0;
  std::size_t piece_members = 0;
  Certificate certificate;
  double gamma = 0.0;    // 4k
  double outlier = 0.0;  // empirical bound on the mapped weak sample
  std::size_t weak_samples = 0;
  double threshold = 0.0;
  double val_coverage = 0.0;
  double val_error = 0.0;
  std::uint64_t draws = 0;  // cumulative
};

struct LearnResult {
  PartialClassifier classifier;
  std::vector<IterationTelemetry> telemetry;
  std::uint64_t draws = 0;
  std::string exit_reason;  // "covered" or "rejection_budget"
  double final_check_uncovered = 0.0;
};

// Throws IterationCapExceeded, CoverageFailure and solver errors.
LearnResult learn_halfspace(ExampleOracle& oracle, const LearnerConfig& config,
                            std::uint64_t seed);

struct EvalResult {
  double error = 0.0;        // among claimed points
  double coverage = 0.0;
  double total_error = 0.0;  // abstentions resolved to +1
  std::size_t n = 0;
};

EvalResult evaluate_classifier(const PartialClassifier& h, const LabeledDataset& test);

}  // namespace fdc

#endif  // FDC_LEARNER_H_
