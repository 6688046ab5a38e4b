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


#ifndef FDC_HARNESS_H_
#define FDC_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fdc/dataset.h"
#include "fdc/exact.h"
#include "fdc/heavy_subspace.h"
#include "fdc/learner.h"
#include "fdc/massart.h"

namespace fdc {

// Exhaustive search over spans of subsets of at most dim(V) - 1 points, with
// its own rational elimination. Throws SizeLimit beyond d = 4 or n = 12.
HeavySubspaceResult brute_force_heavy_subspace(const PointSet& s, const RationalSubspace& v);

struct TrialReport {
  std::uint64_t seed = 0;
  int bits = 0;
  std::size_t trial = 0;
  LearnerConfig config;
  std::vector<IterationTelemetry> telemetry;
  double error = 0.0;     // held-out, abstentions resolved to +1
  double coverage = 0.0;  // held-out fraction claimed by some stage
  std::uint64_t draws = 0;
  double seconds = 0.0;
  std::string failure;  // empty on success; error is NaN otherwise
};

// One learning run against `model`, scored on `test_draws` fresh examples.
// draws comes from a counting wrapper around the oracle.
TrialReport run_trial(const MassartModel& model, const LearnerConfig& config,
                      std::uint64_t seed, std::size_t test_draws);

struct StudyOptions {
  std::size_t dim = 10;
  std::vector<int> bits = {16, 32, 48};
  double eta = 0.2;
  double eps = 0.05;
  double delta = 0.1;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::size_t test_draws = 100000;
  LearnerConfig base;  // eta, eps, delta above override these fields
  std::size_t threads = 0;  // 0: FDC_THREADS, else hardware concurrency
};

// Trial t uses hard_model(dim, b, eta, seed + t) for every b, so the bit
// widths see the same directions, labels and oracle stream. Reports are in
// (b, trial) order whatever the thread count.
std::vector<TrialReport> bit_independence_study(const StudyOptions& options);

// Header b,trial,error,coverage,draws,seconds then one row per report.
std::string study_csv(const std::vector<TrialReport>& reports);

// FDC_THREADS if set and positive, else the hardware concurrency.
std::size_t default_threads();

}  // namespace fdc

#endif  // FDC_HARNESS_H_
