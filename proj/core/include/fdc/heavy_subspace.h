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


#ifndef FDC_HEAVY_SUBSPACE_H_
#define FDC_HEAVY_SUBSPACE_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "fdc/dataset.h"
#include "fdc/exact.h"

namespace fdc {

using WeightVector = std::vector<double>;

struct HeavySubspaceResult {
  bool found = false;
  RationalSubspace subspace;                 // W, when found
  std::vector<std::size_t> member_indices;   // points of S lying in W
};

enum class HeavyEngine {
  kAuto,           // kLinearProgram for few distinct lines, else kPacking
  kLinearProgram,  // ellipsoid over the weight LP, greedy basis separation
  kPacking,        // exact base packing; failure certificates give W
};

struct HeavySubspaceOptions {
  HeavyEngine engine = HeavyEngine::kAuto;
  std::size_t lp_max_lines = 12;
  double budget_scale = 1.0;
};

// Greedy maximum-weight basis: points by weight descending (ties to the
// smaller index), skipping those dependent on the chosen prefix. Returns
// 0-based indices in increasing order. Throws RankDeficient if S does not
// span V.
std::vector<std::size_t> max_weight_basis(const PointSet& s, const RationalSubspace& v,
                                          const WeightVector& w);

// Weights in [0,1] with sum(w) >= (n/k) * sum_{i in B} w_i + 1 for every
// basis B of V, or nullopt when none exist. |S| must be a multiple of dim(V).
// Throws IterationBudgetExceeded.
std::optional<WeightVector> lp_feasible(const PointSet& s, const RationalSubspace& v,
                                        double budget_scale = 1.0);

// Subspace spanned by the first kappa greedy basis points, where kappa is
// the smallest index with i_{kappa+1} > (n/k) kappa + 1 in the sorted order.
HeavySubspaceResult extract_subspace(const PointSet& s, const RationalSubspace& v,
                                     const WeightVector& w);

// A proper subspace W of V with |S ∩ W| * dim(V) >= dim(W) * |S|, if any.
// When S does not span V, span(S) is returned.
HeavySubspaceResult find_heavy_subspace(const PointSet& s, const RationalSubspace& v,
                                        const HeavySubspaceOptions& options = {});

// Exact count check of the heaviness inequality (strict or not).
bool is_heavy(const PointSet& s, const RationalSubspace& v, const RationalSubspace& w,
              bool strict);

}  // namespace fdc

#endif  // FDC_HEAVY_SUBSPACE_H_
