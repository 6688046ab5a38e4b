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


#include "support/test_support.h"

#include <algorithm>
#include <cmath>

#include "fdc/rng.h"

namespace fdc::testing {

PointSet points(std::size_t dim, std::vector<IntVec> rows) {
  return PointSet(dim, std::move(rows));
}

PointSet random_points(std::size_t dim, std::size_t n, std::int64_t range,
                       std::uint64_t seed) {
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(seed, 77, i);
    IntVec x(dim, 0);
    while (max_bit_length(x) == 0) {
      for (auto& e : x) {
        e = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * range + 1))) - range;
      }
    }
    rows.push_back(std::move(x));
  }
  return PointSet(dim, std::move(rows));
}

Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, 78, 0);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = rng.normal();
  return m;
}

std::vector<IntVec> points_in_span(const std::vector<IntVec>& basis, std::size_t n,
                                   std::int64_t range, std::uint64_t seed) {
  std::vector<IntVec> out;
  const std::size_t d = basis[0].size();
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(seed, 79, i);
    IntVec x(d, 0);
    while (max_bit_length(x) == 0) {
      std::fill(x.begin(), x.end(), 0);
      for (const IntVec& b : basis) {
        const std::int64_t c =
            static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * range + 1))) - range;
        for (std::size_t j = 0; j < d; ++j) x[j] += c * b[j];
      }
    }
    out.push_back(std::move(x));
  }
  return out;
}

PointSet random_small_instance(std::uint64_t seed) {
  CounterRng rng(seed, 80, 0);
  const std::size_t d = 2 + rng.below(3);
  const std::size_t n = 1 + rng.below(12);
  std::vector<IntVec> rows = random_points(d, n, 2, seed).points();
  if (rng.bernoulli(0.4) && n >= 3) {
    // Plant points in a random subspace of dimension 1..d-1.
    const std::size_t kappa = 1 + rng.below(d - 1);
    std::vector<IntVec> basis = random_points(d, kappa, 2, seed ^ 0xabcdef).points();
    const std::size_t planted = 1 + rng.below(n);
    const auto inside = points_in_span(basis, planted, 2, seed);
    for (std::size_t i = 0; i < planted; ++i) rows[rng.below(n)] = inside[i];
  }
  return PointSet(d, std::move(rows));
}

PointSet equality_instance(std::uint64_t seed) {
  CounterRng rng(seed, 81, 0);
  const std::size_t d = 2 + rng.below(3);
  const std::size_t max_m = 12 / d;
  const std::size_t m = 1 + rng.below(max_m);
  const std::size_t kappa = 1 + rng.below(d - 1);
  std::vector<IntVec> basis;
  while (basis.empty() || exact_rank(basis) < static_cast<int>(kappa)) {
    basis = random_points(d, kappa, 3, seed + 1000 * basis.size() + 7).points();
    seed += 7919;
  }
  std::vector<IntVec> rows = points_in_span(basis, kappa * m, 4, seed);
  const auto outside = random_points(d, (d - kappa) * m, 9, seed ^ 0x5eed).points();
  rows.insert(rows.end(), outside.begin(), outside.end());
  // Shuffle deterministically.
  for (std::size_t i = rows.size(); i > 1; --i) std::swap(rows[i - 1], rows[rng.below(i)]);
  return PointSet(d, std::move(rows));
}

long double min_eigen_bisect(const std::vector<std::vector<long double>>& m) {
  const std::size_t n = m.size();
  long double lo = 0, hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    long double r = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) r += std::fabs(m[i][j]);
    }
    lo = std::min(lo, m[i][i] - r);
    hi = std::max(hi, m[i][i] + r);
  }
  lo -= 1;
  hi += 1;
  // number of eigenvalues below t
  auto below = [&](long double t) {
    std::vector<std::vector<long double>> a = m;
    int neg = 0;
    for (std::size_t i = 0; i < n; ++i) a[i][i] -= t;
    for (std::size_t p = 0; p < n; ++p) {
      long double d = a[p][p];
      if (d == 0) d = -1e-300L;
      if (d < 0) ++neg;
      for (std::size_t i = p + 1; i < n; ++i) {
        const long double f = a[i][p] / d;
        for (std::size_t j = p + 1; j < n; ++j) a[i][j] -= f * a[p][j];
      }
    }
    return neg;
  };
  for (int it = 0; it < 200; ++it) {
    const long double mid = 0.5L * (lo + hi);
    if (below(mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5L * (lo + hi);
}

double scaling_margin(const PointSet& s, const std::vector<double>& c_sq, double delta) {
  const std::size_t d = s.dim();
  const std::size_t n = s.size();
  const long double k = static_cast<long double>(exact_rank(s.points()));
  std::vector<std::vector<long double>> sigma(d, std::vector<long double>(d, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        sigma[a][b] += static_cast<long double>(c_sq[i]) * s[i][a] * s[i][b] / n;
      }
    }
  }
  long double tr = 0;
  for (std::size_t a = 0; a < d; ++a) tr += sigma[a][a];
  long double worst = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    auto m = sigma;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        m[a][b] = (k + delta) * sigma[a][b] -
                  static_cast<long double>(c_sq[i]) * s[i][a] * s[i][b];
      }
    }
    worst = std::min(worst, min_eigen_bisect(m));
  }
  return static_cast<double>(worst / tr);
}

}  // namespace fdc::testing
