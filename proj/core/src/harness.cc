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


#include "fdc/harness.h"

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <thread>

#include "fdc/errors.h"

namespace fdc {
namespace {

// Row rank over Q by plain Gaussian elimination on rationals.
int rational_rank(const std::vector<IntVec>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::vector<std::vector<mpq_class>> a;
  for (const IntVec& r : rows) {
    std::vector<mpq_class> q;
    for (std::int64_t e : r) q.emplace_back(static_cast<signed long>(e));
    a.push_back(std::move(q));
  }
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(a.size()); ++c) {
    std::size_t p = static_cast<std::size_t>(rank);
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      const mpq_class f = a[i][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

HeavySubspaceResult brute_force_heavy_subspace(const PointSet& s, const RationalSubspace& v) {
  if (s.dim() > 4 || s.size() > 12) {
    throw Error(ErrorCode::kSizeLimit, "brute force limited to d <= 4 and n <= 12");
  }
  const std::size_t n = s.size();
  const int k = static_cast<int>(v.dim());
  const int total_rank = rational_rank(s.points());
  HeavySubspaceResult out;
  auto finish = [&](const std::vector<IntVec>& gens, int r) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<IntVec> with = gens;
      with.push_back(s[i]);
      if (rational_rank(with) == r) members.push_back(i);
    }
    out.found = true;
    out.subspace = RationalSubspace::span(gens, s.dim());
    out.member_indices = std::move(members);
  };
  if (total_rank < k) {
    finish(s.points(), total_rank);
    return out;
  }
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> walk = [&](std::size_t from) -> bool {
    if (!pick.empty()) {
      std::vector<IntVec> gens;
      for (std::size_t i : pick) gens.push_back(s[i]);
      const int r = rational_rank(gens);
      if (r >= 1 && r < k) {
        long count = 0;
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<IntVec> with = gens;
          with.push_back(s[i]);
          if (rational_rank(with) == r) ++count;
        }
        if (count * k >= static_cast<long>(n) * r) {
          finish(gens, r);
          return true;
        }
      }
    }
    if (static_cast<int>(pick.size()) == k - 1) return false;
    for (std::size_t i = from; i < n; ++i) {
      pick.push_back(i);
      if (walk(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  walk(0);
  return out;
}

std::size_t default_threads() {
  if (const char* env = std::getenv("FDC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

TrialReport run_trial(const MassartModel& model, const LearnerConfig& config,
                      std::uint64_t seed, std::size_t test_draws) {
  TrialReport r;
  r.seed = seed;
  r.bits = model.marginal.bits;
  r.config = config;
  ModelOracle raw(model, seed);
  CountingOracle oracle(raw);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const LearnResult res = learn_halfspace(oracle, config, seed);
    r.telemetry = res.telemetry;
    if (res.draws != oracle.count()) {
      throw Error(ErrorCode::kInternalInvariantViolated, "draw count mismatch");
    }
    if (test_draws > 0) {
      // A stream disjoint from training: the oracle uses indices from 0.
      const LabeledDataset test = massart_draw(model, test_draws, seed, std::uint64_t{1} << 48);
      const EvalResult e = evaluate_classifier(res.classifier, test);
      r.error = e.total_error;
      r.coverage = e.coverage;
    }
  } catch (const Error& e) {
    r.failure = e.what();
    r.error = std::numeric_limits<double>::quiet_NaN();
  }
  r.draws = oracle.count();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<TrialReport> bit_independence_study(const StudyOptions& o) {
  std::vector<TrialReport> out(o.bits.size() * o.trials);
  if (out.empty()) return out;
  LearnerConfig cfg = o.base;
  cfg.eta = o.eta;
  cfg.eps = o.eps;
  cfg.delta = o.delta;
  cfg.validate();
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < out.size(); i = next++) {
      const int b = o.bits[i / o.trials];
      const std::size_t t = i % o.trials;
      const std::uint64_t seed = o.seed + t;
      out[i] = run_trial(hard_model(o.dim, b, o.eta, seed), cfg, seed, o.test_draws);
      out[i].trial = t;
    }
  };
  const std::size_t n_threads =
      std::min(out.size(), o.threads > 0 ? o.threads : default_threads());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(work);
  work();
  for (std::thread& th : pool) th.join();
  return out;
}

std::string study_csv(const std::vector<TrialReport>& reports) {
  std::string s = "b,trial,error,coverage,draws,seconds\n";
  char buf[256];
  for (const TrialReport& r : reports) {
    std::snprintf(buf, sizeof(buf), "%d,%zu,%.6f,%.6f,%llu,%.3f\n", r.bits, r.trial, r.error,
                  r.coverage, static_cast<unsigned long long>(r.draws), r.seconds);
    s += buf;
  }
  return s;
}

}  // namespace fdc
