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

#include "fdc/learner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fdc/errors.h"
#include "fdc/rng.h"

namespace fdc {
namespace {

double ln_floor(double x) { return std::max(1.0, std::log(x)); }

std::size_t ceil_size(double x) { return static_cast<std::size_t>(std::ceil(x)); }

}  // namespace

int Stage::eval(const IntVec& x) const {
  if (!subspace.is_full() && !subspace.contains(x)) return 0;
  const Vector z = radial_map(transform, transpose_times(basis, unit_direction(x)));
  const double s = dot(w, z);
  if (std::fabs(s) < threshold) return 0;
  return s >= 0.0 ? 1 : -1;
}

int PartialClassifier::eval(const IntVec& x) const {
  for (const Stage& s : stages_) {
    const int v = s.eval(x);
    if (v != 0) return v;
  }
  return 0;
}

void LearnerConfig::validate() const {
  if (!(eta >= 0.0 && eta < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "eta must lie in [0, 1/2)");
  }
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::kInvalidArgument, "eps must lie in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0,1)");
  }
  if (!(c > 0.0) || !(forster_constant > 0.0) || !(weak_constant > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sample constants must be positive");
  }
  if (!(forster_delta > 0.0 && forster_delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "forster_delta must lie in (0,1)");
  }
  if (!(coverage_floor > 0.0 && coverage_floor <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "coverage_floor must lie in (0,1]");
  }
  if (!(rejection_factor >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "rejection_factor must be >= 1");
  }
  if (descent_iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "descent_iterations must be positive");
  }
}

std::size_t LearnerConfig::check_sample_size(std::size_t d) const {
  return ceil_size(c * ln_floor(static_cast<double>(d) * eps / delta) / (eps * eps));
}

std::size_t LearnerConfig::forster_sample_size(std::size_t d) const {
  const double dd = static_cast<double>(d);
  return std::max(ceil_size(forster_constant * dd * dd * dd * dd * ln_floor(1.0 / delta)),
                  50 * d);
}

std::size_t LearnerConfig::weak_sample_size(std::size_t d, std::size_t k) const {
  const double ep = eps_prime();
  return ceil_size(weak_constant * static_cast<double>(k) * ln_floor(1.0 / delta_prime(d)) /
                   (ep * ep));
}

std::size_t LearnerConfig::iteration_cap(std::size_t d) const {
  const double dd = static_cast<double>(d);
  return ceil_size((48.0 * dd / eps) * std::log(6.0 / eps)) *
         (1 + ceil_size(std::log(1.0 / delta)));
}

double LearnerConfig::delta_prime(std::size_t d) const {
  return delta / (static_cast<double>(d) * static_cast<double>(iteration_cap(d)) * 100.0);
}

double outlier_bound(const std::vector<Vector>& points) {
  if (points.empty()) throw Error(ErrorCode::kEmptyInput, "no points");
  const std::size_t k = points[0].size();
  Matrix sigma(k, k);
  for (const Vector& y : points) {
    if (y.size() != k) throw Error(ErrorCode::kInvalidArgument, "ragged vectors");
    add_outer(sigma, y, 1.0 / static_cast<double>(points.size()));
  }
  const SymmetricEigen eig = sym_eigen(sigma);
  const double top = eig.values.front();
  if (!(top > 0.0) || eig.values.back() <= 1e-12 * top) {
    throw Error(ErrorCode::kDegenerateSecondMoment, "second moment is singular on V");
  }
  double best = 0.0;
  for (const Vector& y : points) {
    double q = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      double p = 0.0;
      for (std::size_t i = 0; i < k; ++i) p += eig.vectors(i, j) * y[i];
      q += p * p / eig.values[j];
    }
    best = std::max(best, q);
  }
  return std::max(1.0, std::sqrt(best));
}

double leaky_relu_loss(const std::vector<Vector>& z, const std::vector<int>& y,
                       const Vector& w, double leak) {
  if (z.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double m = -y[i] * dot(w, z[i]);
    total += m > 0.0 ? (1.0 - leak) * m : leak * m;
  }
  return total / static_cast<double>(z.size());
}

WeakStage weak_partial_learner(const std::vector<Vector>& z, const std::vector<int>& y,
                               double eta, double gamma, double eps_prime, double delta_prime,
                               const LearnerConfig& config) {
  if (z.empty()) throw Error(ErrorCode::kEmptyInput, "no samples");
  if (z.size() != y.size()) throw Error(ErrorCode::kInvalidArgument, "label count mismatch");
  if (!(eta >= 0.0 && eta < 0.5)) throw Error(ErrorCode::kInvalidArgument, "eta out of range");
  if (!(gamma >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be >= 1");
  if (!(eps_prime > 0.0 && eps_prime < 1.0) || !(delta_prime > 0.0 && delta_prime < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "eps_prime and delta_prime must lie in (0,1)");
  }
  const std::size_t k = z[0].size();
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i].size() != k) throw Error(ErrorCode::kInvalidArgument, "ragged samples");
    if (std::fabs(norm2(z[i]) - 1.0) > 1e-9) {
      throw Error(ErrorCode::kInvalidArgument, "samples must have unit norm");
    }
    if (y[i] != 1 && y[i] != -1) throw Error(ErrorCode::kInvalidArgument, "labels must be +-1");
  }

  // Last third validates.
  const std::size_t n_val = std::max<std::size_t>(1, z.size() / 3);
  const std::size_t n_train = z.size() > n_val ? z.size() - n_val : z.size();
  const std::size_t val_begin = z.size() - n_val;
  std::vector<Vector> zt(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<int> yt(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n_train));

  const double leak = eta + eps_prime / 4.0;
  Vector w(k, 0.0);
  for (std::size_t i = 0; i < n_train; ++i) {
    for (std::size_t j = 0; j < k; ++j) w[j] += yt[i] * zt[i][j];
  }
  if (norm2(w) == 0.0) w[0] = 1.0;
  w = normalized(w);
  Vector best = w;
  double best_loss = leaky_relu_loss(zt, yt, w, leak);
  Vector g(k);
  for (int t = 1; t <= config.descent_iterations; ++t) {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t i = 0; i < n_train; ++i) {
      const double m = -yt[i] * dot(w, zt[i]);
      const double s = -(m > 0.0 ? 1.0 - leak : leak) * yt[i];
      for (std::size_t j = 0; j < k; ++j) g[j] += s * zt[i][j];
    }
    const double gn = norm2(g);
    if (gn == 0.0) break;
    const double step = 1.0 / std::sqrt(static_cast<double>(t));
    for (std::size_t j = 0; j < k; ++j) w[j] -= step * g[j] / gn;
    const double wn = norm2(w);
    if (wn > 1.0) {
      for (double& e : w) e /= wn;
    }
    // The loss is positively homogeneous, so directions are compared at
    // unit length; the ball optimum may be w = 0 when the empirical flip
    // rate exceeds the leak.
    if (norm2(w) == 0.0) continue;
    const Vector u = normalized(w);
    const double loss = leaky_relu_loss(zt, yt, u, leak);
    if (loss < best_loss) {
      best_loss = loss;
      best = u;
    }
  }

  // Validation margins, largest first.
  std::vector<std::pair<double, int>> val;  // (|w.z|, mistake)
  val.reserve(n_val);
  for (std::size_t i = val_begin; i < z.size(); ++i) {
    const double s = dot(best, z[i]);
    const int pred = s >= 0.0 ? 1 : -1;
    val.emplace_back(std::fabs(s), pred != y[i] ? 1 : 0);
  }
  std::sort(val.begin(), val.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::size_t> mistakes(val.size() + 1, 0);
  for (std::size_t i = 0; i < val.size(); ++i) mistakes[i + 1] = mistakes[i] + val[i].second;

  const double target = eta + eps_prime - eps_prime / 8.0;
  const std::size_t min_count = std::max<std::size_t>(
      10, ceil_size(config.coverage_floor * static_cast<double>(val.size())));
  constexpr std::size_t kGrid = 400;
  WeakStage out;
  out.w = best;
  out.train_loss = best_loss;
  bool found = false;
  for (std::size_t g_i = kGrid; g_i >= 1 && !found; --g_i) {
    std::size_t cut = std::max<std::size_t>(1, val.size() * g_i / kGrid);
    // Every point tied with the cut point is claimed too.
    while (cut < val.size() && val[cut].first == val[cut - 1].first) ++cut;
    if (cut < min_count) break;
    const double err = static_cast<double>(mistakes[cut]) / static_cast<double>(cut);
    if (err < target) {
      found = true;
      out.threshold = cut == val.size() ? 0.0 : val[cut - 1].first;
      out.val_coverage = static_cast<double>(cut) / static_cast<double>(val.size());
      out.val_error = err;
    }
  }
  if (!found) {
    throw Error(ErrorCode::kCoverageFailure,
                "no band reaches validation error below " + std::to_string(target) +
                    " with at least " + std::to_string(min_count) + " points");
  }
  return out;
}

namespace {

// Draws until `accept` holds or the budget runs out.
template <typename Accept>
bool draw_conditioned(ExampleOracle& oracle, std::size_t n, double per_point, Accept accept,
                      std::vector<LabeledExample>& out) {
  const double budget = std::ceil(per_point * static_cast<double>(n));
  double used = 0.0;
  out.clear();
  out.reserve(n);
  while (out.size() < n) {
    if (used >= budget) return false;
    LabeledExample ex = oracle.draw();
    used += 1.0;
    if (accept(ex.x)) out.push_back(std::move(ex));
  }
  return true;
}

}  // namespace

LearnResult learn_halfspace(ExampleOracle& oracle, const LearnerConfig& config,
                            std::uint64_t seed) {
  config.validate();
  const std::size_t d = oracle.dim();
  if (d == 0) throw Error(ErrorCode::kInvalidArgument, "oracle has dimension 0");
  CountingOracle counted(oracle);
  LearnResult result;
  result.classifier = PartialClassifier(d);
  PartialClassifier& h = result.classifier;

  const std::size_t n_check = config.check_sample_size(d);
  const std::size_t n_forster = config.forster_sample_size(d);
  const std::size_t cap = config.iteration_cap(d);
  const double dp = config.delta_prime(d);
  const double ep = config.eps_prime();
  const double per_star = config.rejection_factor / config.eps;
  const double per_star_in_v = 2.0 * config.rejection_factor * static_cast<double>(d) / config.eps;
  ForsterOptions fopts;

  for (std::size_t it = 0;; ++it) {
    std::size_t uncovered = 0;
    for (std::size_t i = 0; i < n_check; ++i) {
      if (h.eval(counted.draw().x) == 0) ++uncovered;
    }
    const double mass = static_cast<double>(uncovered) / static_cast<double>(n_check);
    result.final_check_uncovered = mass;
    if (mass <= config.eps / 3.0) {
      result.exit_reason = "covered";
      break;
    }
    if (it >= cap) {
      throw Error(ErrorCode::kIterationCapExceeded,
                  "uncovered mass " + std::to_string(mass) + " after " + std::to_string(cap) +
                      " iterations");
    }
    IterationTelemetry tel;
    tel.iteration = it;
    tel.check_uncovered = mass;

    std::vector<LabeledExample> batch;
    auto star = [&h](const IntVec& x) { return h.eval(x) == 0; };
    if (!draw_conditioned(counted, n_forster, per_star, star, batch)) {
      result.exit_reason = "rejection_budget";
      break;
    }
    std::vector<IntVec> pts;
    pts.reserve(batch.size());
    for (LabeledExample& ex : batch) pts.push_back(std::move(ex.x));
    const PointSet fs(d, std::move(pts));
    ForsterPiece piece = forster_transform(fs, config.forster_delta, fopts);
    const std::size_t k = piece.dim();
    tel.forster_points = fs.size();
    tel.piece_dim = k;
    tel.piece_members = piece.member_indices.size();
    tel.certificate = piece.certificate;
    tel.gamma = config.gamma(k);

    const std::size_t n_weak = config.weak_sample_size(d, k);
    auto star_in_v = [&h, &piece](const IntVec& x) {
      return (piece.subspace.is_full() || piece.subspace.contains(x)) && h.eval(x) == 0;
    };
    if (!draw_conditioned(counted, n_weak, per_star_in_v, star_in_v, batch)) {
      result.exit_reason = "rejection_budget";
      break;
    }
    // Shuffle so the validation third is a seeded random subset.
    CounterRng rng(seed, static_cast<std::uint64_t>(Stream::kLearner), it);
    for (std::size_t i = batch.size(); i > 1; --i) {
      std::swap(batch[i - 1], batch[rng.below(i)]);
    }
    std::vector<Vector> z;
    std::vector<int> y;
    z.reserve(batch.size());
    y.reserve(batch.size());
    for (const LabeledExample& ex : batch) {
      z.push_back(piece.map(ex.x));
      y.push_back(ex.y);
    }
    tel.weak_samples = z.size();
    try {
      tel.outlier = outlier_bound(z);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateSecondMoment) throw;
    }
    const WeakStage ws = weak_partial_learner(z, y, config.eta, config.gamma(k), ep, dp, config);
    tel.threshold = ws.threshold;
    tel.val_coverage = ws.val_coverage;
    tel.val_error = ws.val_error;

    Stage st;
    st.subspace = piece.subspace;
    st.basis = piece.basis;
    st.transform = piece.transform;
    st.w = ws.w;
    st.threshold = ws.threshold;
    h.add_stage(std::move(st));
    tel.draws = counted.count();
    result.telemetry.push_back(tel);
  }
  result.draws = counted.count();
  return result;
}

EvalResult evaluate_classifier(const PartialClassifier& h, const LabeledDataset& test) {
  EvalResult r;
  r.n = test.size();
  if (r.n == 0) return r;
  std::size_t claimed = 0;
  std::size_t wrong = 0;
  std::size_t total_wrong = 0;
  for (std::size_t i = 0; i < r.n; ++i) {
    const int v = h.eval(test.base[i]);
    if (v != 0) {
      ++claimed;
      if (v != test.labels[i]) ++wrong;
    }
    if ((v == 0 ? 1 : v) != test.labels[i]) ++total_wrong;
  }
  r.coverage = static_cast<double>(claimed) / static_cast<double>(r.n);
  r.error = claimed == 0 ? 0.0 : static_cast<double>(wrong) / static_cast<double>(claimed);
  r.total_error = static_cast<double>(total_wrong) / static_cast<double>(r.n);
  return r;
}

}  // namespace fdc
