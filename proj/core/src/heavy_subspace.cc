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


#include "fdc/heavy_subspace.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "bigint.h"
#include "fdc/ellipsoid.h"
#include "fdc/errors.h"
#include "fdc/linalg.h"

namespace fdc {
namespace {

// Points of S grouped by the line through the origin they lie on, in
// coordinates of a chart of V.
struct LineSystem {
  std::size_t k = 0;
  std::vector<IntVec> chart;               // primitive, sign-normalized
  std::vector<Vector> unit;                // chart / |chart|
  std::vector<std::size_t> representative; // smallest point index
  std::vector<long> multiplicity;
  std::vector<std::size_t> line_of_point;
};

LineSystem build_lines(const PointSet& s, const RationalSubspace& v) {
  LineSystem ls;
  ls.k = v.dim();
  ls.line_of_point.resize(s.size());
  std::map<IntVec, std::size_t> index;
  for (std::size_t i = 0; i < s.size(); ++i) {
    IntVec key = line_key(v.chart_coordinates(s[i]));
    auto [it, inserted] = index.emplace(key, ls.chart.size());
    if (inserted) {
      ls.unit.push_back(unit_direction(key));
      ls.chart.push_back(std::move(key));
      ls.representative.push_back(i);
      ls.multiplicity.push_back(0);
    }
    ls.line_of_point[i] = it->second;
    ++ls.multiplicity[it->second];
  }
  return ls;
}

// Growing independent set with a floating Gram-Schmidt filter and an exact
// fallback for undecided cases.
class IncrementalSpan {
 public:
  IncrementalSpan() = default;
  explicit IncrementalSpan(std::size_t k) : k_(k) {}

  std::size_t rank() const { return ints_.size(); }
  const std::vector<IntVec>& members() const { return ints_; }

  bool independent(const IntVec& x, const Vector& unit) const {
    if (ints_.size() >= k_) return false;
    if (ints_.empty()) return true;
    const double r = residual(unit);
    if (r > certain_threshold()) return true;
    for (; synced_ < ints_.size(); ++synced_) exact_.add(ints_[synced_]);
    return !exact_.contains(x);
  }

  // Independence decided in floating point alone; false when unsure.
  bool surely_independent(const Vector& unit) const {
    if (ints_.size() >= k_) return false;
    return ints_.empty() || residual(unit) > certain_threshold();
  }

  // Appends x, which must be independent of the current members.
  void push(const IntVec& x, const Vector& unit) {
    Vector w = unit;
    orthogonalize(w);
    orthogonalize(w);
    const double r = norm2(w);
    min_residual_ = std::min(min_residual_, r);
    if (r > 0.0) {
      for (double& e : w) e /= r;
    }
    q_.push_back(std::move(w));
    ints_.push_back(x);
  }

 private:
  void orthogonalize(Vector& w) const {
    for (const Vector& q : q_) {
      const double c = dot(q, w);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * q[i];
    }
  }
  double residual(const Vector& unit) const {
    Vector w = unit;
    orthogonalize(w);
    orthogonalize(w);
    return norm2(w);
  }
  double certain_threshold() const {
    return 1e-9 / std::min(1.0, std::max(min_residual_, 1e-300));
  }

  std::size_t k_ = 0;
  std::vector<Vector> q_;
  std::vector<IntVec> ints_;
  double min_residual_ = 1.0;
  mutable detail::Echelon exact_;
  mutable std::size_t synced_ = 0;
};

// Orders lines by weight descending, ties to the smaller line index.
std::vector<std::size_t> weight_order(const Vector& u, const std::vector<long>& caps) {
  std::vector<std::size_t> order;
  for (std::size_t l = 0; l < u.size(); ++l) {
    if (caps[l] > 0) order.push_back(l);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return u[a] > u[b]; });
  return order;
}

// Memoized independence tests for the LP engine (at most 64 lines).
class GreedyOracle {
 public:
  explicit GreedyOracle(const LineSystem& ls) : ls_(ls) {}

  // Greedy basis over lines in the given order.
  std::vector<std::size_t> basis(const std::vector<std::size_t>& order) {
    std::vector<std::size_t> chosen;
    std::uint64_t mask = 0;
    for (std::size_t l : order) {
      if (chosen.size() == ls_.k) break;
      if (independent(mask, l)) {
        chosen.push_back(l);
        mask |= std::uint64_t{1} << l;
      }
    }
    return chosen;
  }

 private:
  bool independent(std::uint64_t mask, std::size_t l) {
    if (mask == 0) return true;
    const std::uint64_t key = mask * 131 + l;
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;
    auto it = spans_.find(mask);
    if (it == spans_.end()) {
      std::vector<IntVec> vs;
      for (std::size_t j = 0; j < ls_.chart.size(); ++j) {
        if (mask >> j & 1) vs.push_back(ls_.chart[j]);
      }
      it = spans_.emplace(mask, RationalSubspace::span(vs, ls_.k)).first;
    }
    const bool ind = !it->second.contains(ls_.chart[l]);
    memo_.emplace(key, ind);
    return ind;
  }

  const LineSystem& ls_;
  std::unordered_map<std::uint64_t, RationalSubspace> spans_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

long total(const std::vector<long>& caps) {
  return std::accumulate(caps.begin(), caps.end(), 0L);
}

// The weight LP over lines: variable u_l in [0,1] for every copy on line l,
// constraint sum_l caps_l u_l >= (N/k) sum_{l in B} u_l + 1 for all bases B.
std::optional<Vector> solve_line_lp(const LineSystem& ls, const std::vector<long>& caps,
                                    double budget_scale, GreedyOracle& greedy) {
  const std::size_t lines = ls.chart.size();
  const double n = static_cast<double>(total(caps));
  const double k = static_cast<double>(ls.k);
  const double alpha = n / k;
  const double mu = 1.0 / (4.0 * n);
  const double rho = mu / (2.0 * n);
  const double log_floor = static_cast<double>(lines) * std::log(rho);
  const double budget =
      std::ceil(16.0 * n * n * (k + std::log(n)) * budget_scale);
  Ellipsoid e(Vector(lines, 0.5), 0.5 * std::sqrt(static_cast<double>(lines)) * (1.0 + 1e-9));
  Vector a(lines);
  for (double it = 0; it < budget; it += 1.0) {
    const Vector& c = e.center();
    double b = 0.0;
    std::fill(a.begin(), a.end(), 0.0);
    std::size_t worst = lines;
    double worst_gap = 0.0;
    for (std::size_t l = 0; l < lines; ++l) {
      const double gap = std::max(-c[l], c[l] - 1.0);
      if (gap > worst_gap) {
        worst_gap = gap;
        worst = l;
      }
    }
    if (worst < lines) {
      if (c[worst] < 0.0) {
        a[worst] = -1.0;
        b = 0.0;
      } else {
        a[worst] = 1.0;
        b = 1.0;
      }
    } else {
      const std::vector<std::size_t> basis = greedy.basis(weight_order(c, caps));
      double g = 0.0;
      for (std::size_t l = 0; l < lines; ++l) {
        g += static_cast<double>(caps[l]) * c[l];
        a[l] = -static_cast<double>(caps[l]);
      }
      for (std::size_t l : basis) {
        g -= alpha * c[l];
        a[l] += alpha;
      }
      if (g >= 1.0 - mu) return c;
      b = -(1.0 - mu);
    }
    switch (e.cut(a, b)) {
      case Ellipsoid::CutResult::kEmpty:
        return std::nullopt;
      case Ellipsoid::CutResult::kDegenerate:
        throw Error(ErrorCode::kIterationBudgetExceeded,
                    "ellipsoid shape degenerated numerically");
      case Ellipsoid::CutResult::kReduced:
        break;
    }
    if (e.log_volume() < log_floor) return std::nullopt;
  }
  throw Error(ErrorCode::kIterationBudgetExceeded, "weight LP cut budget exhausted");
}

std::vector<std::size_t> members_of(const PointSet& s, const RationalSubspace& w) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (w.contains(s[i])) out.push_back(i);
  }
  return out;
}

HeavySubspaceResult make_result(const PointSet& s, RationalSubspace w) {
  HeavySubspaceResult r;
  r.found = true;
  r.member_indices = members_of(s, w);
  r.subspace = std::move(w);
  return r;
}

// First-kappa extraction over lines laid out in blocks of caps copies.
RationalSubspace extract_lines(const PointSet& s, const LineSystem& ls,
                               const std::vector<long>& caps, const Vector& u) {
  const long n = total(caps);
  const long k = static_cast<long>(ls.k);
  IncrementalSpan span(ls.k);
  std::vector<std::size_t> chosen;
  std::vector<long> position;
  long pos = 1;
  for (std::size_t l : weight_order(u, caps)) {
    if (span.independent(ls.chart[l], ls.unit[l])) {
      span.push(ls.chart[l], ls.unit[l]);
      chosen.push_back(l);
      position.push_back(pos);
    }
    pos += caps[l];
  }
  if (static_cast<long>(chosen.size()) != k) {
    throw Error(ErrorCode::kInternalInvariantViolated, "lines do not span V");
  }
  for (long kappa = 1; kappa < k; ++kappa) {
    // i_{kappa+1} > (n/k) kappa + 1, in integers.
    if (k * (position[kappa] - 1) > n * kappa) {
      std::vector<IntVec> gens;
      for (long t = 0; t < kappa; ++t) gens.push_back(s[ls.representative[chosen[t]]]);
      return RationalSubspace::span(gens, s.dim());
    }
  }
  throw Error(ErrorCode::kInternalInvariantViolated,
              "no extraction index for a feasible weight vector");
}

// ---------------------------------------------------------------------------
// Base packing: distributes caps_l copies of every line into N/k bases of V.
// A complete packing exists iff no subspace is strictly heavy; when the
// augmenting search fails, its reachable set spans a strictly heavy one.
class BasePacking {
 public:
  BasePacking(const LineSystem& ls, std::vector<long> caps)
      : ls_(ls), caps_(std::move(caps)), k_(ls.k) {
    const long n = total(caps_);
    nbases_ = static_cast<std::size_t>(n / static_cast<long>(k_));
    bases_.assign(nbases_, {});
    spans_.assign(nbases_, IncrementalSpan(k_));
    factors_.assign(nbases_, Factor());
    unassigned_.assign(ls_.chart.size(), 0);
    no_sink_.assign(ls_.chart.size(), 0);
  }

  // Returns false and fills `reach` (lines) when some copy cannot be placed.
  bool pack(std::vector<std::size_t>* reach) {
    std::size_t slot = 0;
    for (std::size_t l = 0; l < ls_.chart.size(); ++l) {
      for (long c = 0; c < caps_[l]; ++c) {
        // First fit, scanning bases cyclically from the next slot. Unsure
        // cases are left to the exact augmenting search.
        bool placed = false;
        for (std::size_t step = 0; step < nbases_ && !placed; ++step) {
          const std::size_t j = (slot + step) % nbases_;
          if (bases_[j].size() < k_ && !contains_line(j, l) &&
              spans_[j].surely_independent(ls_.unit[l])) {
            insert(j, l);
            placed = true;
          }
        }
        ++slot;
        if (!placed) {
          // Bases only grow here, so the remaining copies cannot fit either.
          unassigned_[l] += caps_[l] - c;
          break;
        }
      }
    }
    for (std::size_t j = 0; j < nbases_; ++j) {
      if (bases_[j].size() < k_) nonfull_.push_back(j);
    }
    for (std::size_t l = 0; l < ls_.chart.size(); ++l) {
      while (unassigned_[l] > 0) {
        if (!augment(l, reach)) return false;
        --unassigned_[l];
      }
    }
    return true;
  }

  // After a complete packing: lines of the smallest tight flat containing the
  // first line (by index) that lies in a tight proper flat; empty if none.
  std::vector<std::size_t> tight_flat() {
    for (std::size_t l = 0; l < ls_.chart.size(); ++l) {
      std::vector<std::size_t> flat;
      if (closure(l, &flat)) return flat;
    }
    return {};
  }

 private:
  struct Factor {
    bool ready = false;
    bool float_ok = false;
    Matrix inv;
    double cond = 0.0;
    bool exact_ready = false;
    std::vector<detail::BigVec> exact_rows;
    std::vector<IntVec> cols;
    std::vector<Vector> units;
    std::map<std::uint64_t, RationalSubspace> spans;
  };

  struct Node {
    std::size_t line;
    long base;   // -1 for the unplaced source copy
    long slot;
    long parent;
  };

  bool contains_line(std::size_t j, std::size_t l) const {
    return std::find(bases_[j].begin(), bases_[j].end(), l) != bases_[j].end();
  }

  void insert(std::size_t j, std::size_t l) {
    bases_[j].push_back(l);
    spans_[j].push(ls_.chart[l], ls_.unit[l]);
    factors_[j] = Factor();
  }

  void rebuild(std::size_t j) {
    spans_[j] = IncrementalSpan(k_);
    for (std::size_t l : bases_[j]) {
      if (!spans_[j].independent(ls_.chart[l], ls_.unit[l])) {
        throw Error(ErrorCode::kInternalInvariantViolated,
                    "augmentation produced a dependent base");
      }
      spans_[j].push(ls_.chart[l], ls_.unit[l]);
    }
    factors_[j] = Factor();
  }

  // Columns of base j, completed to a basis of V with chart unit vectors.
  void columns(std::size_t j, Factor& f) {
    IncrementalSpan span = spans_[j];
    for (std::size_t l : bases_[j]) {
      f.cols.push_back(ls_.chart[l]);
      f.units.push_back(ls_.unit[l]);
    }
    for (std::size_t i = 0; i < k_ && f.cols.size() < k_; ++i) {
      IntVec e(k_, 0);
      e[i] = 1;
      Vector u(k_, 0.0);
      u[i] = 1.0;
      if (span.independent(e, u)) {
        span.push(e, u);
        f.cols.push_back(std::move(e));
        f.units.push_back(std::move(u));
      }
    }
  }

  const Factor& factor(std::size_t j) {
    Factor& f = factors_[j];
    if (f.ready) return f;
    f.ready = true;
    columns(j, f);
    const std::size_t k = k_;
    Matrix a(k, 2 * k);
    for (std::size_t t = 0; t < k; ++t) {
      const Vector& col = f.units[t];
      for (std::size_t i = 0; i < k; ++i) a(i, t) = col[i];
      a(t, k + t) = 1.0;
    }
    double mnorm = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t t = 0; t < k; ++t) mnorm += a(i, t) * a(i, t);
    mnorm = std::sqrt(mnorm);
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t p = c;
      for (std::size_t r = c + 1; r < k; ++r) {
        if (std::fabs(a(r, c)) > std::fabs(a(p, c))) p = r;
      }
      if (!(std::fabs(a(p, c)) > 1e-13)) return f;
      if (p != c) {
        for (std::size_t t = 0; t < 2 * k; ++t) std::swap(a(p, t), a(c, t));
      }
      const double inv = 1.0 / a(c, c);
      for (std::size_t t = 0; t < 2 * k; ++t) a(c, t) *= inv;
      for (std::size_t r = 0; r < k; ++r) {
        if (r == c || a(r, c) == 0.0) continue;
        const double m = a(r, c);
        for (std::size_t t = 0; t < 2 * k; ++t) a(r, t) -= m * a(c, t);
      }
    }
    f.inv = Matrix(k, k);
    double inorm = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t t = 0; t < k; ++t) {
        f.inv(i, t) = a(i, k + t);
        inorm += f.inv(i, t) * f.inv(i, t);
      }
    f.cond = mnorm * std::sqrt(inorm);
    f.float_ok = std::isfinite(f.cond) && f.cond < 1e10;
    return f;
  }

  const std::vector<detail::BigVec>& exact_rows(std::size_t j) {
    Factor& f = factors_[j];
    if (!f.exact_ready) {
      f.exact_rows = detail::scaled_inverse_rows(f.cols);
      f.exact_ready = true;
    }
    return f.exact_rows;
  }

  bool in_span(std::size_t j, std::uint64_t cols, std::size_t y) {
    Factor& f = factors_[j];
    auto it = f.spans.find(cols);
    if (it == f.spans.end()) {
      std::vector<IntVec> gens;
      for (std::size_t t = 0; t < k_; ++t) {
        if (cols >> t & 1) gens.push_back(f.cols[t]);
      }
      it = f.spans.emplace(cols, RationalSubspace::span(gens, k_)).first;
    }
    return it->second.contains(ls_.chart[y]);
  }

  // Slots t of base j whose element lies in the fundamental circuit of line y
  // (empty when y is independent of base j).
  std::uint64_t support(std::size_t j, std::size_t y) {
    const std::size_t r = bases_[j].size();
    const Factor& f = factor(j);
    std::uint64_t mask = 0;
    if (f.float_ok) {
      const Vector a = f.inv * std::span<const double>(ls_.unit[y]);
      double amax = 0.0;
      for (double v : a) amax = std::max(amax, std::fabs(v));
      const double err = 64.0 * static_cast<double>(k_) *
                         std::numeric_limits<double>::epsilon() * f.cond *
                         std::max(1.0, amax);
      std::uint64_t unsure = 0;
      for (std::size_t t = 0; t < k_; ++t) {
        if (std::fabs(a[t]) > err) {
          mask |= std::uint64_t{1} << t;
        } else {
          unsure |= std::uint64_t{1} << t;
        }
      }
      // If y lies in the span of the certain columns, the coordinates of the
      // others are zero; otherwise decide each one exactly.
      if (unsure != 0 && !(mask != 0 && in_span(j, mask, y))) {
        for (std::size_t t = 0; t < k_; ++t) {
          if ((unsure >> t & 1) && !detail::dot_is_zero(exact_rows(j)[t], ls_.chart[y])) {
            mask |= std::uint64_t{1} << t;
          }
        }
      }
    } else {
      const auto& rows = exact_rows(j);
      for (std::size_t t = 0; t < k_; ++t) {
        if (!detail::dot_is_zero(rows[t], ls_.chart[y])) mask |= std::uint64_t{1} << t;
      }
    }
    if (r < k_ && (mask >> r) != 0) return 0;
    return mask;
  }

  // A non-full base that accepts line y, or -1.
  // A base holding y never accepts it, so a miss depends only on y until the
  // bases change.
  long sink_for(std::size_t y, long own_base) {
    if (no_sink_[y]) return -1;
    for (std::size_t j : nonfull_) {
      if (static_cast<long>(j) == own_base || contains_line(j, y)) continue;
      if (spans_[j].independent(ls_.chart[y], ls_.unit[y])) return static_cast<long>(j);
    }
    no_sink_[y] = 1;
    return -1;
  }

  void apply_path(const std::vector<Node>& nodes, long last, long sink) {
    // The last node's line moves into the sink; every other node is replaced
    // in its slot by its parent's line.
    std::vector<std::size_t> touched;
    bases_[sink].push_back(nodes[last].line);
    touched.push_back(static_cast<std::size_t>(sink));
    for (long v = last; nodes[v].parent >= 0; v = nodes[v].parent) {
      const Node& nd = nodes[v];
      bases_[nd.base][nd.slot] = nodes[nd.parent].line;
      touched.push_back(static_cast<std::size_t>(nd.base));
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::size_t j : touched) rebuild(j);
    std::fill(no_sink_.begin(), no_sink_.end(), 0);
    if (bases_[sink].size() == k_) {
      nonfull_.erase(std::find(nonfull_.begin(), nonfull_.end(),
                               static_cast<std::size_t>(sink)));
    }
  }

  bool augment(std::size_t source, std::vector<std::size_t>* reach) {
    std::vector<Node> nodes{{source, -1, -1, -1}};
    std::vector<std::uint64_t> visited(nbases_, 0);
    long sink = sink_for(source, -1);
    if (sink >= 0) {
      apply_path(nodes, 0, sink);
      return true;
    }
    // Circuit supports depend only on (base, line): expand each line once.
    std::vector<char> expanded(ls_.chart.size(), 0);
    std::vector<long> frontier{0};
    while (!frontier.empty()) {
      std::vector<long> fresh_lines;
      for (long v : frontier) {
        if (!expanded[nodes[v].line]) {
          expanded[nodes[v].line] = 1;
          fresh_lines.push_back(v);
        }
      }
      frontier = std::move(fresh_lines);
      std::vector<long> next;
      for (std::size_t j = 0; j < nbases_; ++j) {
        const std::size_t r = bases_[j].size();
        const std::uint64_t all = r == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
        for (long v : frontier) {
          if ((visited[j] & all) == all) break;
          const std::size_t y = nodes[v].line;
          if (nodes[v].base == static_cast<long>(j) || contains_line(j, y)) continue;
          const std::uint64_t fresh = support(j, y) & ~visited[j];
          for (std::size_t t = 0; t < r; ++t) {
            if (!(fresh >> t & 1)) continue;
            visited[j] |= std::uint64_t{1} << t;
            const long id = static_cast<long>(nodes.size());
            nodes.push_back({bases_[j][t], static_cast<long>(j), static_cast<long>(t), v});
            sink = sink_for(bases_[j][t], static_cast<long>(j));
            if (sink >= 0) {
              apply_path(nodes, id, sink);
              return true;
            }
            next.push_back(id);
          }
        }
      }
      frontier = std::move(next);
    }
    if (reach) {
      reach->clear();
      for (const Node& nd : nodes) reach->push_back(nd.line);
      std::sort(reach->begin(), reach->end());
      reach->erase(std::unique(reach->begin(), reach->end()), reach->end());
    }
    return false;
  }

  // Closure of line l under fundamental circuits of every base. Returns true
  // with the closed set when its rank stays below k.
  bool closure(std::size_t l, std::vector<std::size_t>* flat) {
    std::vector<char> in(ls_.chart.size(), 0);
    IncrementalSpan span(k_);
    std::deque<std::size_t> queue{l};
    in[l] = 1;
    span.push(ls_.chart[l], ls_.unit[l]);
    std::vector<std::size_t> members{l};
    auto add = [&](std::size_t z) {
      if (in[z]) return;
      in[z] = 1;
      members.push_back(z);
      queue.push_back(z);
      if (span.independent(ls_.chart[z], ls_.unit[z])) span.push(ls_.chart[z], ls_.unit[z]);
    };
    while (!queue.empty()) {
      const std::size_t y = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < nbases_; ++j) {
        if (contains_line(j, y)) continue;
        const std::uint64_t m = support(j, y);
        for (std::size_t t = 0; t < bases_[j].size(); ++t) {
          if (m >> t & 1) add(bases_[j][t]);
        }
        if (span.rank() == k_) return false;
      }
    }
    std::sort(members.begin(), members.end());
    *flat = std::move(members);
    return true;
  }

  const LineSystem& ls_;
  std::vector<long> caps_;
  std::size_t k_;
  std::size_t nbases_ = 0;
  std::vector<std::vector<std::size_t>> bases_;
  std::vector<IncrementalSpan> spans_;
  std::vector<Factor> factors_;
  std::vector<long> unassigned_;
  std::vector<std::size_t> nonfull_;
  std::vector<char> no_sink_;
};

RationalSubspace span_of_lines(const PointSet& s, const LineSystem& ls,
                               const std::vector<std::size_t>& lines) {
  std::vector<IntVec> gens;
  for (std::size_t l : lines) gens.push_back(s[ls.representative[l]]);
  return RationalSubspace::span(gens, s.dim());
}

Vector indicator(const LineSystem& ls, const PointSet& s, const RationalSubspace& w) {
  Vector u(ls.chart.size(), 0.0);
  for (std::size_t l = 0; l < ls.chart.size(); ++l) {
    if (w.contains(s[ls.representative[l]])) u[l] = 1.0;
  }
  return u;
}

HeavySubspaceResult verified(const PointSet& s, const RationalSubspace& v,
                             RationalSubspace w) {
  if (w.dim() == 0 || w.dim() >= v.dim() || !is_heavy(s, v, w, false)) {
    throw Error(ErrorCode::kInternalInvariantViolated,
                "extracted subspace fails the exact heaviness check");
  }
  return make_result(s, std::move(w));
}

HeavySubspaceResult find_by_packing(const PointSet& s, const RationalSubspace& v,
                                    const LineSystem& ls) {
  const long k = static_cast<long>(ls.k);
  if (ls.k > 64) throw Error(ErrorCode::kSizeLimit, "subspace dimension above 64");
  std::vector<long> caps(ls.chart.size());
  for (std::size_t l = 0; l < caps.size(); ++l) caps[l] = k * ls.multiplicity[l];
  const long n = static_cast<long>(s.size());
  // A line carrying more than N/k = n copies cannot be packed.
  for (std::size_t l = 0; l < caps.size(); ++l) {
    if (caps[l] > n) {
      const RationalSubspace w = span_of_lines(s, ls, {l});
      return verified(s, v, extract_lines(s, ls, caps, indicator(ls, s, w)));
    }
  }
  BasePacking packing(ls, caps);
  std::vector<std::size_t> reach;
  if (!packing.pack(&reach)) {
    const RationalSubspace w = span_of_lines(s, ls, reach);
    if (!is_heavy(s, v, w, true) || w.dim() >= v.dim()) {
      throw Error(ErrorCode::kInternalInvariantViolated,
                  "packing certificate is not strictly heavy");
    }
    return verified(s, v, extract_lines(s, ls, caps, indicator(ls, s, w)));
  }
  const std::vector<std::size_t> flat = packing.tight_flat();
  if (flat.empty()) return {};
  const RationalSubspace w = span_of_lines(s, ls, flat);
  // Move one copy from the first line outside W to the first line inside
  // it; W is strictly heavy in the modified instance.
  const Vector u = indicator(ls, s, w);
  std::size_t p = ls.chart.size();
  std::size_t q = ls.chart.size();
  for (std::size_t l = 0; l < ls.chart.size(); ++l) {
    if (u[l] == 0.0 && p == ls.chart.size()) p = l;
    if (u[l] == 1.0 && q == ls.chart.size()) q = l;
  }
  std::vector<long> swapped = caps;
  --swapped[p];
  ++swapped[q];
  return verified(s, v, extract_lines(s, ls, swapped, u));
}

HeavySubspaceResult find_by_lp(const PointSet& s, const RationalSubspace& v,
                               const LineSystem& ls, double budget_scale) {
  if (ls.chart.size() > 64) throw Error(ErrorCode::kSizeLimit, "LP engine limited to 64 lines");
  const long k = static_cast<long>(ls.k);
  std::vector<long> caps(ls.chart.size());
  for (std::size_t l = 0; l < caps.size(); ++l) caps[l] = k * ls.multiplicity[l];
  GreedyOracle greedy(ls);
  if (auto u = solve_line_lp(ls, caps, budget_scale, greedy)) {
    return verified(s, v, extract_lines(s, ls, caps, *u));
  }
  // Pair swaps: replace a copy on the line of point p by one more copy on the
  // line of point q, for all ordered pairs (q, p) in index order; pairs on
  // equal lines are no-ops.
  std::vector<char> tried(ls.chart.size() * ls.chart.size(), 0);
  for (std::size_t q = 0; q < s.size(); ++q) {
    for (std::size_t p = 0; p < s.size(); ++p) {
      const std::size_t lp = ls.line_of_point[p];
      const std::size_t lq = ls.line_of_point[q];
      if (lp == lq || tried[lp * ls.chart.size() + lq]) continue;
      tried[lp * ls.chart.size() + lq] = 1;
      std::vector<long> swapped = caps;
      --swapped[lp];
      ++swapped[lq];
      if (auto u = solve_line_lp(ls, swapped, budget_scale, greedy)) {
        return verified(s, v, extract_lines(s, ls, swapped, *u));
      }
    }
  }
  return {};
}

void require_inside(const PointSet& s, const RationalSubspace& v) {
  if (s.empty()) throw Error(ErrorCode::kEmptyInput, "empty point set");
  if (s.dim() != v.ambient_dim()) {
    throw Error(ErrorCode::kInvalidArgument, "point set and subspace dimensions differ");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!v.contains(s[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "point " + std::to_string(i) + " lies outside V");
    }
  }
}

}  // namespace

bool is_heavy(const PointSet& s, const RationalSubspace& v, const RationalSubspace& w,
              bool strict) {
  long inside = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (w.contains(s[i])) ++inside;
  }
  const __int128 lhs = static_cast<__int128>(inside) * static_cast<__int128>(v.dim());
  const __int128 rhs = static_cast<__int128>(w.dim()) * static_cast<__int128>(s.size());
  return strict ? lhs > rhs : lhs >= rhs;
}

std::vector<std::size_t> max_weight_basis(const PointSet& s, const RationalSubspace& v,
                                          const WeightVector& w) {
  if (w.size() != s.size()) throw Error(ErrorCode::kInvalidArgument, "weight length");
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  IncrementalSpan span(v.dim());
  std::vector<std::size_t> chosen;
  for (std::size_t i : order) {
    if (chosen.size() == v.dim()) break;
    const IntVec c = v.chart_coordinates(s[i]);
    const Vector u = unit_direction(c);
    if (span.independent(c, u)) {
      span.push(c, u);
      chosen.push_back(i);
    }
  }
  if (chosen.size() != v.dim()) {
    throw Error(ErrorCode::kRankDeficient, "points do not span V");
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::optional<WeightVector> lp_feasible(const PointSet& s, const RationalSubspace& v,
                                        double budget_scale) {
  require_inside(s, v);
  if (s.size() % v.dim() != 0) {
    throw Error(ErrorCode::kInvalidArgument, "|S| must be a multiple of dim(V)");
  }
  const LineSystem ls = build_lines(s, v);
  GreedyOracle greedy(ls);
  const auto u = solve_line_lp(ls, ls.multiplicity, budget_scale, greedy);
  if (!u) return std::nullopt;
  WeightVector out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = std::clamp((*u)[ls.line_of_point[i]], 0.0, 1.0);
  }
  return out;
}

HeavySubspaceResult extract_subspace(const PointSet& s, const RationalSubspace& v,
                                     const WeightVector& w) {
  require_inside(s, v);
  if (w.size() != s.size()) throw Error(ErrorCode::kInvalidArgument, "weight length");
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  const long n = static_cast<long>(s.size());
  const long k = static_cast<long>(v.dim());
  IncrementalSpan span(v.dim());
  std::vector<std::size_t> chosen;
  std::vector<long> position;
  for (std::size_t r = 0; r < order.size(); ++r) {
    const IntVec c = v.chart_coordinates(s[order[r]]);
    const Vector u = unit_direction(c);
    if (span.independent(c, u)) {
      span.push(c, u);
      chosen.push_back(order[r]);
      position.push_back(static_cast<long>(r) + 1);
    }
  }
  if (static_cast<long>(chosen.size()) != k) {
    throw Error(ErrorCode::kRankDeficient, "points do not span V");
  }
  for (long kappa = 1; kappa < k; ++kappa) {
    if (k * (position[kappa] - 1) > n * kappa) {
      std::vector<IntVec> gens;
      for (long t = 0; t < kappa; ++t) gens.push_back(s[chosen[t]]);
      return make_result(s, RationalSubspace::span(gens, s.dim()));
    }
  }
  throw Error(ErrorCode::kInternalInvariantViolated,
              "no extraction index; the weight vector is not feasible");
}

HeavySubspaceResult find_heavy_subspace(const PointSet& s, const RationalSubspace& v,
                                        const HeavySubspaceOptions& options) {
  require_inside(s, v);
  RationalSubspace spanned = RationalSubspace::span(s.points(), s.dim());
  if (spanned.dim() < v.dim()) return make_result(s, std::move(spanned));
  if (v.dim() <= 1) return {};
  const LineSystem ls = build_lines(s, v);
  HeavyEngine engine = options.engine;
  if (engine == HeavyEngine::kAuto) {
    engine = ls.chart.size() <= options.lp_max_lines ? HeavyEngine::kLinearProgram
                                                     : HeavyEngine::kPacking;
  }
  if (engine == HeavyEngine::kLinearProgram) {
    return find_by_lp(s, v, ls, options.budget_scale);
  }
  return find_by_packing(s, v, ls);
}

}  // namespace fdc
