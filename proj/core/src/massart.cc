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

#include <algorithm>
#include <cmath>

#include "fdc/errors.h"
#include "fdc/rng.h"

namespace fdc {

int halfspace_label(std::span<const double> w, const IntVec& x) {
  const Vector u = unit_direction(x);
  return dot(w, u) >= 0.0 ? 1 : -1;
}

double EtaFunction::operator()(const IntVec& x, std::span<const double> w_star) const {
  switch (kind) {
    case Kind::kConstant:
      return value;
    case Kind::kMarginInverse: {
      const double m = std::fabs(dot(w_star, unit_direction(x)));
      return value / (1.0 + m / margin_scale);
    }
    case Kind::kTable: {
      const auto it = table.find(line_key(x));
      return it == table.end() ? table_default : it->second;
    }
  }
  return value;
}

namespace {

std::int64_t clamp_grid(double v, std::int64_t limit) {
  const double r = std::nearbyint(v);
  if (r > static_cast<double>(limit)) return limit;
  if (r < -static_cast<double>(limit)) return -limit;
  return static_cast<std::int64_t>(r);
}

// Rounds v / |v|_inf onto the integer grid of half-width 2^(bits-1) - 1.
IntVec grid_direction(const Vector& v, int bits) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::fabs(e));
  const std::int64_t half = (std::int64_t{1} << (bits - 1)) - 1;
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = clamp_grid(v[i] / m * static_cast<double>(half), half);
  }
  return out;
}

Vector gaussian_vector(CounterRng& rng, std::size_t d) {
  Vector v(d);
  for (double& e : v) e = rng.normal();
  return v;
}

double laplace(CounterRng& rng) {
  double u = rng.uniform() - 0.5;
  while (u == -0.5) u = rng.uniform() - 0.5;
  return u < 0 ? std::log1p(2.0 * u) : -std::log1p(-2.0 * u);
}

IntVec discretize(const Vector& z, int bits) {
  // 2^bits grid points cover [-8, 8] in units of the marginal's scale.
  const double step = std::ldexp(1.0, bits) / 16.0;
  const std::int64_t limit = (std::int64_t{1} << bits) - 1;
  IntVec x(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) x[i] = clamp_grid(z[i] * step, limit);
  return x;
}

}  // namespace

IntVec Marginal::draw(std::uint64_t seed, std::uint64_t index) const {
  CounterRng rng(seed, static_cast<std::uint64_t>(Stream::kPoint), index);
  switch (kind) {
    case Kind::kFinite: {
      if (support.empty()) throw Error(ErrorCode::kInvalidArgument, "empty support");
      return support[rng.below(support.size())];
    }
    case Kind::kGaussian: {
      double smax = 0.0;
      for (double s : scales) smax = std::max(smax, s);
      for (;;) {
        Vector z = gaussian_vector(rng, dim);
        for (std::size_t i = 0; i < dim; ++i) z[i] *= scales[i] / smax;
        IntVec x = discretize(z, bits);
        if (max_bit_length(x) > 0) return x;
      }
    }
    case Kind::kLogConcaveMixture: {
      double smax = 0.0;
      for (std::size_t c = 0; c < means.size(); ++c) {
        double m = 0.0;
        for (double e : means[c]) m = std::max(m, std::fabs(e));
        smax = std::max(smax, m + 4.0 * component_scales[c]);
      }
      for (;;) {
        const std::size_t c = rng.below(means.size());
        Vector z(dim);
        for (std::size_t i = 0; i < dim; ++i) {
          z[i] = (means[c][i] + component_scales[c] * laplace(rng)) * 4.0 / smax;
        }
        IntVec x = discretize(z, bits);
        if (max_bit_length(x) > 0) return x;
      }
    }
    case Kind::kHardScaled: {
      const int db = std::min(dir_bits, bits);
      IntVec dir;
      const double pick = rng.uniform();
      if (pick < exact_weight && exact_plane.size() >= 2) {
        std::int64_t span = 0;
        for (const IntVec& b : exact_plane) {
          std::int64_t m = 0;
          for (std::int64_t e : b) m = std::max<std::int64_t>(m, std::llabs(e));
          span += m;
        }
        const std::int64_t half = (std::int64_t{1} << (db - 1)) - 1;
        const std::int64_t r = std::max<std::int64_t>(1, half / std::max<std::int64_t>(1, span));
        for (;;) {
          dir.assign(dim, 0);
          for (const IntVec& b : exact_plane) {
            const std::int64_t c =
                static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * r + 1))) - r;
            for (std::size_t i = 0; i < dim; ++i) dir[i] += c * b[i];
          }
          if (max_bit_length(dir) > 0) break;
        }
      } else if (pick < exact_weight + near_weight && !near_subspace.empty()) {
        Vector v(dim, 0.0);
        for (const Vector& b : near_subspace) {
          const double g = rng.normal();
          for (std::size_t i = 0; i < dim; ++i) v[i] += g * b[i];
        }
        for (std::size_t i = 0; i < dim; ++i) v[i] += near_noise * rng.normal();
        dir = grid_direction(v, db);
      } else {
        Vector v = gaussian_vector(rng, dim);
        for (std::size_t i = 0; i < dim && i < scales.size(); ++i) v[i] *= scales[i];
        dir = grid_direction(v, db);
      }
      if (max_bit_length(dir) == 0) dir[0] = 1;
      CounterRng srng(seed, static_cast<std::uint64_t>(Stream::kPoint) + 100, index);
      const int s = static_cast<int>(srng.below(static_cast<std::uint64_t>(bits - db + 1)));
      const std::int64_t scale = std::int64_t{1} << s;
      for (std::int64_t& e : dir) e *= scale;
      return dir;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown marginal kind");
}

void MassartModel::validate() const {
  if (w_star.empty()) throw Error(ErrorCode::kInvalidArgument, "empty w*");
  if (std::fabs(norm2(w_star) - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "w* is not a unit vector");
  }
  if (!(eta_bound >= 0.0 && eta_bound < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "eta bound outside [0, 1/2)");
  }
  double cap = eta.value;
  if (eta.kind == EtaFunction::Kind::kTable) {
    cap = eta.table_default;
    for (const auto& [key, rate] : eta.table) {
      if (rate < 0.0) throw Error(ErrorCode::kInvalidArgument, "negative eta");
      cap = std::max(cap, rate);
    }
  }
  if (cap > eta_bound + 1e-15 || cap < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "eta function exceeds the bound");
  }
  if (marginal.dim != w_star.size()) {
    throw Error(ErrorCode::kInvalidArgument, "marginal dimension mismatch");
  }
  if (marginal.bits < 1 || marginal.bits > 62) {
    throw Error(ErrorCode::kInvalidArgument, "bits outside [1, 62]");
  }
}

LabeledExample massart_example(const MassartModel& model, std::uint64_t seed,
                               std::uint64_t index) {
  LabeledExample ex;
  ex.x = model.marginal.draw(seed, index);
  const Vector u = unit_direction(ex.x);
  ex.y = dot(model.w_star, u) >= 0.0 ? 1 : -1;
  const double rate = model.eta(ex.x, model.w_star);
  CounterRng rng(seed, static_cast<std::uint64_t>(Stream::kLabel), index);
  if (rng.bernoulli(rate)) ex.y = -ex.y;
  return ex;
}

LabeledDataset massart_draw(const MassartModel& model, std::size_t n,
                            std::uint64_t seed, std::uint64_t offset) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  model.validate();
  std::vector<IntVec> pts(n);
  std::vector<int> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    LabeledExample ex = massart_example(model, seed, offset + i);
    pts[i] = std::move(ex.x);
    ys[i] = ex.y;
  }
  LabeledDataset out;
  out.base = PointSet(model.dim(), std::move(pts));
  out.labels = std::move(ys);
  return out;
}

Vector random_unit_vector(std::size_t dim, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(seed, static_cast<std::uint64_t>(Stream::kModel), index);
  for (;;) {
    Vector v = gaussian_vector(rng, dim);
    const double n = norm2(v);
    if (n > 1e-3) {
      for (double& e : v) e /= n;
      // Renormalize once more so |w| = 1 holds to the last bit or two.
      const double n2 = norm2(v);
      for (double& e : v) e /= n2;
      return v;
    }
  }
}

MassartModel gaussian_model(std::size_t dim, int bits, double eta, std::uint64_t seed) {
  MassartModel m;
  m.w_star = random_unit_vector(dim, seed, 0);
  m.eta_bound = eta;
  m.eta.kind = EtaFunction::Kind::kConstant;
  m.eta.value = eta;
  m.marginal.kind = Marginal::Kind::kGaussian;
  m.marginal.dim = dim;
  m.marginal.bits = bits;
  m.marginal.scales.resize(dim);
  // Mildly anisotropic: standard deviations from 1 down to 1/4.
  for (std::size_t i = 0; i < dim; ++i) {
    m.marginal.scales[i] =
        dim == 1 ? 1.0 : std::pow(0.25, static_cast<double>(i) / static_cast<double>(dim - 1));
  }
  return m;
}

MassartModel hard_model(std::size_t dim, int bits, double eta, std::uint64_t seed) {
  if (bits < 4) throw Error(ErrorCode::kInvalidArgument, "bits must be at least 4");
  MassartModel m;
  m.w_star = random_unit_vector(dim, seed, 0);
  m.eta_bound = eta;
  m.eta.kind = EtaFunction::Kind::kConstant;
  m.eta.value = eta;
  Marginal& g = m.marginal;
  g.kind = Marginal::Kind::kHardScaled;
  g.dim = dim;
  g.bits = bits;
  g.dir_bits = std::min(bits, 8);
  g.scales.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    g.scales[i] = std::pow(0.5, static_cast<double>(i % 4));
  }
  CounterRng rng(seed, static_cast<std::uint64_t>(Stream::kModel), 1);
  if (dim >= 3) {
    for (;;) {
      g.exact_plane.assign(2, IntVec(dim, 0));
      for (IntVec& b : g.exact_plane)
        for (std::int64_t& e : b) e = static_cast<std::int64_t>(rng.below(5)) - 2;
      if (exact_rank(g.exact_plane) == 2) break;
    }
  } else {
    g.exact_weight = 0.0;
  }
  if (dim >= 4) {
    std::vector<Vector> raw;
    for (int j = 0; j < 3; ++j) raw.push_back(gaussian_vector(rng, dim));
    const Matrix q = orthonormalize(raw);
    for (std::size_t j = 0; j < 3; ++j) g.near_subspace.push_back(q.column(j));
  } else {
    g.near_weight = 0.0;
  }
  return m;
}

HardInstance gen_hard_instance(std::size_t dim, std::size_t n, int bits, double eta,
                               std::uint64_t seed) {
  HardInstance out;
  out.model = hard_model(dim, bits, eta, seed);
  out.data = massart_draw(out.model, n, seed);
  return out;
}

LabeledExample DatasetOracle::draw() {
  CounterRng rng(seed_, static_cast<std::uint64_t>(Stream::kResample), next_++);
  const std::size_t i = rng.below(data_.size());
  return LabeledExample{data_.base[i], data_.labels[i]};
}

}  // namespace fdc
