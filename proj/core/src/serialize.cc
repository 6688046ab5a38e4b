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

#include "fdc/serialize.h"

#include <openssl/evp.h>

#include <cstdio>

#include "fdc/errors.h"
#include "json_text.h"

namespace fdc {
namespace {

using nlohmann::json;

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

Matrix matrix_from(const json& j, std::size_t rows, std::size_t cols, const char* what) {
  if (!j.is_array() || j.size() != rows) {
    throw Error(ErrorCode::kParseError, std::string(what) + ": wrong row count");
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw Error(ErrorCode::kParseError, std::string(what) + ": wrong column count");
    }
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

json certificate_json(const Certificate& c) {
  return {{"lambda_min", c.lambda_min}, {"lambda_max", c.lambda_max}, {"delta", c.delta}};
}

Certificate certificate_from(const json& j) {
  Certificate c;
  c.lambda_min = j.at("lambda_min").get<double>();
  c.lambda_max = j.at("lambda_max").get<double>();
  c.delta = j.at("delta").get<double>();
  return c;
}

json subspace_json(const RationalSubspace& v) {
  json rows = json::array();
  for (const IntVec& b : v.basis()) rows.push_back(b);
  return rows;
}

RationalSubspace subspace_from(const json& j, std::size_t d) {
  std::vector<IntVec> rows = j.get<std::vector<IntVec>>();
  for (const IntVec& r : rows) {
    if (r.size() != d) throw Error(ErrorCode::kParseError, "subspace_basis: wrong width");
  }
  RationalSubspace v = RationalSubspace::span(rows, d);
  if (v.dim() != rows.size()) {
    throw Error(ErrorCode::kParseError, "subspace_basis rows are dependent");
  }
  return v;
}

json piece_json(const ForsterPiece& p) {
  return {{"subspace_basis", subspace_json(p.subspace)},
          {"frame", matrix_json(p.basis)},
          {"transform", matrix_json(p.transform)},
          {"weights", p.weights.c_sq},
          {"members", p.member_indices},
          {"certificate", certificate_json(p.certificate)},
          {"solver", p.solver}};
}

ForsterPiece piece_from(const json& j) {
  ForsterPiece p;
  const Matrix frame_probe = [&] {
    const json& f = j.at("frame");
    if (!f.is_array() || f.empty() || !f[0].is_array()) {
      throw Error(ErrorCode::kParseError, "frame must be a nonempty matrix");
    }
    return Matrix(f.size(), f[0].size());
  }();
  const std::size_t d = frame_probe.rows(), k = frame_probe.cols();
  p.subspace = subspace_from(j.at("subspace_basis"), d);
  if (p.subspace.dim() != k) throw Error(ErrorCode::kParseError, "frame and basis disagree");
  p.basis = matrix_from(j.at("frame"), d, k, "frame");
  p.transform = matrix_from(j.at("transform"), k, k, "transform");
  p.weights.c_sq = j.at("weights").get<std::vector<double>>();
  p.member_indices = j.at("members").get<std::vector<std::size_t>>();
  p.certificate = certificate_from(j.at("certificate"));
  p.weights.delta = p.certificate.delta;
  p.solver = j.value("solver", std::string());
  return p;
}

template <typename F>
auto parse_doc(const std::string& text, F&& build) {
  try {
    return build(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

json config_json(const LearnerConfig& c) {
  return {{"eta", c.eta},
          {"eps", c.eps},
          {"delta", c.delta},
          {"C", c.c},
          {"forster_constant", c.forster_constant},
          {"weak_constant", c.weak_constant},
          {"forster_delta", c.forster_delta},
          {"coverage_floor", c.coverage_floor},
          {"rejection_factor", c.rejection_factor},
          {"descent_iterations", c.descent_iterations}};
}

LearnerConfig config_from(const json& j) {
  LearnerConfig c;
  c.eta = j.at("eta").get<double>();
  c.eps = j.at("eps").get<double>();
  c.delta = j.at("delta").get<double>();
  c.c = j.at("C").get<double>();
  c.forster_constant = j.at("forster_constant").get<double>();
  c.weak_constant = j.at("weak_constant").get<double>();
  c.forster_delta = j.at("forster_delta").get<double>();
  c.coverage_floor = j.at("coverage_floor").get<double>();
  c.rejection_factor = j.at("rejection_factor").get<double>();
  c.descent_iterations = j.at("descent_iterations").get<int>();
  return c;
}

}  // namespace

std::string point_set_digest(const PointSet& s) {
  std::string text;
  for (const IntVec& x : s.points()) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i) text += ',';
      text += std::to_string(x[i]);
    }
    text += '\n';
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kInternalInvariantViolated, "SHA-256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string piece_to_json(const ForsterPiece& piece) { return dump_json(piece_json(piece)); }

ForsterPiece piece_from_json(const std::string& text) {
  return parse_doc(text, [](const json& j) { return piece_from(j); });
}

std::string decomposition_to_json(const ForsterDecomposition& d, double delta,
                                  const std::string& created_at) {
  json pieces = json::array();
  for (const ForsterPiece& p : d.pieces) pieces.push_back(piece_json(p));
  json doc = {{"source",
               {{"sha256", point_set_digest(d.source)},
                {"points", d.source.size()},
                {"dim", d.source.dim()}}},
              {"delta", delta},
              {"created_at", created_at},
              {"pieces", std::move(pieces)}};
  return dump_json(doc);
}

DecompositionFile decomposition_from_json(const std::string& text) {
  return parse_doc(text, [](const json& j) {
    DecompositionFile f;
    const json& src = j.at("source");
    f.source_digest = src.at("sha256").get<std::string>();
    f.source_points = src.at("points").get<std::size_t>();
    f.dim = src.at("dim").get<std::size_t>();
    f.delta = j.at("delta").get<double>();
    f.created_at = j.value("created_at", std::string());
    for (const json& p : j.at("pieces")) f.pieces.push_back(piece_from(p));
    return f;
  });
}

std::string classifier_to_json(const LearnResult& result, const LearnerConfig& config,
                               std::uint64_t seed, const std::string& created_at) {
  json stages = json::array();
  for (const Stage& s : result.classifier.stages()) {
    stages.push_back({{"subspace_basis", subspace_json(s.subspace)},
                      {"frame", matrix_json(s.basis)},
                      {"transform", matrix_json(s.transform)},
                      {"w", s.w},
                      {"threshold", s.threshold}});
  }
  json tel = json::array();
  for (const IterationTelemetry& t : result.telemetry) {
    tel.push_back({{"iteration", t.iteration},
                   {"check_uncovered", t.check_uncovered},
                   {"forster_points", t.forster_points},
                   {"piece_dim", t.piece_dim},
                   {"piece_members", t.piece_members},
                   {"certificate", certificate_json(t.certificate)},
                   {"gamma", t.gamma},
                   {"outlier", t.outlier},
                   {"weak_samples", t.weak_samples},
                   {"threshold", t.threshold},
                   {"val_coverage", t.val_coverage},
                   {"val_error", t.val_error},
                   {"draws", t.draws}});
  }
  json doc = {{"dim", result.classifier.dim()},
              {"stages", std::move(stages)},
              {"config", config_json(config)},
              {"seed", seed},
              {"draws", result.draws},
              {"exit_reason", result.exit_reason},
              {"final_check_uncovered", result.final_check_uncovered},
              {"telemetry", std::move(tel)},
              {"created_at", created_at}};
  return dump_json(doc);
}

ClassifierFile classifier_from_json(const std::string& text) {
  return parse_doc(text, [](const json& j) {
    ClassifierFile f;
    const std::size_t d = j.at("dim").get<std::size_t>();
    f.classifier = PartialClassifier(d);
    for (const json& s : j.at("stages")) {
      Stage st;
      st.subspace = subspace_from(s.at("subspace_basis"), d);
      const std::size_t k = st.subspace.dim();
      st.basis = matrix_from(s.at("frame"), d, k, "frame");
      st.transform = matrix_from(s.at("transform"), k, k, "transform");
      st.w = s.at("w").get<Vector>();
      if (st.w.size() != k) throw Error(ErrorCode::kParseError, "w has the wrong length");
      st.threshold = s.at("threshold").get<double>();
      f.classifier.add_stage(std::move(st));
    }
    f.config = config_from(j.at("config"));
    f.seed = j.value("seed", std::uint64_t{0});
    f.created_at = j.value("created_at", std::string());
    return f;
  });
}

}  // namespace fdc
