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

#include "fdc_tools/cli.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fdc/dataset.h"
#include "fdc/errors.h"
#include "fdc/forster.h"
#include "fdc/harness.h"
#include "fdc/learner.h"
#include "fdc/massart.h"
#include "fdc/serialize.h"

namespace fdc::cli {
namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  for (const std::string& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Inserts config-file values for flags the command line leaves unset. Keys
// the subcommand does not know are reported and skipped.
void apply_config(std::vector<std::string>& args, const CLI::App& sub, std::ostream& err) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return;
  std::vector<std::string> extra;
  for (const auto& [key, value] : parse_config(read_text_file(path))) {
    const std::string flag = "--" + key;
    if (sub.get_option_no_throw(flag) == nullptr || key == "config") {
      err << "fdc: ignoring config key '" << key << "'\n";
      continue;
    }
    if (has_flag(args, flag)) continue;
    extra.push_back(flag);
    extra.push_back(value);
  }
  args.insert(args.begin() + 1, extra.begin(), extra.end());
}

int parse(CLI::App& app, std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "fdc: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kUsage;
  }
  return -1;
}

FileFormat format_of(const std::string& path, const std::string& flag) {
  if (flag == "csv") return FileFormat::kCsv;
  if (flag == "json") return FileFormat::kJson;
  return format_for_path(path);
}

struct GenArgs {
  std::size_t dim = 0;
  std::size_t n = 0;
  int bits = 16;
  double eta = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t offset = 0;
  std::string model = "hard";
  std::string noise = "constant";
  std::string out;
  std::string format;
};

int do_gen(const GenArgs& a, std::ostream& out) {
  MassartModel m =
      a.model == "gaussian" ? gaussian_model(a.dim, a.bits, a.eta, a.seed) : hard_model(a.dim, a.bits, a.eta, a.seed);
  if (a.noise == "margin") m.eta.kind = EtaFunction::Kind::kMarginInverse;
  const LabeledDataset data = massart_draw(m, a.n, a.seed, a.offset);
  if (format_of(a.out, a.format) == FileFormat::kJson) {
    write_json(a.out, data.base, &data.labels);
  } else {
    write_csv(a.out, data.base, &data.labels);
  }
  out << "wrote " << data.size() << " labeled points (d=" << a.dim
      << ", b=" << data.base.bit_complexity() << ") to " << a.out << "\n";
  return kOk;
}

struct PieceArgs {
  std::string input;
  std::string format;
  double delta = 1e-3;
  std::string out;
};

void print_piece(const ForsterPiece& p, std::ostream& out) {
  out << "piece dim=" << p.dim() << " members=" << p.member_indices.size()
      << " lambda_min=" << p.certificate.lambda_min << " lambda_max=" << p.certificate.lambda_max
      << " solver=" << p.solver << "\n";
}

int do_transform(const PieceArgs& a, std::ostream& out) {
  const PointSet s = load_points(a.input, format_of(a.input, a.format));
  const ForsterPiece p = forster_transform(s, a.delta);
  write_text_file(a.out, piece_to_json(p));
  print_piece(p, out);
  return kOk;
}

int do_decompose(const PieceArgs& a, std::ostream& out) {
  const PointSet s = load_points(a.input, format_of(a.input, a.format));
  const ForsterDecomposition d = forster_decompose(s, a.delta);
  write_text_file(a.out, decomposition_to_json(d, a.delta, utc_now()));
  out << d.pieces.size() << " pieces for " << s.size() << " points\n";
  for (const ForsterPiece& p : d.pieces) print_piece(p, out);
  return kOk;
}

struct LearnArgs {
  std::string train;
  std::string format;
  std::uint64_t seed = 0;
  std::string out;
  LearnerConfig config;
};

int do_learn(const LearnArgs& a, std::ostream& out) {
  a.config.validate();
  LabeledDataset data = load_labeled(a.train, format_of(a.train, a.format));
  DatasetOracle oracle(std::move(data), a.seed);
  const LearnResult r = learn_halfspace(oracle, a.config, a.seed);
  write_text_file(a.out, classifier_to_json(r, a.config, a.seed, utc_now()));
  out << r.classifier.stages().size() << " stages, " << r.draws << " draws, exit "
      << r.exit_reason << ", check uncovered " << r.final_check_uncovered << "\n";
  return kOk;
}

struct EvalArgs {
  std::string model;
  std::string test;
  std::string decomposition;
  std::string input;
  std::string format;
  std::string out;
};

int do_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  if (!a.decomposition.empty()) {
    const DecompositionFile f = decomposition_from_json(read_text_file(a.decomposition));
    const PointSet s = load_points(a.input, format_of(a.input, a.format));
    if (point_set_digest(s) != f.source_digest) {
      err << "fdc: " << a.input << " does not match the decomposition source digest\n";
      return kFailure;
    }
    ForsterDecomposition d;
    d.pieces = f.pieces;
    d.source = s;
    bool ok = is_partition(d);
    if (!ok) out << "pieces do not partition the points\n";
    for (std::size_t i = 0; i < f.pieces.size(); ++i) {
      const PieceReport r = verify_piece(f.pieces[i], s);
      out << "piece " << i << " dim=" << f.pieces[i].dim() << " distance=" << r.distance
          << " trace=" << r.trace << (r.pass ? " PASS" : " FAIL") << "\n";
      ok = ok && r.pass;
    }
    out << (ok ? "decomposition verified\n" : "decomposition FAILED verification\n");
    return ok ? kOk : kFailure;
  }
  const ClassifierFile c = classifier_from_json(read_text_file(a.model));
  const LabeledDataset test = load_labeled(a.test, format_of(a.test, a.format));
  const EvalResult r = evaluate_classifier(c.classifier, test);
  std::ostringstream line;
  line.precision(6);
  line << "error=" << r.total_error << " claimed_error=" << r.error << " coverage=" << r.coverage
       << " n=" << r.n << "\n";
  out << line.str();
  if (!a.out.empty()) write_text_file(a.out, line.str());
  return kOk;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  long no = 0;
  while (std::getline(in, line)) {
    ++no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kParseError, "expected key=value", no);
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    if (key.empty()) throw Error(ErrorCode::kParseError, "empty key", no);
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forster decompositions and Massart halfspace learning", "fdc"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every verb");
  const auto file_checks = CLI::IsMember({"csv", "json"});

  GenArgs g;
  CLI::App* gen = app.add_subcommand("gen", "Draw a labeled sample from a Massart model");
  gen->add_option("--dim", g.dim, "Dimension")->required()->check(CLI::Range(1, 1000));
  gen->add_option("--n", g.n, "Number of points")->required()->check(CLI::PositiveNumber);
  gen->add_option("--bits", g.bits, "Coordinate bit width")->check(CLI::Range(4, 62));
  gen->add_option("--eta", g.eta, "Noise bound")->check(CLI::Range(0.0, 0.4999999));
  gen->add_option("--seed", g.seed, "Model and sample seed")->required();
  gen->add_option("--sample-offset", g.offset, "First stream index (disjoint test sets)");
  gen->add_option("--model", g.model, "hard or gaussian")
      ->check(CLI::IsMember({"hard", "gaussian"}));
  gen->add_option("--noise", g.noise, "constant or margin")
      ->check(CLI::IsMember({"constant", "margin"}));
  gen->add_option("--out", g.out, "Output file")->required();
  gen->add_option("--format", g.format, "csv or json (default: by extension)")->check(file_checks);
  gen->add_option("--config", "key=value defaults");

  PieceArgs t;
  CLI::App* tr = app.add_subcommand("transform", "Forster transform of the heaviest-chain piece");
  PieceArgs dc;
  CLI::App* dec = app.add_subcommand("decompose", "Forster decomposition of a point set");
  for (auto [sub, a] : {std::pair{tr, &t}, std::pair{dec, &dc}}) {
    sub->add_option("--input", a->input, "Point file")->required();
    sub->add_option("--delta", a->delta, "Certificate accuracy")->check(CLI::Range(1e-12, 0.999999));
    sub->add_option("--out", a->out, "Output JSON")->required();
    sub->add_option("--format", a->format, "csv or json")->check(file_checks);
    sub->add_option("--config", "key=value defaults");
  }

  LearnArgs l;
  CLI::App* learn = app.add_subcommand("learn", "Learn a halfspace under Massart noise");
  learn->add_option("--train-oracle", l.train, "Labeled file resampled as the example oracle")
      ->required();
  learn->add_option("--eta", l.config.eta, "Noise bound")->required();
  learn->add_option("--eps", l.config.eps, "Target excess error");
  learn->add_option("--delta", l.config.delta, "Failure probability");
  learn->add_option("--seed", l.seed, "Resampling and split seed")->required();
  learn->add_option("--out", l.out, "Classifier JSON")->required();
  learn->add_option("--format", l.format, "csv or json")->check(file_checks);
  learn->add_option("--C", l.config.c, "Check-sample constant");
  learn->add_option("--forster-constant", l.config.forster_constant);
  learn->add_option("--weak-constant", l.config.weak_constant);
  learn->add_option("--forster-delta", l.config.forster_delta);
  learn->add_option("--coverage-floor", l.config.coverage_floor);
  learn->add_option("--rejection-factor", l.config.rejection_factor);
  learn->add_option("--descent-iterations", l.config.descent_iterations);
  learn->add_option("--config", "key=value defaults");

  EvalArgs e;
  CLI::App* ev = app.add_subcommand("eval", "Score a classifier or re-verify a decomposition");
  auto* model = ev->add_option("--model", e.model, "Classifier JSON");
  auto* test = ev->add_option("--test", e.test, "Labeled test file");
  auto* verify = ev->add_option("--verify-decomposition", e.decomposition, "Decomposition JSON");
  auto* input = ev->add_option("--input", e.input, "Points the decomposition was built from");
  ev->add_option("--format", e.format, "csv or json")->check(file_checks);
  ev->add_option("--out", e.out, "Also write the score line here");
  ev->add_option("--config", "key=value defaults");
  model->needs(test);
  test->needs(model);
  verify->needs(input);
  input->needs(verify);
  model->excludes(verify);

  std::vector<std::string> args = args_in;
  try {
    if (!args.empty()) {
      if (CLI::App* sub = app.get_subcommand_no_throw(args[0])) apply_config(args, *sub, err);
    }
  } catch (const Error& ex) {
    err << "fdc: " << ex.what() << "\n";
    return kUsage;
  }
  if (const int rc = parse(app, args, out, err); rc >= 0) return rc;
  if (ev->parsed() && e.model.empty() && e.decomposition.empty()) {
    err << "fdc eval: give --model/--test or --verify-decomposition/--input\n";
    return kUsage;
  }

  try {
    if (gen->parsed()) return do_gen(g, out);
    if (tr->parsed()) return do_transform(t, out);
    if (dec->parsed()) return do_decompose(dc, out);
    if (learn->parsed()) return do_learn(l, out);
    if (ev->parsed()) return do_eval(e, out, err);
  } catch (const Error& ex) {
    err << "fdc: " << ex.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

int run_study(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Held-out error of the learner across coordinate bit widths", "fdc_study"};
  StudyOptions o;
  std::string path;
  app.add_option("--dim", o.dim)->check(CLI::Range(2, 64));
  app.add_option("--bits", o.bits, "Comma-separated bit widths")
      ->delimiter(',')
      ->check(CLI::Range(4, 62));
  app.add_option("--eta", o.eta)->check(CLI::Range(0.0, 0.4999999));
  app.add_option("--eps", o.eps);
  app.add_option("--delta", o.delta);
  app.add_option("--trials", o.trials);
  app.add_option("--seed", o.seed)->required();
  app.add_option("--test-draws", o.test_draws);
  app.add_option("--threads", o.threads, "0: FDC_THREADS or all cores");
  app.add_option("--out", path, "CSV file (default: stdout)");
  if (const int rc = parse(app, args_in, out, err); rc >= 0) return rc;
  try {
    const std::vector<TrialReport> reports = bit_independence_study(o);
    const std::string csv = study_csv(reports);
    if (path.empty()) {
      out << csv;
    } else {
      write_text_file(path, csv);
    }
    for (const TrialReport& r : reports) {
      if (!r.failure.empty()) err << "b=" << r.bits << " trial " << r.trial << ": " << r.failure << "\n";
    }
  } catch (const Error& ex) {
    err << "fdc_study: " << ex.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace fdc::cli
