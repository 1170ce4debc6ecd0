// Copyright 2026 The pmetric Authors
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

#include "pmetric/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "pmetric/bisim.hpp"
#include "pmetric/encode.hpp"
#include "pmetric/fixpoint.hpp"
#include "pmetric/logic.hpp"
#include "pmetric/oracle.hpp"
#include "pmetric/pts_io.hpp"
#include "pmetric/reach.hpp"
#include "pmetric/report.hpp"

namespace pmetric::cli {

namespace {

using Json = nlohmann::ordered_json;

// Input problems that are not parse errors of a file: bad flag values,
// out-of-range pairs.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string input;
  std::string delta_text = "1";
  std::string epsilon_text = "1/1000";
  std::string format = "human";
  int precision = 6;
  std::size_t workers = 1;
  std::size_t budget = 0;
  bool no_quotient = false;
  unsigned long round_down = 0;
  std::string metric;
  std::string formula;
  std::vector<std::size_t> pair;
  std::string bound_text;
  bool raw = false;
  std::string oracle = "internal";
  double timeout = 60;
  std::string tmpdir = "/tmp";
  bool no_simplify = false;
};

Rational parse_rational_flag(const std::string& text, const char* flag) {
  if (text.find_first_of(".eE") != std::string::npos) {
    throw UsageError(std::string(flag) + " takes a rational p/q, got '" + text + "'");
  }
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " takes a rational p/q, got '" + text + "'");
  }
}

Rational discount(const Settings& s) {
  const Rational d = parse_rational_flag(s.delta_text, "--delta");
  if (d.sign() <= 0 || d > Rational(1)) throw UsageError("--delta must be in (0,1], got " + d.str());
  return d;
}

Rational epsilon(const Settings& s) {
  const Rational e = parse_rational_flag(s.epsilon_text, "--epsilon");
  if (e.sign() <= 0) throw UsageError("--epsilon must be positive, got " + e.str());
  return e;
}

FixpointOptions fixpoint_options(const Settings& s) {
  FixpointOptions o;
  o.max_rounds = s.budget;
  o.workers = std::max<std::size_t>(1, s.workers);
  o.use_quotient = !s.no_quotient;
  if (s.round_down) o.round_down_denominator = s.round_down;
  return o;
}

std::pair<StateIndex, StateIndex> state_pair(const Settings& s, const Pts& pts) {
  for (auto k : s.pair) {
    if (k < 1 || k > pts.size()) {
      throw UsageError("pair (" + std::to_string(s.pair[0]) + "," + std::to_string(s.pair[1]) + "): state " +
                       std::to_string(k) + " out of range [1," + std::to_string(pts.size()) + "]");
    }
  }
  return {s.pair[0] - 1, s.pair[1] - 1};
}

Json pair_json(StateIndex i, StateIndex j) { return Json::array({i + 1, j + 1}); }

void emit_json(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

// ---------------------------------------------------------------------------

int cmd_validate(const Settings& s, std::ostream& out) {
  const std::string text = read_file(s.input);
  const Pts pts = parse_pts(text);
  const auto kinds = classify_states(pts);
  Json live = Json::array(), stuck = Json::array();
  for (std::size_t k = 0; k < pts.size(); ++k) (kinds[k] == StateKind::Live ? live : stuck).push_back(k + 1);
  if (s.format == "json") {
    emit_json(out, Json{{"valid", true}, {"states", pts.size()}, {"live", live}, {"stuck", stuck}});
    return Ok;
  }
  out << s.input << ": valid, " << pts.size() << " states, " << live.size() << " live, " << stuck.size()
      << " stuck\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << state_name(pts, i) << (kinds[i] == StateKind::Live ? " live:" : " stuck");
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (!pts.pi(i, j).is_zero()) out << ' ' << state_name(pts, j) << ' ' << human_rational(pts.pi(i, j), s.precision);
    }
    out << '\n';
  }
  return Ok;
}

int cmd_bisim(const Settings& s, std::ostream& out) {
  const Pts pts = parse_pts(read_file(s.input));
  const Partition part = bisimilarity_partition(pts);
  if (s.format == "json") {
    Json blocks = Json::array();
    for (const auto& b : part.blocks()) {
      Json members = Json::array();
      for (auto m : b) members.push_back(m + 1);
      blocks.push_back(members);
    }
    emit_json(out, Json{{"states", pts.size()}, {"blocks", blocks}});
    return Ok;
  }
  out << part.num_blocks() << " blocks\n";
  for (std::size_t b = 0; b < part.num_blocks(); ++b) {
    out << "block " << b + 1 << ":";
    for (auto m : part.block(b)) out << ' ' << state_name(pts, m);
    out << '\n';
  }
  return Ok;
}

int cmd_quotient(const Settings& s, std::ostream& out) {
  const Pts pts = parse_pts(read_file(s.input));
  const auto q = quotient(pts, bisimilarity_partition(pts));
  if (s.format == "json") {
    Json projection = Json::array();
    for (auto b : q.projection) projection.push_back(b + 1);
    Json arcs = Json::array();
    for (std::size_t i = 0; i < q.quotient.size(); ++i) {
      for (std::size_t j = 0; j < q.quotient.size(); ++j) {
        if (q.quotient.pi(i, j).is_zero()) continue;
        arcs.push_back(Json{{"from", i + 1},
                            {"to", j + 1},
                            {"p", q.quotient.pi(i, j).str()},
                            {"decimal", q.quotient.pi(i, j).decimal(s.precision)}});
      }
    }
    emit_json(out, Json{{"states", q.quotient.size()}, {"projection", projection}, {"arcs", arcs}});
    return Ok;
  }
  out << "# quotient of " << s.input << "; state k of the input maps to block:";
  for (auto b : q.projection) out << ' ' << b + 1;
  out << '\n';
  std::istringstream lines(serialize_pts(q.quotient));
  for (std::string line; std::getline(lines, line);) {
    out << line;
    if (line.rfind("arc ", 0) == 0) {
      std::istringstream is(line);
      std::string kw, from, to, p;
      is >> kw >> from >> to >> p;
      out << "  # ≈" << Rational::parse(p).decimal(s.precision);
    }
    out << '\n';
  }
  return Ok;
}

int cmd_terminate(const Settings& s, std::ostream& out) {
  const Pts pts = parse_pts(read_file(s.input));
  const auto tau = termination_probabilities(pts);
  if (s.format == "json") {
    Json exact = Json::array(), dec = Json::array();
    for (const auto& t : tau) {
      exact.push_back(t.str());
      dec.push_back(t.decimal(s.precision));
    }
    emit_json(out, Json{{"tau", exact}, {"decimal", dec}});
    return Ok;
  }
  for (std::size_t k = 0; k < tau.size(); ++k) out << (k ? " " : "") << tau[k].str();
  out << '\n';
  for (std::size_t k = 0; k < tau.size(); ++k) out << state_name(pts, k) << ' ' << human_rational(tau[k], s.precision) << '\n';
  return Ok;
}

Json distances_json(const DistanceMatrix& d, int precision) {
  Json pairs = Json::array();
  for (auto p : d.pairs()) {
    pairs.push_back(Json{{"pair", pair_json(p.first, p.second)},
                         {"value", d.at(p).str()},
                         {"decimal", d.at(p).decimal(precision)}});
  }
  return pairs;
}

int cmd_delta(const Settings& s, std::ostream& out) {
  const Pts pts = parse_pts(read_file(s.input));
  DistanceMatrix d;
  try {
    d = parse_metric(read_file(s.metric));
  } catch (const ParseError& e) {
    throw ParseError(0, s.metric + ": " + e.what());
  }
  if (d.size() != pts.size()) {
    throw UsageError(s.metric + ": metric has " + std::to_string(d.size()) + " states, system has " +
                     std::to_string(pts.size()));
  }
  if (const auto report = validate_pseudometric(d); !report.ok()) {
    throw UsageError(s.metric + ": not a 1-bounded pseudometric: " + report.summary());
  }
  const Rational delta = discount(s);
  const DistanceMatrix image = apply_delta(pts, d, delta, std::max<std::size_t>(1, s.workers));
  if (s.format == "json") {
    emit_json(out, Json{{"delta", delta.str()}, {"pairs", distances_json(image, s.precision)}});
    return Ok;
  }
  for (auto p : image.pairs()) {
    out << "Delta(d)" << pair_text(p.first, p.second) << " = " << human_rational(image.at(p), s.precision) << '\n';
  }
  return Ok;
}

int cmd_distances(const Settings& s, std::ostream& out) {
  const Pts pts = parse_pts(read_file(s.input));
  const Rational delta = discount(s);
  const Rational eps = epsilon(s);
  const BoundsResult r = approximate_all(pts, delta, eps, fixpoint_options(s));
  if (s.format == "json") {
    Json pairs = Json::array();
    for (auto p : r.lower.pairs()) {
      const bool exact = r.lower.at(p) == r.upper.at(p);
      pairs.push_back(Json{{"pair", pair_json(p.first, p.second)},
                           {"exact", exact ? Json(r.lower.at(p).str()) : Json(nullptr)},
                           {"lower", r.lower.at(p).str()},
                           {"upper", r.upper.at(p).str()},
                           {"decimal",
                            Json{{"lower", r.lower.at(p).decimal(s.precision)},
                                 {"upper", r.upper.at(p).decimal(s.precision)}}}});
    }
    emit_json(out, Json{{"delta", delta.str()},
                        {"epsilon", eps.str()},
                        {"certified", r.certified},
                        {"method", to_string(r.method)},
                        {"iterations", r.iterations},
                        {"gap", r.gap.str()},
                        {"quotient_states", r.quotient_states},
                        {"pairs", pairs}});
    return Ok;
  }
  out << "delta " << delta.str() << ", epsilon " << eps.str() << ", method " << to_string(r.method)
      << ", certified " << (r.certified ? "yes" : "no") << ", iterations " << r.iterations << ", gap "
      << human_rational(r.gap, s.precision) << '\n';
  if (!r.notes.empty()) out << "note: " << r.notes << '\n';
  for (auto p : r.lower.pairs()) {
    out << state_name(pts, p.first) << ' ' << state_name(pts, p.second) << "  ";
    if (r.lower.at(p) == r.upper.at(p)) {
      out << "exact " << human_rational(r.lower.at(p), s.precision) << '\n';
    } else {
      out << "in [" << human_rational(r.lower.at(p), s.precision) << ", "
          << human_rational(r.upper.at(p), s.precision) << "]\n";
    }
  }
  return Ok;
}

int cmd_eval(const Settings& s, std::ostream& out) {
  const Pts pts = parse_pts(read_file(s.input));
  Formula f = Formula::truth();
  try {
    f = parse_formula(s.formula);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--formula: ") + e.what());
  }
  const Rational delta = discount(s);
  const Valuation v = interpret(pts, f, delta);
  if (s.format == "json") {
    Json exact = Json::array(), dec = Json::array();
    for (const auto& x : v) {
      exact.push_back(x.str());
      dec.push_back(x.decimal(s.precision));
    }
    emit_json(out, Json{{"formula", f.str()}, {"depth", depth(f)}, {"delta", delta.str()}, {"values", exact},
                        {"decimal", dec}});
    return Ok;
  }
  out << f.str() << "  (depth " << depth(f) << ", delta " << delta.str() << ")\n";
  for (std::size_t k = 0; k < v.size(); ++k) out << state_name(pts, k) << ' ' << human_rational(v[k], s.precision) << '\n';
  return Ok;
}

int cmd_encode(const Settings& s, std::ostream& out) {
  const Pts pts = parse_pts(read_file(s.input));
  const auto [i0, j0] = state_pair(s, pts);
  const Rational bound = parse_rational_flag(s.bound_text, "--bound");
  Query q = build_query(pts, i0, j0, bound, discount(s));
  if (!s.raw) q = simplify(q, known_distances(pts, q.discount), pts);
  out << (s.format == "mathematica" ? emit_mathematica(q.sentence) : emit_smtlib(q.sentence));
  return Ok;
}

int cmd_approx_pair(const Settings& s, std::ostream& out, std::ostream& err) {
  const Pts pts = parse_pts(read_file(s.input));
  const auto [i0, j0] = state_pair(s, pts);
  const Rational eps = epsilon(s);
  const OracleSpec spec = parse_oracle_spec(s.oracle);
  ApproximationOptions options;
  options.simplify = !s.no_simplify;
  options.fixpoint = fixpoint_options(s);
  std::unique_ptr<Oracle> oracle;
  if (spec.external) {
    ExternalConfig config = spec.config;
    config.timeout = std::chrono::milliseconds(static_cast<long long>(s.timeout * 1000));
    config.tmpdir = s.tmpdir;
    oracle = std::make_unique<ExternalOracle>(config);
  } else {
    oracle = std::make_unique<InternalOracle>(pts, options.fixpoint, eps);
  }
  const PairApproximation r = approximate_pair(pts, i0, j0, eps, *oracle, options);
  if (s.format == "json") {
    Json steps = Json::array();
    for (const auto& st : r.steps) {
      steps.push_back(Json{{"bound", st.bound.str()},
                           {"outcome", to_string(st.decision.outcome)},
                           {"provenance", st.decision.provenance == Provenance::Internal ? "internal" : "external"},
                           {"diagnostics", st.decision.diagnostics}});
    }
    emit_json(out, Json{{"pair", pair_json(i0, j0)},
                        {"lower", r.lower.str()},
                        {"upper", r.upper.str()},
                        {"decimal", Json{{"lower", r.lower.decimal(s.precision)}, {"upper", r.upper.decimal(s.precision)}}},
                        {"epsilon", eps.str()},
                        {"method", r.method},
                        {"failed", r.failed},
                        {"diagnostics", r.diagnostics},
                        {"steps", steps}});
  } else {
    out << "d" << pair_text(i0, j0) << " in [" << human_rational(r.lower, s.precision) << ", "
        << human_rational(r.upper, s.precision) << "], method " << r.method << ", " << r.steps.size()
        << (r.steps.size() == 1 ? " step\n" : " steps\n");
    for (const auto& st : r.steps) {
      out << "  m = " << human_rational(st.bound, s.precision) << ": " << to_string(st.decision.outcome) << "  "
          << st.decision.diagnostics << '\n';
    }
    if (!r.diagnostics.empty()) out << "note: " << r.diagnostics << '\n';
  }
  if (r.failed) {
    err << "oracle failure: " << r.diagnostics << '\n';
    return OracleFailure;
  }
  return Ok;
}

void add_input(CLI::App* sub, Settings& s) {
  sub->add_option("input", s.input, "pts v1 file")->required();
}

void add_format(CLI::App* sub, Settings& s) {
  sub->add_option("--format", s.format, "human or json")->check(CLI::IsMember({"human", "json"}));
  sub->add_option("--precision", s.precision, "digits of decimal renderings")->check(CLI::Range(0, 30));
}

void add_fixpoint(CLI::App* sub, Settings& s) {
  sub->add_option("--budget", s.budget, "iteration rounds (0: 10 N^2)");
  sub->add_option("--workers", s.workers, "worker threads for pair evaluation");
  sub->add_flag("--no-quotient", s.no_quotient, "skip the bisimulation quotient");
  sub->add_option("--round-down", s.round_down, "round lower iterates down to multiples of 1/D");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact behavioural pseudometrics of probabilistic transition systems", "pmetric"};
  app.require_subcommand(1, 1);
  Settings s;

  auto* validate = app.add_subcommand("validate", "check a pts file");
  add_input(validate, s);
  add_format(validate, s);

  auto* bisim = app.add_subcommand("bisim", "bisimilarity partition");
  add_input(bisim, s);
  add_format(bisim, s);

  auto* quot = app.add_subcommand("quotient", "quotient system by bisimilarity");
  add_input(quot, s);
  add_format(quot, s);

  auto* terminate = app.add_subcommand("terminate", "termination probabilities");
  add_input(terminate, s);
  add_format(terminate, s);

  auto* delta = app.add_subcommand("delta", "one application of the distance functional");
  add_input(delta, s);
  add_format(delta, s);
  delta->add_option("--metric", s.metric, "metric v1 file")->required();
  delta->add_option("--delta", s.delta_text, "discount p/q in (0,1]");
  delta->add_option("--workers", s.workers, "worker threads");

  auto* distances = app.add_subcommand("distances", "bounds on all distances");
  add_input(distances, s);
  add_format(distances, s);
  add_fixpoint(distances, s);
  distances->add_option("--delta", s.delta_text, "discount p/q in (0,1]");
  distances->add_option("--epsilon", s.epsilon_text, "target gap p/q");

  auto* eval = app.add_subcommand("eval", "evaluate a logic formula");
  add_input(eval, s);
  add_format(eval, s);
  eval->add_option("--formula", s.formula, "formula, e.g. \"<> true & ! <> <> true\"")->required();
  eval->add_option("--delta", s.delta_text, "discount p/q in (0,1]");

  auto* encode = app.add_subcommand("encode", "emit the post-fixed-point sentence");
  add_input(encode, s);
  encode->add_option("--pair", s.pair, "states i j (1-based)")->expected(2)->required();
  encode->add_option("--bound", s.bound_text, "bound m as p/q")->required();
  encode->add_option("--format", s.format, "smt2 or mathematica")
      ->check(CLI::IsMember({"smt2", "mathematica"}))
      ->required();
  encode->add_option("--delta", s.delta_text, "discount p/q in (0,1]");
  encode->add_flag("--raw", s.raw, "skip simplification");

  auto* approx = app.add_subcommand("approx-pair", "bisection on one distance with a decision oracle");
  add_input(approx, s);
  add_format(approx, s);
  add_fixpoint(approx, s);
  approx->add_option("--pair", s.pair, "states i j (1-based)")->expected(2)->required();
  approx->add_option("--epsilon", s.epsilon_text, "target width p/q");
  approx->add_option("--oracle", s.oracle, "internal or cmd:<template>, {} is the script path");
  approx->add_option("--timeout", s.timeout, "external solver timeout in seconds")->check(CLI::PositiveNumber);
  approx->add_option("--tmpdir", s.tmpdir, "directory for solver scripts");
  approx->add_flag("--no-simplify", s.no_simplify, "send unsimplified sentences");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : InputError;
  }

  const std::string context = s.input.empty() ? "pmetric" : s.input;
  try {
    if (validate->parsed()) return cmd_validate(s, out);
    if (bisim->parsed()) return cmd_bisim(s, out);
    if (quot->parsed()) return cmd_quotient(s, out);
    if (terminate->parsed()) return cmd_terminate(s, out);
    if (delta->parsed()) return cmd_delta(s, out);
    if (distances->parsed()) return cmd_distances(s, out);
    if (eval->parsed()) return cmd_eval(s, out);
    if (encode->parsed()) return cmd_encode(s, out);
    if (approx->parsed()) return cmd_approx_pair(s, out, err);
  } catch (const ParseError& e) {
    err << context << ": " << e.what() << '\n';
    return InputError;
  } catch (const UsageError& e) {
    err << context << ": " << e.what() << '\n';
    return InputError;
  } catch (const SimplifyConflict& e) {
    err << context << ": " << e.what() << '\n';
    return InputError;
  } catch (const std::invalid_argument& e) {
    err << context << ": " << e.what() << '\n';
    return InputError;
  } catch (const std::exception& e) {
    err << context << ": internal error: " << e.what() << '\n';
    return OracleFailure;
  }
  return InputError;
}

}  // namespace pmetric::cli
