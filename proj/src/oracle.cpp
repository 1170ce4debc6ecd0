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

#include "pmetric/oracle.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

namespace pmetric {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::True:
      return "true";
    case Outcome::False:
      return "false";
    case Outcome::Unknown:
      return "unknown";
  }
  return "?";
}

InternalOracle::InternalOracle(Pts pts, FixpointOptions options, Rational epsilon, std::size_t refinements)
    : pts_(std::move(pts)), options_(options), epsilon_(std::move(epsilon)), refinements_(refinements) {}

const BoundsResult& InternalOracle::bounds(const Rational& discount) {
  auto it = cache_.find(discount);
  if (it == cache_.end()) it = cache_.emplace(discount, approximate_all(pts_, discount, epsilon_, options_)).first;
  return it->second;
}

Decision InternalOracle::decide(const Query& q) {
  if (q.num_states != pts_.size()) throw std::invalid_argument("query was built for a different system");
  Decision d;
  d.provenance = Provenance::Internal;
  const auto pair_text = "d(" + std::to_string(q.i0 + 1) + "," + std::to_string(q.j0 + 1) + ")";
  Rational eps = epsilon_;
  for (std::size_t round = 0;; ++round) {
    const BoundsResult& b = bounds(q.discount);
    const Rational& lo = b.lower(q.i0, q.j0);
    const Rational& hi = b.upper(q.i0, q.j0);
    if (b.gap.is_zero()) {
      // Every distance is exact: the behavioural distance satisfies pseudo
      // and post-fixed, so the sentence holds iff it holds there.
      const bool value = evaluate(q.sentence, [&](std::size_t i, std::size_t j) { return b.lower(i, j); });
      const bool expected = lo <= q.bound;
      if (value != expected) {
        d.outcome = Outcome::Unknown;
        d.diagnostics = pair_text + " = " + lo.str() + " but the sentence evaluates to " +
                        (value ? "true" : "false") + " at the distance";
        return d;
      }
      d.outcome = value ? Outcome::True : Outcome::False;
      d.diagnostics = pair_text + " = " + lo.str() + " (exact); sentence evaluated at the distance";
      return d;
    }
    if (b.certified && hi <= q.bound) {
      d.outcome = Outcome::True;
      d.diagnostics = pair_text + " <= " + hi.str() + " (certified upper bound)";
      return d;
    }
    if (lo > q.bound) {
      d.outcome = Outcome::False;
      d.diagnostics = pair_text + " >= " + lo.str() + " (lower bound)";
      return d;
    }
    if (round >= refinements_) {
      d.outcome = Outcome::Unknown;
      d.diagnostics = pair_text + " in [" + lo.str() + ", " + hi.str() + "] after " + std::to_string(round) +
                      " refinements";
      return d;
    }
    eps /= 16;
    cache_.insert_or_assign(q.discount, approximate_all(pts_, q.discount, eps, options_));
  }
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct TempFile {
  std::string path;
  int fd = -1;

  TempFile(const std::string& dir, const std::string& suffix) {
    std::string templ = dir + "/pmetric-XXXXXX" + suffix;
    std::vector<char> buf(templ.begin(), templ.end());
    buf.push_back('\0');
    fd = mkstemps(buf.data(), static_cast<int>(suffix.size()));
    if (fd < 0) throw std::runtime_error("cannot create a temporary file in '" + dir + "': " + std::strerror(errno));
    path = buf.data();
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  ~TempFile() {
    if (fd >= 0) close(fd);
  }
};

struct ProcessResult {
  bool started = false;
  bool timed_out = false;
  int status = 0;
};

ProcessResult run_shell(const std::string& command, int out_fd, std::chrono::milliseconds timeout) {
  ProcessResult r;
  const pid_t pid = fork();
  if (pid < 0) return r;
  if (pid == 0) {
    setpgid(0, 0);
    dup2(out_fd, STDOUT_FILENO);
    dup2(out_fd, STDERR_FILENO);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  r.started = true;
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    const pid_t w = waitpid(pid, &r.status, WNOHANG);
    if (w == pid) return r;
    if (w < 0 && errno != EINTR) return r;
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &r.status, 0);
      r.timed_out = true;
      return r;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
}

}  // namespace

Decision ExternalOracle::decide(const Query& q) {
  Decision d;
  d.provenance = Provenance::External;
  std::string script_path;
  try {
    TempFile script(config_.tmpdir, ".smt2");
    TempFile output(config_.tmpdir, ".out");
    script_path = script.path;
    const std::string text = emit_smtlib(q.sentence);
    if (write(script.fd, text.data(), text.size()) != static_cast<ssize_t>(text.size())) {
      throw std::runtime_error("cannot write " + script.path);
    }
    std::string command = config_.command;
    if (command.find("{}") == std::string::npos) {
      command += " " + script.path;
    } else {
      for (auto pos = command.find("{}"); pos != std::string::npos; pos = command.find("{}", pos + script.path.size())) {
        command.replace(pos, 2, script.path);
      }
    }
    const ProcessResult run = run_shell(command, output.fd, config_.timeout);
    std::ifstream in(output.path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string out = buf.str();
    if (!config_.keep_script) std::remove(script.path.c_str());
    std::remove(output.path.c_str());

    if (!run.started) {
      d.failed = true;
      d.diagnostics = "cannot start '" + command + "'";
      return d;
    }
    if (run.timed_out) {
      d.failed = true;
      d.diagnostics = "solver timed out after " + std::to_string(config_.timeout.count()) + " ms";
      return d;
    }
    std::istringstream lines(out);
    for (std::string line; std::getline(lines, line);) {
      const std::string t = trim(line);
      if (t == "sat" || t == "True") {
        d.outcome = Outcome::True;
      } else if (t == "unsat" || t == "False") {
        d.outcome = Outcome::False;
      } else if (t == "unknown") {
        d.outcome = Outcome::Unknown;
      } else {
        continue;
      }
      d.verdict_line = t;
      break;
    }
    const int code = WIFEXITED(run.status) ? WEXITSTATUS(run.status) : -1;
    if (d.verdict_line.empty()) {
      d.failed = true;
      d.diagnostics = "no verdict in solver output (exit status " + std::to_string(code) + ")";
      if (!out.empty()) d.diagnostics += ": " + out.substr(0, 200);
      return d;
    }
    d.diagnostics = "solver said '" + d.verdict_line + "' (exit status " + std::to_string(code) + ")";
    if (config_.keep_script) d.diagnostics += "; script " + script.path;
  } catch (const std::exception& e) {
    d.failed = true;
    d.outcome = Outcome::Unknown;
    d.diagnostics = e.what();
  }
  return d;
}

OracleSpec parse_oracle_spec(const std::string& text) {
  OracleSpec spec;
  if (text == "internal") return spec;
  if (text.rfind("cmd:", 0) == 0 && text.size() > 4) {
    spec.external = true;
    spec.config.command = text.substr(4);
    return spec;
  }
  throw std::invalid_argument("oracle must be 'internal' or 'cmd:<template>', got '" + text + "'");
}

PairApproximation approximate_pair(const Pts& pts, StateIndex i0, StateIndex j0, const Rational& epsilon,
                                   Oracle& oracle, const ApproximationOptions& options) {
  if (epsilon.sign() <= 0) throw std::invalid_argument("epsilon must be positive");
  if (i0 >= pts.size() || j0 >= pts.size()) throw std::invalid_argument("pair index out of range");
  PairApproximation r;
  const PartialDistances known = options.simplify ? known_distances(pts, Rational(1)) : PartialDistances{};
  while (r.upper - r.lower > epsilon) {
    const Rational m = (r.lower + r.upper) / 2;
    Query q = build_query(pts, i0, j0, m);
    if (options.simplify) q = simplify(q, known, pts);
    Decision d = oracle.decide(q);
    r.steps.push_back({r.lower, r.upper, m, d});
    if (d.outcome == Outcome::True) {
      r.upper = m;
    } else if (d.outcome == Outcome::False) {
      r.lower = m;
    } else if (d.failed) {
      r.failed = true;
      r.diagnostics = "oracle failed at m = " + m.str() + ": " + d.diagnostics + "; interval so far [" +
                      r.lower.str() + ", " + r.upper.str() + "]";
      return r;
    } else {
      const BoundsResult b = approximate_all(pts, Rational(1), epsilon, options.fixpoint);
      r.lower = max(r.lower, b.lower(i0, j0));
      r.upper = min(r.upper, b.upper(i0, j0));
      r.method = "bounds";
      r.diagnostics = "unknown at m = " + m.str() + "; used the certified interval [" + b.lower(i0, j0).str() +
                      ", " + b.upper(i0, j0).str() + "]";
      return r;
    }
  }
  return r;
}

}  // namespace pmetric
