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

#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "pmetric/cli.hpp"
#include "support.hpp"
#include "json.hpp"

using pmetric::testing::data_path;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pmetric::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& part) { return text.find(part) != std::string::npos; }

const std::string ex1 = data_path("ex1.pts");

}  // namespace

TEST_CASE("validate") {
  auto r = run({"validate", ex1});
  CHECK(r.code == 0);
  CHECK(has(r.out, "valid, 5 states, 4 live, 1 stuck"));
  CHECK(has(r.out, "s4 stuck"));
  r = run({"validate", data_path("bad.pts")});
  CHECK(r.code == 1);
  CHECK(has(r.err, "row 1 sums to 1/2, expected 0 or 1"));
  r = run({"validate", data_path("missing.pts")});
  CHECK(r.code == 1);
  CHECK(has(r.err, "cannot open"));
}

TEST_CASE("bisim and quotient") {
  auto r = run({"bisim", ex1});
  CHECK(r.code == 0);
  CHECK(has(r.out, "block 3: s3 s5"));
  r = run({"bisim", ex1, "--format", "json"});
  CHECK(r.out == "{\"states\":5,\"blocks\":[[1],[2],[3,5],[4]]}\n");
  r = run({"quotient", ex1});
  CHECK(r.code == 0);
  CHECK(has(r.out, "states 4\n"));
  CHECK(has(r.out, "arc 2 3 1/10"));
}

TEST_CASE("terminate") {
  auto r = run({"terminate", ex1});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("1/9 5/18 0 1 0\n", 0) == 0);
  r = run({"terminate", ex1, "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["tau"][1] == "5/18");
}

TEST_CASE("distances") {
  auto r = run({"distances", ex1, "--format", "json"});
  CHECK(r.code == 0);
  CHECK(has(r.out, R"("pair":[1,2],"exact":"23/72")"));
  CHECK(r.out == run({"distances", ex1, "--format", "json", "--workers", "3"}).out);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["certified"] == true);
  CHECK(j["pairs"].size() == 10);
  CHECK(j["pairs"][8]["exact"] == "0");

  r = run({"distances", ex1});
  CHECK(has(r.out, "s1 s2  exact 23/72 (≈0.319444)"));
  CHECK(has(r.out, "s3 s5  exact 0/1 (≈0.000000)"));

  r = run({"distances", ex1, "--delta", "1/2", "--format", "json", "--no-quotient"});
  CHECK(has(r.out, R"("pair":[1,3],"exact":"1/93")"));

  r = run({"distances", ex1, "--delta", "0.5"});
  CHECK(r.code == 1);
  CHECK(has(r.err, "--delta"));
  CHECK(run({"distances", ex1, "--delta", "3/2"}).code == 1);
  CHECK(run({"distances", ex1, "--epsilon", "0"}).code == 1);
}

TEST_CASE("delta and eval") {
  auto r = run({"delta", ex1, "--metric", data_path("ex1_top.metric")});
  CHECK(r.code == 0);
  CHECK(has(r.out, "Delta(d)(1,4) = 1/1 (≈1.000000)"));
  CHECK(has(r.out, "Delta(d)(1,2) = 0/1 (≈0.000000)"));
  r = run({"eval", ex1, "--formula", "<> <> true"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "s2 4/5 (≈0.800000)"));
  r = run({"eval", ex1, "--formula", "<> &"});
  CHECK(r.code == 1);
  CHECK(has(r.err, "formula position"));
}

TEST_CASE("encode") {
  auto r = run({"encode", ex1, "--pair", "1", "2", "--bound", "1/2", "--format", "smt2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("(set-logic QF_NRA)\n", 0) == 0);
  CHECK(has(r.out, "(check-sat)"));
  r = run({"encode", ex1, "--pair", "1", "2", "--bound", "1/2", "--format", "mathematica"});
  CHECK(r.out.rfind("Reduce[\n", 0) == 0);
  const auto raw = run({"encode", ex1, "--pair", "1", "2", "--bound", "1/2", "--format", "smt2", "--raw"});
  CHECK(raw.out.size() > r.out.size());
  CHECK(has(raw.out, "d_5_5"));
  CHECK(run({"encode", ex1, "--pair", "1", "6", "--bound", "1/2", "--format", "smt2"}).code == 1);
}

TEST_CASE("approx-pair") {
  auto r = run({"approx-pair", ex1, "--pair", "1", "2", "--epsilon", "1/16", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["lower"] == "5/16");
  CHECK(j["upper"] == "3/8");
  CHECK(j["steps"].size() == 4);

  r = run({"approx-pair", ex1, "--pair", "1", "2", "--oracle", "cmd:false"});
  CHECK(r.code == 2);
  CHECK(has(r.err, "oracle failure"));
  r = run({"approx-pair", ex1, "--pair", "1", "2", "--oracle", "cmd:cat {} >/dev/null; echo sat", "--epsilon", "1/4"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "[0/1 (≈0.000000), 1/4 (≈0.250000)]"));
  CHECK(run({"approx-pair", ex1, "--pair", "1", "2", "--oracle", "bogus"}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"distances"}).code == 1);
  CHECK(run({"distances", ex1, "--format", "yaml"}).code == 1);
}

TEST_CASE("installed binary exit codes") {
  const char* cli = std::getenv("PMETRIC_CLI");
  if (!cli) {
    MESSAGE("PMETRIC_CLI not set; skipped");
    return;
  }
  auto status = [&](const std::string& args) {
    const int s = std::system((std::string(cli) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status("validate " + ex1) == 0);
  CHECK(status("validate " + data_path("bad.pts")) == 1);
  CHECK(status("approx-pair " + ex1 + " --pair 1 2 --oracle cmd:false") == 2);
}
