// Copyright 2026 The LDP Baseline Authors
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

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ldp/tu_format.hpp"
#include "support/test_support.hpp"

using namespace ldp;
using namespace ldp::testing;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("ldp_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path err_file = scratch() / "stderr.txt";
  const std::string cmd = std::string(LDP_CLI_PATH) + " " + args + " 2>" + err_file.string();
  RunResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_file);
  return r;
}

// Two classes of small random graphs, written in TU format.
fs::path toy_data_dir() {
  const fs::path root = scratch() / "data";
  if (fs::exists(root / "TOY" / "TOY_A.txt")) return root;
  std::mt19937_64 rng(5);
  std::vector<Graph> graphs;
  for (int i = 0; i < 30; ++i) {
    const int cls = i % 2;
    graphs.push_back(random_graph(rng, 8 + rng() % 6, cls ? 0.5 : 0.2, 0, cls));
  }
  write_tu_dataset(root / "TOY", make_dataset(graphs, "TOY"));
  return root;
}

const char* kSmallGrid =
    " --folds 3 --reps 2 --bins 6 --aggregation histogram --normalization graph --scale linear"
    " --c-grid 1,10 --gamma-grid 1";

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(run("").code == 1);
  CHECK(run("evaluate").code == 1);
  CHECK(run("stats --dataset X --bogus").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("unknown dataset path names the missing file and exits with 2") {
  const RunResult r = run("evaluate --dataset NOPE --data-dir " + (scratch() / "nowhere").string());
  CHECK(r.code == 2);
  CHECK(r.err.find("missing file") != std::string::npos);
  CHECK(r.err.find("NOPE_A.txt") != std::string::npos);
}

TEST_CASE("stats prints the dataset row") {
  const fs::path data = toy_data_dir();
  const RunResult r = run("stats --dataset TOY --data-dir " + data.string() + " --out " +
                          (scratch() / "stats").string());
  CHECK(r.code == 0);
  CHECK(r.out.find("TOY") != std::string::npos);
  CHECK(r.out.find("30") != std::string::npos);
  CHECK(slurp(scratch() / "stats" / "stats.csv").rfind("Dataset,Graphs,Classes,AvgNodes,AvgEdges,Labels\nTOY,30,2,", 0) == 0);
}

TEST_CASE("stats on MUTAG reproduces its table row") {
  if (!fs::exists(fs::path(LDP_DATA_DIR) / "MUTAG" / "MUTAG_A.txt")) {
    MESSAGE("MUTAG not present");
    return;
  }
  const RunResult r = run(std::string("stats --dataset MUTAG --data-dir ") + LDP_DATA_DIR +
                          " --out " + (scratch() / "mutag").string());
  CHECK(r.code == 0);
  CHECK(slurp(scratch() / "mutag" / "stats.csv") ==
        "Dataset,Graphs,Classes,AvgNodes,AvgEdges,Labels\nMUTAG,188,2,17.93,19.79,7\n");
}

TEST_CASE("featurize writes one row per graph") {
  const fs::path data = toy_data_dir();
  const fs::path out = scratch() / "feat";
  const RunResult r = run("featurize --dataset TOY --data-dir " + data.string() + " --bins 7 --out " +
                          out.string() + " --use-distance");
  REQUIRE(r.code == 0);
  CHECK(r.err.find("featurization time") != std::string::npos);
  std::istringstream csv(slurp(out / "TOY_features.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 6 * 7);
  }
  CHECK(rows == 30);
  CHECK(run("featurize --dataset TOY --data-dir " + data.string() + " --use-label --out " +
            out.string()).code == 1);
  CHECK(run("featurize --dataset TOY --data-dir " + data.string() + " --bins 1 --out " +
            out.string()).code == 1);
}

TEST_CASE("evaluate artifacts are byte-identical across runs and thread counts") {
  const fs::path data = toy_data_dir();
  const std::string base = "evaluate --dataset TOY --seed 4 --data-dir " + data.string() + kSmallGrid;
  const fs::path a = scratch() / "eval_a";
  const fs::path b = scratch() / "eval_b";
  const RunResult ra = run(base + " --threads 1 --out " + a.string());
  const RunResult rb = run(base + " --threads 3 --out " + b.string());
  REQUIRE(ra.code == 0);
  REQUIRE(rb.code == 0);
  CHECK(ra.out == rb.out);
  CHECK(ra.err.find("wall time") != std::string::npos);
  CHECK(ra.err.find("featurization time") != std::string::npos);
  for (const char* file : {"TOY_base_folds.csv", "TOY_base_audit.csv", "TOY_base_features.csv",
                           "TOY_base_summary.txt", "table.txt", "table.csv"}) {
    CAPTURE(file);
    REQUIRE(fs::exists(a / file));
    CHECK(slurp(a / file) == slurp(b / file));
  }
  CHECK(slurp(a / "table.csv").rfind("Dataset,LDP\nTOY,", 0) == 0);
  CHECK(slurp(a / "TOY_base_folds.csv").rfind("repetition,fold,accuracy,kernel,gamma,c\n", 0) == 0);
}

TEST_CASE("grid builds a multi-variant table") {
  const fs::path data = toy_data_dir();
  const fs::path out = scratch() / "grid";
  const RunResult r = run("grid --dataset TOY --variant base,star,distance --data-dir " +
                          data.string() + kSmallGrid + " --out " + out.string());
  REQUIRE(r.code == 0);
  CHECK(slurp(out / "table.csv").rfind("Dataset,LDP,LDP*,LDP+distance\nTOY,", 0) == 0);
  CHECK(run("grid --dataset TOY --variant label --data-dir " + data.string() + kSmallGrid +
            " --out " + out.string()).code == 1);
}
