// Copyright 2026 The dismet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dismet/cli.hpp"
#include "dismet/io.hpp"
#include "dismet/parallel.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dismet");
  std::ostringstream out;
  std::ostringstream err;
  const int code = dismet::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dismet_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("gen then eval produces one report per metric") {
  TempDir dir;
  const auto f = dir / "f.csv";
  const auto r = dir / "r.drep";
  REQUIRE(run({"gen", "--cardinalities", "3,4", "--encoder", "identity", "--out-factors", f,
               "--out-reps", r}).code == 0);
  const auto res = run({"eval", "--metrics", "med,mig", "--factors", f, "--reps", r, "--seeds", "0,1,2"});
  REQUIRE(res.code == 0);
  const auto reports = dismet::reports_from_json(res.out);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].metric == "med");
  CHECK(reports[0].scores == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(reports[0].std == 0.0);
  CHECK(reports[1].metric == "mig");
}

TEST_CASE("eval rejects unknown metrics and bad options with exit 2") {
  TempDir dir;
  const auto f = dir / "f.csv";
  const auto r = dir / "r.drep";
  REQUIRE(run({"gen", "--cardinalities", "2,2", "--out-factors", f, "--out-reps", r}).code == 0);
  const auto res = run({"eval", "--metrics", "med,bogus", "--factors", f, "--reps", r});
  CHECK(res.code == 2);
  CHECK(res.err.find("factorvae") != std::string::npos);
  CHECK(run({"eval", "--factors", f, "--reps", r, "--bins", "1"}).code == 2);
  CHECK(run({"eval", "--factors", f, "--reps", r, "--seeds", ""}).code == 2);
  CHECK(run({"eval", "--factors", f, "--reps", r, "--k", "0", "--metrics", "topk_med"}).code == 2);
  CHECK(run({"eval", "--factors", dir / "missing.csv", "--reps", r}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("metric errors exit with 3") {
  TempDir dir;
  const auto f = dir / "f.csv";
  const auto r = dir / "r.drep";
  REQUIRE(run({"gen", "--cardinalities", "2,2", "--encoder", "constant:2", "--out-factors", f,
               "--out-reps", r}).code == 0);
  const auto res = run({"eval", "--metrics", "factorvae", "--factors", f, "--reps", r});
  CHECK(res.code == 3);
  CHECK(res.err.find("AllDimensionsPruned") != std::string::npos);
}

TEST_CASE("scenario oracles pass and a wrong base fails with exit 4") {
  const auto ok = run({"scenario", "--kind", "copy-average", "--dims", "3,1000"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("copy-average,3,med,0.76895093981335") != std::string::npos);
  CHECK(ok.out.find("copy-average,1000,med,0.3082391138011") != std::string::npos);
  CHECK(ok.err.find("pass") != std::string::npos);
  const auto dup = run({"scenario", "--kind", "duplicated"});
  CHECK(dup.code == 0);
  CHECK(dup.out.find("duplicated,1000,med,1,1,pass") != std::string::npos);
  CHECK(dup.out.find("duplicated,1000,mig,0,0,pass") != std::string::npos);
  const auto wrong = run({"scenario", "--kind", "copy-average", "--base", "k"});
  CHECK(wrong.code == 4);
  CHECK(wrong.err.find("FAIL") != std::string::npos);
}

TEST_CASE("sweep prints a curve table") {
  const auto res = run({"sweep", "--kind", "copy-average", "--dims", "3,10"});
  CHECK(res.code == 0);
  CHECK(res.out.rfind("kind,D,metric,value\n", 0) == 0);
  CHECK(res.out.find("copy-average,10,dci_stated,") != std::string::npos);
}

TEST_CASE("topk, cooccur and heatmap on the duplicated code") {
  TempDir dir;
  const auto f = dir / "f.csv";
  const auto r = dir / "r.drep";
  REQUIRE(run({"gen", "--scenario", "duplicated:4", "--out-factors", f, "--out-reps", r}).code == 0);
  const auto topk = run({"topk", "--k", "2", "--factors", f, "--reps", r});
  CHECK(topk.code == 0);
  CHECK(topk.out == "k,top_k_med,selected\n2,1,0 1 2 3\n");
  const auto ablation = run({"topk", "--k-list", "1,2", "--factors", f, "--reps", r});
  CHECK(ablation.out == "k,top_k_med,selected\n1,1,0 1\n2,1,0 1 2 3\n");
  const auto co = run({"cooccur", "--factors", f, "--reps", r});
  CHECK(co.code == 0);
  CHECK(co.out == "factor,F0,F1\nF0,1,0\nF1,0,1\n");
  const auto heat = run({"heatmap", "--factors", f, "--reps", r});
  CHECK(heat.out == "factor,0,1,2,3\nF0,0.5,0,0.5,0\nF1,0,0.5,0,0.5\n");
}

TEST_CASE("probe emits variance profiles and downstream tables") {
  TempDir dir;
  const auto f = dir / "f.csv";
  const auto r = dir / "r.drep";
  REQUIRE(run({"gen", "--cardinalities", "3,4", "--out-factors", f, "--out-reps", r}).code == 0);
  const auto var = run({"probe", "--factors", f, "--reps", r, "--factor", "f1"});
  CHECK(var.code == 0);
  CHECK(var.out == "dim,variance\n0,0\n1,1.25\n");
  const auto pca = run({"probe", "--factors", f, "--reps", r, "--reduce", "pca:2"});
  CHECK(pca.code == 0);
  const auto top = run({"probe", "--factors", f, "--reps", r, "--reduce", "topk:1"});
  CHECK(top.out == "dim,variance\n0,0.6666666666666666\n1,0\n");
  CHECK(run({"probe", "--factors", f, "--reps", r, "--reduce", "svd:2"}).code == 2);
}

TEST_CASE("gen writes a dsprites sample with a random projection") {
  TempDir dir;
  const auto f = dir / "f.csv";
  const auto r = dir / "r.drep";
  const auto res = run({"gen", "--dataset", "dsprites", "--mode", "sample", "--n", "2000", "--encoder",
                        "random-projection:100", "--out-factors", f, "--out-reps", r});
  REQUIRE(res.code == 0);
  const auto reps = dismet::read_reps(r);
  CHECK(reps.rows() == 2000);
  CHECK(reps.dims() == 100);
  CHECK(dismet::read_factors(f).num_factors() == 5);
}

TEST_CASE("identical invocations give byte-identical outputs for any thread count") {
  TempDir dir;
  const auto f = dir / "f.csv";
  const auto r = dir / "r.drep";
  REQUIRE(run({"gen", "--dataset", "smallnorb", "--mode", "sample", "--n", "1500", "--seed", "3",
               "--encoder", "random-projection:12:1:tanh", "--out-factors", f, "--out-reps", r})
              .code == 0);
  std::vector<std::string> outputs;
  for (const char* threads : {"1", "3", "1"}) {
    const auto out = dir / (std::string("report_") + threads + std::to_string(outputs.size()) + ".json");
    REQUIRE(run({"eval", "--metrics", "med,topk_med,mig,sap,factorvae,downstream", "--factors", f,
                 "--reps", r, "--seeds", "0,1", "--num-train", "500", "--num-eval", "300",
                 "--threads", threads, "--output", out})
                .code == 0);
    outputs.push_back(slurp(out));
  }
  dismet::set_thread_count(1);
  CHECK(outputs[0] == outputs[1]);
  CHECK(outputs[0] == outputs[2]);
  CHECK_FALSE(outputs[0].empty());
}
