// Copyright 2026 The walkernel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <chrono>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "walkernel/generators.hpp"
#include "walkernel/graph_io.hpp"
#include "walkernel/kernels.hpp"
#include "walkernel_cli/cli.hpp"

namespace fs = std::filesystem;
namespace wk = walkernel;
namespace cli = walkernel::cli;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("walkernel_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::size_t count_files(const std::string& dir, const std::string& ext = ".json") {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ext && e.path().filename() != cli::kManifestFile) ++n;
  return n;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- generate

TEST(Generate, Set1WritesFortyGraphsAndManifest) {
  TempDir tmp;
  CliRun r = run({"generate", "--dataset", "set1", "--out", tmp / "d"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_files(tmp / "d"), 40u);
  ASSERT_TRUE(fs::exists(tmp / "d/manifest.json"));
  cli::Manifest m = cli::load_manifest(tmp / "d/manifest.json");
  ASSERT_EQ(m.graphs.size(), 40u);
  for (const cli::GraphRecord& rec : m.graphs) {
    wk::Graph g = wk::load_graph((tmp.path() / "d" / rec.file).string());
    EXPECT_EQ(g.n(), rec.n);
    EXPECT_TRUE(wk::is_connected(g));
  }
}

TEST(Generate, Set2WritesOneHundredGraphs) {
  TempDir tmp;
  CliRun r = run({"generate", "--dataset", "set2", "--n", "32", "--out", tmp / "d"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_files(tmp / "d"), 100u);
  cli::Manifest m = cli::load_manifest(tmp / "d/manifest.json");
  std::size_t per_fill[10] = {};
  for (const cli::GraphRecord& rec : m.graphs) {
    EXPECT_EQ(rec.n, 32u);
    ++per_fill[static_cast<int>(rec.fill) / 10 - 1];
  }
  for (std::size_t c : per_fill) EXPECT_EQ(c, 10u);
}

TEST(Generate, RerunFromManifestIsByteIdentical) {
  TempDir tmp;
  ASSERT_EQ(run({"generate", "--dataset", "set2", "--fills", "20,70", "--count", "3", "--seed", "9", "--out", tmp / "a"}).code, 0);
  ASSERT_EQ(run({"generate", "--from-manifest", tmp / "a/manifest.json", "--out", tmp / "b"}).code, 0);
  std::size_t compared = 0;
  for (const auto& e : fs::directory_iterator(tmp / "a")) {
    const std::string name = e.path().filename().string();
    EXPECT_EQ(cli::read_text_file(tmp / ("a/" + name)), cli::read_text_file(tmp / ("b/" + name))) << name;
    ++compared;
  }
  EXPECT_EQ(compared, 7u);
}

TEST(Generate, SeedsChangeTheGraphs) {
  TempDir tmp;
  ASSERT_EQ(run({"generate", "--dataset", "set1", "--exponents", "3", "--count", "1", "--seed", "1", "--out", tmp / "a"}).code, 0);
  ASSERT_EQ(run({"generate", "--dataset", "set1", "--exponents", "3", "--count", "1", "--seed", "2", "--out", tmp / "b"}).code, 0);
  EXPECT_NE(cli::read_text_file(tmp / "a/set1_n8_00.json"), cli::read_text_file(tmp / "b/set1_n8_00.json"));
}

TEST(Generate, UnwritablePathIsAnError) {
  TempDir tmp;
  cli::write_text_file(tmp / "file", "x");
  CliRun r = run({"generate", "--dataset", "set1", "--out", tmp / "file/sub"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Generate, MissingDatasetIsUsageError) {
  TempDir tmp;
  EXPECT_EQ(run({"generate", "--out", tmp / "d"}).code, 2);
  EXPECT_EQ(run({"generate", "--dataset", "set3", "--out", tmp / "d"}).code, 2);
  EXPECT_EQ(run({"generate", "--dataset", "set2", "--fills", "150", "--out", tmp / "d"}).code, 2);
}

// ---------------------------------------------------------------- gram

TEST(Gram, FileRoundTripMatchesLibrary) {
  TempDir tmp;
  ASSERT_EQ(run({"generate", "--dataset", "set1", "--exponents", "2,3", "--count", "2", "--out", tmp / "d"}).code, 0);
  CliRun r = run({"gram", tmp / "d", "--method", "direct", "--lambda", "0.01", "--out", tmp / "g.txt"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("psd: yes"), std::string::npos);
  cli::GramFile f = cli::parse_gram(cli::read_text_file(tmp / "g.txt"));
  ASSERT_EQ(f.gram.size(), 4u);
  EXPECT_EQ(f.meta.at("kernel"), "random_walk");
  EXPECT_EQ(f.meta.at("config").at("method"), "direct");
  EXPECT_TRUE(f.meta.at("psd").at("psd").get<bool>());
  auto inputs = cli::load_inputs({tmp / "d"});
  wk::KernelConfig cfg;
  cfg.method = wk::Method::direct;
  cfg.lambda = 0.01;
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(f.gram.ids[i], inputs[i].id);
    for (std::size_t j = 0; j < 4; ++j) {
      // Shortest round-trip formatting reproduces the computed doubles exactly.
      const std::size_t a = std::min(i, j), b = std::max(i, j);
      EXPECT_EQ(f.gram(i, j), wk::random_walk_kernel(inputs[a].graph, inputs[b].graph, cfg).value);
    }
  }
}

TEST(Gram, SingleGraphGivesOneByOne) {
  TempDir tmp;
  wk::save_graph(wk::Graph::from_pairs(2, {{0, 1}}), tmp / "k2.json");
  CliRun r = run({"gram", tmp / "k2.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  cli::GramFile f = cli::parse_gram(r.out);
  ASSERT_EQ(f.gram.size(), 1u);
  // K2 x K2 with D^-1 A: W p = p and q^T p = 1/4, so the value is (1/4) / (1 - l).
  EXPECT_NEAR(f.gram(0, 0), 0.25 / (1.0 - 0.001), 1e-9);
}

TEST(Gram, Set1FixedPointIsPsd) {
  TempDir tmp;
  ASSERT_EQ(run({"generate", "--dataset", "set1", "--exponents", "3", "--count", "10", "--out", tmp / "d"}).code, 0);
  CliRun r = run({"gram", tmp / "d/manifest.json", "--method", "fixed_point", "--lambda", "0.001", "--check-psd",
               "--out", tmp / "g.txt"});
  ASSERT_EQ(r.code, 0) << r.err;
  cli::GramFile f = cli::parse_gram(cli::read_text_file(tmp / "g.txt"));
  ASSERT_EQ(f.gram.size(), 10u);
  EXPECT_TRUE(wk::psd_check(f.gram).psd);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) EXPECT_EQ(f.gram(i, j), f.gram(j, i));
}

TEST(Gram, MethodsAgreeAcrossRuns) {
  TempDir tmp;
  ASSERT_EQ(run({"generate", "--dataset", "set2", "--n", "12", "--fills", "30,60", "--count", "2", "--out", tmp / "d"}).code, 0);
  std::vector<wk::DenseMatrix> grams;
  for (const char* m : {"direct", "sylvester", "cg", "fixed_point", "spectral"}) {
    CliRun r = run({"gram", tmp / "d", "--method", m, "--out", tmp / (std::string(m) + ".txt")});
    ASSERT_EQ(r.code, 0) << m << ": " << r.err;
    grams.push_back(cli::parse_gram(cli::read_text_file(tmp / (std::string(m) + ".txt"))).gram.values);
  }
  for (std::size_t k = 1; k < grams.size(); ++k)
    for (std::size_t i = 0; i < grams[0].data().size(); ++i)
      EXPECT_NEAR(grams[k].data()[i], grams[0].data()[i], 1e-6 * std::abs(grams[0].data()[i]));
}

TEST(Gram, OtherKernels) {
  TempDir tmp;
  ASSERT_EQ(run({"generate", "--dataset", "set1", "--exponents", "2", "--count", "3", "--out", tmp / "d"}).code, 0);
  for (std::vector<std::string> extra : std::vector<std::vector<std::string>>{
           {"--kernel", "geometric", "--lambda", "0.5"},
           {"--kernel", "cartesian", "--lambda", "0.05", "--method", "direct"},
           {"--kernel", "cartesian", "--power-mode", "all", "--factor-weight", "laplacian", "--lambda", "0.05"},
           {"--kernel", "composite", "--method", "cg"}}) {
    std::vector<std::string> args{"gram", tmp / "d"};
    args.insert(args.end(), extra.begin(), extra.end());
    CliRun r = run(args);
    ASSERT_EQ(r.code, 0) << extra[1] << ": " << r.err;
    EXPECT_EQ(cli::parse_gram(r.out).gram.size(), 3u);
  }
}

TEST(Gram, FailingPairIsReported) {
  TempDir tmp;
  wk::save_graph(wk::Graph::from_pairs(2, {{0, 1}}), tmp / "k2.json");
  // lambda >= 1 diverges for the row-stochastic product.
  CliRun r = run({"gram", tmp / "k2.json", "--lambda", "1.5", "--method", "direct"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("k2.json"), std::string::npos) << r.err;
}

TEST(Gram, UsageErrors) {
  TempDir tmp;
  wk::save_graph(wk::Graph::from_pairs(2, {{0, 1}}), tmp / "k2.json");
  EXPECT_EQ(run({"gram"}).code, 2);
  EXPECT_EQ(run({"gram", tmp / "k2.json", "--method", "magic"}).code, 2);
  EXPECT_EQ(run({"gram", tmp / "k2.json", "--lambda", "-0.1"}).code, 2);
  EXPECT_EQ(run({"gram", tmp / "k2.json", "--lambda", "abc"}).code, 2);
  EXPECT_EQ(run({"gram", tmp / "k2.json", "--tol", "0"}).code, 2);
  EXPECT_EQ(run({"gram", tmp / "missing.json"}).code, 1);
}

// ---------------------------------------------------------------- bench

TEST(Bench, CsvListsEveryPlannedRow) {
  TempDir tmp;
  CliRun r = run({"bench", "--sizes", "4,8", "--count", "3", "--reps", "3", "--methods", "fixed_point,cg,direct",
               "--out", tmp / "t.csv", "--summary", tmp / "s.txt"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = lines(cli::read_text_file(tmp / "t.csv"));
  ASSERT_EQ(rows.size(), 1u + 3 * 2 * 3);
  EXPECT_EQ(rows[0], "method,n,fill,rep,seconds,checksum");
  std::size_t i = 1;
  for (const char* m : {"fixed_point", "cg", "direct"})
    for (int n : {4, 8})
      for (int rep = 1; rep <= 3; ++rep) {
        const std::string prefix = std::string(m) + "," + std::to_string(n) + ",0," + std::to_string(rep) + ",";
        EXPECT_EQ(rows[i++].rfind(prefix, 0), 0u) << rows[i - 1];
      }
  const std::string summary = cli::read_text_file(tmp / "s.txt");
  EXPECT_NE(summary.find("slope"), std::string::npos);
  EXPECT_NE(summary.find("checksum agreement"), std::string::npos);
}

TEST(Bench, ChecksumMatchesGramEntrySum) {
  cli::BenchmarkPlan plan;
  plan.sizes = {8};
  plan.count = 4;
  plan.reps = 1;
  plan.methods = {"direct", "fixed_point", cli::kExplicitFixedPoint};
  cli::BenchReport rep = cli::run_benchmark(plan);
  ASSERT_EQ(rep.cells.size(), 3u);
  auto graphs = cli::set1_graphs(8, 4, 0);
  wk::KernelConfig cfg;
  cfg.method = wk::Method::direct;
  double sum = 0.0;
  for (const auto& a : graphs)
    for (const auto& b : graphs) sum += wk::random_walk_kernel(a, b, cfg).value;
  for (const auto& c : rep.cells) {
    ASSERT_TRUE(c.measured) << c.method << " " << c.reason;
    EXPECT_NEAR(c.checksum, sum, 1e-6 * sum) << c.method;
  }
  ASSERT_EQ(rep.agreement.size(), 1u);
  EXPECT_LE(rep.agreement[0].max_relative_deviation, 1e-6);
  ASSERT_EQ(rep.speedups.size(), 1u);
  EXPECT_GT(rep.speedups[0].factor, 0.0);
}

TEST(Bench, TimedOutCellIsExcludedButListed) {
  TempDir tmp;
  CliRun r = run({"bench", "--sizes", "4,64", "--count", "10", "--reps", "2", "--methods", "direct", "--timeout-secs",
               "0.2", "--out", tmp / "t.csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = lines(cli::read_text_file(tmp / "t.csv"));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[1].rfind("direct,4,0,1,", 0), 0u);
  EXPECT_EQ(rows[3], "direct,64,0,1,excluded,excluded");
  EXPECT_EQ(rows[4], "direct,64,0,2,excluded,excluded");
  EXPECT_NE(r.err.find("excluded (did not finish"), std::string::npos) << r.err;
}

TEST(Bench, IsolatedRunReportsTimeoutMemoryAndErrors) {
  cli::CellRun ok = cli::run_isolated([] {}, [] { return 2.5; }, 3, 5.0, 0);
  EXPECT_TRUE(ok.completed);
  EXPECT_EQ(ok.seconds.size(), 3u);
  EXPECT_EQ(ok.checksum, 2.5);

  cli::CellRun slow = cli::run_isolated([] {}, [] {
    std::this_thread::sleep_for(std::chrono::seconds(30));
    return 0.0;
  }, 1, 0.2, 0);
  EXPECT_FALSE(slow.completed);
  EXPECT_NE(slow.reason.find("did not finish"), std::string::npos);

  cli::CellRun big = cli::run_isolated([] {}, [] {
    std::vector<double> v(std::size_t{1} << 30, 1.0);  // 8 GiB
    return v[12345];
  }, 1, 30.0, 256);
  EXPECT_FALSE(big.completed);
  EXPECT_NE(big.reason.find("memory limit"), std::string::npos) << big.reason;

  cli::CellRun bad = cli::run_isolated([] {}, []() -> double { throw wk::DivergenceError("diverges\nbadly"); }, 2, 5.0, 0);
  EXPECT_FALSE(bad.completed);
  EXPECT_EQ(bad.reason, "diverges badly");
}

TEST(Bench, MedianAndSlopeFit) {
  EXPECT_EQ(cli::median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(cli::median({4.0, 1.0, 3.0, 2.0}), 2.5);
  EXPECT_THROW(cli::median({}), wk::InvalidArgument);
  std::vector<std::size_t> ns{8, 16, 32, 64};
  std::vector<double> t;
  for (std::size_t n : ns) t.push_back(1e-9 * std::pow(static_cast<double>(n), 6.0));
  cli::SlopeFit f = cli::fit_loglog_slope("x", ns, t);
  ASSERT_TRUE(f.valid);
  EXPECT_NEAR(f.slope, 6.0, 1e-12);
  EXPECT_NEAR(f.intercept, std::log(1e-9), 1e-10);
  EXPECT_FALSE(cli::fit_loglog_slope("x", {8}, {1.0}).valid);
  EXPECT_FALSE(cli::fit_loglog_slope("x", {8, 16}, {1.0, 0.0}).valid);
}

TEST(Bench, Set2FillGrid) {
  cli::BenchmarkPlan plan;
  plan.dataset = cli::DatasetKind::set2;
  plan.n = 8;
  plan.fills = {20, 80};
  plan.count = 3;
  plan.reps = 1;
  plan.methods = {"sylvester", "cg"};
  cli::BenchReport rep = cli::run_benchmark(plan);
  ASSERT_EQ(rep.rows.size(), 4u);
  EXPECT_EQ(rep.rows[0].fill, 20.0);
  EXPECT_EQ(rep.rows[1].fill, 80.0);
  ASSERT_EQ(rep.agreement.size(), 2u);
  for (const auto& a : rep.agreement) EXPECT_LE(a.max_relative_deviation, 1e-6);
  EXPECT_TRUE(rep.slopes.empty());  // one size only
}

TEST(Bench, UsageErrors) {
  EXPECT_EQ(run({"bench", "--reps", "0"}).code, 2);
  EXPECT_EQ(run({"bench", "--methods", "warp"}).code, 2);
  EXPECT_EQ(run({"bench", "--timeout-secs", "-1"}).code, 2);
  EXPECT_EQ(run({"bench", "--sizes", "6"}).code, 2);  // not a power of two
}

// ---------------------------------------------------------------- verify

TEST(Verify, NamedSuitesPass) {
  for (const char* suite : {"walk-identities", "diffusion-deficiency", "assignment-npsd"}) {
    CliRun r = run({"verify", suite});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.rfind(std::string("PASS ") + suite, 0), 0u) << r.out;
  }
  CliRun r = run({"verify", "assignment-npsd", "--seed", "5"});
  EXPECT_NE(r.out.find("instances"), std::string::npos);
  EXPECT_NE(r.out.find("min eigenvalue -"), std::string::npos);
}

TEST(Verify, ListNamesEverySuite) {
  CliRun r = run({"verify", "--list"});
  ASSERT_EQ(r.code, 0);
  for (const cli::Suite& s : cli::verify_suites()) EXPECT_NE(r.out.find(s.name), std::string::npos);
}

TEST(Verify, FailureIsReportedWithSeed) {
  cli::SuiteReport rep = cli::verify_gartner(3, 2, 4, 6, -1.0);  // negative tolerance cannot pass
  EXPECT_FALSE(rep.pass);
  const std::string text = cli::format_report(rep);
  EXPECT_EQ(text.rfind("FAIL gartner", 0), 0u);
  EXPECT_NE(text.find("seed 3 trial 0"), std::string::npos);
  EXPECT_NE(text.find("walkernel verify gartner --seed 3"), std::string::npos);
}

TEST(Verify, UnknownSuiteIsUsageError) { EXPECT_EQ(run({"verify", "nonexistent"}).code, 2); }

// ---------------------------------------------------------------- top level

TEST(Cli, HelpAndMissingSubcommand) {
  CliRun help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("generate"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify", "--no-such-flag"}).code, 2);
}
