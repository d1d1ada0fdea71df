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


// Acceptance run: one PASS/FAIL line per criterion, followed by the
// measured quantities. Arguments select a subset of criteria by number.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "walkernel_cli/bench.hpp"
#include "walkernel_cli/verify.hpp"

namespace cli = walkernel::cli;

namespace {

constexpr std::uint64_t kSeed = 0;

struct Outcome {
  bool pass = false;
  std::vector<std::string> details;
};

Outcome from_suite(const cli::SuiteReport& r) {
  Outcome o;
  o.pass = r.pass;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "suite %s: %zu checks in %.3g s, seed %llu", r.name.c_str(), r.checks, r.seconds,
                static_cast<unsigned long long>(r.seed));
  o.details.push_back(buf);
  for (const auto& n : r.notes) o.details.push_back(n);
  for (const auto& f : r.failures) o.details.push_back("failure: " + f);
  return o;
}

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

cli::BenchmarkPlan set1_plan(std::vector<std::size_t> sizes, std::vector<std::string> methods) {
  cli::BenchmarkPlan plan;
  plan.dataset = cli::DatasetKind::set1;
  plan.sizes = std::move(sizes);
  plan.count = 10;
  plan.seed = kSeed;
  plan.methods = std::move(methods);
  plan.reps = 3;
  plan.cfg.lambda = 1e-3;
  plan.cfg.tol = 1e-6;
  plan.timeout_secs = 300.0;
  plan.memory_limit_mb = 2048;
  return plan;
}

void add_cells(Outcome& o, const cli::BenchReport& r) {
  for (const auto& c : r.cells) {
    if (c.measured) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s n=%zu: median %.4g s, checksum %.12g", c.method.c_str(), c.n,
                    c.median_seconds, c.checksum);
      o.details.push_back(buf);
    } else {
      o.details.push_back(c.method + " n=" + std::to_string(c.n) + ": excluded (" + c.reason + ")");
    }
  }
}

Outcome scaling() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  cli::BenchmarkPlan direct = set1_plan({8, 16, 32, 64, 128}, {"direct"});
  cli::BenchReport dr = cli::run_benchmark(direct, &std::cerr);
  cli::BenchmarkPlan iterative = set1_plan({16, 32, 64, 128, 256, 512}, {"fixed_point", "cg"});
  cli::BenchReport ir = cli::run_benchmark(iterative, &std::cerr);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  add_cells(o, dr);
  add_cells(o, ir);

  // The direct slope is fitted over n = 8..64; n = 128 may be excluded.
  std::vector<std::size_t> ns;
  std::vector<double> ts;
  bool direct_complete = true;
  for (std::size_t n : {8u, 16u, 32u, 64u}) {
    const cli::CellSummary* c = dr.cell("direct", n, 0.0);
    if (!c || !c->measured) {
      direct_complete = false;
      continue;
    }
    ns.push_back(n);
    ts.push_back(c->median_seconds);
  }
  const cli::SlopeFit direct_fit = cli::fit_loglog_slope("direct", ns, ts);
  bool pass = direct_complete && direct_fit.valid && direct_fit.slope >= 5.0;
  o.details.push_back("direct slope over n={8,16,32,64}: " +
                      (direct_fit.valid ? fmt("%.3f", direct_fit.slope) : std::string("unavailable")) +
                      " (threshold >= 5.0)");
  for (const char* m : {"fixed_point", "cg"}) {
    const cli::SlopeFit* f = ir.slope(m);
    bool complete = true;
    for (std::size_t n : iterative.sizes) {
      const cli::CellSummary* c = ir.cell(m, n, 0.0);
      complete = complete && c && c->measured;
    }
    pass = pass && complete && f && f->valid && f->slope <= 3.5;
    o.details.push_back(std::string(m) + " slope over n={16,...,512}: " +
                        (f && f->valid ? fmt("%.3f", f->slope) : std::string("unavailable")) + " (threshold <= 3.5)" +
                        (complete ? "" : ", some cells excluded"));
  }
  for (const auto& a : ir.agreement) {
    if (a.max_relative_deviation > 1e-6) {
      pass = false;
      o.details.push_back("checksum disagreement at n=" + std::to_string(a.n) + ": " +
                          fmt("%.3g", a.max_relative_deviation));
    }
  }
  pass = pass && secs < 1800.0;
  o.details.push_back("benchmark wall time " + fmt("%.1f", secs) + " s (budget 1800 s)");
  o.pass = pass;
  return o;
}

Outcome vec_trick_speedup() {
  Outcome o;
  cli::BenchmarkPlan plan = set1_plan({256}, {cli::kExplicitFixedPoint, "fixed_point"});
  cli::BenchReport r = cli::run_benchmark(plan, &std::cerr);
  add_cells(o, r);
  if (r.speedups.empty()) {
    o.details.push_back("no speedup measured (a cell was excluded)");
    return o;
  }
  const cli::Speedup& s = r.speedups.front();
  o.details.push_back("speedup at n=256: " + fmt("%.2fx", s.factor) + " (threshold >= 5x)");
  const bool agree = !r.agreement.empty() && r.agreement.front().max_relative_deviation <= 1e-6;
  if (!agree) o.details.push_back("checksums of the two routes disagree");
  o.pass = s.factor >= 5.0 && agree;
  return o;
}

struct Criterion {
  int id;
  std::string title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  const std::vector<Criterion> criteria = {
      {1, "cross-method exactness (20 SET-2 graphs, n=32, lambda=0.001, 1e-6 relative, < 60 s)",
       [] { return from_suite(cli::verify_cross_method(kSeed)); }},
      {2, "scaling slopes (direct >= 5.0 over n=8..64; fixed_point and cg <= 3.5 over n=16..512)", scaling},
      {3, "vec-trick fixed point >= 5x faster than the explicit product at n=256", vec_trick_speedup},
      {4, "spectral geometric kernel vs matrix exponential (50 pairs, 1e-8) and K2 value 4e^0.1 (1e-10)",
       [] { return from_suite(cli::verify_geometric(kSeed)); }},
      {5, "product-walk power and term factorization identities (100 pairs, n <= 10, k <= 5, 1e-10)",
       [] { return from_suite(cli::verify_walk_identities(kSeed)); }},
      {6, "binomial expansion of Cartesian Laplacian powers (50 pairs, n <= 8, k <= 6, 1e-9)",
       [] { return from_suite(cli::verify_binomial_expansion(kSeed)); }},
      {7, "PSD Gram matrices (random walk, geometric, even Cartesian, T o T^-1) and diffusion kernel",
       [] { return from_suite(cli::verify_psd(kSeed)); }},
      {8, "Laplacian Cartesian kernel with uniform ends vanishes for every k <= 6 term (1e-12)",
       [] { return from_suite(cli::verify_diffusion_deficiency(kSeed)); }},
      {9, "transducer composition power sums equal linear-algebra power sums (K=10, n <= 16, 1e-10)",
       [] { return from_suite(cli::verify_transducer_equivalence(kSeed)); }},
      {10, "marginalized kernel equals the rescaled-edge walk kernel (20 labeled pairs, n <= 10, 1e-8)",
       [] { return from_suite(cli::verify_marginalized(kSeed)); }},
      {11, "optimal-assignment Gram matrix with min eigenvalue < -1e-6",
       [] { return from_suite(cli::verify_assignment_counterexample(kSeed)); }},
      {12, "(n n')^2 x truncated uniform walk kernel equals the entry-sum kernel (K=6, 1e-8)",
       [] { return from_suite(cli::verify_gartner(kSeed)); }},
      {13, "semiring laws (4 instances, 1000 samples) and log morphism push-through (1e-9)",
       [] { return from_suite(cli::verify_semiring_axioms(kSeed)); }},
      {14, "Kronecker/vec/Hadamard identities (real 1e-12, feature d <= 4 at 1e-10, dimension <= 6)",
       [] { return from_suite(cli::verify_matrix_identities(kSeed)); }},
  };

  int failed = 0, ran = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.details.push_back(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << ". " << c.title << "\n";
    for (const std::string& d : o.details) std::cout << "    " << d << "\n";
    std::cout << std::flush;
  }
  std::cout << (failed ? "FAIL" : "PASS") << ": " << ran - failed << "/" << ran << " criteria passed\n";
  return failed ? 1 : 0;
}
