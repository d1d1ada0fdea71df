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

// The `walkernel` command line: generate, gram, bench and verify.
// Exit codes: 0 success, 1 verification or runtime failure, 2 usage error.

#ifndef WALKERNEL_CLI_CLI_HPP
#define WALKERNEL_CLI_CLI_HPP

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "walkernel/errors.hpp"
#include "walkernel/kernel_config.hpp"
#include "walkernel_cli/bench.hpp"
#include "walkernel_cli/datasets.hpp"
#include "walkernel_cli/gram_command.hpp"
#include "walkernel_cli/verify.hpp"

namespace walkernel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// A rejected flag combination detected after parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

namespace detail {

/// Solver flags shared by gram and bench.
struct SolverFlags {
  double lambda = 1e-3;
  double tol = 1e-6;
  std::size_t max_iter = 1000;
  std::string measure = "geometric";
  std::size_t k_max = 20;
  bool raw_weights = false;

  void add_to(CLI::App& app) {
    app.add_option("--lambda", lambda, "decay parameter")->capture_default_str();
    app.add_option("--tol", tol, "iterative solver tolerance")->capture_default_str();
    app.add_option("--max-iter", max_iter, "iteration cap for iterative solvers")->capture_default_str();
    app.add_option("--measure", measure, "geometric or exponential")
        ->check(CLI::IsMember({"geometric", "exponential"}))
        ->capture_default_str();
    app.add_option("--k-max", k_max, "truncation for exponential series without a spectral route")
        ->capture_default_str();
    app.add_flag("--raw-weights", raw_weights, "use the raw adjacency instead of D^-1 A");
  }

  KernelConfig config(Method method) const {
    KernelConfig c;
    c.lambda = lambda;
    c.tol = tol;
    c.max_iter = max_iter;
    c.method = method;
    c.measure = parse_measure(measure);
    c.k_max = k_max;
    c.degree_normalize = !raw_weights;
    return c;
  }
};

inline std::vector<std::string> method_choices() {
  return {"direct", "sylvester", "cg", "fixed_point", "spectral"};
}

// ---------------------------------------------------------------- generate

struct GenerateFlags {
  std::string dataset;
  std::vector<unsigned> exponents{1, 2, 3, 4};
  std::size_t n = 32;
  std::vector<double> fills{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::size_t count = 10;
  std::uint64_t seed = 0;
  std::size_t labels = 0;
  std::string from_manifest;
  std::string out;
};

inline int run_generate(const GenerateFlags& f, std::ostream& out) {
  Manifest m;
  if (!f.from_manifest.empty()) {
    m = load_manifest(f.from_manifest);
  } else {
    if (f.dataset.empty()) throw UsageError("generate: --dataset or --from-manifest is required");
    GenerateSpec spec;
    spec.kind = parse_dataset_kind(f.dataset);
    spec.exponents = f.exponents;
    spec.n = f.n;
    spec.fills = f.fills;
    spec.count = f.count;
    spec.seed = f.seed;
    spec.labels = f.labels;
    try {
      spec.validate();
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    m = plan_dataset(spec);
  }
  write_dataset(m, f.out);
  out << "wrote " << m.graphs.size() << " graphs and " << kManifestFile << " to " << f.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- gram

struct GramFlags {
  std::vector<std::string> inputs;
  std::string kernel = "random_walk";
  std::string method = "fixed_point";
  std::string power_mode = "even";
  std::string factor_weight = "adjacency";
  std::string out;
  bool check_psd = false;
  bool serial = false;
  SolverFlags solver;
};

inline int run_gram(const GramFlags& f, std::ostream& out, std::ostream& err) {
  GramSpec spec;
  spec.kernel = f.kernel;
  spec.power_mode = parse_power_mode(f.power_mode);
  spec.factor_weight = parse_factor_weight(f.factor_weight);
  spec.parallel = !f.serial;
  try {
    spec.cfg = f.solver.config(parse_method(f.method));
    (void)make_graph_kernel(spec);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const std::vector<NamedGraph> inputs = load_inputs(f.inputs);
  GramOutcome o;
  try {
    o = compute_gram(spec, inputs);
  } catch (const GramError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  const std::string text = write_gram(o.gram, gram_metadata(spec, o));
  std::ostream& report = f.out.empty() ? err : out;
  if (f.out.empty()) {
    out << text;
  } else {
    write_text_file(f.out, text);
    report << "wrote " << o.gram.size() << "x" << o.gram.size() << " Gram matrix to " << f.out << "\n";
  }
  report << "psd: " << (o.psd.psd ? "yes" : "no") << " (min eigenvalue " << format_number(o.psd.min_eigenvalue)
         << ", trace " << format_number(o.psd.trace) << ")\n";
  if (o.unconverged_pairs > 0) {
    report << "warning: " << o.unconverged_pairs << " pair(s) stopped at the iteration cap before reaching --tol\n";
  }
  return f.check_psd && !o.psd.psd ? kExitFailure : kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchFlags {
  std::string dataset = "set1";
  std::vector<std::size_t> sizes{16, 32, 64};
  std::size_t n = 32;
  std::vector<double> fills{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::vector<std::string> inputs;
  std::size_t count = 10;
  std::uint64_t seed = 0;
  std::vector<std::string> methods{"fixed_point"};
  std::size_t reps = 3;
  double timeout_secs = 600.0;
  std::size_t memory_limit_mb = 2048;
  std::string out;
  std::string summary;
  double agreement_tol = 1e-6;
  SolverFlags solver;
};

inline int run_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  BenchmarkPlan plan;
  try {
    plan.dataset = parse_dataset_kind(f.dataset);
    plan.sizes = f.sizes;
    plan.n = f.n;
    plan.fills = f.fills;
    plan.inputs = f.inputs;
    plan.count = f.count;
    plan.seed = f.seed;
    plan.methods = f.methods;
    plan.cfg = f.solver.config(Method::fixed_point);
    plan.reps = f.reps;
    plan.timeout_secs = f.timeout_secs;
    plan.memory_limit_mb = f.memory_limit_mb;
    plan.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  BenchReport report = run_benchmark(plan, &err);
  const std::string csv = timing_csv(report);
  const std::string summary = bench_summary(report);
  if (f.out.empty()) {
    out << csv;
  } else {
    write_text_file(f.out, csv);
    out << "wrote " << report.rows.size() << " timing rows to " << f.out << "\n";
  }
  if (!f.summary.empty()) write_text_file(f.summary, summary);
  (f.out.empty() ? err : out) << summary;
  bool agree = true;
  for (const ChecksumAgreement& a : report.agreement) {
    if (a.max_relative_deviation > f.agreement_tol) {
      agree = false;
      err << "checksum disagreement at n=" << a.n << " fill=" << a.fill << ": relative deviation "
          << format_number(a.max_relative_deviation) << "\n";
    }
  }
  return agree ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- verify

struct VerifyFlags {
  std::vector<std::string> suites;
  bool list = false;
  std::uint64_t seed = 0;
};

inline int run_verify(const VerifyFlags& f, std::ostream& out) {
  if (f.list) {
    for (const Suite& s : verify_suites()) out << s.name << "  " << s.description << "\n";
    return kExitOk;
  }
  std::vector<const Suite*> chosen;
  for (const std::string& name : f.suites) {
    const Suite* s = find_suite(name);
    if (!s) throw UsageError("verify: unknown suite \"" + name + "\" (see --list)");
    chosen.push_back(s);
  }
  if (chosen.empty())
    for (const Suite& s : verify_suites()) chosen.push_back(&s);
  std::size_t failed = 0;
  for (const Suite* s : chosen) {
    SuiteReport r = s->run(f.seed);
    out << format_report(r) << std::flush;
    if (!r.pass) ++failed;
  }
  out << (failed ? "FAIL" : "PASS") << ": " << chosen.size() - failed << "/" << chosen.size() << " suites passed\n";
  return failed ? kExitFailure : kExitOk;
}

}  // namespace detail

/// Runs the command line given without the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"walkernel: random-walk graph kernels, Gram matrices and solver benchmarks", "walkernel"};
  app.require_subcommand(1);

  detail::GenerateFlags gen;
  CLI::App* generate = app.add_subcommand("generate", "write a seeded SET-1 or SET-2 dataset and its manifest");
  generate->add_option("--dataset", gen.dataset, "set1 or set2")->check(CLI::IsMember({"set1", "set2"}));
  generate->add_option("--exponents", gen.exponents, "SET-1 size exponents k (graphs of 2^k vertices)")
      ->delimiter(',')
      ->capture_default_str();
  generate->add_option("--n", gen.n, "SET-2 vertex count")->capture_default_str();
  generate->add_option("--fills", gen.fills, "SET-2 fill percentages")->delimiter(',')->capture_default_str();
  generate->add_option("--count", gen.count, "graphs per size or fill")->capture_default_str();
  generate->add_option("--seed", gen.seed, "base seed")->capture_default_str();
  generate->add_option("--labels", gen.labels, "discrete edge-label alphabet size (0 for unlabeled)")
      ->capture_default_str();
  generate->add_option("--from-manifest", gen.from_manifest, "rebuild the graphs recorded in a manifest");
  generate->add_option("--out", gen.out, "output directory")->required();

  detail::GramFlags gf;
  CLI::App* gram = app.add_subcommand("gram", "compute a Gram matrix and its PSD verdict");
  gram->add_option("inputs", gf.inputs, "graph files, directories or manifest.json")->required();
  gram->add_option("--kernel", gf.kernel, "graph kernel")->check(CLI::IsMember(kernel_names()))->capture_default_str();
  gram->add_option("--method", gf.method, "solver")->check(CLI::IsMember(detail::method_choices()))->capture_default_str();
  gram->add_option("--power-mode", gf.power_mode, "Cartesian kernel powers: even or all")
      ->check(CLI::IsMember({"even", "all"}))
      ->capture_default_str();
  gram->add_option("--factor-weight", gf.factor_weight, "Cartesian factor weight: adjacency or laplacian")
      ->check(CLI::IsMember({"adjacency", "laplacian"}))
      ->capture_default_str();
  gram->add_option("--out", gf.out, "output file (default: standard output)");
  gram->add_flag("--check-psd", gf.check_psd, "exit with status 1 when the Gram matrix is not PSD");
  gram->add_flag("--serial", gf.serial, "compute pairs on one thread");
  gf.solver.add_to(*gram);

  detail::BenchFlags bf;
  CLI::App* bench = app.add_subcommand("bench", "time Gram matrices per method and fit log-log slopes");
  bench->add_option("--dataset", bf.dataset, "set1 or set2")->check(CLI::IsMember({"set1", "set2"}))->capture_default_str();
  bench->add_option("--sizes", bf.sizes, "SET-1 vertex counts")->delimiter(',')->capture_default_str();
  bench->add_option("--n", bf.n, "SET-2 vertex count")->capture_default_str();
  bench->add_option("--fills", bf.fills, "SET-2 fill percentages")->delimiter(',')->capture_default_str();
  bench->add_option("--inputs", bf.inputs, "graph files to time instead of a generated dataset")->delimiter(',');
  bench->add_option("--count", bf.count, "graphs per cell")->capture_default_str();
  bench->add_option("--seed", bf.seed, "dataset seed")->capture_default_str();
  bench->add_option("--methods,--method", bf.methods, "solvers, including fixed_point_explicit")
      ->delimiter(',')
      ->check(CLI::IsMember(bench_method_names()))
      ->capture_default_str();
  bench->add_option("--reps", bf.reps, "timed repetitions per cell")->capture_default_str();
  bench->add_option("--timeout-secs", bf.timeout_secs, "per-repetition wall-clock limit")->capture_default_str();
  bench->add_option("--memory-limit-mb", bf.memory_limit_mb, "address-space limit per cell (0: none)")
      ->capture_default_str();
  bench->add_option("--agreement-tol", bf.agreement_tol, "relative checksum tolerance across methods")
      ->capture_default_str();
  bench->add_option("--out", bf.out, "timing CSV (default: standard output)");
  bench->add_option("--summary", bf.summary, "also write the text summary to this file");
  bf.solver.add_to(*bench);

  detail::VerifyFlags vf;
  CLI::App* verify = app.add_subcommand("verify", "run property suites against independent oracles");
  verify->add_option("suites", vf.suites, "suite names (default: all)");
  verify->add_flag("--list", vf.list, "list the suites");
  verify->add_option("--seed", vf.seed, "seed for the random inputs")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return detail::run_generate(gen, out);
    if (gram->parsed()) return detail::run_gram(gf, out, err);
    if (bench->parsed()) return detail::run_bench(bf, out, err);
    if (verify->parsed()) return detail::run_verify(vf, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace walkernel::cli

#endif  // WALKERNEL_CLI_CLI_HPP
