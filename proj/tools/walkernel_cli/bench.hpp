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


// Timed Gram-matrix cells, run one child process per cell so a cell can be
// cut off by a wall-clock or memory limit, plus the log-log slope analysis.

#ifndef WALKERNEL_CLI_BENCH_HPP
#define WALKERNEL_CLI_BENCH_HPP

#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "walkernel/errors.hpp"
#include "walkernel/gram.hpp"
#include "walkernel/kernel_config.hpp"
#include "walkernel/random_walk.hpp"
#include "walkernel_cli/datasets.hpp"
#include "walkernel_cli/gram_command.hpp"

namespace walkernel::cli {

/// Fixed-point iteration on the materialized sparse W_x; the baseline that
/// the vec-trick fixed-point method is compared against.
inline KernelResult explicit_fixed_point_kernel(const Graph& g, const Graph& h, const KernelConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  ProductGraph pg = walk_product(g, h, cfg);
  walkernel::detail::require_walk_convergence(pg, cfg.lambda);
  SparseMatrix w = pg.explicit_weight();
  SolveReport rep = fixed_point_solve([&w](std::span<const double> x) { return multiply(w, x); }, pg.start, cfg.lambda,
                                      cfg.tol, cfg.max_iter);
  KernelResult r;
  r.method = Method::fixed_point;
  r.value = dot(pg.stop, rep.solution);
  r.iterations = rep.iterations;
  r.residual = rep.residual_norm;
  r.converged = rep.converged;
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline constexpr const char* kExplicitFixedPoint = "fixed_point_explicit";

inline const std::vector<std::string>& bench_method_names() {
  static const std::vector<std::string> names{"direct", "sylvester",   "cg", "fixed_point", "spectral",
                                              kExplicitFixedPoint};
  return names;
}

inline GraphKernel bench_kernel(const std::string& method, const KernelConfig& base) {
  KernelConfig cfg = base;
  if (method == kExplicitFixedPoint) {
    return [cfg](const Graph& g, const Graph& h) { return explicit_fixed_point_kernel(g, h, cfg); };
  }
  cfg.method = parse_method(method);
  return [cfg](const Graph& g, const Graph& h) { return random_walk_kernel(g, h, cfg); };
}

struct BenchmarkPlan {
  DatasetKind dataset = DatasetKind::set1;
  std::vector<std::size_t> sizes{16, 32, 64};  // SET-1 vertex counts
  std::size_t n = 32;                          // SET-2 vertex count
  std::vector<double> fills{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::vector<std::string> inputs;  // graph files used instead of a generated dataset
  std::size_t count = 10;
  std::uint64_t seed = 0;
  std::vector<std::string> methods{"fixed_point"};
  KernelConfig cfg;
  std::size_t reps = 3;
  double timeout_secs = 600.0;
  std::size_t memory_limit_mb = 2048;  // per cell; 0 leaves the limit alone

  void validate() const {
    if (methods.empty()) throw InvalidArgument("bench: at least one method is required");
    for (const std::string& m : methods) {
      if (std::find(bench_method_names().begin(), bench_method_names().end(), m) == bench_method_names().end()) {
        throw InvalidArgument("bench: unknown method \"" + m + "\"");
      }
    }
    if (reps < 1) throw InvalidArgument("bench: repetitions must be >= 1");
    if (count < 1) throw InvalidArgument("bench: graph count must be >= 1");
    if (!(timeout_secs > 0.0)) throw InvalidArgument("bench: timeout must be positive");
    if (inputs.empty() && dataset == DatasetKind::set1) {
      if (sizes.empty()) throw InvalidArgument("bench: no sizes");
      for (std::size_t n : sizes)
        if (n < 2 || (n & (n - 1)) != 0) throw InvalidArgument("bench: SET-1 sizes must be powers of two >= 2");
    }
    if (inputs.empty() && dataset == DatasetKind::set2 && fills.empty()) throw InvalidArgument("bench: no fills");
    cfg.validate();
  }
};

/// One CSV row: a planned (method, n, fill, rep) entry.
struct TimingRecord {
  std::string method;
  std::size_t n = 0;
  double fill = 0.0;
  std::size_t rep = 0;
  bool measured = false;
  double seconds = 0.0;
  double checksum = 0.0;
};

struct CellSummary {
  std::string method;
  std::size_t n = 0;
  double fill = 0.0;
  bool measured = false;
  double median_seconds = 0.0;
  double checksum = 0.0;
  std::string reason;  // why the cell was excluded
};

struct SlopeFit {
  std::string method;
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<std::size_t> sizes;
  bool valid = false;
};

struct Speedup {
  std::size_t n = 0;
  double fill = 0.0;
  double explicit_seconds = 0.0;
  double vec_trick_seconds = 0.0;
  double factor = 0.0;
};

struct ChecksumAgreement {
  std::size_t n = 0;
  double fill = 0.0;
  std::size_t methods = 0;
  double max_relative_deviation = 0.0;
};

struct BenchReport {
  std::vector<TimingRecord> rows;
  std::vector<CellSummary> cells;
  std::vector<SlopeFit> slopes;
  std::vector<Speedup> speedups;
  std::vector<ChecksumAgreement> agreement;

  const CellSummary* cell(const std::string& method, std::size_t n, double fill = 0.0) const {
    for (const auto& c : cells)
      if (c.method == method && c.n == n && c.fill == fill) return &c;
    return nullptr;
  }
  const SlopeFit* slope(const std::string& method) const {
    for (const auto& s : slopes)
      if (s.method == method) return &s;
    return nullptr;
  }
};

inline double median(std::vector<double> v) {
  if (v.empty()) throw InvalidArgument("median of an empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// Least-squares line through (log n, log t).
inline SlopeFit fit_loglog_slope(const std::string& method, const std::vector<std::size_t>& ns,
                                 const std::vector<double>& seconds) {
  SlopeFit f;
  f.method = method;
  f.sizes = ns;
  if (ns.size() != seconds.size()) throw DimensionError("fit_loglog_slope: length mismatch");
  const std::size_t k = ns.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(seconds[i] > 0.0) || ns[i] == 0) return f;
    const double x = std::log(static_cast<double>(ns[i])), y = std::log(seconds[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = static_cast<double>(k) * sxx - sx * sx;
  if (k < 2 || !(std::abs(den) > 1e-12)) return f;
  f.slope = (static_cast<double>(k) * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / static_cast<double>(k);
  f.valid = true;
  return f;
}

struct CellRun {
  bool completed = false;
  std::vector<double> seconds;
  double checksum = 0.0;
  std::string reason;
};

namespace detail {

/// Reads one line from fd, waiting at most until the deadline. Returns false
/// on timeout; an empty string means end of file.
inline bool read_line_until(int fd, std::string& buffer, std::string& line,
                            std::chrono::steady_clock::time_point deadline) {
  for (;;) {
    const auto nl = buffer.find('\n');
    if (nl != std::string::npos) {
      line = buffer.substr(0, nl + 1);
      buffer.erase(0, nl + 1);
      return true;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) return false;
    pollfd p{fd, POLLIN, 0};
    const int rc = ::poll(&p, 1, static_cast<int>(std::min<long long>(left.count(), 1000 * 60 * 60)));
    if (rc < 0 && errno == EINTR) continue;
    if (rc == 0) continue;
    char chunk[4096];
    const ssize_t got = ::read(fd, chunk, sizeof(chunk));
    if (got < 0 && errno == EINTR) continue;
    if (got <= 0) {
      line = buffer;
      buffer.clear();
      return true;
    }
    buffer.append(chunk, static_cast<std::size_t>(got));
  }
}

inline void write_all(int fd, const std::string& s) {
  std::size_t off = 0;
  while (off < s.size()) {
    const ssize_t w = ::write(fd, s.data() + off, s.size() - off);
    if (w < 0 && errno == EINTR) continue;
    if (w <= 0) return;
    off += static_cast<std::size_t>(w);
  }
}

}  // namespace detail

/// Runs warmup() once and then work() reps times in a child process. Each
/// repetition must finish within timeout_secs of the previous report.
inline CellRun run_isolated(const std::function<void()>& warmup, const std::function<double()>& work, std::size_t reps,
                            double timeout_secs, std::size_t memory_limit_mb) {
  int fds[2];
  if (::pipe(fds) != 0) throw Error(std::string("bench: pipe failed: ") + std::strerror(errno));
  std::fflush(nullptr);
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw Error(std::string("bench: fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::close(fds[0]);
    if (memory_limit_mb > 0) {
      rlimit lim{};
      lim.rlim_cur = lim.rlim_max = static_cast<rlim_t>(memory_limit_mb) * 1024 * 1024;
      ::setrlimit(RLIMIT_AS, &lim);
    }
    try {
      warmup();
      for (std::size_t r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const double checksum = work();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char buf[128];
        std::snprintf(buf, sizeof(buf), "rep %.17g %.17g\n", secs, checksum);
        detail::write_all(fds[1], buf);
      }
      detail::write_all(fds[1], "done\n");
    } catch (const std::bad_alloc&) {
      detail::write_all(fds[1], "error memory limit of " + std::to_string(memory_limit_mb) + " MB exceeded\n");
    } catch (const std::exception& e) {
      std::string what = e.what();
      std::replace(what.begin(), what.end(), '\n', ' ');
      detail::write_all(fds[1], "error " + what + "\n");
    }
    ::_exit(0);
  }
  ::close(fds[1]);
  CellRun run;
  std::string buffer, line;
  auto timeout = std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(timeout_secs));
  bool killed = false;
  for (;;) {
    if (!detail::read_line_until(fds[0], buffer, line, std::chrono::steady_clock::now() + timeout)) {
      ::kill(pid, SIGKILL);
      killed = true;
      char buf[96];
      std::snprintf(buf, sizeof(buf), "did not finish within %g s", timeout_secs);
      run.reason = buf;
      break;
    }
    if (line.empty()) {
      if (run.reason.empty() && !run.completed) run.reason = "worker exited without a result";
      break;
    }
    if (line.rfind("rep ", 0) == 0) {
      double secs = 0.0, checksum = 0.0;
      if (std::sscanf(line.c_str(), "rep %lf %lf", &secs, &checksum) == 2) {
        run.seconds.push_back(secs);
        run.checksum = checksum;
      }
    } else if (line.rfind("done", 0) == 0) {
      run.completed = run.seconds.size() == reps;
    } else if (line.rfind("error ", 0) == 0) {
      run.reason = line.substr(6, line.size() - 7);
    }
  }
  ::close(fds[0]);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (!killed && WIFSIGNALED(status)) {
    run.completed = false;
    run.reason = "worker killed by signal " + std::to_string(WTERMSIG(status));
  }
  if (!run.completed && run.reason.empty()) run.reason = "incomplete";
  return run;
}

/// Sum of all Gram entries, the cell checksum.
inline double gram_checksum(const GraphKernel& kernel, const std::vector<Graph>& graphs) {
  GramMatrix g = gram_matrix<Graph>([&](const Graph& a, const Graph& b) { return kernel(a, b).value; },
                                    std::span<const Graph>(graphs), false);
  double s = 0.0;
  for (double v : g.values.data()) s += v;
  return s;
}

struct BenchDataset {
  std::size_t n = 0;
  double fill = 0.0;
  std::vector<Graph> graphs;
};

inline std::vector<BenchDataset> bench_datasets(const BenchmarkPlan& plan) {
  std::vector<BenchDataset> out;
  if (!plan.inputs.empty()) {
    BenchDataset d;
    for (NamedGraph& g : load_inputs(plan.inputs)) {
      d.n = std::max(d.n, g.graph.n());
      d.graphs.push_back(std::move(g.graph));
    }
    out.push_back(std::move(d));
  } else if (plan.dataset == DatasetKind::set1) {
    for (std::size_t n : plan.sizes) out.push_back({n, 0.0, set1_graphs(n, plan.count, plan.seed)});
  } else {
    for (double f : plan.fills) out.push_back({plan.n, f, set2_graphs(plan.n, f, plan.count, plan.seed)});
  }
  return out;
}

/// Runs every (method, dataset) cell sequentially, then derives slopes,
/// checksum agreement and the explicit-versus-vec-trick speedups.
inline BenchReport run_benchmark(const BenchmarkPlan& plan, std::ostream* log = nullptr) {
  plan.validate();
  BenchReport report;
  const std::vector<BenchDataset> datasets = bench_datasets(plan);
  for (const std::string& method : plan.methods) {
    const GraphKernel kernel = bench_kernel(method, plan.cfg);
    for (const BenchDataset& d : datasets) {
      if (log) *log << "bench: " << method << " n=" << d.n << " fill=" << d.fill << " ..." << std::flush;
      CellRun run = run_isolated([&] { (void)kernel(d.graphs.front(), d.graphs.back()); },
                                 [&] { return gram_checksum(kernel, d.graphs); }, plan.reps, plan.timeout_secs,
                                 plan.memory_limit_mb);
      CellSummary c{method, d.n, d.fill, run.completed, 0.0, run.checksum, run.reason};
      if (run.completed) c.median_seconds = median(run.seconds);
      if (log) {
        if (c.measured) {
          *log << " median " << c.median_seconds << " s\n";
        } else {
          *log << " excluded (" << c.reason << ")\n";
        }
      }
      for (std::size_t r = 0; r < plan.reps; ++r) {
        TimingRecord t{method, d.n, d.fill, r + 1, c.measured, 0.0, 0.0};
        if (c.measured) {
          t.seconds = run.seconds[r];
          t.checksum = run.checksum;
        }
        report.rows.push_back(t);
      }
      report.cells.push_back(std::move(c));
    }
  }
  for (const std::string& method : plan.methods) {
    std::vector<std::size_t> ns;
    std::vector<double> secs;
    for (const CellSummary& c : report.cells) {
      if (c.method == method && c.measured) {
        ns.push_back(c.n);
        secs.push_back(c.median_seconds);
      }
    }
    std::vector<std::size_t> distinct = ns;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() >= 2) report.slopes.push_back(fit_loglog_slope(method, ns, secs));
  }
  for (const BenchDataset& d : datasets) {
    ChecksumAgreement a{d.n, d.fill, 0, 0.0};
    const CellSummary* ref = nullptr;
    for (const CellSummary& c : report.cells) {
      if (c.n != d.n || c.fill != d.fill || !c.measured) continue;
      ++a.methods;
      if (!ref) {
        ref = &c;
        continue;
      }
      const double dev = std::abs(c.checksum - ref->checksum) / std::max(std::abs(ref->checksum), 1e-300);
      a.max_relative_deviation = std::max(a.max_relative_deviation, dev);
    }
    if (a.methods >= 2) report.agreement.push_back(a);
    const CellSummary* e = report.cell(kExplicitFixedPoint, d.n, d.fill);
    const CellSummary* v = report.cell("fixed_point", d.n, d.fill);
    if (e && v && e->measured && v->measured && v->median_seconds > 0.0) {
      report.speedups.push_back({d.n, d.fill, e->median_seconds, v->median_seconds, e->median_seconds / v->median_seconds});
    }
  }
  return report;
}

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// CSV with header method,n,fill,rep,seconds,checksum. Every planned
/// (method, n, fill, rep) entry appears once; an excluded cell has
/// "excluded" in its seconds and checksum fields.
inline std::string timing_csv(const BenchReport& r) {
  std::ostringstream out;
  out << "method,n,fill,rep,seconds,checksum\n";
  for (const TimingRecord& t : r.rows) {
    out << t.method << ',' << t.n << ',' << format_number(t.fill) << ',' << t.rep << ',';
    if (t.measured) {
      out << format_number(t.seconds) << ',' << format_number(t.checksum) << '\n';
    } else {
      out << "excluded,excluded\n";
    }
  }
  return out.str();
}

inline std::string bench_summary(const BenchReport& r) {
  std::ostringstream out;
  char buf[256];
  out << "cells (median wall seconds over repetitions):\n";
  for (const CellSummary& c : r.cells) {
    if (c.measured) {
      std::snprintf(buf, sizeof(buf), "  %-22s n=%-6zu fill=%-5g %12.6g s  checksum %.12g\n", c.method.c_str(), c.n,
                    c.fill, c.median_seconds, c.checksum);
    } else {
      std::snprintf(buf, sizeof(buf), "  %-22s n=%-6zu fill=%-5g excluded: %s\n", c.method.c_str(), c.n, c.fill,
                    c.reason.c_str());
    }
    out << buf;
  }
  if (!r.slopes.empty()) out << "log-log slopes of time against n (measured cells only):\n";
  for (const SlopeFit& s : r.slopes) {
    std::string ns;
    for (std::size_t n : s.sizes) ns += (ns.empty() ? "" : ",") + std::to_string(n);
    std::snprintf(buf, sizeof(buf), "  %-22s slope %.3f over n={%s}\n", s.method.c_str(), s.slope, ns.c_str());
    out << buf;
  }
  if (!r.agreement.empty()) out << "checksum agreement across methods:\n";
  for (const ChecksumAgreement& a : r.agreement) {
    std::snprintf(buf, sizeof(buf), "  n=%-6zu fill=%-5g %zu methods, max relative deviation %.3g\n", a.n, a.fill,
                  a.methods, a.max_relative_deviation);
    out << buf;
  }
  if (!r.speedups.empty()) out << "vec-trick fixed point versus explicit product:\n";
  for (const Speedup& s : r.speedups) {
    std::snprintf(buf, sizeof(buf), "  n=%-6zu fill=%-5g explicit %.6g s, vec-trick %.6g s, speedup %.2fx\n", s.n, s.fill,
                  s.explicit_seconds, s.vec_trick_seconds, s.factor);
    out << buf;
  }
  return out.str();
}

}  // namespace walkernel::cli

#endif  // WALKERNEL_CLI_BENCH_HPP
