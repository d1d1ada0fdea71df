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


// Graph-kernel selection by name, input loading and the Gram file format.

#ifndef WALKERNEL_CLI_GRAM_COMMAND_HPP
#define WALKERNEL_CLI_GRAM_COMMAND_HPP

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "walkernel/cartesian.hpp"
#include "walkernel/errors.hpp"
#include "walkernel/geometric.hpp"
#include "walkernel/gram.hpp"
#include "walkernel/graph_io.hpp"
#include "walkernel/kernel_config.hpp"
#include "walkernel/random_walk.hpp"
#include "walkernel_cli/datasets.hpp"

namespace walkernel::cli {

inline const std::vector<std::string>& kernel_names() {
  static const std::vector<std::string> names{"random_walk", "geometric", "cartesian", "composite"};
  return names;
}

struct GramSpec {
  std::string kernel = "random_walk";
  KernelConfig cfg;
  PowerMode power_mode = PowerMode::even;
  FactorWeight factor_weight = FactorWeight::adjacency;
  bool parallel = true;
};

using GraphKernel = std::function<KernelResult(const Graph&, const Graph&)>;

/// The kernel named by spec.kernel. "composite" adds the random walk kernel
/// of the two complements.
inline GraphKernel make_graph_kernel(const GramSpec& spec) {
  spec.cfg.validate();
  const KernelConfig cfg = spec.cfg;
  if (spec.kernel == "random_walk") {
    return [cfg](const Graph& g, const Graph& h) { return random_walk_kernel(g, h, cfg); };
  }
  if (spec.kernel == "geometric") {
    return [cfg](const Graph& g, const Graph& h) {
      KernelResult r;
      r.method = Method::spectral;
      r.value = geometric_kernel(g, h, cfg.lambda, cfg.degree_normalize);
      return r;
    };
  }
  if (spec.kernel == "cartesian") {
    const PowerMode mode = spec.power_mode;
    const FactorWeight weight = spec.factor_weight;
    return [cfg, mode, weight](const Graph& g, const Graph& h) { return cartesian_walk_kernel(g, h, cfg, weight, mode); };
  }
  if (spec.kernel == "composite") {
    return [cfg](const Graph& g, const Graph& h) {
      KernelResult a = random_walk_kernel(g, h, cfg);
      KernelResult b = random_walk_kernel(complement(g), complement(h), cfg);
      a.value += b.value;
      a.iterations += b.iterations;
      a.converged = a.converged && b.converged;
      return a;
    };
  }
  throw InvalidArgument("unknown kernel \"" + spec.kernel + "\" (expected random_walk, geometric, cartesian or composite)");
}

struct NamedGraph {
  std::string id;
  Graph graph;
};

/// Graph files, directories (every *.json / *.txt file except the manifest,
/// in name order) or manifest files (their graphs, in manifest order).
inline std::vector<NamedGraph> load_inputs(const std::vector<std::string>& paths) {
  namespace fs = std::filesystem;
  std::vector<NamedGraph> out;
  auto add_file = [&](const fs::path& p) { out.push_back({p.filename().string(), load_graph(p.string())}); };
  for (const std::string& s : paths) {
    const fs::path p(s);
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(p)) {
        const auto ext = e.path().extension().string();
        if (e.is_regular_file() && (ext == ".json" || ext == ".txt") && e.path().filename() != kManifestFile) {
          files.push_back(e.path());
        }
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) add_file(f);
    } else if (p.filename() == kManifestFile) {
      Manifest m = load_manifest(s);
      for (const GraphRecord& r : m.graphs) add_file(p.parent_path() / r.file);
    } else {
      if (!fs::exists(p)) throw ParseError("input " + s + " does not exist");
      add_file(p);
    }
  }
  if (out.empty()) throw InvalidArgument("gram: no input graphs");
  return out;
}

struct GramOutcome {
  GramMatrix gram;
  PsdReport psd;
  std::size_t unconverged_pairs = 0;
  double seconds = 0.0;
};

inline GramOutcome compute_gram(const GramSpec& spec, const std::vector<NamedGraph>& inputs) {
  GraphKernel kernel = make_graph_kernel(spec);
  const std::size_t m = inputs.size();
  std::vector<std::size_t> index(m);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < m; ++i) {
    index[i] = i;
    ids.push_back(inputs[i].id);
  }
  std::vector<char> converged(m * m, 1);  // one slot per pair keeps the workers independent
  const auto t0 = std::chrono::steady_clock::now();
  GramOutcome out;
  out.gram = gram_matrix<std::size_t>(
      [&](std::size_t i, std::size_t j) {
        KernelResult r = kernel(inputs[i].graph, inputs[j].graph);
        converged[i * m + j] = r.converged ? 1 : 0;
        return r.value;
      },
      std::span<const std::size_t>(index), spec.parallel, std::move(ids));
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.psd = psd_check(out.gram);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) out.unconverged_pairs += converged[i * m + j] ? 0 : 1;
  return out;
}

inline constexpr const char* kGramFormat = "walkernel-gram";

inline nlohmann::json gram_metadata(const GramSpec& spec, const GramOutcome& o) {
  nlohmann::json cfg{{"lambda", spec.cfg.lambda},
                     {"method", to_string(spec.cfg.method)},
                     {"tol", spec.cfg.tol},
                     {"max_iter", spec.cfg.max_iter},
                     {"measure", to_string(spec.cfg.measure)},
                     {"degree_normalize", spec.cfg.degree_normalize}};
  if (spec.kernel == "cartesian") {
    cfg["power_mode"] = to_string(spec.power_mode);
    cfg["factor_weight"] = to_string(spec.factor_weight);
  }
  return {{"format", kGramFormat},
          {"version", 1},
          {"kernel", spec.kernel},
          {"config", std::move(cfg)},
          {"size", o.gram.size()},
          {"ids", o.gram.ids},
          {"psd",
           {{"psd", o.psd.psd},
            {"min_eigenvalue", o.psd.min_eigenvalue},
            {"trace", o.psd.trace},
            {"threshold", o.psd.threshold}}},
          {"unconverged_pairs", o.unconverged_pairs}};
}

/// First line "# walkernel-gram <metadata json>", then one row of
/// shortest round-trip values per graph.
inline std::string write_gram(const GramMatrix& g, const nlohmann::json& meta) {
  std::ostringstream out;
  out << "# " << kGramFormat << " " << meta.dump() << "\n";
  char buf[64];
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      auto res = std::to_chars(buf, buf + sizeof(buf), g(i, j));
      if (j) out << ' ';
      out.write(buf, res.ptr - buf);
    }
    out << "\n";
  }
  return out.str();
}

struct GramFile {
  nlohmann::json meta;
  GramMatrix gram;
};

inline GramFile parse_gram(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  const std::string prefix = std::string("# ") + kGramFormat + " ";
  if (!std::getline(in, line) || line.rfind(prefix, 0) != 0) throw ParseError("gram: missing metadata header");
  GramFile f;
  try {
    f.meta = nlohmann::json::parse(line.substr(prefix.size()));
    const std::size_t m = f.meta.at("size").get<std::size_t>();
    f.gram.ids = f.meta.at("ids").get<std::vector<std::string>>();
    f.gram.values = DenseMatrix(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      if (!std::getline(in, line)) throw ParseError("gram: expected " + std::to_string(m) + " rows");
      std::istringstream row(line);
      for (std::size_t j = 0; j < m; ++j) {
        std::string tok;
        if (!(row >> tok)) throw ParseError("gram: row " + std::to_string(i) + " is short");
        double v = 0.0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) throw ParseError("gram: bad value " + tok);
        f.gram.values(i, j) = v;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("gram: ") + e.what());
  }
  return f;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("failed writing " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace walkernel::cli

#endif  // WALKERNEL_CLI_GRAM_COMMAND_HPP
