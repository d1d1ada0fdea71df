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


// Seeded SET-1 / SET-2 datasets and the manifest that records every seed.

#ifndef WALKERNEL_CLI_DATASETS_HPP
#define WALKERNEL_CLI_DATASETS_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "walkernel/errors.hpp"
#include "walkernel/generators.hpp"
#include "walkernel/graph.hpp"
#include "walkernel/graph_io.hpp"

namespace walkernel::cli {

enum class DatasetKind { set1, set2 };

inline const char* to_string(DatasetKind k) noexcept { return k == DatasetKind::set1 ? "set1" : "set2"; }

inline DatasetKind parse_dataset_kind(const std::string& s) {
  if (s == "set1") return DatasetKind::set1;
  if (s == "set2") return DatasetKind::set2;
  throw InvalidArgument("unknown dataset \"" + s + "\" (expected set1 or set2)");
}

/// One generated graph: where it lives and everything needed to rebuild it.
struct GraphRecord {
  std::string file;
  DatasetKind kind = DatasetKind::set1;
  std::size_t n = 0;
  double fill = 0.0;  // requested fill percentage (SET-2 only)
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t labels = 0;  // discrete label alphabet size, 0 for unlabeled
  std::uint64_t label_seed = 0;
};

struct Manifest {
  std::uint64_t seed = 0;
  std::vector<GraphRecord> graphs;
};

struct GenerateSpec {
  DatasetKind kind = DatasetKind::set1;
  std::vector<unsigned> exponents{1, 2, 3, 4};  // SET-1 sizes 2^k
  std::size_t n = 32;                            // SET-2 size
  std::vector<double> fills{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::size_t count = 10;
  std::uint64_t seed = 0;
  std::size_t labels = 0;

  void validate() const {
    if (count == 0) throw InvalidArgument("generate: count must be >= 1");
    if (kind == DatasetKind::set1) {
      if (exponents.empty()) throw InvalidArgument("generate: no SET-1 sizes");
      for (unsigned k : exponents)
        if (k < 1 || k > 20) throw InvalidArgument("generate: SET-1 size exponent must be in [1, 20]");
    } else {
      if (n < 2) throw InvalidArgument("generate: SET-2 needs n >= 2");
      if (fills.empty()) throw InvalidArgument("generate: no SET-2 fill values");
      for (double f : fills)
        if (!(f > 0.0) || f > 100.0) throw InvalidArgument("generate: fill must be in (0, 100]");
    }
  }
};

namespace detail {

/// Per-graph seeds derived from the base seed with the standard seed sequence,
/// whose output is fixed by the language standard.
inline std::pair<std::uint64_t, std::uint64_t> derive_seeds(std::uint64_t base, DatasetKind kind, std::uint64_t param,
                                                            std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(kind), static_cast<std::uint32_t>(param),
                    static_cast<std::uint32_t>(param >> 32), static_cast<std::uint32_t>(index)};
  std::uint32_t out[4];
  seq.generate(out, out + 4);
  return {(std::uint64_t{out[0]} << 32) | out[1], (std::uint64_t{out[2]} << 32) | out[3]};
}

inline std::string fill_tag(double fill) {
  char buf[32];
  if (fill == std::floor(fill)) {
    std::snprintf(buf, sizeof(buf), "%d", static_cast<int>(fill));
  } else {
    std::snprintf(buf, sizeof(buf), "%g", fill);
  }
  return buf;
}

inline std::string index_tag(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02zu", i);
  return buf;
}

}  // namespace detail

/// Records for every graph of the dataset, in generation order.
inline Manifest plan_dataset(const GenerateSpec& spec) {
  spec.validate();
  Manifest m;
  m.seed = spec.seed;
  auto add = [&](std::size_t n, double fill, std::uint64_t param, const std::string& stem) {
    for (std::size_t i = 0; i < spec.count; ++i) {
      auto [seed, label_seed] = detail::derive_seeds(spec.seed, spec.kind, param, i);
      m.graphs.push_back({stem + "_" + detail::index_tag(i) + ".json", spec.kind, n, fill, i, seed, spec.labels,
                          spec.labels ? label_seed : 0});
    }
  };
  if (spec.kind == DatasetKind::set1) {
    for (unsigned k : spec.exponents) {
      const std::size_t n = std::size_t{1} << k;
      add(n, 0.0, k, "set1_n" + std::to_string(n));
    }
  } else {
    for (double f : spec.fills) {
      add(spec.n, f, static_cast<std::uint64_t>(std::llround(f * 1000.0)),
          "set2_n" + std::to_string(spec.n) + "_f" + detail::fill_tag(f));
    }
  }
  return m;
}

inline Graph realize(const GraphRecord& r) {
  Graph g;
  if (r.kind == DatasetKind::set1) {
    unsigned k = 0;
    while ((std::size_t{1} << k) < r.n) ++k;
    if ((std::size_t{1} << k) != r.n) throw InvalidArgument("SET-1 graph size must be a power of two");
    g = random_graph_set1(k, {r.seed});
  } else {
    g = random_graph_set2(r.n, r.fill, {r.seed});
  }
  if (r.labels > 0) g = with_random_labels(g, r.labels, {r.label_seed});
  return g;
}

/// In-memory dataset with the same seeds `generate` would write.
inline std::vector<Graph> dataset_graphs(const GenerateSpec& spec) {
  std::vector<Graph> out;
  for (const GraphRecord& r : plan_dataset(spec).graphs) out.push_back(realize(r));
  return out;
}

inline std::vector<Graph> set1_graphs(std::size_t n, std::size_t count, std::uint64_t seed) {
  unsigned k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  if ((std::size_t{1} << k) != n || k < 1) throw InvalidArgument("SET-1 sizes must be powers of two >= 2");
  GenerateSpec s;
  s.kind = DatasetKind::set1;
  s.exponents = {k};
  s.count = count;
  s.seed = seed;
  return dataset_graphs(s);
}

inline std::vector<Graph> set2_graphs(std::size_t n, double fill, std::size_t count, std::uint64_t seed) {
  GenerateSpec s;
  s.kind = DatasetKind::set2;
  s.n = n;
  s.fills = {fill};
  s.count = count;
  s.seed = seed;
  return dataset_graphs(s);
}

inline constexpr const char* kManifestFormat = "walkernel-manifest";
inline constexpr const char* kManifestFile = "manifest.json";

inline nlohmann::json manifest_to_json(const Manifest& m) {
  nlohmann::json graphs = nlohmann::json::array();
  for (const GraphRecord& r : m.graphs) {
    nlohmann::json j{{"file", r.file}, {"set", to_string(r.kind)}, {"n", r.n},         {"index", r.index},
                     {"seed", r.seed}, {"labels", r.labels},       {"label_seed", r.label_seed}};
    if (r.kind == DatasetKind::set2) j["fill"] = r.fill;
    graphs.push_back(std::move(j));
  }
  return {{"format", kManifestFormat}, {"version", 1}, {"seed", m.seed}, {"graphs", std::move(graphs)}};
}

inline Manifest manifest_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kManifestFormat) throw ParseError("not a walkernel manifest");
    Manifest m;
    m.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& j : doc.at("graphs")) {
      GraphRecord r;
      r.file = j.at("file").get<std::string>();
      r.kind = parse_dataset_kind(j.at("set").get<std::string>());
      r.n = j.at("n").get<std::size_t>();
      r.index = j.at("index").get<std::size_t>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.labels = j.value("labels", std::size_t{0});
      r.label_seed = j.value("label_seed", std::uint64_t{0});
      if (r.kind == DatasetKind::set2) r.fill = j.at("fill").get<double>();
      if (r.file.empty() || r.file.find('/') != std::string::npos) throw ParseError("bad file name \"" + r.file + "\"");
      m.graphs.push_back(std::move(r));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
}

inline Manifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open manifest " + path);
  try {
    return manifest_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Writes every graph of the manifest plus the manifest itself into dir.
inline void write_dataset(const Manifest& m, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw Error("cannot create output directory " + dir);
  for (const GraphRecord& r : m.graphs) save_graph(realize(r), (std::filesystem::path(dir) / r.file).string());
  const auto path = (std::filesystem::path(dir) / kManifestFile).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write manifest " + path);
  out << manifest_to_json(m).dump(1) << "\n";
  if (!out) throw Error("failed writing manifest " + path);
}

}  // namespace walkernel::cli

#endif  // WALKERNEL_CLI_DATASETS_HPP
