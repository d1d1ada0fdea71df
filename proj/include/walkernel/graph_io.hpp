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


#ifndef WALKERNEL_GRAPH_IO_HPP
#define WALKERNEL_GRAPH_IO_HPP

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "walkernel/errors.hpp"
#include "walkernel/graph.hpp"

namespace walkernel {

/// Graph document, version 1:
///   {"format": "walkernel-graph", "version": 1, "n": <count>,
///    "directed": <bool>, "label_mode": "none" | "discrete" | "vector",
///    "d": <label alphabet size or feature length>,
///    "edges": [[i, j, w], ...]}
/// Discrete edges append a label id, vector edges append a feature array.
inline constexpr const char* kGraphFormat = "walkernel-graph";
inline constexpr int kGraphFormatVersion = 1;

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) {
    nlohmann::json row = {e.source, e.target, e.weight};
    if (g.label_mode() == LabelMode::discrete) row.push_back(e.label);
    if (g.label_mode() == LabelMode::vector) row.push_back(e.features);
    edges.push_back(std::move(row));
  }
  return nlohmann::json{{"format", kGraphFormat},      {"version", kGraphFormatVersion},
                        {"n", g.n()},                  {"directed", g.directed()},
                        {"label_mode", to_string(g.label_mode())}, {"d", g.label_dim()},
                        {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw ParseError("graph document: expected an object");
    if (doc.contains("format") && doc.at("format") != kGraphFormat) {
      throw ParseError("graph document: unknown format " + doc.at("format").dump());
    }
    if (doc.contains("version") && doc.at("version").get<int>() != kGraphFormatVersion) {
      throw ParseError("graph document: unsupported version " + doc.at("version").dump());
    }
    const auto n = doc.at("n").get<std::size_t>();
    const bool directed = doc.value("directed", false);
    const std::string mode_name = doc.value("label_mode", std::string("none"));
    LabelMode mode;
    if (mode_name == "none") mode = LabelMode::none;
    else if (mode_name == "discrete") mode = LabelMode::discrete;
    else if (mode_name == "vector") mode = LabelMode::vector;
    else throw ParseError("graph document: unknown label_mode \"" + mode_name + "\"");
    const auto d = doc.value("d", std::size_t{0});
    std::vector<Edge> edges;
    for (const auto& row : doc.at("edges")) {
      if (!row.is_array() || row.size() < 2) throw ParseError("graph document: edge must be [i, j, w, label?]");
      Edge e;
      e.source = row.at(0).get<std::size_t>();
      e.target = row.at(1).get<std::size_t>();
      if (row.size() > 2) e.weight = row.at(2).get<double>();
      if (mode == LabelMode::discrete) {
        if (row.size() < 4) throw ParseError("graph document: discrete edge without label");
        e.label = row.at(3).get<std::size_t>();
      } else if (mode == LabelMode::vector) {
        if (row.size() < 4) throw ParseError("graph document: vector edge without features");
        e.features = row.at(3).get<std::vector<double>>();
      }
      edges.push_back(std::move(e));
    }
    return Graph(n, std::move(edges), directed, mode, d);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("graph document: ") + ex.what());
  } catch (const InvalidArgument& ex) {
    throw ParseError(std::string("graph document: ") + ex.what());
  }
}

inline std::string write_graph_json(const Graph& g) { return graph_to_json(g).dump(1) + "\n"; }

inline Graph read_graph_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("graph document: ") + ex.what());
  }
  return graph_from_json(doc);
}

/// Edge list: a "#n=<count>" header, then one "i j [w] [label]" per line.
/// Other lines starting with '#' and blank lines are ignored. A label on
/// any line makes the graph discrete with alphabet max(label)+1; unlabeled
/// lines then take label 0.
inline Graph read_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_n = false, labeled = false;
  std::size_t n = 0, max_label = 0;
  std::vector<Edge> edges;
  auto fail = [&](const std::string& msg) {
    throw ParseError("edge list line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      if (line.compare(first, 3, "#n=") == 0) {
        try {
          n = std::stoul(line.substr(first + 3));
        } catch (const std::exception&) {
          fail("bad vertex count header");
        }
        have_n = true;
      }
      continue;
    }
    if (!have_n) fail("edge before the #n=<count> header");
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.size() < 2 || tok.size() > 4) fail("expected \"i j [w] [label]\"");
    Edge e;
    try {
      std::size_t pos = 0;
      auto whole = [&](const std::string& s) {
        if (s.empty() || s[0] == '-') fail("negative index \"" + s + "\"");
        auto v = std::stoul(s, &pos);
        if (pos != s.size()) fail("bad integer \"" + s + "\"");
        return static_cast<std::size_t>(v);
      };
      e.source = whole(tok[0]);
      e.target = whole(tok[1]);
      if (tok.size() > 2) {
        e.weight = std::stod(tok[2], &pos);
        if (pos != tok[2].size()) fail("bad weight \"" + tok[2] + "\"");
      }
      if (tok.size() > 3) {
        e.label = whole(tok[3]);
        labeled = true;
        max_label = std::max(max_label, e.label);
      }
    } catch (const std::logic_error&) {
      fail("malformed number");
    }
    edges.push_back(std::move(e));
  }
  if (!have_n) throw ParseError("edge list: missing #n=<count> header");
  try {
    if (labeled) return Graph(n, std::move(edges), false, LabelMode::discrete, max_label + 1);
    return Graph(n, std::move(edges));
  } catch (const InvalidArgument& ex) {
    throw ParseError(std::string("edge list: ") + ex.what());
  }
}

inline std::string write_edge_list(const Graph& g) {
  if (g.directed()) throw InvalidArgument("write_edge_list: the edge-list format is undirected");
  if (g.label_mode() == LabelMode::vector) throw InvalidArgument("write_edge_list: vector labels need the JSON format");
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "#n=" << g.n() << "\n";
  for (const Edge& e : g.edges()) {
    out << e.source << ' ' << e.target << ' ' << e.weight;
    if (g.label_mode() == LabelMode::discrete) out << ' ' << e.label;
    out << "\n";
  }
  return out.str();
}

/// Parses either format; documents starting with '{' are JSON.
inline Graph parse_graph(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return read_graph_json(text);
  return read_edge_list(text);
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open graph file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_graph(buf.str());
  } catch (const ParseError& ex) {
    throw ParseError(path + ": " + ex.what());
  }
}

inline void save_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write graph file " + path);
  out << write_graph_json(g);
  if (!out) throw Error("failed writing graph file " + path);
}

}  // namespace walkernel

#endif  // WALKERNEL_GRAPH_IO_HPP
