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


#ifndef WALKERNEL_TRANSDUCER_IO_HPP
#define WALKERNEL_TRANSDUCER_IO_HPP

#include <charconv>
#include <cstddef>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "walkernel/errors.hpp"
#include "walkernel/semiring.hpp"
#include "walkernel/transducer.hpp"

namespace walkernel {

/// Transducer text format:
///   states=<n> alphabet=<s> semiring=<real|boolean|logarithmic|tropical>
///   <src> <a> <b> <dst> <weight>        one line per transition
///   initial: <state> <weight>
///   final: <state> <weight>
/// Blank lines and lines starting with '#' are ignored. States without an
/// initial or final line get the semiring zero. Weights accept inf and -inf.

namespace detail {

inline std::string format_weight(double w) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), w);
  return std::string(buf, res.ptr);
}

}  // namespace detail

inline WeightedTransducer parse_transducer(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0, s = 0;
  SemiringPtr sr;
  std::vector<Transition> ts;
  Vector p, q;
  auto fail = [&](const std::string& msg) {
    throw ParseError("transducer line " + std::to_string(line_no) + ": " + msg);
  };
  auto index = [&](const std::string& tok) {
    if (tok.empty() || tok[0] == '-' || tok[0] == '+') fail("bad index \"" + tok + "\"");
    std::size_t v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) fail("bad index \"" + tok + "\"");
    return v;
  };
  auto weight = [&](const std::string& tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size()) fail("bad weight \"" + tok + "\"");
    if (!sr->contains(v)) fail("weight " + tok + " is not in the " + sr->name + " carrier");
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (!have_header) {
      bool got_n = false, got_s = false, got_sr = false;
      for (const std::string& t : tok) {
        const auto eq = t.find('=');
        if (eq == std::string::npos) fail("expected key=value in header, got \"" + t + "\"");
        const std::string key = t.substr(0, eq), val = t.substr(eq + 1);
        if (key == "states") {
          n = index(val);
          got_n = true;
        } else if (key == "alphabet") {
          s = index(val);
          got_s = true;
        } else if (key == "semiring") {
          try {
            sr = semiring_instance(val);
          } catch (const InvalidArgument& e) {
            fail(e.what());
          }
          got_sr = true;
        } else {
          fail("unknown header key \"" + key + "\"");
        }
      }
      if (!got_n || !got_s || !got_sr) fail("header needs states=, alphabet= and semiring=");
      have_header = true;
      p.assign(n, sr->zero);
      q.assign(n, sr->zero);
      continue;
    }
    if (tok[0] == "initial:" || tok[0] == "final:") {
      if (tok.size() != 3) fail("expected \"" + tok[0] + " <state> <weight>\"");
      const std::size_t st = index(tok[1]);
      if (st >= n) fail("state " + tok[1] + " out of range");
      (tok[0] == "initial:" ? p : q)[st] = weight(tok[2]);
      continue;
    }
    if (tok.size() != 5) fail("expected \"<src> <a> <b> <dst> <weight>\"");
    Transition t{index(tok[0]), index(tok[1]), index(tok[2]), index(tok[3]), weight(tok[4])};
    if (t.from >= n || t.to >= n) fail("state out of range");
    if (t.input >= s || t.output >= s) fail("label out of range");
    ts.push_back(t);
  }
  if (!have_header) throw ParseError("transducer: missing header line");
  try {
    return WeightedTransducer(sr, n, s, std::move(ts), std::move(p), std::move(q));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("transducer: ") + e.what());
  }
}

inline std::string write_transducer(const WeightedTransducer& t) {
  std::ostringstream out;
  out << "states=" << t.states() << " alphabet=" << t.alphabet() << " semiring=" << t.semiring().name << "\n";
  for (const Transition& x : t.transitions()) {
    out << x.from << ' ' << x.input << ' ' << x.output << ' ' << x.to << ' ' << detail::format_weight(x.weight) << "\n";
  }
  for (std::size_t i = 0; i < t.states(); ++i)
    if (!t.semiring().is_zero(t.initial()[i])) out << "initial: " << i << ' ' << detail::format_weight(t.initial()[i]) << "\n";
  for (std::size_t i = 0; i < t.states(); ++i)
    if (!t.semiring().is_zero(t.final_weights()[i]))
      out << "final: " << i << ' ' << detail::format_weight(t.final_weights()[i]) << "\n";
  return out.str();
}

inline WeightedTransducer load_transducer(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open transducer file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_transducer(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void save_transducer(const WeightedTransducer& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write transducer file " + path);
  out << write_transducer(t);
  if (!out) throw Error("failed writing transducer file " + path);
}

}  // namespace walkernel

#endif  // WALKERNEL_TRANSDUCER_IO_HPP
