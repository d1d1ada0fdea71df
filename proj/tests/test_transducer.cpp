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

#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "walkernel/gram.hpp"
#include "walkernel/generators.hpp"
#include "walkernel/transducer.hpp"
#include "walkernel/transducer_io.hpp"

namespace wk = walkernel;
using wk::Labels;
using wk::SemiringKind;
using wk::Transition;
using wk::Vector;
using wk::WeightedAutomaton;
using wk::WeightedTransducer;
using namespace wk::testing;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

wk::SemiringPtr sr(SemiringKind k) { return wk::semiring_instance(k); }

/// All strings over an alphabet of size s with length exactly l.
std::vector<Labels> strings_of_length(std::size_t s, std::size_t l) {
  std::vector<Labels> out{Labels{}};
  for (std::size_t k = 0; k < l; ++k) {
    std::vector<Labels> next;
    for (const Labels& w : out)
      for (std::size_t a = 0; a < s; ++a) {
        Labels x = w;
        x.push_back(a);
        next.push_back(x);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<Labels> strings_up_to(std::size_t s, std::size_t l) {
  std::vector<Labels> out;
  for (std::size_t k = 0; k <= l; ++k) {
    auto w = strings_of_length(s, k);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

/// Element drawn for a random machine: small integers for tropical (exact
/// arithmetic), moderate reals otherwise.
double random_weight(std::mt19937_64& rng, const wk::Semiring& s) {
  if (s.name == "boolean") return 1.0;
  if (s.name == "tropical") return static_cast<double>(std::uniform_int_distribution<int>(-3, 3)(rng));
  if (s.name == "logarithmic") return std::uniform_real_distribution<double>(-2.0, 0.5)(rng);
  return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

WeightedTransducer random_transducer(std::mt19937_64& rng, const wk::SemiringPtr& s, std::size_t n, std::size_t sigma,
                                     double density = 0.6) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Transition> ts;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < sigma; ++a)
      for (std::size_t b = 0; b < sigma; ++b)
        for (std::size_t j = 0; j < n; ++j)
          if (u(rng) < density) ts.push_back({i, a, b, j, random_weight(rng, *s)});
  Vector p(n), q(n);
  for (double& x : p) x = u(rng) < 0.8 ? random_weight(rng, *s) : s->zero;
  for (double& x : q) x = u(rng) < 0.8 ? random_weight(rng, *s) : s->zero;
  return WeightedTransducer(s, n, sigma, std::move(ts), p, q);
}

WeightedAutomaton random_automaton(std::mt19937_64& rng, const wk::SemiringPtr& s, std::size_t n, std::size_t sigma) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<wk::AutomatonTransition> ts;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < sigma; ++a)
      for (std::size_t j = 0; j < n; ++j)
        if (u(rng) < 0.6) ts.push_back({i, a, j, random_weight(rng, *s)});
  Vector p(n), q(n);
  for (double& x : p) x = random_weight(rng, *s);
  for (double& x : q) x = random_weight(rng, *s);
  return WeightedAutomaton(s, n, sigma, ts, p, q);
}

/// (+) over state sequences s_0..s_l of q[s_0] (.) A_{a1 b1}(s_0, s_1) (.) ... (.) p[s_l].
double output_weight_by_paths(const WeightedTransducer& t, const Labels& alpha, const Labels& beta) {
  const wk::Semiring& s = t.semiring();
  if (alpha.size() != beta.size()) return s.zero;
  std::vector<wk::SemiringMatrix> slices;
  for (std::size_t k = 0; k < alpha.size(); ++k) slices.push_back(t.slice_matrix(alpha[k], beta[k]));
  double total = s.zero;
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t pos, std::size_t state, double acc) {
    if (pos == alpha.size()) {
      total = s.oplus(total, s.odot(acc, t.initial()[state]));
      return;
    }
    for (std::size_t next = 0; next < t.states(); ++next) walk(pos + 1, next, s.odot(acc, slices[pos](state, next)));
  };
  for (std::size_t s0 = 0; s0 < t.states(); ++s0) walk(0, s0, t.final_weights()[s0]);
  return total;
}

void expect_carrier_near(double a, double b, double tol = 1e-12) {
  if (std::isfinite(a) && std::isfinite(b)) {
    EXPECT_NEAR(a, b, tol * std::max(1.0, std::abs(a)));
  } else {
    EXPECT_EQ(a, b);
  }
}

const Labels kA{0}, kAA{0, 0}, kAB{0, 1}, kBA{1, 0};

}  // namespace

TEST(WeightedTransducerType, ConstructionNormalizesTransitions) {
  auto s = sr(SemiringKind::real);
  WeightedTransducer t(s, 2, 2, {{0, 0, 1, 1, 0.5}, {0, 0, 1, 1, 0.25}, {1, 1, 0, 0, 0.0}}, {1.0, 0.0}, {0.0, 1.0});
  ASSERT_EQ(t.transitions().size(), 1u);  // duplicates merged with (+), zero weights dropped
  EXPECT_EQ(t.transitions()[0].weight, 0.75);
  EXPECT_EQ(t.slice(0, 1).size(), 1u);
  EXPECT_TRUE(t.slice(1, 0).empty());
  EXPECT_THROW(WeightedTransducer(s, 2, 2, {{0, 0, 0, 2, 1.0}}, {1.0, 0.0}, {1.0, 0.0}), wk::InvalidArgument);
  EXPECT_THROW(WeightedTransducer(s, 2, 2, {{0, 2, 0, 1, 1.0}}, {1.0, 0.0}, {1.0, 0.0}), wk::InvalidArgument);
  EXPECT_THROW(WeightedTransducer(s, 2, 2, {}, {1.0}, {1.0, 0.0}), wk::DimensionError);
  EXPECT_THROW(WeightedTransducer(sr(SemiringKind::boolean), 1, 1, {{0, 0, 0, 0, 0.5}}, {1.0}, {1.0}),
               wk::InvalidArgument);
}

TEST(OutputWeight, SingleStateUnitMachine) {
  auto s = sr(SemiringKind::real);
  WeightedTransducer t(s, 1, 1, {{0, 0, 0, 0, 1.0}}, {1.0}, {1.0});
  for (std::size_t k = 0; k <= 6; ++k) EXPECT_EQ(wk::output_weight(t, Labels(k, 0), Labels(k, 0)), 1.0);
}

TEST(OutputWeight, EmptySliceAnnihilates) {
  std::mt19937_64 rng(1);
  for (SemiringKind k : {SemiringKind::real, SemiringKind::logarithmic, SemiringKind::tropical}) {
    WeightedTransducer full = random_transducer(rng, sr(k), 3, 2, 0.9);
    std::vector<Transition> ts;
    for (const Transition& x : full.transitions())
      if (!(x.input == 1 && x.output == 0)) ts.push_back(x);
    WeightedTransducer t(sr(k), 3, 2, ts, full.initial(), full.final_weights());
    EXPECT_EQ(wk::output_weight(t, Labels{0, 1, 0}, Labels{0, 0, 1}), sr(k)->zero);
    EXPECT_EQ(wk::output_weight(t, Labels{1}, Labels{0}), sr(k)->zero);
  }
}

TEST(OutputWeight, ChainAcceptsExactlyOnePair) {
  // q selects state 0; 0 --a:a/w--> 1 --b:b/1--> 2; p selects state 2.
  for (SemiringKind k : {SemiringKind::real, SemiringKind::logarithmic, SemiringKind::tropical}) {
    auto s = sr(k);
    const double w = 0.75;
    Vector p(3, s->zero), q(3, s->zero);
    q[0] = s->one;
    p[2] = s->one;
    WeightedTransducer t(s, 3, 2, {{0, 0, 0, 1, w}, {1, 1, 1, 2, s->one}}, p, q);
    for (const Labels& x : strings_up_to(2, 4))
      for (const Labels& y : strings_up_to(2, 4)) {
        const double expected = (x == kAB && y == kAB) ? w : s->zero;
        EXPECT_EQ(wk::output_weight(t, x, y), expected) << wk::to_string(k);
      }
  }
}

TEST(OutputWeight, MatchesPathEnumeration) {
  std::mt19937_64 rng(2);
  for (SemiringKind k : {SemiringKind::real, SemiringKind::logarithmic, SemiringKind::tropical, SemiringKind::boolean}) {
    for (int trial = 0; trial < 3; ++trial) {
      WeightedTransducer t = random_transducer(rng, sr(k), 3, 2);
      for (const Labels& x : strings_up_to(2, 3))
        for (const Labels& y : strings_of_length(2, x.size()))
          expect_carrier_near(wk::output_weight(t, x, y), output_weight_by_paths(t, x, y));
    }
  }
}

TEST(OutputWeight, UnequalLengthsAndBadLabels) {
  std::mt19937_64 rng(3);
  WeightedTransducer t = random_transducer(rng, sr(SemiringKind::logarithmic), 2, 2);
  EXPECT_EQ(wk::output_weight(t, kAB, kA), -kInf);
  EXPECT_EQ(wk::output_weight(t, Labels{}, kA), -kInf);
  EXPECT_THROW(wk::output_weight(t, Labels{2}, Labels{0}), wk::InvalidArgument);
  EXPECT_THROW(wk::output_weight(t, Labels{0}, Labels{5, 0}), wk::InvalidArgument);
}

TEST(AutomatonOutputWeight, EmptyStringIsInitialFinalProduct) {
  std::mt19937_64 rng(4);
  for (SemiringKind k : {SemiringKind::real, SemiringKind::tropical}) {
    WeightedAutomaton a = random_automaton(rng, sr(k), 4, 1);
    const wk::Semiring& s = *sr(k);
    double expected = s.zero;
    for (std::size_t i = 0; i < 4; ++i)
      expected = s.oplus(expected, s.odot(a.as_transducer().final_weights()[i], a.as_transducer().initial()[i]));
    expect_carrier_near(wk::automaton_output_weight(a, 0), expected);
  }
  WeightedAutomaton two = random_automaton(rng, sr(SemiringKind::real), 2, 2);
  EXPECT_THROW(wk::automaton_output_weight(two, 1), wk::InvalidArgument);
}

TEST(AutomatonOutputWeight, RealGraphMatchesMatrixPowers) {
  std::mt19937_64 rng(5);
  wk::Graph g = random_test_graph(rng, 6, 0.4, true);
  Vector p = random_distribution(rng, 6), q = random_distribution(rng, 6);
  for (bool normalize : {true, false}) {
    WeightedAutomaton a = wk::graph_as_automaton(g, p, q, normalize);
    wk::DenseMatrix w = transition_by_definition(g, normalize);
    for (int k = 0; k <= 6; ++k) {
      const double expected = bilinear(matrix_power(w, k), p, q);
      EXPECT_NEAR(wk::automaton_output_weight(a, static_cast<std::size_t>(k)), expected, 1e-12);
    }
  }
}

TEST(AutomatonOutputWeight, TropicalIsBestWalkOnWeightedPath) {
  std::mt19937_64 rng(6);
  auto s = sr(SemiringKind::tropical);
  for (std::size_t n = 2; n <= 5; ++n) {
    // Weighted path 0 - 1 - ... - n-1, both directions share the edge weight.
    std::vector<wk::AutomatonTransition> ts;
    std::vector<std::vector<double>> w(n, std::vector<double>(n, -kInf));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double x = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
      ts.push_back({i, 0, i + 1, x});
      ts.push_back({i + 1, 0, i, x});
      w[i][i + 1] = w[i + 1][i] = x;
    }
    WeightedAutomaton a(s, n, 1, ts, Vector(n, 0.0), Vector(n, 0.0));
    for (std::size_t k = 0; k <= 4; ++k) {
      double best = -kInf;
      std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t at, std::size_t left, double acc) {
        if (left == 0) {
          best = std::max(best, acc);
          return;
        }
        for (std::size_t j = 0; j < n; ++j)
          if (w[at][j] != -kInf) walk(j, left - 1, acc + w[at][j]);
      };
      for (std::size_t v = 0; v < n; ++v) walk(v, k, 0.0);
      EXPECT_NEAR(wk::automaton_output_weight(a, k), best, 1e-12) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Inverse, IsAnInvolutionAndSwapsTapes) {
  std::mt19937_64 rng(7);
  for (SemiringKind k : {SemiringKind::real, SemiringKind::logarithmic, SemiringKind::tropical}) {
    WeightedTransducer t = random_transducer(rng, sr(k), 3, 2, 0.4);
    WeightedTransducer ti = wk::inverse(t);
    EXPECT_EQ(wk::inverse(ti), t);
    for (const Labels& x : strings_up_to(2, 3))
      for (const Labels& y : strings_of_length(2, x.size()))
        EXPECT_EQ(wk::output_weight(ti, x, y), wk::output_weight(t, y, x));
  }
}

TEST(Inverse, SymmetricLabelsAreFixed) {
  std::mt19937_64 rng(8);
  WeightedTransducer base = random_transducer(rng, sr(SemiringKind::real), 3, 3, 0.5);
  std::vector<Transition> ts;
  for (const Transition& x : base.transitions()) {
    if (x.input > x.output) continue;
    ts.push_back(x);
    if (x.input != x.output) ts.push_back({x.from, x.output, x.input, x.to, x.weight});
  }
  WeightedTransducer t(base.semiring_ptr(), 3, 3, ts, base.initial(), base.final_weights());
  EXPECT_EQ(wk::inverse(t), t);
}

TEST(Compose, StateCountAndSingleLetterKronecker) {
  std::mt19937_64 rng(9);
  WeightedTransducer t = random_transducer(rng, sr(SemiringKind::real), 3, 2);
  WeightedTransducer u = random_transducer(rng, sr(SemiringKind::real), 4, 2);
  EXPECT_EQ(wk::compose(t, u).states(), 12u);
  wk::Graph g = random_test_graph(rng, 5, 0.5);
  Vector p = random_distribution(rng, 5), q = random_distribution(rng, 5);
  WeightedAutomaton a = wk::graph_as_automaton(g, p, q);
  WeightedTransducer c = wk::compose(a.as_transducer(), a.as_transducer());
  wk::SemiringMatrix slice = a.as_transducer().slice_matrix(0, 0);
  EXPECT_EQ(c.slice_matrix(0, 0), wk::semiring_kron(slice, slice));
  wk::DenseMatrix w = transition_by_definition(g, true);
  EXPECT_LE(wk::max_abs_diff(wk::apply_morphism(c.slice_matrix(0, 0)), kron_by_definition(w, w)), 1e-15);
  EXPECT_EQ(c.initial(), kron_vector_by_definition(p, p));
  EXPECT_EQ(c.final_weights(), kron_vector_by_definition(q, q));
}

TEST(Compose, MatchesIntermediateStringEnumeration) {
  std::mt19937_64 rng(10);
  for (SemiringKind k : {SemiringKind::real, SemiringKind::logarithmic, SemiringKind::tropical, SemiringKind::boolean}) {
    const wk::Semiring& s = *sr(k);
    for (int trial = 0; trial < 3; ++trial) {
      WeightedTransducer t = random_transducer(rng, sr(k), 2, 2), u = random_transducer(rng, sr(k), 2, 2);
      WeightedTransducer c = wk::compose(t, u);
      for (const Labels& x : strings_up_to(2, 3))
        for (const Labels& y : strings_of_length(2, x.size())) {
          double expected = s.zero;
          for (const Labels& z : strings_of_length(2, x.size()))
            expected = s.oplus(expected, s.odot(wk::output_weight(t, x, z), wk::output_weight(u, z, y)));
          expect_carrier_near(wk::output_weight(c, x, y), expected, 1e-11);
        }
    }
  }
}

TEST(Compose, Associativity) {
  std::mt19937_64 rng(11);
  // Integer tropical weights make every product exact, so the machines agree bitwise.
  auto trop = sr(SemiringKind::tropical);
  WeightedTransducer a = random_transducer(rng, trop, 2, 2), b = random_transducer(rng, trop, 2, 2),
                     c = random_transducer(rng, trop, 3, 2);
  EXPECT_EQ(wk::compose(wk::compose(a, b), c), wk::compose(a, wk::compose(b, c)));
  auto real = sr(SemiringKind::real);
  WeightedTransducer x = random_transducer(rng, real, 2, 2), y = random_transducer(rng, real, 2, 2),
                     z = random_transducer(rng, real, 2, 2);
  WeightedTransducer l = wk::compose(wk::compose(x, y), z), r = wk::compose(x, wk::compose(y, z));
  for (const Labels& s1 : strings_up_to(2, 3))
    for (const Labels& s2 : strings_of_length(2, s1.size()))
      EXPECT_NEAR(wk::output_weight(l, s1, s2), wk::output_weight(r, s1, s2), 1e-12);
}

TEST(Compose, RejectsMismatchedMachines) {
  std::mt19937_64 rng(12);
  WeightedTransducer t = random_transducer(rng, sr(SemiringKind::real), 2, 2);
  EXPECT_THROW(wk::compose(t, random_transducer(rng, sr(SemiringKind::real), 2, 3)), wk::InvalidArgument);
  EXPECT_THROW(wk::compose(t, random_transducer(rng, sr(SemiringKind::tropical), 2, 2)), wk::InvalidArgument);
}

TEST(RationalKernel, IdentityMorphismReturnsRawWeight) {
  std::mt19937_64 rng(13);
  WeightedTransducer t = random_transducer(rng, sr(SemiringKind::real), 3, 2);
  EXPECT_EQ(wk::rational_kernel(t, kAB, kBA), wk::output_weight(t, kAB, kBA));
  EXPECT_EQ(wk::rational_kernel(t, kAB, kA), 0.0);
  WeightedTransducer l = random_transducer(rng, sr(SemiringKind::logarithmic), 3, 2);
  EXPECT_DOUBLE_EQ(wk::rational_kernel(l, kAB, kBA), std::exp(wk::output_weight(l, kAB, kBA)));
  EXPECT_EQ(wk::rational_kernel(l, kAA, kA), 0.0);
  WeightedTransducer tr = random_transducer(rng, sr(SemiringKind::tropical), 2, 2);
  EXPECT_THROW(wk::rational_kernel(tr, kA, kA), wk::InvalidArgument);
}

TEST(RationalKernel, SelfInverseCompositionIsPsd) {
  for (SemiringKind k : {SemiringKind::real, SemiringKind::logarithmic}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      std::mt19937_64 rng(100 + seed);
      WeightedTransducer t = random_transducer(rng, sr(k), 3, 2);
      WeightedTransducer tt = wk::compose(t, wk::inverse(t));
      std::vector<Labels> set{kA, kAA, kAB, kBA};
      if (seed % 2 == 1) set = strings_up_to(2, 3);
      auto g = wk::gram_matrix<Labels>([&](const Labels& x, const Labels& y) { return wk::rational_kernel(tt, x, y); },
                                       std::span<const Labels>(set));
      EXPECT_LE(wk::max_abs_diff(g.values, g.values.transpose()), 1e-12 * std::max(1.0, g.values.max_abs()));
      auto report = wk::psd_check(g);
      EXPECT_TRUE(report.psd) << wk::to_string(k) << " seed " << seed << " min eig " << report.min_eigenvalue;
      EXPECT_GE(report.min_eigenvalue, -1e-9 * std::max(1.0, report.trace));
    }
  }
}

TEST(RationalKernel, MorphismDistributesOverKroneckerSums) {
  // psi((+)_c A_ac (x) A_bc) == sum_c psi(A_ac) (x) psi(A_bc) with psi = exp.
  std::mt19937_64 rng(14);
  WeightedTransducer t = random_transducer(rng, sr(SemiringKind::logarithmic), 3, 3, 0.7);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      wk::SemiringMatrix acc(t.semiring_ptr(), 9, 9);
      wk::DenseMatrix ref(9, 9);
      for (std::size_t c = 0; c < 3; ++c) {
        acc = wk::semiring_add(acc, wk::semiring_kron(t.slice_matrix(a, c), t.slice_matrix(b, c)));
        ref = ref + kron_by_definition(wk::apply_morphism(t.slice_matrix(a, c)), wk::apply_morphism(t.slice_matrix(b, c)));
      }
      EXPECT_LE(wk::max_abs_diff(wk::apply_morphism(acc), ref), 1e-10 * std::max(1.0, ref.max_abs()));
    }
}

TEST(TransducerKernel, UnitMachinesCountStrings) {
  auto s = sr(SemiringKind::real);
  for (std::size_t sigma : {1u, 2u, 3u}) {
    std::vector<wk::AutomatonTransition> loops;
    std::vector<Transition> ident;
    for (std::size_t a = 0; a < sigma; ++a) {
      loops.push_back({0, a, 0, 1.0});
      ident.push_back({0, a, a, 0, 1.0});
    }
    WeightedAutomaton unit(s, 1, sigma, loops, {1.0}, {1.0});
    WeightedTransducer t(s, 1, sigma, ident, {1.0}, {1.0});
    for (std::size_t l_max = 0; l_max <= 6; ++l_max) {
      const double expected = sigma == 1 ? static_cast<double>(l_max + 1)
                                         : (std::pow(static_cast<double>(sigma), static_cast<double>(l_max + 1)) - 1.0) /
                                               static_cast<double>(sigma - 1);
      EXPECT_EQ(wk::transducer_kernel(unit, unit, t, l_max), expected);
    }
  }
}

TEST(TransducerKernel, EmptyStringTerm) {
  std::mt19937_64 rng(15);
  auto s = sr(SemiringKind::real);
  WeightedAutomaton a = random_automaton(rng, s, 2, 2), b = random_automaton(rng, s, 3, 2);
  WeightedTransducer t = random_transducer(rng, s, 2, 2);
  WeightedTransducer c = wk::compose(wk::compose(a.as_transducer(), t), b.as_transducer());
  EXPECT_NEAR(wk::transducer_kernel(a, b, t, 0), wk::dot(c.final_weights(), c.initial()), 1e-15);
}

TEST(TransducerKernel, MatchesPairEnumeration) {
  std::mt19937_64 rng(16);
  for (SemiringKind k : {SemiringKind::real, SemiringKind::logarithmic}) {
    auto s = sr(k);
    const wk::Morphism& psi = *s->morphism;
    for (int trial = 0; trial < 3; ++trial) {
      WeightedAutomaton a = random_automaton(rng, s, 2, 2), b = random_automaton(rng, s, 2, 2);
      WeightedTransducer t = random_transducer(rng, s, 2, 2);
      for (std::size_t l_max = 0; l_max <= 3; ++l_max) {
        double expected = 0.0;
        for (const Labels& x : strings_up_to(2, l_max))
          for (const Labels& y : strings_of_length(2, x.size()))
            expected += psi.forward(
                s->odot(s->odot(wk::output_weight(a, x), wk::output_weight(t, x, y)), wk::output_weight(b, y)));
        EXPECT_NEAR(wk::transducer_kernel(a, b, t, l_max), expected, 1e-11 * std::max(1.0, std::abs(expected)));
      }
    }
  }
}

TEST(TransducerKernel, ClosedFormIsTheUntruncatedLimit) {
  auto s = sr(SemiringKind::real);
  // Single states with letter weight c: sum_l (sigma c)^l = 1 / (1 - sigma c).
  const double c = 0.2;
  std::vector<wk::AutomatonTransition> loops{{0, 0, 0, 1.0}, {0, 1, 0, 1.0}};
  WeightedAutomaton unit(s, 1, 2, loops, {1.0}, {1.0});
  WeightedTransducer t(s, 1, 2, {{0, 0, 0, 0, c}, {0, 1, 1, 0, c}}, {1.0}, {1.0});
  EXPECT_NEAR(wk::transducer_kernel_closed_form(unit, unit, t), 1.0 / (1.0 - 2.0 * c), 1e-14);
  EXPECT_NEAR(wk::transducer_kernel(unit, unit, t, 200), 1.0 / (1.0 - 2.0 * c), 1e-14);
  WeightedTransducer big(s, 1, 2, {{0, 0, 0, 0, 0.5}, {0, 1, 1, 0, 0.5}}, {1.0}, {1.0});
  EXPECT_THROW(wk::transducer_kernel_closed_form(unit, unit, big), wk::DivergenceError);
  // Random machine with small weights.
  std::mt19937_64 rng(17);
  WeightedAutomaton a = random_automaton(rng, s, 2, 2), b = random_automaton(rng, s, 3, 2);
  std::vector<Transition> small;
  WeightedTransducer base = random_transducer(rng, s, 2, 2);
  for (const Transition& x : base.transitions()) {
    Transition y = x;
    y.weight *= 0.1;
    small.push_back(y);
  }
  WeightedTransducer ts(s, 2, 2, small, {1.0, 0.5}, {0.5, 1.0});
  EXPECT_NEAR(wk::transducer_kernel(a, b, ts, 400), wk::transducer_kernel_closed_form(a, b, ts), 1e-10);
  WeightedAutomaton la = random_automaton(rng, sr(SemiringKind::logarithmic), 1, 2);
  WeightedTransducer lt = random_transducer(rng, sr(SemiringKind::logarithmic), 1, 2);
  EXPECT_THROW(wk::transducer_kernel_closed_form(la, la, lt), wk::InvalidArgument);
}

TEST(RwEquivalence, TwoVertexGraphs) {
  wk::Graph k2(2, {{0, 1}});
  auto r = wk::rw_equivalence_check(k2, k2, 4);
  EXPECT_TRUE(r.pass);
  // D^-1 A is a permutation, so every term q^T W^k p with uniform ends is 1/4.
  EXPECT_NEAR(r.walk_sum, 1.0, 1e-15);
  EXPECT_NEAR(r.automaton_sum, 1.0, 1e-15);
}

TEST(RwEquivalence, SingleTermIsOneStepForm) {
  std::mt19937_64 rng(18);
  wk::Graph g = random_test_graph(rng, 5, 0.4), h = random_test_graph(rng, 4, 0.5);
  auto r = wk::rw_equivalence_check(g, h, 1);
  EXPECT_TRUE(r.pass);
  const std::size_t n = 20;
  const double expected = bilinear(product_weight_by_definition(g, h, true), Vector(n, 1.0 / n), Vector(n, 1.0 / n));
  EXPECT_NEAR(r.walk_sum, expected, 1e-14);
  EXPECT_NEAR(r.automaton_sum, expected, 1e-14);
}

TEST(RwEquivalence, EdgelessFactorGivesZero) {
  std::mt19937_64 rng(19);
  wk::Graph g = random_test_graph(rng, 5, 0.4), empty(3, {});
  auto r = wk::rw_equivalence_check(g, empty, 5);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.walk_sum, 0.0);
  EXPECT_EQ(r.automaton_sum, 0.0);
}

TEST(RwEquivalence, RandomSetOnePairs) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    for (unsigned k1 = 1; k1 <= 4; ++k1) {
      const unsigned k2 = 1 + static_cast<unsigned>((seed + k1) % 4);
      wk::Graph g = wk::random_graph_set1(k1, {seed}), h = wk::random_graph_set1(k2, {seed + 1000});
      for (bool normalize : {true, false}) {
        auto r = wk::rw_equivalence_check(g, h, normalize ? 10 : 5, 1e-10, normalize);
        EXPECT_TRUE(r.pass) << "seed " << seed << " k=" << k1 << "," << k2 << " diff "
                            << r.automaton_sum - r.walk_sum;
      }
    }
  }
}

TEST(TransducerIo, RoundTrip) {
  std::mt19937_64 rng(20);
  for (SemiringKind k : {SemiringKind::real, SemiringKind::boolean, SemiringKind::logarithmic, SemiringKind::tropical}) {
    WeightedTransducer t = random_transducer(rng, sr(k), 3, 2, 0.5);
    EXPECT_EQ(wk::parse_transducer(wk::write_transducer(t)), t) << wk::to_string(k);
  }
  std::mt19937_64 rng2(21);
  WeightedTransducer t = random_transducer(rng2, sr(SemiringKind::logarithmic), 2, 2);
  const auto path = std::filesystem::temp_directory_path() / "walkernel_transducer_roundtrip.txt";
  wk::save_transducer(t, path.string());
  EXPECT_EQ(wk::load_transducer(path.string()), t);
  std::filesystem::remove(path);
}

TEST(TransducerIo, ParsesDocumentedFormat) {
  const std::string text =
      "# chain accepting (ab, ab)\n"
      "states=3 alphabet=2 semiring=real\n"
      "0 0 0 1 0.75\n"
      "1 1 1 2 1\n"
      "initial: 2 1\n"
      "final: 0 1\n";
  WeightedTransducer t = wk::parse_transducer(text);
  EXPECT_EQ(t.states(), 3u);
  EXPECT_EQ(wk::output_weight(t, kAB, kAB), 0.75);
  EXPECT_EQ(wk::output_weight(t, kAB, kBA), 0.0);
  WeightedTransducer l = wk::parse_transducer("states=1 alphabet=1 semiring=logarithmic\ninitial: 0 0\nfinal: 0 inf\n");
  EXPECT_EQ(l.final_weights()[0], kInf);
}

TEST(TransducerIo, ReportsLineNumbers) {
  auto expect_line = [](const std::string& text, const std::string& needle) {
    try {
      wk::parse_transducer(text);
      ADD_FAILURE() << "no error for: " << text;
    } catch (const wk::ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  expect_line("states=2 alphabet=2\n", "line 1");
  expect_line("states=2 alphabet=2 semiring=viterbi\n", "line 1");
  expect_line("states=2 alphabet=2 semiring=real\n0 0 0 1\n", "line 2");
  expect_line("states=2 alphabet=2 semiring=real\n0 0 0 2 1.0\n", "line 2");
  expect_line("states=2 alphabet=2 semiring=real\n\n0 3 0 1 1.0\n", "line 3");
  expect_line("states=2 alphabet=2 semiring=boolean\n0 0 0 1 0.5\n", "line 2");
  expect_line("states=2 alphabet=2 semiring=real\n0 0 0 1 abc\n", "line 2");
  expect_line("states=2 alphabet=2 semiring=real\ninitial: -1 1\n", "line 2");
  expect_line("", "missing header");
  EXPECT_THROW(wk::load_transducer("/nonexistent/t.txt"), wk::ParseError);
}
