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


#ifndef WALKERNEL_TRANSDUCER_HPP
#define WALKERNEL_TRANSDUCER_HPP

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "walkernel/dense_matrix.hpp"
#include "walkernel/errors.hpp"
#include "walkernel/graph.hpp"
#include "walkernel/product_graph.hpp"
#include "walkernel/random_walk.hpp"
#include "walkernel/semiring.hpp"
#include "walkernel/solvers.hpp"

namespace walkernel {

/// One entry A_ab(from, to) = weight of the transition tensor.
struct Transition {
  std::size_t from = 0;
  std::size_t input = 0;
  std::size_t output = 0;
  std::size_t to = 0;
  double weight = 0.0;

  bool operator==(const Transition&) const = default;
};

using Labels = std::vector<std::size_t>;

/// Weighted finite-state transducer without epsilon transitions. The
/// transitions are kept sorted by (input, output, from, to) so that each
/// slice A_ab is a contiguous range; duplicate entries are merged with (+)
/// and entries equal to the semiring zero are dropped.
class WeightedTransducer {
 public:
  WeightedTransducer(SemiringPtr semiring, std::size_t states, std::size_t alphabet, std::vector<Transition> transitions,
                     Vector initial, Vector final_weights)
      : s_(std::move(semiring)), n_(states), sigma_(alphabet), p_(std::move(initial)), q_(std::move(final_weights)) {
    if (!s_) throw InvalidArgument("WeightedTransducer: missing semiring");
    if (alphabet == 0) throw InvalidArgument("WeightedTransducer: alphabet must be nonempty");
    if (p_.size() != n_ || q_.size() != n_) {
      throw DimensionError("WeightedTransducer: initial/final weights must have one entry per state");
    }
    for (double x : p_) detail::require_member(*s_, x, "WeightedTransducer initial weight");
    for (double x : q_) detail::require_member(*s_, x, "WeightedTransducer final weight");
    for (const Transition& t : transitions) {
      if (t.from >= n_ || t.to >= n_) {
        throw InvalidArgument("WeightedTransducer: transition state out of range (" + std::to_string(t.from) + " -> " +
                              std::to_string(t.to) + ", " + std::to_string(n_) + " states)");
      }
      if (t.input >= sigma_ || t.output >= sigma_) {
        throw InvalidArgument("WeightedTransducer: transition label outside the alphabet of size " +
                              std::to_string(sigma_));
      }
      detail::require_member(*s_, t.weight, "WeightedTransducer transition weight");
    }
    auto key = [](const Transition& t) { return std::tie(t.input, t.output, t.from, t.to); };
    std::sort(transitions.begin(), transitions.end(), [&](const Transition& a, const Transition& b) { return key(a) < key(b); });
    for (const Transition& t : transitions) {
      if (!t_.empty() && key(t_.back()) == key(t)) {
        t_.back().weight = s_->oplus(t_.back().weight, t.weight);
      } else {
        t_.push_back(t);
      }
    }
    std::erase_if(t_, [this](const Transition& t) { return s_->is_zero(t.weight); });
    slice_.assign(sigma_ * sigma_ + 1, 0);
    for (const Transition& t : t_) ++slice_[t.input * sigma_ + t.output + 1];
    for (std::size_t k = 1; k < slice_.size(); ++k) slice_[k] += slice_[k - 1];
  }

  const Semiring& semiring() const noexcept { return *s_; }
  const SemiringPtr& semiring_ptr() const noexcept { return s_; }
  std::size_t states() const noexcept { return n_; }
  std::size_t alphabet() const noexcept { return sigma_; }
  std::span<const Transition> transitions() const noexcept { return t_; }
  const Vector& initial() const noexcept { return p_; }
  const Vector& final_weights() const noexcept { return q_; }

  /// Transitions reading a and writing b.
  std::span<const Transition> slice(std::size_t a, std::size_t b) const {
    require_label(a);
    require_label(b);
    const std::size_t k = a * sigma_ + b;
    return std::span<const Transition>(t_).subspan(slice_[k], slice_[k + 1] - slice_[k]);
  }

  /// y = A_ab x, y_i = (+)_j A_ab(i, j) (.) x_j.
  Vector apply(std::size_t a, std::size_t b, std::span<const double> x) const {
    Vector y(n_, s_->zero);
    for (const Transition& t : slice(a, b)) y[t.from] = s_->oplus(y[t.from], s_->odot(t.weight, x[t.to]));
    return y;
  }

  /// The slice A_ab as a dense semiring matrix.
  SemiringMatrix slice_matrix(std::size_t a, std::size_t b) const {
    SemiringMatrix m(s_, n_, n_);
    for (const Transition& t : slice(a, b)) m(t.from, t.to) = s_->oplus(m(t.from, t.to), t.weight);
    return m;
  }

  void require_label(std::size_t a) const {
    if (a >= sigma_) {
      throw InvalidArgument("label " + std::to_string(a) + " is outside the alphabet of size " + std::to_string(sigma_));
    }
  }

  bool operator==(const WeightedTransducer& o) const {
    return s_->name == o.s_->name && n_ == o.n_ && sigma_ == o.sigma_ && t_ == o.t_ && p_ == o.p_ && q_ == o.q_;
  }

 private:
  SemiringPtr s_;
  std::size_t n_;
  std::size_t sigma_;
  std::vector<Transition> t_;
  std::vector<std::size_t> slice_;
  Vector p_;
  Vector q_;
};

/// Transducer with identical input and output labels.
struct AutomatonTransition {
  std::size_t from = 0;
  std::size_t label = 0;
  std::size_t to = 0;
  double weight = 0.0;
};

class WeightedAutomaton {
 public:
  WeightedAutomaton(SemiringPtr semiring, std::size_t states, std::size_t alphabet,
                    const std::vector<AutomatonTransition>& transitions, Vector initial, Vector final_weights)
      : t_(std::move(semiring), states, alphabet, lift(transitions), std::move(initial), std::move(final_weights)) {}

  const WeightedTransducer& as_transducer() const noexcept { return t_; }
  std::size_t states() const noexcept { return t_.states(); }
  std::size_t alphabet() const noexcept { return t_.alphabet(); }
  const Semiring& semiring() const noexcept { return t_.semiring(); }

 private:
  static std::vector<Transition> lift(const std::vector<AutomatonTransition>& ts) {
    std::vector<Transition> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back({t.from, t.label, t.label, t.to, t.weight});
    return out;
  }
  WeightedTransducer t_;
};

/// q^T (.) A_{a1 b1} (.) ... (.) A_{al bl} (.) p, evaluated right to left with
/// mat-vec products. Strings of different lengths get the semiring zero.
inline double output_weight(const WeightedTransducer& t, std::span<const std::size_t> alpha,
                            std::span<const std::size_t> beta) {
  for (std::size_t a : alpha) t.require_label(a);
  for (std::size_t b : beta) t.require_label(b);
  if (alpha.size() != beta.size()) return t.semiring().zero;
  Vector x = t.initial();
  for (std::size_t k = alpha.size(); k-- > 0;) x = t.apply(alpha[k], beta[k], x);
  return semiring_dot(t.semiring(), t.final_weights(), x);
}

inline double output_weight(const WeightedAutomaton& a, std::span<const std::size_t> alpha) {
  return output_weight(a.as_transducer(), alpha, alpha);
}

/// q^T (.) A^k (.) p for a single-letter automaton.
inline double automaton_output_weight(const WeightedAutomaton& a, std::size_t k) {
  if (a.alphabet() != 1) throw InvalidArgument("automaton_output_weight: the alphabet must have one letter");
  return output_weight(a, Labels(k, 0));
}

/// Swaps input and output labels: B_ab = A_ba.
inline WeightedTransducer inverse(const WeightedTransducer& t) {
  std::vector<Transition> ts(t.transitions().begin(), t.transitions().end());
  for (Transition& x : ts) std::swap(x.input, x.output);
  return WeightedTransducer(t.semiring_ptr(), t.states(), t.alphabet(), std::move(ts), t.initial(), t.final_weights());
}

/// States Q x Q' (index i * |Q'| + i'), p = p (x) p', q = q (x) q' and
/// B_ab = (+)_c A_ac (x) A'_cb. Only pairs of transitions whose labels meet
/// are visited.
inline WeightedTransducer compose(const WeightedTransducer& t, const WeightedTransducer& u) {
  detail::require_same_semiring(t.semiring_ptr(), u.semiring_ptr(), "compose");
  if (t.alphabet() != u.alphabet()) {
    throw InvalidArgument("compose: alphabets differ (" + std::to_string(t.alphabet()) + " vs " +
                          std::to_string(u.alphabet()) + ")");
  }
  const Semiring& s = t.semiring();
  const std::size_t m = u.states(), sigma = t.alphabet();
  // Transitions of u grouped by input label.
  std::vector<std::vector<const Transition*>> by_input(sigma);
  for (const Transition& x : u.transitions()) by_input[x.input].push_back(&x);
  std::vector<Transition> out;
  for (const Transition& x : t.transitions()) {
    for (const Transition* y : by_input[x.output]) {
      out.push_back({x.from * m + y->from, x.input, y->output, x.to * m + y->to, s.odot(x.weight, y->weight)});
    }
  }
  return WeightedTransducer(t.semiring_ptr(), t.states() * m, sigma, std::move(out),
                            semiring_kron(s, t.initial(), u.initial()), semiring_kron(s, t.final_weights(), u.final_weights()));
}

/// psi(T(alpha, beta)), with psi the semiring's morphism unless one is given.
inline double rational_kernel(const WeightedTransducer& t, std::span<const std::size_t> alpha,
                              std::span<const std::size_t> beta, const std::optional<Morphism>& psi = std::nullopt) {
  const Morphism& m = psi ? *psi : require_morphism(t.semiring(), "rational_kernel");
  return m.forward(output_weight(t, alpha, beta));
}

/// (+)_{a,b} A_ab as a dense semiring matrix.
inline SemiringMatrix letter_sum(const WeightedTransducer& t) {
  SemiringMatrix m(t.semiring_ptr(), t.states(), t.states());
  for (const Transition& x : t.transitions()) m(x.from, x.to) = t.semiring().oplus(m(x.from, x.to), x.weight);
  return m;
}

/// sum over all string pairs of length <= max_length of psi((S o T o U)(alpha, beta)),
/// with S and U read as identity transducers. Since psi is a morphism the sum over
/// pairs of length l is psi(q^T M^l p) with M = (+)_{a,b} of the composed slices.
inline double transducer_kernel(const WeightedAutomaton& s, const WeightedAutomaton& u, const WeightedTransducer& t,
                                std::size_t max_length, const std::optional<Morphism>& psi = std::nullopt) {
  WeightedTransducer c = compose(compose(s.as_transducer(), t), u.as_transducer());
  const Morphism& m = psi ? *psi : require_morphism(c.semiring(), "transducer_kernel");
  SemiringMatrix sum = letter_sum(c);
  Vector x = c.initial();
  double total = 0.0;
  for (std::size_t l = 0; l <= max_length; ++l) {
    if (l > 0) x = semiring_mat_vec(sum, x);
    total += m.forward(semiring_dot(c.semiring(), c.final_weights(), x));
  }
  return total;
}

/// The untruncated real-semiring sum q^T (I - M)^-1 p; requires rho(M) < 1.
inline double transducer_kernel_closed_form(const WeightedAutomaton& s, const WeightedAutomaton& u,
                                            const WeightedTransducer& t) {
  if (t.semiring().name != "real") throw InvalidArgument("transducer_kernel_closed_form: needs the real semiring");
  WeightedTransducer c = compose(compose(s.as_transducer(), t), u.as_transducer());
  const std::size_t n = c.states();
  DenseMatrix m = apply_morphism(letter_sum(c));
  const double rho = detail::dense_spectral_radius(m);
  if (rho >= 1.0) {
    throw DivergenceError("transducer_kernel_closed_form: spectral radius " + std::to_string(rho) + " >= 1");
  }
  DenseMatrix sys = DenseMatrix::identity(n) - m;
  return dot(c.final_weights(), dense_solve(sys, c.initial()));
}

/// Single-letter real automaton whose transition matrix is D^-1 A (or A).
inline WeightedAutomaton graph_as_automaton(const Graph& g, std::span<const double> p, std::span<const double> q,
                                            bool degree_normalize = true) {
  if (p.size() != g.n() || q.size() != g.n()) throw DimensionError("graph_as_automaton: p and q need one entry per vertex");
  SparseMatrix w = adjacency(g);
  if (degree_normalize) w = w.row_scaled(detail::inverse_degrees(w.row_sums()));
  std::vector<AutomatonTransition> ts;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    auto cols = w.row_cols(i);
    auto vals = w.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) ts.push_back({i, 0, cols[k], vals[k]});
  }
  return WeightedAutomaton(semiring_instance(SemiringKind::real), g.n(), 1, ts, Vector(p.begin(), p.end()),
                           Vector(q.begin(), q.end()));
}

namespace detail {

inline Graph unlabeled(const Graph& g) {
  std::vector<Edge> es;
  es.reserve(g.edges().size());
  for (const Edge& e : g.edges()) es.push_back({e.source, e.target, e.weight, 0, {}});
  return Graph(g.n(), std::move(es), g.directed());
}

}  // namespace detail

struct EquivalenceReport {
  double automaton_sum = 0.0;
  double walk_sum = 0.0;
  double max_term_error = 0.0;
  bool pass = true;
};

/// Compares sum_{k=1}^{K} (G o G')(a^k) with sum_{k=1}^{K} q_x^T W_x^k p_x under
/// uniform distributions.
inline EquivalenceReport rw_equivalence_check(const Graph& g, const Graph& h, std::size_t k_max, double tol = 1e-10,
                                              bool degree_normalize = true) {
  StartStop a = uniform_start_stop(g), b = uniform_start_stop(h);
  WeightedTransducer c = compose(graph_as_automaton(g, a.start, a.stop, degree_normalize).as_transducer(),
                                 graph_as_automaton(h, b.start, b.stop, degree_normalize).as_transducer());
  KernelConfig cfg;
  cfg.degree_normalize = degree_normalize;
  Vector terms = walk_series_terms(walk_product(detail::unlabeled(g), detail::unlabeled(h), cfg), k_max);
  EquivalenceReport r;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double via_automaton = output_weight(c, Labels(k, 0), Labels(k, 0));
    r.automaton_sum += via_automaton;
    r.walk_sum += terms[k];
    r.max_term_error = std::max(r.max_term_error, std::abs(via_automaton - terms[k]));
  }
  r.pass = std::abs(r.automaton_sum - r.walk_sum) <= tol * std::max(1.0, std::abs(r.walk_sum)) &&
           r.max_term_error <= tol * std::max(1.0, std::abs(r.walk_sum));
  return r;
}

}  // namespace walkernel

#endif  // WALKERNEL_TRANSDUCER_HPP
