#pragma once

// Seeded random models, conditions and formulas. Every generator is a pure
// function of its arguments and emits models that pass validate().

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "xnr/classifier.hpp"
#include "xnr/cnf.hpp"
#include "xnr/condition.hpp"

namespace xnr {

/// mt19937_64 with distribution code that does not depend on the standard
/// library implementation, so seeds reproduce across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi);
  bool coin(double p_true = 0.5);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Layered free BDD over a random feature order with at most
/// `internal_node_budget` feature nodes, all reachable from the root.
Bdd random_bdd(std::size_t n, std::size_t internal_node_budget, std::uint64_t seed);

/// Decision tree of depth at most min(depth, n).
DecisionTree random_dt(std::size_t n, std::size_t depth, std::uint64_t seed);

/// Weights in [-weight_bound, weight_bound] with denominators in 1..4; the
/// bias range scales with n so both classes occur.
Perceptron random_perceptron(std::size_t n, std::int64_t weight_bound, std::uint64_t seed);

Mlp random_mlp(std::size_t n, const std::vector<std::size_t>& hidden_widths,
               std::int64_t weight_bound, std::uint64_t seed);

/// Up to max_literals literals; terms are mostly variables.
Condition random_condition(std::size_t n, std::size_t max_literals, std::uint64_t seed);

/// Clauses over distinct variables with random signs; width <= num_vars.
CnfFormula random_cnf(std::size_t num_vars, std::size_t num_clauses, std::size_t width,
                      std::uint64_t seed);

}  // namespace xnr
