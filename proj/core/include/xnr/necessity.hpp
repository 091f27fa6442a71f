#pragma once

// Deciding whether a condition holds on every instance a classifier assigns
// to a given class, with one procedure per classifier family.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "xnr/classifier.hpp"
#include "xnr/condition.hpp"

namespace xnr {

inline constexpr std::size_t kDefaultMlpBound = 24;

struct EngineOptions {
  /// MLPs above this many features are refused (BoundExceeded).
  std::size_t mlp_bound = kDefaultMlpBound;
  /// Workers for exhaustive enumeration; 0 = hardware concurrency.
  unsigned threads = 1;
};

/// Mod(M, c) is a subset of Mod(phi). Dispatches on the model family.
/// Throws ArityError or BoundExceeded.
bool is_necessary(const Classifier& m, ClassLabel c, const Condition& phi,
                  const EngineOptions& opts = {});

/// Assignment maximizing (c = 1) or minimizing (c = 0) x.w over {0,1}^n:
/// x_i = 1 iff w_i >= 0 for c = 1, and x_i = 1 iff w_i < 0 for c = 0.
std::vector<std::uint8_t> extremal_candidate(std::span<const Rational> weights, ClassLabel c);

/// Some x in {0,1}^n has x.w + b >= 0 (c = 1) or x.w + b < 0 (c = 0).
bool threshold_feasible(std::span<const Rational> weights, const Rational& bias, ClassLabel c);

/// Linear-time check: for each literal l of phi, substitute the negation of l
/// into x.w + b and test the reduced inequality with the extremal candidate.
bool is_necessary_perceptron(const Perceptron& p, ClassLabel c, const Condition& phi);

/// Working copy of a literal as a BDD path fixes its variables to constants.
class LiteralRewriteState {
 public:
  explicit LiteralRewriteState(const Literal& original);

  /// Replaces v_feature by `value` wherever it occurs.
  LiteralRewriteState substitute(std::uint32_t feature, bool value) const;

  Literal current() const;
  /// Distinct per reachable state of one original literal, in [0, 9).
  std::uint8_t code() const noexcept;

 private:
  // 0 = untouched, 1 = fixed to 0, 2 = fixed to 1; per side of the original.
  static Term side(Term original, std::uint8_t s);

  Literal original_;
  std::uint8_t lhs_ = 0;
  std::uint8_t rhs_ = 0;
};

/// phi is necessary iff no literal entailed by phi can be rewritten along a
/// path to a c-sink into something other than a trivially true literal.
/// Explores (node, rewrite state) pairs; at most 9 states per node.
bool is_necessary_bdd(const CompiledBdd& bdd, ClassLabel c, const Condition& phi);

/// Exhaustive counterexample search over {0,1}^n with early exit. Works for
/// any family; meant for MLPs. Throws BoundExceeded when arity > bound.
bool is_necessary_mlp(const Classifier& m, ClassLabel c, const Condition& phi,
                      std::size_t bound = kDefaultMlpBound, unsigned threads = 1);

/// Necessity queries against one (model, class) pair. For MLPs the class
/// models are enumerated once at construction and reused by every query;
/// other families run their engines directly. Keeps a reference to `m`.
class NecessityEngine {
 public:
  NecessityEngine(const Classifier& m, ClassLabel c, EngineOptions opts = {});

  bool is_necessary(const Condition& phi) const;
  bool is_necessary(const Literal& lit) const;

  const Classifier& model() const noexcept { return *model_; }
  ClassLabel target() const noexcept { return target_; }

 private:
  const Classifier* model_;
  ClassLabel target_;
  EngineOptions opts_;
  std::vector<std::uint64_t> class_models_;
};

}  // namespace xnr
