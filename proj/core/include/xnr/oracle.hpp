#pragma once

// Brute-force ground truth. Everything here is computed by evaluating the
// classifier and the condition on all 2^n instances; nothing goes through
// entailment or the family engines.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "xnr/classifier.hpp"
#include "xnr/condition.hpp"

namespace xnr {

inline constexpr std::size_t kDefaultOracleBound = 16;

struct OracleOptions {
  std::size_t bound = kDefaultOracleBound;
  unsigned threads = 1;
};

/// A set of instances of one arity, stored as sorted packed bit vectors
/// (bit i-1 = v_i).
class InstanceSet {
 public:
  InstanceSet() = default;
  InstanceSet(std::size_t arity, std::vector<std::uint64_t> sorted_packed);

  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  bool contains(std::uint64_t packed) const;
  bool contains(const Instance& x) const { return contains(x.packed()); }
  const std::vector<std::uint64_t>& packed() const noexcept { return items_; }
  std::vector<Instance> instances() const;
  bool is_subset_of(const InstanceSet& other) const;

  bool operator==(const InstanceSet&) const = default;

 private:
  std::size_t arity_ = 0;
  std::vector<std::uint64_t> items_;
};

/// Mod(M, c).
using ClassModelSet = InstanceSet;

/// Mod(phi) over {0,1}^n by enumeration.
InstanceSet enumerate_condition_models(const Condition& phi, std::size_t n,
                                       const OracleOptions& opts = {});

/// Answers for one (model, class) pair; Mod(M, c) is enumerated once.
/// Throws BoundExceeded when the arity exceeds the bound.
class Oracle {
 public:
  Oracle(const Classifier& m, ClassLabel c, OracleOptions opts = {});

  const ClassModelSet& class_models() const noexcept { return class_models_; }

  /// Literals of all_literals(n) satisfied by every class model.
  std::vector<Literal> necessary_literals() const;
  /// Intersection of Mod(l) over the necessary literals.
  const InstanceSet& minimal_model_set() const noexcept { return minimal_; }

  bool is_necessary(const Condition& phi) const;
  /// Necessary, and Mod(phi) equals the minimal model set.
  bool is_min_necessary(const Condition& phi) const;

  std::size_t arity() const noexcept { return arity_; }

 private:
  InstanceSet compute_minimal_model_set() const;

  std::size_t arity_;
  OracleOptions opts_;
  ClassModelSet class_models_;
  InstanceSet minimal_;
};

ClassModelSet enumerate_class_models(const Classifier& m, ClassLabel c,
                                     const OracleOptions& opts = {});
std::vector<Literal> necessary_literal_set(const Classifier& m, ClassLabel c,
                                           const OracleOptions& opts = {});
InstanceSet minimal_model_set(const Classifier& m, ClassLabel c, const OracleOptions& opts = {});
bool oracle_is_necessary(const Classifier& m, ClassLabel c, const Condition& phi,
                         const OracleOptions& opts = {});
bool oracle_is_min_necessary(const Classifier& m, ClassLabel c, const Condition& phi,
                             const OracleOptions& opts = {});

}  // namespace xnr
