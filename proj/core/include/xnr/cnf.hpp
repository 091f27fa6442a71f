#pragma once

// CNF formulas, DIMACS text, exhaustive satisfiability, and the encodings of
// CNF into ReLU networks used to build instances with known answers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "xnr/classifier.hpp"
#include "xnr/condition.hpp"

namespace xnr {

/// Clauses of signed 1-based variable indices; any clause width.
struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<std::vector<int>> clauses;

  /// Throws std::invalid_argument on an empty clause or an index out of range.
  void check() const;
  bool evaluate(const Instance& x) const;
  bool operator==(const CnfFormula&) const = default;
};

inline constexpr std::size_t kBruteForceSatBound = 20;

/// Tries all assignments. Throws BoundExceeded above `bound` variables.
bool brute_force_sat(const CnfFormula& f, std::size_t bound = kBruteForceSatBound);

/// "p cnf <vars> <clauses>" then zero-terminated clauses; "c" lines are comments.
/// Throws ParseError.
CnfFormula parse_dimacs(std::string_view text);
std::string to_dimacs(const CnfFormula& f);

/// Two-layer network with classify(result, x) = f[x]. Hidden unit j is
/// relu(1 - s_j), where s_j counts the true literals of clause j, so it is 1
/// exactly when clause j is falsified; the output fires iff all hidden units are 0.
/// Throws std::invalid_argument for a formula without clauses.
Mlp cnf_to_mlp(const CnfFormula& f);

struct SatUnsatInstance {
  Mlp model;
  ClassLabel target = ClassLabel::One;
  Condition condition;
  std::size_t g_feature = 0;
  std::size_t d_feature = 0;
};

/// Encodes (gamma | g) & (delta | d) over p + q + 2 features: gamma's variables
/// first, then delta's, then g, then d. The condition (v_d = 1) is a minimal
/// necessary reason for class 1 iff gamma is satisfiable and delta is not.
SatUnsatInstance build_satunsat_instance(const CnfFormula& gamma, const CnfFormula& delta);

}  // namespace xnr
