#pragma once

// Parity union-find over the terms of a condition. Every literal is an
// equality or disequality between two nodes, so satisfiability over {0,1}
// reduces to checking that no cycle carries odd parity.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "xnr/condition.hpp"

namespace xnr {

class ConstraintSystem {
 public:
  /// Nodes for v1..vn plus the constants, with 0 != 1 already asserted.
  explicit ConstraintSystem(std::size_t n);

  std::size_t arity() const noexcept { return arity_; }

  /// Adds `lit` as a parity edge. Once inconsistent, stays inconsistent.
  /// Throws ArityError if lit mentions a variable beyond arity().
  void assert_literal(const Literal& lit);
  void assert_condition(const Condition& phi);

  bool consistent() const noexcept { return consistent_; }

  struct Placement {
    std::uint32_t root;
    std::uint8_t parity;  // relative to the root
  };
  Placement locate(Term t) const;

  /// Parity between two terms if they share a component (0 = equal).
  std::optional<std::uint8_t> relation(Term a, Term b) const;

  /// Whether the asserted literals force `lit`. Does not mutate the system.
  bool implies(const Literal& lit) const;

  /// Components holding at least one variable and neither constant.
  std::size_t free_components() const;

 private:
  struct Found {
    std::uint32_t root;
    std::uint8_t parity;
  };

  std::uint32_t node_of(Term t) const;
  Found find(std::uint32_t node) const;
  void unite(std::uint32_t a, std::uint32_t b, std::uint8_t parity);

  std::size_t arity_;
  std::uint32_t zero_;
  std::uint32_t one_;
  // Path compression mutates these during const lookups.
  mutable std::vector<std::uint32_t> parent_;
  mutable std::vector<std::uint8_t> parity_;
  std::vector<std::uint8_t> rank_;
  bool consistent_ = true;
};

ConstraintSystem build_constraints(const Condition& phi, std::size_t n);

/// phi |= lit, decided as unsatisfiability of phi together with the negation of lit.
bool entails(const Condition& phi, const Literal& lit, std::size_t n);

/// phi has no model in {0,1}^n.
bool is_unsatisfiable(const Condition& phi, std::size_t n);

/// |Mod(phi)| over {0,1}^n.
mpz_class model_count(const Condition& phi, std::size_t n);

/// Every literal of all_literals(n) entailed by phi, in canonical order.
/// Enumerates the closure from the components instead of testing each literal.
std::vector<Literal> entailed_literals(const Condition& phi, std::size_t n);

/// Mod(phi) == Mod(psi), via equality of entailed literal sets.
bool condition_equivalent(const Condition& phi, const Condition& psi, std::size_t n);

}  // namespace xnr
