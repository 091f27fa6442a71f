#pragma once

// Conditions: conjunctions of (dis)equalities between binary feature
// variables v1..vn and the constants 0 and 1.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xnr {

/// A feature variable v_i (i >= 1) or one of the constants 0, 1.
class Term {
 public:
  static constexpr Term constant(bool value) noexcept {
    return Term(value ? kOne : kZero);
  }
  /// Throws std::invalid_argument for index 0.
  static Term var(std::uint32_t index);

  constexpr bool is_const() const noexcept { return key_ >= kZero; }
  constexpr bool is_var() const noexcept { return key_ < kZero; }
  /// Only meaningful for constants.
  constexpr bool value() const noexcept { return key_ == kOne; }
  /// Only meaningful for variables.
  constexpr std::uint32_t index() const noexcept { return key_; }

  // Variables by index, then 0, then 1.
  constexpr auto operator<=>(const Term&) const = default;

  std::string to_string() const;

 private:
  static constexpr std::uint32_t kZero = UINT32_MAX - 1;
  static constexpr std::uint32_t kOne = UINT32_MAX;

  constexpr explicit Term(std::uint32_t key) noexcept : key_(key) {}

  std::uint32_t key_;
};

enum class Op : std::uint8_t { Eq = 0, Neq = 1 };

constexpr Op flip(Op op) noexcept { return op == Op::Eq ? Op::Neq : Op::Eq; }

/// `lhs op rhs`, stored canonically with lhs <= rhs.
class Literal {
 public:
  Literal(Term a, Op op, Term b) noexcept;

  Term lhs() const noexcept { return lhs_; }
  Term rhs() const noexcept { return rhs_; }
  Op op() const noexcept { return op_; }

  /// Largest variable index mentioned, 0 if the literal is variable-free.
  std::uint32_t max_var() const noexcept;

  auto operator<=>(const Literal&) const = default;

  std::string to_string() const;

 private:
  Term lhs_;
  Term rhs_;
  Op op_;
};

/// Flips = and !=; the result holds on exactly the instances where `lit` fails.
Literal negate_literal(const Literal& lit) noexcept;

/// (0=0), (1=1), (0!=1) and (vi=vi): the literals every instance satisfies.
bool is_trivially_true(const Literal& lit) noexcept;

/// Canonical literal set over {v1..vn, 0, 1}, sorted by (lhs, rhs, op).
std::vector<Literal> all_literals(std::size_t n);

/// A conjunction of literals; the empty conjunction is "true".
///
/// Conditions carry no arity. Duplicates are dropped on insertion and the
/// first-seen order is kept, so parse(to_string(c)) == c.
class Condition {
 public:
  Condition() = default;
  Condition(std::initializer_list<Literal> literals);
  explicit Condition(std::span<const Literal> literals);

  /// Appends `lit` unless already present. Returns whether it was added.
  bool add(const Literal& lit);

  const std::vector<Literal>& literals() const noexcept { return literals_; }
  std::size_t size() const noexcept { return literals_.size(); }
  bool is_top() const noexcept { return literals_.empty(); }
  bool contains(const Literal& lit) const;

  std::uint32_t max_var() const noexcept;
  /// Throws ArityError if some variable index exceeds n.
  void check_arity(std::size_t n) const;

  /// Conjunction with one more literal.
  Condition with(const Literal& lit) const;

  bool operator==(const Condition&) const = default;

  std::string to_string() const;

 private:
  std::vector<Literal> literals_;
};

/// Parses `true` or `lit (& lit)*` where lit is `term (=|!=) term` and term is
/// `0`, `1` or `v<INT>` with INT >= 1. Whitespace is ignored.
Condition parse_condition(std::string_view text);
Literal parse_literal(std::string_view text);

/// A point of {0,1}^n.
class Instance {
 public:
  Instance() = default;
  explicit Instance(std::vector<std::uint8_t> bits);
  Instance(std::initializer_list<int> bits);

  /// Bit i-1 of `packed` becomes feature v_i.
  static Instance from_packed(std::uint64_t packed, std::size_t n);
  /// Inverse of from_packed. Requires size() <= 64.
  std::uint64_t packed() const;

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  /// Value of feature v_index (1-based).
  bool feature(std::uint32_t index) const noexcept { return bits_[index - 1] != 0; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  bool operator==(const Instance&) const = default;
  auto operator<=>(const Instance&) const = default;

  std::string to_string() const;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Truth of `lit` under `x`; throws ArityError if lit mentions v_i, i > |x|.
bool evaluate(const Literal& lit, const Instance& x);
bool evaluate(const Condition& phi, const Instance& x);

/// Unchecked evaluation on a packed instance (bit i-1 = v_i).
bool evaluate_packed(const Literal& lit, std::uint64_t x) noexcept;
bool evaluate_packed(const Condition& phi, std::uint64_t x) noexcept;

std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const Literal& l);
std::ostream& operator<<(std::ostream& os, const Condition& c);
std::ostream& operator<<(std::ostream& os, const Instance& x);

}  // namespace xnr
