#include "xnr/condition.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include "xnr/errors.hpp"

namespace xnr {

Term Term::var(std::uint32_t index) {
  if (index == 0 || index >= kZero) {
    throw std::invalid_argument("variable index must be in 1.." + std::to_string(kZero - 1));
  }
  return Term(index);
}

std::string Term::to_string() const {
  if (is_const()) return value() ? "1" : "0";
  return "v" + std::to_string(index());
}

Literal::Literal(Term a, Op op, Term b) noexcept
    : lhs_(std::min(a, b)), rhs_(std::max(a, b)), op_(op) {}

std::uint32_t Literal::max_var() const noexcept {
  // lhs <= rhs, so rhs is the larger variable whenever it is one.
  if (rhs_.is_var()) return rhs_.index();
  if (lhs_.is_var()) return lhs_.index();
  return 0;
}

std::string Literal::to_string() const {
  return lhs_.to_string() + (op_ == Op::Eq ? "=" : "!=") + rhs_.to_string();
}

Literal negate_literal(const Literal& lit) noexcept {
  return Literal(lit.lhs(), flip(lit.op()), lit.rhs());
}

bool is_trivially_true(const Literal& lit) noexcept {
  if (lit.lhs() == lit.rhs()) return lit.op() == Op::Eq;
  // Distinct terms: only 0 != 1 is valid on every instance.
  return lit.lhs().is_const() && lit.rhs().is_const() && lit.op() == Op::Neq;
}

std::vector<Literal> all_literals(std::size_t n) {
  std::vector<Term> terms;
  terms.reserve(n + 2);
  for (std::uint32_t i = 1; i <= n; ++i) terms.push_back(Term::var(i));
  terms.push_back(Term::constant(false));
  terms.push_back(Term::constant(true));

  std::vector<Literal> out;
  out.reserve(terms.size() * (terms.size() + 1));
  for (std::size_t a = 0; a < terms.size(); ++a) {
    for (std::size_t b = a; b < terms.size(); ++b) {
      out.emplace_back(terms[a], Op::Eq, terms[b]);
      out.emplace_back(terms[a], Op::Neq, terms[b]);
    }
  }
  return out;
}

Condition::Condition(std::initializer_list<Literal> literals) {
  for (const auto& l : literals) add(l);
}

Condition::Condition(std::span<const Literal> literals) {
  for (const auto& l : literals) add(l);
}

bool Condition::add(const Literal& lit) {
  if (contains(lit)) return false;
  literals_.push_back(lit);
  return true;
}

bool Condition::contains(const Literal& lit) const {
  return std::find(literals_.begin(), literals_.end(), lit) != literals_.end();
}

std::uint32_t Condition::max_var() const noexcept {
  std::uint32_t m = 0;
  for (const auto& l : literals_) m = std::max(m, l.max_var());
  return m;
}

void Condition::check_arity(std::size_t n) const {
  if (max_var() > n) {
    throw ArityError("condition mentions v" + std::to_string(max_var()) + " but the model has " +
                     std::to_string(n) + " features");
  }
}

Condition Condition::with(const Literal& lit) const {
  Condition out = *this;
  out.add(lit);
  return out;
}

std::string Condition::to_string() const {
  if (literals_.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    if (i) out += " & ";
    out += literals_[i].to_string();
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Condition condition() {
    skip_ws();
    if (pos_ == text_.size()) return {};  // empty conjunction
    if (peek_word("true")) {
      pos_ += 4;
      expect_end();
      return {};
    }
    Condition out;
    out.add(literal());
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] == '&') {
      ++pos_;
      out.add(literal());
      skip_ws();
    }
    expect_end();
    return out;
  }

  Literal single_literal() {
    Literal l = literal();
    expect_end();
    return l;
  }

 private:
  Literal literal() {
    Term a = term();
    skip_ws();
    Op op;
    if (pos_ < text_.size() && text_[pos_] == '=') {
      op = Op::Eq;
      ++pos_;
    } else if (pos_ + 1 < text_.size() && text_[pos_] == '!' && text_[pos_ + 1] == '=') {
      op = Op::Neq;
      pos_ += 2;
    } else {
      throw ParseError("expected '=' or '!='", pos_);
    }
    Term b = term();
    return Literal(a, op, b);
  }

  Term term() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected a term", pos_);
    const char c = text_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      return Term::constant(c == '1');
    }
    if (c != 'v') throw ParseError("expected '0', '1' or 'v<index>'", pos_);
    const std::size_t start = ++pos_;
    std::uint32_t index = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), index);
    if (ec != std::errc() || ptr == text_.data() + pos_) {
      throw ParseError("expected a variable index", start);
    }
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    if (index == 0) throw ParseError("variable indices start at 1", start);
    return Term::var(index);
  }

  bool peek_word(std::string_view w) const { return text_.substr(pos_, w.size()) == w; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Condition parse_condition(std::string_view text) { return Parser(text).condition(); }

Literal parse_literal(std::string_view text) { return Parser(text).single_literal(); }

Instance::Instance(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

Instance::Instance(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) bits_.push_back(b ? 1 : 0);
}

Instance Instance::from_packed(std::uint64_t packed, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = (packed >> i) & 1U;
  return Instance(std::move(bits));
}

std::uint64_t Instance::packed() const {
  if (bits_.size() > 64) throw ArityError("instance too wide to pack");
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) out |= std::uint64_t{bits_[i]} << i;
  return out;
}

std::string Instance::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (i) out += ',';
    out += bits_[i] ? '1' : '0';
  }
  return out + ")";
}

namespace {

bool term_value(Term t, const Instance& x) {
  return t.is_const() ? t.value() : x.feature(t.index());
}

bool term_value_packed(Term t, std::uint64_t x) {
  return t.is_const() ? t.value() : ((x >> (t.index() - 1)) & 1U) != 0;
}

}  // namespace

bool evaluate(const Literal& lit, const Instance& x) {
  if (lit.max_var() > x.size()) {
    throw ArityError("literal " + lit.to_string() + " does not fit an instance of " +
                     std::to_string(x.size()) + " features");
  }
  const bool equal = term_value(lit.lhs(), x) == term_value(lit.rhs(), x);
  return equal == (lit.op() == Op::Eq);
}

bool evaluate(const Condition& phi, const Instance& x) {
  phi.check_arity(x.size());
  return std::all_of(phi.literals().begin(), phi.literals().end(),
                     [&](const Literal& l) { return evaluate(l, x); });
}

bool evaluate_packed(const Literal& lit, std::uint64_t x) noexcept {
  const bool equal = term_value_packed(lit.lhs(), x) == term_value_packed(lit.rhs(), x);
  return equal == (lit.op() == Op::Eq);
}

bool evaluate_packed(const Condition& phi, std::uint64_t x) noexcept {
  for (const auto& l : phi.literals()) {
    if (!evaluate_packed(l, x)) return false;
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << t.to_string(); }
std::ostream& operator<<(std::ostream& os, const Literal& l) { return os << l.to_string(); }
std::ostream& operator<<(std::ostream& os, const Condition& c) { return os << c.to_string(); }
std::ostream& operator<<(std::ostream& os, const Instance& x) { return os << x.to_string(); }

}  // namespace xnr
