#include "xnr/necessity.hpp"

#include <stdexcept>

#include "parallel.hpp"
#include "xnr/constraints.hpp"
#include "xnr/errors.hpp"

namespace xnr {

std::vector<std::uint8_t> extremal_candidate(std::span<const Rational> weights, ClassLabel c) {
  std::vector<std::uint8_t> x(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const bool nonneg = sgn(weights[i]) >= 0;
    x[i] = (c == ClassLabel::One) == nonneg ? 1 : 0;
  }
  return x;
}

bool threshold_feasible(std::span<const Rational> weights, const Rational& bias, ClassLabel c) {
  const auto x = extremal_candidate(weights, c);
  Rational value = bias;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x[i]) value += weights[i];
  }
  return c == ClassLabel::One ? sgn(value) >= 0 : sgn(value) < 0;
}

namespace {

// x.w + b with some variables eliminated by substitution.
struct ReducedInequality {
  std::vector<Rational> weights;
  Rational bias;

  // x_j := x_i
  void merge(std::size_t i, std::size_t j) {
    weights[i] += weights[j];
    weights[j] = 0;
  }
  // x_j := 1 - x_i
  void merge_negated(std::size_t i, std::size_t j) {
    weights[i] -= weights[j];
    bias += weights[j];
    weights[j] = 0;
  }
  // x_i := value
  void fix(std::size_t i, bool value) {
    if (value) bias += weights[i];
    weights[i] = 0;
  }
};

// Eliminated variables keep weight 0, which the extremal candidate handles
// like any other zero weight, so the vector need not shrink.
bool feasible_under(const Perceptron& p, ClassLabel c, const Literal& forced) {
  if (is_trivially_true(forced)) return threshold_feasible(p.weights, p.bias, c);
  const Term a = forced.lhs();
  const Term b = forced.rhs();
  if (a.is_const()) return false;  // both constants and not trivially true: a contradiction
  if (a == b) return false;        // vi != vi

  ReducedInequality ineq{p.weights, p.bias};
  const std::size_t i = a.index() - 1;
  if (b.is_var()) {
    const std::size_t j = b.index() - 1;
    if (forced.op() == Op::Eq) {
      ineq.merge(i, j);
    } else {
      ineq.merge_negated(i, j);
    }
  } else {
    ineq.fix(i, forced.op() == Op::Eq ? b.value() : !b.value());
  }
  return threshold_feasible(ineq.weights, ineq.bias, c);
}

}  // namespace

bool is_necessary_perceptron(const Perceptron& p, ClassLabel c, const Condition& phi) {
  const std::size_t n = p.arity();
  phi.check_arity(n);
  if (entails(phi, Literal(Term::constant(true), Op::Eq, Term::constant(false)), n)) {
    // Mod(phi) is empty: necessary iff nothing is classified as c.
    return !threshold_feasible(p.weights, p.bias, c);
  }
  for (const Literal& lit : phi.literals()) {
    if (is_trivially_true(lit)) continue;
    if (feasible_under(p, c, negate_literal(lit))) return false;
  }
  return true;
}

LiteralRewriteState::LiteralRewriteState(const Literal& original) : original_(original) {}

Term LiteralRewriteState::side(Term original, std::uint8_t s) {
  return s == 0 ? original : Term::constant(s == 2);
}

LiteralRewriteState LiteralRewriteState::substitute(std::uint32_t feature, bool value) const {
  LiteralRewriteState next = *this;
  const std::uint8_t fixed = value ? 2 : 1;
  const Term lhs = original_.lhs();
  const Term rhs = original_.rhs();
  if (lhs_ == 0 && lhs.is_var() && lhs.index() == feature) next.lhs_ = fixed;
  if (rhs_ == 0 && rhs.is_var() && rhs.index() == feature) next.rhs_ = fixed;
  return next;
}

Literal LiteralRewriteState::current() const {
  return Literal(side(original_.lhs(), lhs_), original_.op(), side(original_.rhs(), rhs_));
}

std::uint8_t LiteralRewriteState::code() const noexcept {
  return static_cast<std::uint8_t>(lhs_ * 3 + rhs_);
}

namespace {

// Searches for a path from the root to a c-sink along which `lit` is not
// rewritten into a trivially true literal.
class WitnessSearch {
 public:
  WitnessSearch(const CompiledBdd& bdd, ClassLabel c)
      : bdd_(bdd), target_(c), stamp_(bdd.nodes().size() * 9, 0) {}

  bool find(const Literal& lit) {
    ++epoch_;
    stack_.clear();
    push(bdd_.root(), LiteralRewriteState(lit));
    while (!stack_.empty()) {
      const auto [u, state] = stack_.back();
      stack_.pop_back();
      const auto& node = bdd_.nodes()[u];
      if (node.is_sink()) {
        if (node.label == target_ && !is_trivially_true(state.current())) return true;
        continue;
      }
      for (const bool value : {false, true}) {
        push(node.child[value ? 1 : 0], state.substitute(node.feature, value));
      }
    }
    return false;
  }

 private:
  void push(std::uint32_t u, const LiteralRewriteState& s) {
    std::uint32_t& mark = stamp_[u * 9 + s.code()];
    if (mark == epoch_) return;
    mark = epoch_;
    stack_.emplace_back(u, s);
  }

  const CompiledBdd& bdd_;
  ClassLabel target_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<std::pair<std::uint32_t, LiteralRewriteState>> stack_;
};

}  // namespace

bool is_necessary_bdd(const CompiledBdd& bdd, ClassLabel c, const Condition& phi) {
  phi.check_arity(bdd.arity());
  WitnessSearch search(bdd, c);
  for (const Literal& lit : entailed_literals(phi, bdd.arity())) {
    // Substitution maps a trivially true literal to a trivially true literal,
    // so these can never witness non-necessity.
    if (is_trivially_true(lit)) continue;
    if (search.find(lit)) return false;
  }
  return true;
}

namespace {

void check_bound(const Classifier& m, std::size_t bound) {
  if (m.arity() > bound) {
    throw BoundExceeded("exact necessity for this model family is co-NP-hard; exhaustive search refused",
                        m.arity(), bound);
  }
  if (m.arity() > 62) throw BoundExceeded("exhaustive search", m.arity(), 62);
}

}  // namespace

bool is_necessary_mlp(const Classifier& m, ClassLabel c, const Condition& phi, std::size_t bound,
                      unsigned threads) {
  check_bound(m, bound);
  phi.check_arity(m.arity());
  const std::uint64_t count = std::uint64_t{1} << m.arity();
  const bool counterexample = detail::parallel_any(count, threads, [&](std::uint64_t x) {
    return m.classify_packed(x) == c && !evaluate_packed(phi, x);
  });
  return !counterexample;
}

bool is_necessary(const Classifier& m, ClassLabel c, const Condition& phi,
                  const EngineOptions& opts) {
  switch (m.family()) {
    case Family::Bdd:
    case Family::DecisionTree:
      return is_necessary_bdd(m.compiled_bdd(), c, phi);
    case Family::Perceptron:
      return is_necessary_perceptron(*m.perceptron(), c, phi);
    case Family::Mlp:
      return is_necessary_mlp(m, c, phi, opts.mlp_bound, opts.threads);
  }
  throw std::logic_error("unknown classifier family");
}

NecessityEngine::NecessityEngine(const Classifier& m, ClassLabel c, EngineOptions opts)
    : model_(&m), target_(c), opts_(opts) {
  if (m.family() != Family::Mlp) return;
  check_bound(m, opts_.mlp_bound);
  const std::uint64_t count = std::uint64_t{1} << m.arity();
  class_models_ = detail::parallel_filter(count, opts_.threads,
                                          [&](std::uint64_t x) { return m.classify_packed(x) == c; });
}

bool NecessityEngine::is_necessary(const Condition& phi) const {
  if (model_->family() != Family::Mlp) return xnr::is_necessary(*model_, target_, phi, opts_);
  phi.check_arity(model_->arity());
  for (const std::uint64_t x : class_models_) {
    if (!evaluate_packed(phi, x)) return false;
  }
  return true;
}

bool NecessityEngine::is_necessary(const Literal& lit) const { return is_necessary(Condition{lit}); }

}  // namespace xnr
