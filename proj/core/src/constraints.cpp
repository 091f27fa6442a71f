#include "xnr/constraints.hpp"

#include <algorithm>
#include <map>

#include "xnr/errors.hpp"

namespace xnr {

ConstraintSystem::ConstraintSystem(std::size_t n)
    : arity_(n),
      zero_(static_cast<std::uint32_t>(n)),
      one_(static_cast<std::uint32_t>(n + 1)),
      parent_(n + 2),
      parity_(n + 2, 0),
      rank_(n + 2, 0) {
  for (std::uint32_t i = 0; i < parent_.size(); ++i) parent_[i] = i;
  unite(zero_, one_, 1);
}

std::uint32_t ConstraintSystem::node_of(Term t) const {
  if (t.is_const()) return t.value() ? one_ : zero_;
  if (t.index() > arity_) {
    throw ArityError("v" + std::to_string(t.index()) + " is outside 1.." + std::to_string(arity_));
  }
  return t.index() - 1;
}

ConstraintSystem::Found ConstraintSystem::find(std::uint32_t node) const {
  // Two passes: locate the root, then point every node on the path at it.
  std::uint32_t root = node;
  std::uint8_t total = 0;
  while (parent_[root] != root) {
    total ^= parity_[root];
    root = parent_[root];
  }
  std::uint32_t cur = node;
  std::uint8_t remaining = total;
  while (parent_[cur] != cur) {
    const std::uint32_t next = parent_[cur];
    const std::uint8_t step = parity_[cur];
    parent_[cur] = root;
    parity_[cur] = remaining;
    remaining ^= step;
    cur = next;
  }
  return {root, total};
}

void ConstraintSystem::unite(std::uint32_t a, std::uint32_t b, std::uint8_t parity) {
  const Found fa = find(a);
  const Found fb = find(b);
  if (fa.root == fb.root) {
    if ((fa.parity ^ fb.parity) != parity) consistent_ = false;
    return;
  }
  // value(a) = value(ra) ^ pa, value(b) = value(rb) ^ pb, value(a) ^ value(b) = parity.
  const std::uint8_t root_parity = fa.parity ^ fb.parity ^ parity;
  std::uint32_t child = fa.root;
  std::uint32_t par = fb.root;
  if (rank_[child] > rank_[par]) std::swap(child, par);
  parent_[child] = par;
  parity_[child] = root_parity;
  if (rank_[child] == rank_[par]) ++rank_[par];
}

void ConstraintSystem::assert_literal(const Literal& lit) {
  const std::uint32_t a = node_of(lit.lhs());
  const std::uint32_t b = node_of(lit.rhs());
  unite(a, b, lit.op() == Op::Eq ? 0 : 1);
}

void ConstraintSystem::assert_condition(const Condition& phi) {
  for (const auto& l : phi.literals()) assert_literal(l);
}

ConstraintSystem::Placement ConstraintSystem::locate(Term t) const {
  const Found f = find(node_of(t));
  return {f.root, f.parity};
}

std::optional<std::uint8_t> ConstraintSystem::relation(Term a, Term b) const {
  const Found fa = find(node_of(a));
  const Found fb = find(node_of(b));
  if (fa.root != fb.root) return std::nullopt;
  return static_cast<std::uint8_t>(fa.parity ^ fb.parity);
}

bool ConstraintSystem::implies(const Literal& lit) const {
  if (!consistent_) return true;
  const auto rel = relation(lit.lhs(), lit.rhs());
  return rel && *rel == (lit.op() == Op::Eq ? 0 : 1);
}

std::size_t ConstraintSystem::free_components() const {
  const std::uint32_t const_root = find(zero_).root;
  std::vector<std::uint8_t> seen(parent_.size(), 0);
  std::size_t count = 0;
  for (std::uint32_t v = 0; v < arity_; ++v) {
    const std::uint32_t r = find(v).root;
    if (r == const_root || seen[r]) continue;
    seen[r] = 1;
    ++count;
  }
  return count;
}

ConstraintSystem build_constraints(const Condition& phi, std::size_t n) {
  ConstraintSystem sys(n);
  sys.assert_condition(phi);
  return sys;
}

bool entails(const Condition& phi, const Literal& lit, std::size_t n) {
  if (lit.max_var() > n) throw ArityError("literal " + lit.to_string() + " exceeds arity");
  ConstraintSystem sys = build_constraints(phi, n);
  sys.assert_literal(negate_literal(lit));
  return !sys.consistent();
}

bool is_unsatisfiable(const Condition& phi, std::size_t n) {
  return !build_constraints(phi, n).consistent();
}

mpz_class model_count(const Condition& phi, std::size_t n) {
  const ConstraintSystem sys = build_constraints(phi, n);
  if (!sys.consistent()) return 0;
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, sys.free_components());
  return out;
}

std::vector<Literal> entailed_literals(const Condition& phi, std::size_t n) {
  const ConstraintSystem sys = build_constraints(phi, n);
  if (!sys.consistent()) return all_literals(n);

  // Every pair of terms within one component is related by a fixed parity.
  std::map<std::uint32_t, std::vector<std::pair<Term, std::uint8_t>>> groups;
  auto place = [&](Term t) {
    const auto [root, parity] = sys.locate(t);
    groups[root].emplace_back(t, parity);
  };
  for (std::uint32_t i = 1; i <= n; ++i) place(Term::var(i));
  place(Term::constant(false));
  place(Term::constant(true));

  std::vector<Literal> out;
  for (const auto& [root, members] : groups) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a; b < members.size(); ++b) {
        const bool differ = members[a].second != members[b].second;
        out.emplace_back(members[a].first, differ ? Op::Neq : Op::Eq, members[b].first);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool condition_equivalent(const Condition& phi, const Condition& psi, std::size_t n) {
  phi.check_arity(n);
  psi.check_arity(n);
  return entailed_literals(phi, n) == entailed_literals(psi, n);
}

}  // namespace xnr
