#include "xnr/minimality.hpp"

#include <algorithm>

#include "xnr/constraints.hpp"

namespace xnr {

namespace {

bool is_min_with(const NecessityEngine& engine, const Condition& phi, std::size_t n) {
  if (!engine.is_necessary(phi)) return false;
  const ConstraintSystem sys = build_constraints(phi, n);
  for (const Literal& lit : all_literals(n)) {
    if (sys.implies(lit)) continue;
    if (engine.is_necessary(lit)) return false;
  }
  return true;
}

}  // namespace

bool is_min_necessary(const Classifier& m, ClassLabel c, const Condition& phi,
                      const EngineOptions& opts, Preorder /*order*/) {
  phi.check_arity(m.arity());
  const NecessityEngine engine(m, c, opts);
  return is_min_with(engine, phi, m.arity());
}

Condition prune_redundant(const Condition& phi, std::size_t n) {
  std::vector<Literal> kept = phi.literals();
  for (std::size_t i = kept.size(); i-- > 0;) {
    std::vector<Literal> rest;
    rest.reserve(kept.size() - 1);
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (j != i) rest.push_back(kept[j]);
    }
    if (entails(Condition(std::span<const Literal>(rest)), kept[i], n)) kept = std::move(rest);
  }
  return Condition(std::span<const Literal>(kept));
}

Explanation find_min_necessary(const Classifier& m, ClassLabel c, const FindOptions& opts) {
  const std::size_t n = m.arity();
  const NecessityEngine engine(m, c, opts.engine);

  std::vector<Literal> scan = all_literals(n);
  if (opts.order == ScanOrder::Reversed) std::reverse(scan.begin(), scan.end());

  Explanation out;
  out.target = c;
  out.family = m.family();
  Condition phi;
  ConstraintSystem sys(n);
  // Every literal skipped before position i stays disqualified after a later
  // addition: entailment only grows, and with phi necessary, phi & l is
  // necessary iff l is. Resuming after the added literal therefore selects
  // the same literals as rescanning from the start.
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const Literal& lit = scan[i];
    if (sys.implies(lit)) continue;
    const Condition candidate = phi.with(lit);
    if (!engine.is_necessary(candidate)) continue;
    phi = candidate;
    sys.assert_literal(lit);
    out.added_literals.push_back(lit);
  }
  out.condition = opts.prune_redundant ? prune_redundant(phi, n) : phi;
  out.minimal = true;
  return out;
}

bool decide_min_via_find(const Classifier& m, ClassLabel c, const Condition& phi,
                         const EngineOptions& opts) {
  phi.check_arity(m.arity());
  if (!is_necessary(m, c, phi, opts)) return false;
  FindOptions find;
  find.engine = opts;
  return condition_equivalent(phi, find_min_necessary(m, c, find).condition, m.arity());
}

}  // namespace xnr
