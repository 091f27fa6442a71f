#include "xnr/oracle.hpp"

#include <algorithm>

#include "parallel.hpp"
#include "xnr/errors.hpp"

namespace xnr {

InstanceSet::InstanceSet(std::size_t arity, std::vector<std::uint64_t> sorted_packed)
    : arity_(arity), items_(std::move(sorted_packed)) {}

bool InstanceSet::contains(std::uint64_t packed) const {
  return std::binary_search(items_.begin(), items_.end(), packed);
}

std::vector<Instance> InstanceSet::instances() const {
  std::vector<Instance> out;
  out.reserve(items_.size());
  for (const auto x : items_) out.push_back(Instance::from_packed(x, arity_));
  return out;
}

bool InstanceSet::is_subset_of(const InstanceSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

namespace {

void check_oracle_bound(std::size_t n, std::size_t bound) {
  if (n > bound) throw BoundExceeded("brute-force oracle", n, bound);
  if (n > 62) throw BoundExceeded("brute-force oracle", n, 62);
}

}  // namespace

InstanceSet enumerate_condition_models(const Condition& phi, std::size_t n,
                                       const OracleOptions& opts) {
  check_oracle_bound(n, opts.bound);
  phi.check_arity(n);
  return InstanceSet(n, detail::parallel_filter(std::uint64_t{1} << n, opts.threads,
                                                [&](std::uint64_t x) {
                                                  return evaluate_packed(phi, x);
                                                }));
}

Oracle::Oracle(const Classifier& m, ClassLabel c, OracleOptions opts)
    : arity_(m.arity()), opts_(opts) {
  check_oracle_bound(arity_, opts_.bound);
  class_models_ = ClassModelSet(
      arity_, detail::parallel_filter(std::uint64_t{1} << arity_, opts_.threads,
                                      [&](std::uint64_t x) { return m.classify_packed(x) == c; }));
  minimal_ = compute_minimal_model_set();
}

std::vector<Literal> Oracle::necessary_literals() const {
  std::vector<Literal> out;
  for (const Literal& lit : all_literals(arity_)) {
    const bool holds = std::all_of(class_models_.packed().begin(), class_models_.packed().end(),
                                   [&](std::uint64_t x) { return evaluate_packed(lit, x); });
    if (holds) out.push_back(lit);
  }
  return out;
}

InstanceSet Oracle::compute_minimal_model_set() const {
  const auto necessary = necessary_literals();
  std::vector<std::uint64_t> out;
  const std::uint64_t count = std::uint64_t{1} << arity_;
  for (std::uint64_t x = 0; x < count; ++x) {
    const bool all = std::all_of(necessary.begin(), necessary.end(),
                                 [&](const Literal& l) { return evaluate_packed(l, x); });
    if (all) out.push_back(x);
  }
  return InstanceSet(arity_, std::move(out));
}

bool Oracle::is_necessary(const Condition& phi) const {
  phi.check_arity(arity_);
  return std::all_of(class_models_.packed().begin(), class_models_.packed().end(),
                     [&](std::uint64_t x) { return evaluate_packed(phi, x); });
}

bool Oracle::is_min_necessary(const Condition& phi) const {
  if (!is_necessary(phi)) return false;
  return enumerate_condition_models(phi, arity_, opts_) == minimal_;
}

ClassModelSet enumerate_class_models(const Classifier& m, ClassLabel c, const OracleOptions& opts) {
  return Oracle(m, c, opts).class_models();
}

std::vector<Literal> necessary_literal_set(const Classifier& m, ClassLabel c,
                                           const OracleOptions& opts) {
  return Oracle(m, c, opts).necessary_literals();
}

InstanceSet minimal_model_set(const Classifier& m, ClassLabel c, const OracleOptions& opts) {
  return Oracle(m, c, opts).minimal_model_set();
}

bool oracle_is_necessary(const Classifier& m, ClassLabel c, const Condition& phi,
                         const OracleOptions& opts) {
  return Oracle(m, c, opts).is_necessary(phi);
}

bool oracle_is_min_necessary(const Classifier& m, ClassLabel c, const Condition& phi,
                             const OracleOptions& opts) {
  return Oracle(m, c, opts).is_min_necessary(phi);
}

}  // namespace xnr
