#pragma once

#include <vector>

#include "xnr/classifier.hpp"
#include "xnr/condition.hpp"
#include "xnr/necessity.hpp"

namespace xnr {

/// Cardinality (<=) and inclusion (subset) of model sets. For necessary
/// conditions both orders have the same minimal elements: phi is minimal iff
/// no literal outside phi's consequences is itself necessary. Both values
/// therefore select the same procedure.
enum class Preorder { Cardinality, Subset };

struct Explanation {
  Condition condition;
  ClassLabel target = ClassLabel::One;
  Family family = Family::Bdd;
  /// Literals in the order the greedy search conjoined them.
  std::vector<Literal> added_literals;
  bool minimal = false;
};

enum class ScanOrder { Canonical, Reversed };

struct FindOptions {
  EngineOptions engine;
  ScanOrder order = ScanOrder::Canonical;
  /// Drop literals implied by the remaining ones from the reported condition.
  bool prune_redundant = true;
};

/// phi is necessary and no literal l with phi not entailing l is necessary.
bool is_min_necessary(const Classifier& m, ClassLabel c, const Condition& phi,
                      const EngineOptions& opts = {}, Preorder order = Preorder::Subset);

/// Greedy synthesis from "true": conjoin the first literal (in scan order)
/// that is not yet entailed and keeps the condition necessary, until none is left.
Explanation find_min_necessary(const Classifier& m, ClassLabel c, const FindOptions& opts = {});

/// Decides minimality by synthesizing a minimal reason and comparing models.
bool decide_min_via_find(const Classifier& m, ClassLabel c, const Condition& phi,
                         const EngineOptions& opts = {});

/// Removes literals entailed by the others, keeping the model set.
Condition prune_redundant(const Condition& phi, std::size_t n);

}  // namespace xnr
