#pragma once

// Binary classifiers over {0,1}^n: free BDDs, decision trees, perceptrons and
// ReLU networks with a Heaviside output. Models are plain data; a Classifier
// is a validated, immutable model plus a compiled evaluator.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xnr/condition.hpp"
#include "xnr/rational.hpp"

namespace xnr {

enum class ClassLabel : std::uint8_t { Zero = 0, One = 1 };

/// Throws std::invalid_argument unless v is 0 or 1.
ClassLabel class_label(int v);
constexpr int to_int(ClassLabel c) noexcept { return static_cast<int>(c); }
constexpr ClassLabel opposite(ClassLabel c) noexcept {
  return c == ClassLabel::One ? ClassLabel::Zero : ClassLabel::One;
}

enum class Family : std::uint8_t { Bdd, DecisionTree, Perceptron, Mlp };

/// "bdd", "dt", "perceptron", "mlp" (the model file "type" values).
std::string_view to_string(Family f) noexcept;

class NodeLabel {
 public:
  static NodeLabel feature(std::uint32_t index) { return NodeLabel(true, index, ClassLabel::Zero); }
  static NodeLabel leaf(ClassLabel c) { return NodeLabel(false, 0, c); }

  bool is_feature() const noexcept { return is_feature_; }
  bool is_class() const noexcept { return !is_feature_; }
  std::uint32_t feature_index() const noexcept { return feature_; }
  ClassLabel class_label() const noexcept { return class_; }

  bool operator==(const NodeLabel&) const = default;

 private:
  NodeLabel(bool is_feature, std::uint32_t feature, ClassLabel c)
      : is_feature_(is_feature), feature_(feature), class_(c) {}

  bool is_feature_;
  std::uint32_t feature_;
  ClassLabel class_;
};

struct BddNode {
  std::int64_t id;
  NodeLabel label;
  bool operator==(const BddNode&) const = default;
};

struct BddEdge {
  std::int64_t from;
  std::int64_t to;
  std::uint8_t value;
  bool operator==(const BddEdge&) const = default;
};

/// Free BDD as a labeled rooted DAG; feature labels are 1-based.
struct Bdd {
  std::size_t arity = 0;
  std::vector<BddNode> nodes;
  std::vector<BddEdge> edges;
  std::int64_t root = 0;
  bool operator==(const Bdd&) const = default;
};

/// A BDD whose DAG is a tree.
struct DecisionTree {
  Bdd graph;
  bool operator==(const DecisionTree&) const = default;
};

/// Class 1 iff x.w + b >= 0.
struct Perceptron {
  std::vector<Rational> weights;
  Rational bias;
  std::size_t arity() const noexcept { return weights.size(); }
  bool operator==(const Perceptron&) const = default;
};

/// weights[i][j] connects input i to output j (d_{k-1} x d_k).
struct MlpLayer {
  std::vector<std::vector<Rational>> weights;
  std::vector<Rational> bias;
  bool operator==(const MlpLayer&) const = default;
};

/// ReLU on every hidden layer, Heaviside (>= 0) on the single output unit.
struct Mlp {
  std::size_t arity = 0;
  std::vector<MlpLayer> layers;
  bool operator==(const Mlp&) const = default;
};

using Model = std::variant<Bdd, DecisionTree, Perceptron, Mlp>;

Family family_of(const Model& m) noexcept;
/// Declared feature count of a model (not validated).
std::size_t declared_arity(const Model& m) noexcept;

/// Every broken invariant, one message each; empty means valid. Messages
/// start with a fixed tag: "arity", "ids", "dangling edge", "not rooted",
/// "cycle", "out-degree", "edge labels", "feature range", "repeated feature",
/// "not a tree", "empty weights", "dimensions", "output width".
std::vector<std::string> validate(const Model& m);

/// Index-based view of a validated BDD used by the evaluators and engines.
class CompiledBdd {
 public:
  static constexpr std::uint32_t kNone = UINT32_MAX;

  struct Node {
    std::uint32_t feature = 0;  // 0 on sinks
    ClassLabel label = ClassLabel::Zero;
    std::uint32_t child[2] = {kNone, kNone};
    bool is_sink() const noexcept { return feature == 0; }
  };

  explicit CompiledBdd(const Bdd& bdd);

  std::size_t arity() const noexcept { return arity_; }
  std::uint32_t root() const noexcept { return root_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t internal_count() const noexcept;

  template <typename FeatureFn>
  ClassLabel evaluate(FeatureFn&& feature_value) const {
    std::uint32_t u = root_;
    while (!nodes_[u].is_sink()) {
      u = nodes_[u].child[feature_value(nodes_[u].feature) ? 1 : 0];
    }
    return nodes_[u].label;
  }

 private:
  std::size_t arity_;
  std::uint32_t root_ = 0;
  std::vector<Node> nodes_;
};

class ThresholdNetwork;

class Classifier {
 public:
  /// Validates `model`; throws ValidationError listing every violation.
  explicit Classifier(Model model);

  Family family() const noexcept { return family_of(model_); }
  std::size_t arity() const noexcept { return arity_; }
  const Model& model() const noexcept { return model_; }

  /// BDD graph for Bdd and DecisionTree models, else nullptr.
  const Bdd* bdd() const noexcept;
  const Perceptron* perceptron() const noexcept;
  const Mlp* mlp() const noexcept;
  /// Precondition: bdd() != nullptr.
  const CompiledBdd& compiled_bdd() const;

  /// Throws ArityError if |x| != arity().
  ClassLabel classify(const Instance& x) const;
  /// Bit i-1 of x is v_i. Precondition: arity() <= 64.
  ClassLabel classify_packed(std::uint64_t x) const;

 private:
  Model model_;
  std::size_t arity_;
  std::shared_ptr<const CompiledBdd> bdd_;
  std::shared_ptr<const ThresholdNetwork> network_;
};

inline ClassLabel classify(const Classifier& m, const Instance& x) { return m.classify(x); }

/// Exact layered evaluator shared by perceptrons and MLPs. Each layer is
/// rescaled to integer weights; the scale is positive so signs are kept.
/// Uses int64 arithmetic when a static magnitude bound proves it safe,
/// otherwise arbitrary-precision integers.
class ThresholdNetwork {
 public:
  explicit ThresholdNetwork(const Perceptron& p);
  explicit ThresholdNetwork(const Mlp& m);

  bool uses_fast_path() const noexcept { return fast_; }

  /// `inputs` holds d_0 values in {0,1}.
  ClassLabel evaluate(const std::vector<std::uint8_t>& inputs) const;
  ClassLabel evaluate_packed(std::uint64_t x) const;

 private:
  struct Layer {
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<Integer> weights;  // row-major in x out
    std::vector<Integer> offset;
    std::vector<std::int64_t> weights64;
    std::vector<std::int64_t> offset64;
  };

  void compile(const std::vector<MlpLayer>& layers);
  template <typename Input>
  ClassLabel run_fast(Input&& input) const;
  template <typename Input>
  ClassLabel run_big(Input&& input) const;

  std::size_t arity_ = 0;
  std::vector<Layer> layers_;
  bool fast_ = false;
};

}  // namespace xnr
