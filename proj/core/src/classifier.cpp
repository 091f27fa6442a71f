#include "xnr/classifier.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_map>

#include "xnr/errors.hpp"

namespace xnr {

ClassLabel class_label(int v) {
  if (v != 0 && v != 1) throw std::invalid_argument("class must be 0 or 1, got " + std::to_string(v));
  return v == 1 ? ClassLabel::One : ClassLabel::Zero;
}

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Bdd:
      return "bdd";
    case Family::DecisionTree:
      return "dt";
    case Family::Perceptron:
      return "perceptron";
    case Family::Mlp:
      return "mlp";
  }
  return "unknown";
}

Family family_of(const Model& m) noexcept {
  return static_cast<Family>(m.index());
}

std::size_t declared_arity(const Model& m) noexcept {
  struct Visitor {
    std::size_t operator()(const Bdd& b) const { return b.arity; }
    std::size_t operator()(const DecisionTree& t) const { return t.graph.arity; }
    std::size_t operator()(const Perceptron& p) const { return p.arity(); }
    std::size_t operator()(const Mlp& m) const { return m.arity; }
  };
  return std::visit(Visitor{}, m);
}

namespace {

// Structural checks shared by BDDs and decision trees.
class GraphCheck {
 public:
  GraphCheck(const Bdd& bdd, std::vector<std::string>& out) : bdd_(bdd), out_(out) {}

  void run(bool require_tree) {
    if (bdd_.arity == 0) out_.push_back("arity: a BDD needs at least one feature");
    if (!index_nodes()) return;
    if (!index_edges()) return;
    check_labels();
    check_degrees();
    if (!check_rooted(require_tree)) return;
    if (!topological_order()) return;
    check_paths();
  }

 private:
  bool index_nodes() {
    bool ok = true;
    for (std::size_t i = 0; i < bdd_.nodes.size(); ++i) {
      if (!index_.emplace(bdd_.nodes[i].id, i).second) {
        out_.push_back("ids: duplicate node id " + std::to_string(bdd_.nodes[i].id));
        ok = false;
      }
    }
    if (bdd_.nodes.empty()) {
      out_.push_back("not rooted: the graph has no nodes");
      ok = false;
    }
    return ok;
  }

  bool index_edges() {
    bool ok = true;
    out_edges_.assign(bdd_.nodes.size(), {});
    in_degree_.assign(bdd_.nodes.size(), 0);
    for (const auto& e : bdd_.edges) {
      auto f = index_.find(e.from);
      auto t = index_.find(e.to);
      if (f == index_.end() || t == index_.end()) {
        out_.push_back("dangling edge: " + std::to_string(e.from) + " -> " + std::to_string(e.to));
        ok = false;
        continue;
      }
      if (e.value > 1) {
        out_.push_back("edge labels: edge " + std::to_string(e.from) + " -> " +
                       std::to_string(e.to) + " has value " + std::to_string(e.value));
        ok = false;
      }
      out_edges_[f->second].push_back({t->second, e.value});
      ++in_degree_[t->second];
    }
    return ok;
  }

  void check_labels() {
    for (const auto& n : bdd_.nodes) {
      if (n.label.is_feature() &&
          (n.label.feature_index() == 0 || n.label.feature_index() > bdd_.arity)) {
        out_.push_back("feature range: node " + std::to_string(n.id) + " tests feature " +
                       std::to_string(n.label.feature_index()) + " outside 1.." +
                       std::to_string(bdd_.arity));
      }
    }
  }

  void check_degrees() {
    for (std::size_t i = 0; i < bdd_.nodes.size(); ++i) {
      const auto& node = bdd_.nodes[i];
      const auto& outs = out_edges_[i];
      if (node.label.is_class()) {
        if (!outs.empty()) {
          out_.push_back("out-degree: class node " + std::to_string(node.id) +
                         " has outgoing edges");
        }
        continue;
      }
      if (outs.size() != 2) {
        out_.push_back("out-degree: feature node " + std::to_string(node.id) + " has " +
                       std::to_string(outs.size()) + " outgoing edges, expected 2");
        continue;
      }
      if (outs[0].value == outs[1].value) {
        out_.push_back("edge labels: both edges of node " + std::to_string(node.id) +
                       " are labeled " + std::to_string(outs[0].value));
      }
    }
  }

  bool check_rooted(bool require_tree) {
    auto r = index_.find(bdd_.root);
    if (r == index_.end()) {
      out_.push_back("not rooted: root id " + std::to_string(bdd_.root) + " is not a node");
      return false;
    }
    root_ = r->second;
    std::size_t sources = 0;
    for (std::size_t i = 0; i < bdd_.nodes.size(); ++i) {
      if (in_degree_[i] == 0) ++sources;
    }
    bool ok = true;
    if (in_degree_[root_] != 0 || sources != 1) {
      out_.push_back("not rooted: expected exactly one node without incoming edges (the root), found " +
                     std::to_string(sources));
      ok = false;
    }
    if (require_tree) {
      for (std::size_t i = 0; i < bdd_.nodes.size(); ++i) {
        if (i != root_ && in_degree_[i] != 1) {
          out_.push_back("not a tree: node " + std::to_string(bdd_.nodes[i].id) + " has " +
                         std::to_string(in_degree_[i]) + " incoming edges");
        }
      }
    }
    return ok;
  }

  bool topological_order() {
    std::vector<std::size_t> indeg = in_degree_;
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < indeg.size(); ++i) {
      if (indeg[i] == 0) stack.push_back(i);
    }
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      order_.push_back(u);
      for (const auto& e : out_edges_[u]) {
        if (--indeg[e.to] == 0) stack.push_back(e.to);
      }
    }
    if (order_.size() != bdd_.nodes.size()) {
      out_.push_back("cycle: the graph is not acyclic");
      return false;
    }
    return true;
  }

  // A feature repeats on some root-to-sink path iff some node's label occurs
  // among the labels of its ancestors; ancestor sets propagate in topological order.
  void check_paths() {
    const std::size_t words = (bdd_.arity + 64) / 64;
    std::vector<std::uint64_t> above(bdd_.nodes.size() * words, 0);
    auto row = [&](std::size_t i) { return above.data() + i * words; };
    std::vector<std::uint8_t> reported(bdd_.nodes.size(), 0);
    for (const std::size_t u : order_) {
      const auto& label = bdd_.nodes[u].label;
      if (!label.is_feature() || label.feature_index() > bdd_.arity) continue;
      const std::uint32_t f = label.feature_index();
      if ((row(u)[f / 64] >> (f % 64)) & 1U) {
        if (!reported[u]) {
          out_.push_back("repeated feature: feature " + std::to_string(f) +
                         " is tested twice on a path through node " +
                         std::to_string(bdd_.nodes[u].id));
          reported[u] = 1;
        }
      }
      for (const auto& e : out_edges_[u]) {
        std::uint64_t* dst = row(e.to);
        const std::uint64_t* src = row(u);
        for (std::size_t w = 0; w < words; ++w) dst[w] |= src[w];
        dst[f / 64] |= std::uint64_t{1} << (f % 64);
      }
    }
  }

  struct Out {
    std::size_t to;
    std::uint8_t value;
  };

  const Bdd& bdd_;
  std::vector<std::string>& out_;
  std::unordered_map<std::int64_t, std::size_t> index_;
  std::vector<std::vector<Out>> out_edges_;
  std::vector<std::size_t> in_degree_;
  std::vector<std::size_t> order_;
  std::size_t root_ = 0;
};

void check_layers(std::size_t arity, const std::vector<MlpLayer>& layers,
                  std::vector<std::string>& out) {
  if (arity == 0) out.push_back("arity: an MLP needs at least one feature");
  if (layers.empty()) {
    out.push_back("dimensions: an MLP needs at least one layer");
    return;
  }
  std::size_t width = arity;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto& layer = layers[k];
    const std::string where = "layer " + std::to_string(k + 1);
    if (layer.weights.size() != width) {
      out.push_back("dimensions: " + where + " has " + std::to_string(layer.weights.size()) +
                    " weight rows, expected " + std::to_string(width));
    }
    const std::size_t cols = layer.bias.size();
    if (cols == 0) out.push_back("dimensions: " + where + " has no units");
    for (const auto& row : layer.weights) {
      if (row.size() != cols) {
        out.push_back("dimensions: " + where + " has a weight row of length " +
                      std::to_string(row.size()) + ", expected " + std::to_string(cols));
        break;
      }
    }
    width = cols;
  }
  if (width != 1) {
    out.push_back("output width: final layer has " + std::to_string(width) +
                  " units, expected 1");
  }
}

}  // namespace

std::vector<std::string> validate(const Model& m) {
  std::vector<std::string> out;
  struct Visitor {
    std::vector<std::string>& out;
    void operator()(const Bdd& b) const { GraphCheck(b, out).run(false); }
    void operator()(const DecisionTree& t) const { GraphCheck(t.graph, out).run(true); }
    void operator()(const Perceptron& p) const {
      if (p.weights.empty()) out.push_back("empty weights: a perceptron needs at least one weight");
    }
    void operator()(const Mlp& m) const { check_layers(m.arity, m.layers, out); }
  };
  std::visit(Visitor{out}, m);
  return out;
}

CompiledBdd::CompiledBdd(const Bdd& bdd) : arity_(bdd.arity) {
  std::unordered_map<std::int64_t, std::uint32_t> index;
  nodes_.resize(bdd.nodes.size());
  for (std::uint32_t i = 0; i < bdd.nodes.size(); ++i) {
    index.emplace(bdd.nodes[i].id, i);
    const auto& label = bdd.nodes[i].label;
    if (label.is_feature()) {
      nodes_[i].feature = label.feature_index();
    } else {
      nodes_[i].label = label.class_label();
    }
  }
  for (const auto& e : bdd.edges) {
    auto& slot = nodes_[index.at(e.from)].child[e.value];
    // Exactly one successor per edge value on a valid BDD, so every instance
    // selects a unique path.
    assert(slot == kNone);
    slot = index.at(e.to);
  }
  root_ = index.at(bdd.root);
}

std::size_t CompiledBdd::internal_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return !n.is_sink(); }));
}

ThresholdNetwork::ThresholdNetwork(const Perceptron& p) : arity_(p.arity()) {
  MlpLayer layer;
  layer.weights.reserve(p.weights.size());
  for (const auto& w : p.weights) layer.weights.push_back({w});
  layer.bias = {p.bias};
  compile({layer});
}

ThresholdNetwork::ThresholdNetwork(const Mlp& m) : arity_(m.arity) { compile(m.layers); }

void ThresholdNetwork::compile(const std::vector<MlpLayer>& layers) {
  // Layer k takes integer activations H = s * h (s > 0) and emits
  // Z = H * (D W) + s * (D b) = (s D) * z, so signs and ReLU commute with the scale.
  Integer scale = 1;
  Integer bound = 1;  // max |activation| entering the layer
  const Integer limit = Integer(1) << 62;
  fast_ = true;
  for (const auto& src : layers) {
    Layer layer;
    layer.in = src.weights.size();
    layer.out = src.bias.size();
    Integer denom = 1;
    for (const auto& row : src.weights) {
      for (const auto& w : row) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), w.get_den_mpz_t());
    }
    for (const auto& b : src.bias) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), b.get_den_mpz_t());

    layer.weights.reserve(layer.in * layer.out);
    for (const auto& row : src.weights) {
      for (const auto& w : row) layer.weights.push_back(Integer(w.get_num() * (denom / w.get_den())));
    }
    Integer next_bound = 0;
    for (std::size_t j = 0; j < layer.out; ++j) {
      const auto& b = src.bias[j];
      layer.offset.push_back(Integer(scale * b.get_num() * (denom / b.get_den())));
      Integer col = 0;
      for (std::size_t i = 0; i < layer.in; ++i) col += abs(layer.weights[i * layer.out + j]);
      Integer unit = bound * col + abs(layer.offset.back());
      if (unit > next_bound) next_bound = unit;
    }
    if (next_bound >= limit) fast_ = false;
    bound = next_bound;
    scale *= denom;
    layers_.push_back(std::move(layer));
  }
  if (!fast_) return;
  for (auto& layer : layers_) {
    for (const auto& w : layer.weights) layer.weights64.push_back(w.get_si());
    for (const auto& o : layer.offset) layer.offset64.push_back(o.get_si());
  }
}

template <typename Input>
ClassLabel ThresholdNetwork::run_fast(Input&& input) const {
  std::vector<std::int64_t> cur(arity_);
  for (std::size_t i = 0; i < arity_; ++i) cur[i] = input(i) ? 1 : 0;
  std::vector<std::int64_t> next;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const Layer& layer = layers_[k];
    next.assign(layer.offset64.begin(), layer.offset64.end());
    for (std::size_t i = 0; i < layer.in; ++i) {
      const std::int64_t a = cur[i];
      if (a == 0) continue;
      const std::int64_t* row = layer.weights64.data() + i * layer.out;
      for (std::size_t j = 0; j < layer.out; ++j) next[j] += a * row[j];
    }
    if (k + 1 == layers_.size()) return next[0] >= 0 ? ClassLabel::One : ClassLabel::Zero;
    for (auto& v : next) v = std::max<std::int64_t>(v, 0);
    cur.swap(next);
  }
  return ClassLabel::Zero;  // unreachable on validated models
}

template <typename Input>
ClassLabel ThresholdNetwork::run_big(Input&& input) const {
  std::vector<Integer> cur(arity_);
  for (std::size_t i = 0; i < arity_; ++i) cur[i] = input(i) ? 1 : 0;
  std::vector<Integer> next;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const Layer& layer = layers_[k];
    next = layer.offset;
    for (std::size_t i = 0; i < layer.in; ++i) {
      if (sgn(cur[i]) == 0) continue;
      for (std::size_t j = 0; j < layer.out; ++j) next[j] += cur[i] * layer.weights[i * layer.out + j];
    }
    if (k + 1 == layers_.size()) return sgn(next[0]) >= 0 ? ClassLabel::One : ClassLabel::Zero;
    for (auto& v : next) {
      if (sgn(v) < 0) v = 0;
    }
    cur.swap(next);
  }
  return ClassLabel::Zero;
}

ClassLabel ThresholdNetwork::evaluate(const std::vector<std::uint8_t>& inputs) const {
  auto at = [&](std::size_t i) { return inputs[i] != 0; };
  return fast_ ? run_fast(at) : run_big(at);
}

ClassLabel ThresholdNetwork::evaluate_packed(std::uint64_t x) const {
  auto at = [x](std::size_t i) { return ((x >> i) & 1U) != 0; };
  return fast_ ? run_fast(at) : run_big(at);
}

Classifier::Classifier(Model model) : model_(std::move(model)), arity_(declared_arity(model_)) {
  auto violations = validate(model_);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  if (const Bdd* g = bdd()) {
    bdd_ = std::make_shared<const CompiledBdd>(*g);
  } else if (const Perceptron* p = perceptron()) {
    network_ = std::make_shared<const ThresholdNetwork>(*p);
  } else {
    network_ = std::make_shared<const ThresholdNetwork>(*mlp());
  }
}

const Bdd* Classifier::bdd() const noexcept {
  if (const auto* b = std::get_if<Bdd>(&model_)) return b;
  if (const auto* t = std::get_if<DecisionTree>(&model_)) return &t->graph;
  return nullptr;
}

const Perceptron* Classifier::perceptron() const noexcept { return std::get_if<Perceptron>(&model_); }

const Mlp* Classifier::mlp() const noexcept { return std::get_if<Mlp>(&model_); }

const CompiledBdd& Classifier::compiled_bdd() const {
  if (!bdd_) throw std::logic_error("classifier is not a BDD");
  return *bdd_;
}

ClassLabel Classifier::classify(const Instance& x) const {
  if (x.size() != arity_) {
    throw ArityError("instance has " + std::to_string(x.size()) + " features, model expects " +
                     std::to_string(arity_));
  }
  if (bdd_) return bdd_->evaluate([&](std::uint32_t f) { return x.feature(f); });
  return network_->evaluate(x.bits());
}

ClassLabel Classifier::classify_packed(std::uint64_t x) const {
  if (bdd_) return bdd_->evaluate([x](std::uint32_t f) { return ((x >> (f - 1)) & 1U) != 0; });
  return network_->evaluate_packed(x);
}

}  // namespace xnr
