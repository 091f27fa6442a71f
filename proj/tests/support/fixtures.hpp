#pragma once

#include "xnr/classifier.hpp"

namespace xnr::fixtures {

inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Perceptron perceptron(std::vector<Rational> w, Rational b) { return Perceptron{std::move(w), std::move(b)}; }

/// <(1,1), -2>: class 1 only on (1,1).
inline Perceptron and_perceptron() { return perceptron({q(1), q(1)}, q(-2)); }
/// <(1,-1), 0>: class 0 only on (0,1).
inline Perceptron diff_perceptron() { return perceptron({q(1), q(-1)}, q(0)); }

/// v1 tested at the root, v2 below it on the 1-branch; class 1 iff v1 = v2 = 1.
inline Bdd and_bdd() {
  Bdd b;
  b.arity = 2;
  b.nodes = {{10, NodeLabel::feature(1)},
             {11, NodeLabel::feature(2)},
             {0, NodeLabel::leaf(ClassLabel::Zero)},
             {1, NodeLabel::leaf(ClassLabel::One)}};
  b.edges = {{10, 11, 1}, {10, 0, 0}, {11, 1, 1}, {11, 0, 0}};
  b.root = 10;
  return b;
}

/// Same function as a tree: every node has one parent.
inline Bdd and_tree() {
  Bdd b;
  b.arity = 2;
  b.nodes = {{0, NodeLabel::feature(1)},
             {1, NodeLabel::leaf(ClassLabel::Zero)},
             {2, NodeLabel::feature(2)},
             {3, NodeLabel::leaf(ClassLabel::Zero)},
             {4, NodeLabel::leaf(ClassLabel::One)}};
  b.edges = {{0, 1, 0}, {0, 2, 1}, {2, 3, 0}, {2, 4, 1}};
  b.root = 0;
  return b;
}

inline Bdd constant_bdd(std::size_t n, ClassLabel c) {
  Bdd b;
  b.arity = n;
  b.nodes = {{0, NodeLabel::leaf(c)}};
  b.root = 0;
  return b;
}

/// Single-layer network computing the same function as p.
inline Mlp as_mlp(const Perceptron& p) {
  Mlp m;
  m.arity = p.weights.size();
  MlpLayer layer;
  for (const auto& w : p.weights) layer.weights.push_back({w});
  layer.bias = {p.bias};
  m.layers.push_back(std::move(layer));
  return m;
}

}  // namespace xnr::fixtures
