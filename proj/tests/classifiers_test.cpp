#include <gtest/gtest.h>

#include <algorithm>

#include "support/fixtures.hpp"
#include "support/reference.hpp"
#include "xnr/classifier.hpp"
#include "xnr/errors.hpp"
#include "xnr/testgen.hpp"

namespace xnr {
namespace {

using fixtures::q;

bool has_tag(const std::vector<std::string>& violations, const std::string& tag) {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const std::string& v) { return v.rfind(tag + ":", 0) == 0; });
}

TEST(Classify, Examples) {
  const Classifier p(fixtures::diff_perceptron());
  EXPECT_EQ(p.classify(Instance{0, 0}), ClassLabel::One);
  EXPECT_EQ(p.classify(Instance{0, 1}), ClassLabel::Zero);
  EXPECT_THROW(p.classify(Instance{0, 1, 1}), ArityError);

  const Classifier b(fixtures::and_bdd());
  EXPECT_EQ(b.classify(Instance{1, 1}), ClassLabel::One);
  EXPECT_EQ(b.classify(Instance{1, 0}), ClassLabel::Zero);
  EXPECT_EQ(b.classify(Instance{0, 1}), ClassLabel::Zero);
}

TEST(Classify, HeavisideFiresAtZero) {
  const Classifier p(fixtures::perceptron({q(1, 3), q(1, 6)}, q(-1, 2)));
  EXPECT_EQ(p.classify(Instance{1, 1}), ClassLabel::One);
  EXPECT_EQ(p.classify(Instance{1, 0}), ClassLabel::Zero);

  // 2/3 relu(x1 - x2) - 2/3 relu(x2) - 2/3; exactly 0 at (1,0).
  Mlp m;
  m.arity = 2;
  m.layers = {MlpLayer{{{q(1), q(0)}, {q(-1), q(1)}}, {q(0), q(0)}},
              MlpLayer{{{q(2, 3)}, {q(-2, 3)}}, {q(-2, 3)}}};
  const Classifier net(m);
  EXPECT_EQ(net.classify(Instance{1, 0}), ClassLabel::One);   // 2/3 - 2/3 = 0
  EXPECT_EQ(net.classify(Instance{0, 0}), ClassLabel::Zero);  // -2/3
  EXPECT_EQ(net.classify(Instance{1, 1}), ClassLabel::Zero);  // -2/3 - 2/3
}

TEST(Validate, AcceptsFixtures) {
  EXPECT_TRUE(validate(fixtures::and_bdd()).empty());
  EXPECT_TRUE(validate(DecisionTree{fixtures::and_tree()}).empty());
  EXPECT_TRUE(has_tag(validate(DecisionTree{fixtures::and_bdd()}), "not a tree"));
  EXPECT_TRUE(validate(fixtures::and_perceptron()).empty());
  EXPECT_TRUE(validate(fixtures::as_mlp(fixtures::and_perceptron())).empty());
  EXPECT_TRUE(validate(fixtures::constant_bdd(3, ClassLabel::Zero)).empty());
}

TEST(Validate, BddViolations) {
  Bdd b = fixtures::and_bdd();
  b.edges[0].value = 0;  // 10 now has two 0-edges
  EXPECT_TRUE(has_tag(validate(b), "edge labels"));

  b = fixtures::and_bdd();
  b.nodes.push_back({12, NodeLabel::feature(2)});
  b.edges.push_back({12, 0, 0});
  b.edges.push_back({12, 1, 1});
  EXPECT_TRUE(has_tag(validate(b), "not rooted"));

  b = fixtures::and_bdd();
  b.edges.push_back({10, 99, 1});
  EXPECT_TRUE(has_tag(validate(b), "dangling edge"));

  b = fixtures::and_bdd();
  b.nodes[1].label = NodeLabel::feature(1);
  EXPECT_TRUE(has_tag(validate(b), "repeated feature"));

  b = fixtures::and_bdd();
  b.nodes[1].label = NodeLabel::feature(3);
  EXPECT_TRUE(has_tag(validate(b), "feature range"));

  b = fixtures::and_bdd();
  b.nodes.push_back({10, NodeLabel::feature(2)});
  EXPECT_TRUE(has_tag(validate(b), "ids"));

  b = fixtures::and_bdd();
  b.edges.pop_back();
  EXPECT_TRUE(has_tag(validate(b), "out-degree"));

  b = fixtures::and_bdd();
  b.edges.push_back({1, 10, 0});
  EXPECT_FALSE(validate(b).empty());

  b = fixtures::and_bdd();
  b.root = 11;
  EXPECT_TRUE(has_tag(validate(b), "not rooted"));
}

TEST(Validate, CycleIsReported) {
  Bdd b;
  b.arity = 2;
  b.nodes = {{0, NodeLabel::feature(1)}, {1, NodeLabel::feature(2)}, {2, NodeLabel::leaf(ClassLabel::One)},
             {3, NodeLabel::feature(2)}};
  b.edges = {{3, 0, 0}, {3, 2, 1}, {0, 1, 0}, {0, 2, 1}, {1, 0, 0}, {1, 2, 1}};
  b.root = 3;
  EXPECT_TRUE(has_tag(validate(b), "cycle"));
}

TEST(Validate, RepeatedFeatureOnlyAlongAPath) {
  // v1 on both branches is fine; v1 twice on one path is not.
  Bdd b;
  b.arity = 2;
  b.nodes = {{0, NodeLabel::leaf(ClassLabel::Zero)}, {1, NodeLabel::leaf(ClassLabel::One)},
             {2, NodeLabel::feature(2)}, {3, NodeLabel::feature(1)}, {4, NodeLabel::feature(1)}};
  b.edges = {{2, 3, 0}, {2, 4, 1}, {3, 0, 0}, {3, 1, 1}, {4, 1, 0}, {4, 0, 1}};
  b.root = 2;
  EXPECT_TRUE(validate(b).empty());

  b.edges[5].to = 3;  // 4 -1-> 3: v1 twice on the path 2,4,3
  EXPECT_TRUE(has_tag(validate(b), "repeated feature"));
}

TEST(Validate, DecisionTreeMustBeATree) {
  Bdd b = fixtures::and_bdd();
  b.edges[1].to = 11;  // 10 -0-> 11 and 10 -1-> 11 share a child
  b.edges[0].to = 11;
  EXPECT_TRUE(validate(b).empty());
  EXPECT_TRUE(has_tag(validate(DecisionTree{b}), "not a tree"));
}

TEST(Validate, NetworkViolations) {
  EXPECT_TRUE(has_tag(validate(Perceptron{}), "empty weights"));

  Mlp m = fixtures::as_mlp(fixtures::and_perceptron());
  m.layers[0].weights[0].push_back(q(1));
  m.layers[0].weights[1].push_back(q(1));
  m.layers[0].bias.push_back(q(0));
  EXPECT_TRUE(has_tag(validate(m), "output width"));

  m = fixtures::as_mlp(fixtures::and_perceptron());
  m.arity = 3;
  EXPECT_TRUE(has_tag(validate(m), "dimensions"));

  m = fixtures::as_mlp(fixtures::and_perceptron());
  m.layers[0].weights[1].clear();
  EXPECT_TRUE(has_tag(validate(m), "dimensions"));

  EXPECT_THROW(Classifier{m}, ValidationError);
}

TEST(Validate, GeneratorsEmitValidModels) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 1 + seed % 9;
    EXPECT_TRUE(validate(random_bdd(n, 1 + seed % 20, seed)).empty()) << seed;
    EXPECT_TRUE(validate(random_dt(n, n, seed)).empty()) << seed;
    EXPECT_TRUE(validate(random_perceptron(n, 5, seed)).empty()) << seed;
    EXPECT_TRUE(validate(random_mlp(n, {3, 2}, 3, seed)).empty()) << seed;
  }
}

TEST(Classify, AgreesWithReferenceEvaluation) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + rng.below(16);
    const Perceptron p = random_perceptron(n, 6, rng.below(UINT64_MAX));
    const Classifier m(p);
    for (int k = 0; k < 20; ++k) {
      const std::uint64_t x = rng.below(std::uint64_t{1} << n);
      ASSERT_EQ(m.classify_packed(x), ref::classify(p, x));
      ASSERT_EQ(m.classify(Instance::from_packed(x, n)), ref::classify(p, x));
    }
  }
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng.below(8);
    const std::uint64_t seed = rng.below(UINT64_MAX);
    const Mlp net = random_mlp(n, {1 + seed % 5, 1 + seed % 3}, 4, seed);
    const Bdd bdd = random_bdd(n, 1 + seed % 20, seed);
    const DecisionTree dt = random_dt(n, n, seed);
    const Classifier a(net), b(bdd), c(dt);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      ASSERT_EQ(a.classify_packed(x), ref::classify(net, x));
      ASSERT_EQ(b.classify_packed(x), ref::classify(bdd, x));
      ASSERT_EQ(c.classify_packed(x), ref::classify(dt.graph, x));
    }
  }
}

TEST(Classify, SingleLayerNetworkMatchesPerceptron) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const std::size_t n = 1 + seed % 10;
    const Perceptron p = random_perceptron(n, 5, seed);
    const Classifier a(p), b(fixtures::as_mlp(p));
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); x += 1 + seed % 3) {
      ASSERT_EQ(a.classify_packed(x), b.classify_packed(x));
    }
  }
}

TEST(ThresholdNetwork, LargeWeightsUseExactFallback) {
  const Rational big(mpz_class(1) << 70);
  const Perceptron p = fixtures::perceptron({big, -big, q(1)}, q(-1));
  const ThresholdNetwork net(p);
  EXPECT_FALSE(net.uses_fast_path());
  EXPECT_TRUE(ThresholdNetwork(fixtures::and_perceptron()).uses_fast_path());
  for (std::uint64_t x = 0; x < 8; ++x) EXPECT_EQ(net.evaluate_packed(x), ref::classify(p, x)) << x;
  EXPECT_EQ(net.evaluate_packed(0b111), ClassLabel::One);  // big - big + 1 - 1 = 0
}

TEST(ThresholdNetwork, DeepRationalNetworkAgrees) {
  // Small denominators compound across layers; the fallback must kick in
  // without changing any answer.
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Mlp m = random_mlp(5, {4, 4, 4, 4, 4, 4}, 7, seed);
    const ThresholdNetwork net(m);
    for (std::uint64_t x = 0; x < 32; ++x) ASSERT_EQ(net.evaluate_packed(x), ref::classify(m, x));
  }
}

}  // namespace
}  // namespace xnr
