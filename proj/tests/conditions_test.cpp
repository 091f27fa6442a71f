#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "support/reference.hpp"
#include "xnr/condition.hpp"
#include "xnr/errors.hpp"

namespace xnr {
namespace {

Term v(std::uint32_t i) { return Term::var(i); }
const Term kZero = Term::constant(false);
const Term kOne = Term::constant(true);

TEST(Term, OrdersVariablesBeforeConstants) {
  EXPECT_LT(v(1), v(2));
  EXPECT_LT(v(1000), kZero);
  EXPECT_LT(kZero, kOne);
  EXPECT_THROW(Term::var(0), std::invalid_argument);
  EXPECT_EQ(v(7).to_string(), "v7");
  EXPECT_EQ(kOne.to_string(), "1");
}

TEST(Literal, CanonicalizesSides) {
  const Literal l(v(2), Op::Neq, v(1));
  EXPECT_EQ(l.lhs(), v(1));
  EXPECT_EQ(l.rhs(), v(2));
  EXPECT_EQ(l.to_string(), "v1!=v2");
  EXPECT_EQ(Literal(kOne, Op::Eq, v(3)).to_string(), "v3=1");
  EXPECT_EQ(Literal(kOne, Op::Eq, kZero).to_string(), "0=1");
  EXPECT_EQ(Literal(kOne, Op::Eq, v(3)).max_var(), 3U);
  EXPECT_EQ(Literal(kOne, Op::Eq, kZero).max_var(), 0U);
}

TEST(Literal, Negation) {
  EXPECT_EQ(negate_literal(Literal(v(1), Op::Eq, kZero)), Literal(v(1), Op::Neq, kZero));
  EXPECT_EQ(negate_literal(Literal(v(1), Op::Neq, v(2))), Literal(v(1), Op::Eq, v(2)));
  for (const auto& l : all_literals(3)) EXPECT_EQ(negate_literal(negate_literal(l)), l);
}

TEST(Literal, NegationPartitionsInstances) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& l : all_literals(n)) {
      const Literal neg = negate_literal(l);
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        EXPECT_NE(ref::holds(l, x), ref::holds(neg, x)) << l << " x=" << x;
      }
    }
  }
}

TEST(Literal, TriviallyTrue) {
  EXPECT_TRUE(is_trivially_true(Literal(kZero, Op::Eq, kZero)));
  EXPECT_TRUE(is_trivially_true(Literal(kOne, Op::Eq, kOne)));
  EXPECT_TRUE(is_trivially_true(Literal(kOne, Op::Neq, kZero)));
  EXPECT_TRUE(is_trivially_true(Literal(v(3), Op::Eq, v(3))));
  EXPECT_FALSE(is_trivially_true(Literal(v(1), Op::Eq, kZero)));
  EXPECT_FALSE(is_trivially_true(Literal(v(1), Op::Neq, v(1))));
  EXPECT_FALSE(is_trivially_true(Literal(v(1), Op::Eq, v(2))));
  // Exactly the literals that hold everywhere.
  for (const auto& l : all_literals(3)) {
    bool everywhere = true;
    for (std::uint64_t x = 0; x < 8; ++x) everywhere = everywhere && ref::holds(l, x);
    EXPECT_EQ(is_trivially_true(l), everywhere) << l;
  }
}

TEST(AllLiterals, CountsAndOrder) {
  // Pairs with repetition over n+2 terms, times two operators.
  for (std::size_t n = 0; n <= 12; ++n) EXPECT_EQ(all_literals(n).size(), (n + 2) * (n + 3)) << n;
  EXPECT_EQ(all_literals(1).size(), 12U);
  EXPECT_EQ(all_literals(2).size(), 20U);
  EXPECT_EQ(all_literals(2).size() - all_literals(1).size(), 8U);

  const auto lits = all_literals(4);
  EXPECT_TRUE(std::is_sorted(lits.begin(), lits.end()));
  EXPECT_EQ(std::set<Literal>(lits.begin(), lits.end()).size(), lits.size());
  const auto universe = ref::literal_universe(4);
  EXPECT_EQ(std::set<Literal>(universe.begin(), universe.end()), std::set<Literal>(lits.begin(), lits.end()));
  EXPECT_EQ(lits.front().to_string(), "v1=v1");
  EXPECT_EQ(lits[1].to_string(), "v1!=v1");
}

TEST(AllLiterals, SmallestArity) {
  std::set<std::string> names;
  for (const auto& l : all_literals(1)) names.insert(l.to_string());
  const std::set<std::string> expected{"v1=0", "v1=1", "v1!=0", "v1!=1", "v1=v1", "v1!=v1",
                                       "0=0",  "0=1",  "0!=0",  "0!=1",  "1=1",   "1!=1"};
  EXPECT_EQ(names, expected);
}

TEST(Condition, KeepsFirstOccurrenceOrder) {
  Condition phi;
  EXPECT_TRUE(phi.add(Literal(v(2), Op::Eq, kOne)));
  EXPECT_TRUE(phi.add(Literal(v(1), Op::Eq, v(3))));
  EXPECT_FALSE(phi.add(Literal(v(3), Op::Eq, v(1))));
  EXPECT_EQ(phi.size(), 2U);
  EXPECT_EQ(phi.to_string(), "v2=1 & v1=v3");
  EXPECT_EQ(phi.max_var(), 3U);
  EXPECT_EQ(Condition{}.to_string(), "true");
  EXPECT_THROW(phi.check_arity(2), ArityError);
  EXPECT_NO_THROW(phi.check_arity(3));
}

TEST(Parse, Examples) {
  EXPECT_EQ(parse_condition("v1=1 & v2=v3"),
            (Condition{Literal(v(1), Op::Eq, kOne), Literal(v(2), Op::Eq, v(3))}));
  EXPECT_TRUE(parse_condition("true").is_top());
  EXPECT_TRUE(parse_condition("  ").is_top());
  EXPECT_EQ(parse_condition("v2!=v1"), Condition{Literal(v(1), Op::Neq, v(2))});
  EXPECT_EQ(parse_literal(" 1 = v4 "), Literal(v(4), Op::Eq, kOne));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_condition("v0=1"), ParseError);
  EXPECT_THROW(parse_condition("v1=2"), ParseError);
  EXPECT_THROW(parse_condition("v1==1"), ParseError);
  EXPECT_THROW(parse_condition("v1=1 &"), ParseError);
  EXPECT_THROW(parse_condition("v1=1 v2=1"), ParseError);
  EXPECT_THROW(parse_condition("x1=1"), ParseError);
  try {
    parse_condition("v1=1 & v2<1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 9U);
  }
}

TEST(Parse, RoundTrip) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto lits = all_literals(n);
    for (std::size_t i = 0; i < lits.size(); ++i) {
      for (std::size_t j = 0; j < lits.size(); j += 3) {
        const Condition phi{lits[i], lits[j]};
        EXPECT_EQ(parse_condition(phi.to_string()), phi);
      }
    }
  }
}

TEST(Instance, PackingAndPrinting) {
  const Instance x{1, 0, 1};
  EXPECT_EQ(x.packed(), 0b101U);
  EXPECT_EQ(Instance::from_packed(0b101, 3), x);
  EXPECT_EQ(x.to_string(), "(1,0,1)");
  EXPECT_TRUE(x.feature(3));
  std::ostringstream os;
  os << x;
  EXPECT_EQ(os.str(), "(1,0,1)");
}

TEST(Evaluate, Examples) {
  const Condition phi = parse_condition("v1=1 & v2=v3");
  EXPECT_TRUE(evaluate(phi, Instance{1, 0, 0}));
  EXPECT_FALSE(evaluate(phi, Instance{1, 0, 1}));
  EXPECT_TRUE(evaluate(Condition{}, Instance{0, 0}));
  EXPECT_THROW(evaluate(phi, Instance{1, 0}), ArityError);
}

TEST(Evaluate, PackedMatchesInstanceForm) {
  for (const auto& l : all_literals(4)) {
    for (std::uint64_t x = 0; x < 16; ++x) {
      EXPECT_EQ(evaluate_packed(l, x), evaluate(l, Instance::from_packed(x, 4)));
      EXPECT_EQ(evaluate_packed(l, x), ref::holds(l, x));
    }
  }
}

}  // namespace
}  // namespace xnr
