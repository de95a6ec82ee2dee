#include "coherence_lab/logic.hpp"

#include <functional>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "random_formula.hpp"

using namespace coherence_lab::logic;

namespace {

std::map<std::string, bool> assign(std::initializer_list<std::pair<const std::string, bool>> init) { return init; }

}  // namespace

TEST(ParseFormula, ConjunctionWithNegation) {
  const Formula f = parse_formula("a & !b", {"a", "b"});
  ASSERT_EQ(f.root().kind, NodeKind::And);
  EXPECT_EQ(f.root().lhs->kind, NodeKind::Variable);
  EXPECT_EQ(f.root().lhs->variable, 0u);
  ASSERT_EQ(f.root().rhs->kind, NodeKind::Not);
  EXPECT_EQ(f.root().rhs->lhs->variable, 1u);
}

TEST(ParseFormula, ExcludedMiddle) {
  const Formula f = parse_formula("a | !a", {"a"});
  ASSERT_EQ(f.root().kind, NodeKind::Or);
  EXPECT_EQ(f.root().lhs->kind, NodeKind::Variable);
  EXPECT_EQ(f.root().rhs->kind, NodeKind::Not);
}

TEST(ParseFormula, MaterialImplicationEquivalenceIsValid) {
  const Formula f = parse_formula("(a -> b) <-> (!a | b)", {"a", "b"});
  EXPECT_EQ(f.root().kind, NodeKind::Iff);
  for (bool a : {false, true})
    for (bool b : {false, true}) EXPECT_TRUE(evaluate(f, {{"a", a}, {"b", b}}));
}

TEST(ParseFormula, Precedence) {
  // ! > & > | > -> > <->
  const Formula f = parse_formula("a | b & !c -> a <-> b", {"a", "b", "c"});
  EXPECT_EQ(to_string(f), "a | b & !c -> a <-> b");
  ASSERT_EQ(f.root().kind, NodeKind::Iff);
  ASSERT_EQ(f.root().lhs->kind, NodeKind::Implies);
  ASSERT_EQ(f.root().lhs->lhs->kind, NodeKind::Or);
  EXPECT_EQ(f.root().lhs->lhs->rhs->kind, NodeKind::And);
}

TEST(ParseFormula, ImplicationIsRightAssociative) {
  const Formula f = parse_formula("a -> b -> c", {"a", "b", "c"});
  ASSERT_EQ(f.root().kind, NodeKind::Implies);
  EXPECT_EQ(f.root().lhs->kind, NodeKind::Variable);
  EXPECT_EQ(f.root().rhs->kind, NodeKind::Implies);
  // a=F, c=F separates the groupings: F -> (b -> F) is true, (F -> b) -> F is false.
  EXPECT_TRUE(evaluate(f, assign({{"a", false}, {"b", true}, {"c", false}})));
}

TEST(ParseFormula, WhitespaceInsignificant) {
  const Formula spaced = parse_formula("  ( a\t&\n!b ) ", {"a", "b"});
  EXPECT_EQ(to_string(spaced), "a & !b");
  EXPECT_EQ(to_string(parse_formula("a<->b", {"a", "b"})), "a <-> b");
}

TEST(ParseFormula, IdentifiersWithDigitsAndUnderscores) {
  const Formula f = parse_formula("lambda_1 & x2", {"lambda_1", "x2"});
  EXPECT_TRUE(evaluate(f, {{"lambda_1", true}, {"x2", true}}));
}

TEST(ParseFormula, SyntaxErrorsCarryPosition) {
  try {
    parse_formula("a & & b", {"a", "b"});
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse_formula("", {"a"}), ParseError);
  EXPECT_THROW(parse_formula("(a & b", {"a", "b"}), ParseError);
  EXPECT_THROW(parse_formula("a b", {"a", "b"}), ParseError);
  EXPECT_THROW(parse_formula("a - b", {"a", "b"}), ParseError);
  EXPECT_THROW(parse_formula("A", {"a"}), ParseError);
  EXPECT_THROW(parse_formula("a)", {"a"}), ParseError);
}

TEST(ParseFormula, UnknownVariableNamesOffender) {
  try {
    parse_formula("a & zed", {"a", "b"});
    FAIL() << "expected UnknownVariableError";
  } catch (const UnknownVariableError& e) {
    EXPECT_EQ(e.name(), "zed");
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(ParseFormula, RejectsBadVariableLists) {
  EXPECT_THROW(parse_formula("a", {"a", "a"}), std::invalid_argument);
  EXPECT_THROW(parse_formula("a", {"a", "B"}), std::invalid_argument);
  EXPECT_THROW(parse_formula("a", {"a", ""}), std::invalid_argument);
}

TEST(Evaluate, TruthTableBasics) {
  const Formula f = parse_formula("a & !b", {"a", "b"});
  EXPECT_TRUE(evaluate(f, assign({{"a", true}, {"b", false}})));
  EXPECT_FALSE(evaluate(f, assign({{"a", true}, {"b", true}})));
}

TEST(Evaluate, MissingVariable) {
  const Formula f = parse_formula("a & !b", {"a", "b"});
  try {
    evaluate(f, assign({{"a", true}}));
    FAIL() << "expected MissingVariableError";
  } catch (const MissingVariableError& e) {
    EXPECT_EQ(e.name(), "b");
  }
}

TEST(Evaluate, AgreesWithIndependentEvaluator) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto sample = testing_support::random_formula(rng, n, 5);
    const Formula f = parse_formula(sample.text, testing_support::variable_names(n));
    for (std::uint64_t code = 0; code < (1u << n); ++code) {
      std::map<std::string, bool> named;
      std::vector<bool> values(n);
      for (std::size_t i = 0; i < n; ++i) {
        values[i] = ((code >> i) & 1u) != 0;
        named[f.variables()[i]] = values[i];
      }
      ASSERT_EQ(evaluate(f, named), sample.oracle(values)) << sample.text;
    }
  }
}

TEST(EnumerateMinterms, SingleVariable) {
  const MintermSet ms = enumerate_minterms(1);
  ASSERT_EQ(ms.count, 2u);
  EXPECT_EQ(ms.minterms[0].describe({"l1"}), "l1");
  EXPECT_EQ(ms.minterms[1].describe({"l1"}), "!l1");
}

TEST(EnumerateMinterms, TwoVariablesCanonicalOrder) {
  const MintermSet ms = enumerate_minterms(2);
  ASSERT_EQ(ms.count, 4u);
  const std::vector<std::string> names{"l1", "l2"};
  EXPECT_EQ(ms.minterms[0].describe(names), "l1 & l2");
  EXPECT_EQ(ms.minterms[1].describe(names), "l1 & !l2");
  EXPECT_EQ(ms.minterms[2].describe(names), "!l1 & l2");
  EXPECT_EQ(ms.minterms[3].describe(names), "!l1 & !l2");
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(ms.minterms[i].index, i + 1);
}

TEST(EnumerateMinterms, EachMintermHasUniqueSatisfyingAssignment) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const MintermSet ms = enumerate_minterms(n);
    ASSERT_EQ(ms.count, std::size_t{1} << n);
    std::vector<int> satisfied_by_count(ms.count, 0);
    for (std::uint64_t code = 0; code < ms.count; ++code) {
      std::vector<bool> assignment(n);
      for (std::size_t i = 0; i < n; ++i) assignment[i] = ((code >> i) & 1u) != 0;
      int hits = 0;
      for (const Minterm& m : ms.minterms)
        if (m.satisfied_by(assignment)) {
          ++hits;
          ++satisfied_by_count[m.index - 1];
        }
      EXPECT_EQ(hits, 1) << "n=" << n << " code=" << code;
    }
    for (int c : satisfied_by_count) EXPECT_EQ(c, 1);
  }
}

TEST(EnumerateMinterms, RangeGuard) {
  EXPECT_THROW(enumerate_minterms(0), std::out_of_range);
  EXPECT_THROW(enumerate_minterms(21), std::out_of_range);
  EXPECT_EQ(enumerate_minterms(kMaxVariables).count, std::size_t{1} << kMaxVariables);
}

TEST(MintermFromIndex, RangeGuard) {
  EXPECT_THROW(minterm_from_index(0, 2), std::out_of_range);
  EXPECT_THROW(minterm_from_index(5, 2), std::out_of_range);
}

TEST(ToMintermDisjunction, SingleVariableSelectsUnnegatedHalf) {
  const Formula f = parse_formula("l1", {"l1", "l2"});
  EXPECT_EQ(to_minterm_disjunction(f), (std::vector<std::size_t>{1, 2}));
}

TEST(ToMintermDisjunction, ContradictionIsEmpty) {
  EXPECT_TRUE(to_minterm_disjunction(parse_formula("a & !a", {"a"})).empty());
}

TEST(ToMintermDisjunction, MatchesTruthTableSweep) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto sample = testing_support::random_formula(rng, n, 4);
    const Formula f = parse_formula(sample.text, testing_support::variable_names(n));
    const auto indices = to_minterm_disjunction(f);
    const std::set<std::size_t> chosen(indices.begin(), indices.end());
    ASSERT_EQ(chosen.size(), indices.size());
    ASSERT_TRUE(std::is_sorted(indices.begin(), indices.end()));
    for (std::size_t k = 1; k <= (std::size_t{1} << n); ++k) {
      const Minterm m = minterm_from_index(k, n);
      EXPECT_EQ(chosen.count(k) == 1, sample.oracle(m.signs)) << sample.text << " k=" << k;
    }
  }
}

TEST(VerifyTautology, HoldsForAllSmallSizes) {
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_TRUE(verify_tautology_of_all(enumerate_minterms(n)));
}

TEST(VerifyTautology, DetectsMissingMinterm) {
  MintermSet ms = enumerate_minterms(3);
  ms.minterms.pop_back();
  EXPECT_FALSE(verify_tautology_of_all(ms));
  MintermSet dup = enumerate_minterms(2);
  dup.minterms[3] = dup.minterms[0];
  EXPECT_FALSE(verify_tautology_of_all(dup));
}

TEST(MutuallyExclusive, DistinctAndSelf) {
  const MintermSet ms = enumerate_minterms(2);
  EXPECT_TRUE(mutually_exclusive(ms.minterms[0], ms.minterms[1]));
  EXPECT_FALSE(mutually_exclusive(ms.minterms[2], ms.minterms[2]));
}

TEST(MutuallyExclusive, AllPairsForFourVariablesBySharedAssignment) {
  const MintermSet ms = enumerate_minterms(4);
  for (const Minterm& a : ms.minterms)
    for (const Minterm& b : ms.minterms) {
      bool shared = false;
      for (std::uint64_t code = 0; code < 16; ++code) {
        std::vector<bool> assignment(4);
        for (std::size_t i = 0; i < 4; ++i) assignment[i] = ((code >> i) & 1u) != 0;
        shared = shared || (a.satisfied_by(assignment) && b.satisfied_by(assignment));
      }
      EXPECT_EQ(mutually_exclusive(a, b), !shared);
      EXPECT_EQ(mutually_exclusive(a, b), a.index != b.index);
    }
}

TEST(MutuallyExclusive, MismatchedArity) {
  EXPECT_THROW(mutually_exclusive(minterm_from_index(1, 2), minterm_from_index(1, 3)), std::invalid_argument);
}

TEST(PrettyPrint, RoundTripIsFixedPoint) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto names = testing_support::variable_names(n);
    const auto sample = testing_support::random_formula(rng, n, 5);
    const std::string once = to_string(parse_formula(sample.text, names));
    const std::string twice = to_string(parse_formula(once, names));
    ASSERT_EQ(once, twice) << sample.text;
    ASSERT_EQ(to_minterm_disjunction(parse_formula(once, names)),
              to_minterm_disjunction(parse_formula(sample.text, names)));
  }
}

TEST(ParseVariableList, SplitsAndValidates) {
  EXPECT_EQ(parse_variable_list("a, b,c"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_THROW(parse_variable_list("a,,b"), std::invalid_argument);
  EXPECT_THROW(parse_variable_list("a,a"), std::invalid_argument);
  EXPECT_THROW(parse_variable_list("1a"), std::invalid_argument);
}
