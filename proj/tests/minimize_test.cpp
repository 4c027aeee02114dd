#include "support.hpp"

#include <pfilter/families.hpp>
#include <pfilter/filter_io.hpp>
#include <pfilter/minimize.hpp>
#include <pfilter/product.hpp>
#include <pfilter/reductions.hpp>

#include <gtest/gtest.h>

namespace pfilter {
namespace {

using testing::Rng;

Nfa universal_dfa() {
  return validate_nfa({{"a", "b"}, {{"s", true}}, {"s"}, {{"s", "s", {"a", "b"}}}});
}

Nfa epsilon_only() {
  return validate_nfa({{"a"}, {{"s", true}, {"t", false}}, {"s"}, {{"s", "t", {"a"}}}});
}

SearchBudget serial() {
  SearchBudget b;
  b.execution = Execution::Serial;
  return b;
}

TEST(DecideSizeK, TrimmedInputIsAlwaysAWitness) {
  const Filter f = fig3_minimizer();
  const SizeDecision d = decide_size_k(f, f.num_states());
  ASSERT_EQ(d.answer, Decision::Yes);
  EXPECT_EQ(*d.witness, trim(f));
}

TEST(DecideSizeK, UniversalityReduction) {
  const Filter yes = from_nfa_universality(universal_dfa()).filter;
  const SizeDecision d = decide_size_k(yes, 1);
  ASSERT_EQ(d.answer, Decision::Yes);
  const Filter& w = *d.witness;
  ASSERT_EQ(w.num_states(), 1u);
  EXPECT_EQ(w.color_name(static_cast<Color>(w.colors_of(0).find_first())), "green");
  EXPECT_EQ(w.colors_of(0).count(), 1u);
  for (Symbol y = 0; y < w.num_symbols(); ++y) EXPECT_TRUE(w.has_outgoing(0, y));

  const Filter no = from_nfa_universality(epsilon_only()).filter;
  EXPECT_EQ(decide_size_k(no, 1).answer, Decision::No);
  EXPECT_FALSE(output_simulates(w, no).holds);
}

TEST(DecideSizeK, MonotoneInK) {
  Rng rng(41);
  for (int i = 0; i < 40; ++i) {
    const Filter f = trim(testing::random_filter(rng, {4, 2, 2, 0.3, false}));
    bool seen_yes = false;
    for (std::size_t k = 1; k <= f.num_states(); ++k) {
      const SizeDecision d = decide_size_k(f, k);
      ASSERT_NE(d.answer, Decision::BudgetExhausted);
      if (seen_yes) ASSERT_EQ(d.answer, Decision::Yes);
      if (d.answer == Decision::Yes) {
        seen_yes = true;
        ASSERT_LE(d.witness->num_states(), k);
        ASSERT_TRUE(output_simulates(*d.witness, f).holds);
      }
    }
    ASSERT_TRUE(seen_yes);
  }
}

TEST(DecideSizeK, BudgetExhaustion) {
  SearchBudget tiny;
  tiny.candidate_cap = 3;
  const SizeDecision d = decide_size_k(prime_family(2), 4, tiny);
  EXPECT_EQ(d.answer, Decision::BudgetExhausted);
  EXPECT_FALSE(d.witness.has_value());

  const MinimizationResult r = minimize_det(prime_family(3), tiny);
  EXPECT_FALSE(r.proven_optimal);
  EXPECT_TRUE(output_simulates(r.minimizer, prime_family(3)).holds);
}

TEST(MinimizeNondet, Examples) {
  RawFilter one;
  one.observations = {"a"};
  one.colors = {"c"};
  one.states = {{"s", {"c"}}};
  one.initial = {"s"};
  const Filter single = validate(one);
  EXPECT_EQ(minimize_nondet(single).minimizer, single);

  const MinimizationResult p1 = minimize_nondet(prime_family(1));
  EXPECT_TRUE(p1.proven_optimal);
  EXPECT_LE(p1.size(), 5u);
  EXPECT_TRUE(output_simulates(p1.minimizer, prime_family(1)).holds);

  EXPECT_TRUE(output_simulates(fig3_minimizer(), fig3_input()).holds);
}

TEST(MinimizeNondet, MatchesBruteForceOnSmallFilters) {
  Rng rng(42);
  for (int i = 0; i < 60; ++i) {
    const Filter f = trim(testing::random_filter(rng, {3, 2, 2, 0.35, false}));
    const MinimizationResult r = minimize_nondet(f);
    ASSERT_TRUE(r.proven_optimal);
    ASSERT_TRUE(output_simulates(r.minimizer, f).holds);
    const std::size_t brute = testing::brute_min_states(f, f.num_states() - 1);
    ASSERT_EQ(r.size(), std::min(brute, f.num_states())) << emit_filter(f);
  }
}

TEST(MinimizeDet, Examples) {
  const MinimizationResult p2 = minimize_det(prime_family(2));
  EXPECT_EQ(p2.size(), 10u);
  EXPECT_TRUE(p2.proven_optimal);
  EXPECT_TRUE(is_deterministic(p2.minimizer));

  const MinimizationResult b = minimize_det(fig3_minimizer());
  EXPECT_EQ(b.size(), 10u);
  EXPECT_TRUE(b.proven_optimal);

  Rng rng(43);
  for (int i = 0; i < 30; ++i) {
    const Filter f = trim(testing::random_filter(rng, {5, 2, 3, 0.3, true}));
    const MinimizationResult r = minimize_det(f);
    ASSERT_LE(r.size(), f.num_states());
    ASSERT_TRUE(is_deterministic(r.minimizer));
    ASSERT_TRUE(output_simulates(r.minimizer, f).holds);
  }
}

TEST(MinimizeDet, NeverSmallerThanNondet) {
  Rng rng(44);
  for (int i = 0; i < 40; ++i) {
    const Filter f = testing::random_filter(rng, {4, 2, 2, 0.3, false});
    const MinimizationResult n = minimize_nondet(f);
    const MinimizationResult d = minimize_det(f);
    ASSERT_TRUE(n.proven_optimal && d.proven_optimal);
    ASSERT_LE(n.size(), d.size());
    ASSERT_TRUE(output_simulates(d.minimizer, f).holds);
  }
}

TEST(MinimizeDet, SingleColorCollapsesToOneState) {
  Rng rng(45);
  for (int i = 0; i < 40; ++i) {
    const Filter f = trim(testing::random_filter(rng, {3, 2, 1, 0.35, true}));
    ASSERT_EQ(minimize_det(f).size(), 1u);
  }
}

TEST(Search, SerialAndParallelReturnTheSameWitness) {
  Rng rng(46);
  for (int i = 0; i < 30; ++i) {
    const Filter f = testing::random_filter(rng, {5, 2, 3, 0.3, false});
    SearchBudget par;
    par.execution = Execution::Parallel;
    par.jobs = 4;
    const MinimizationResult a = minimize_nondet(f, serial());
    const MinimizationResult b = minimize_nondet(f, par);
    ASSERT_EQ(a.minimizer, b.minimizer);
    const MinimizationResult c = minimize_det(f, serial());
    const MinimizationResult d = minimize_det(f, par);
    ASSERT_EQ(c.minimizer, d.minimizer);
  }
}

TEST(Compatibility, Fig3StatesArePairwiseIncompatible) {
  const Filter a = fig3_input();
  const CompatibilityGraph g = compatibility_graph(a);
  for (int i = 1; i <= 7; ++i) {
    for (int j = i + 1; j <= 7; ++j) {
      EXPECT_FALSE(g.compatible(*a.find_state("q" + std::to_string(i)),
                                *a.find_state("q" + std::to_string(j))));
    }
  }
  EXPECT_EQ(pairwise_incompatible_states(g).size(), 10u);
}

TEST(Compatibility, PrimeMinimizerCycleIsPairwiseIncompatible) {
  const Filter m = prime_family_minimizer(2);
  const CompatibilityGraph g = compatibility_graph(m);
  for (int i = 1; i <= 6; ++i) {
    for (int j = i + 1; j <= 6; ++j) {
      EXPECT_FALSE(g.compatible(*m.find_state("r" + std::to_string(i)),
                                *m.find_state("r" + std::to_string(j))));
    }
  }
}

TEST(Compatibility, IdenticalStatesAreCompatible) {
  RawFilter raw;
  raw.observations = {"a"};
  raw.colors = {"c", "d"};
  raw.states = {{"s", {"c"}}, {"t", {"d"}}, {"u", {"d"}}};
  raw.initial = {"s"};
  raw.transitions = {{"s", "t", {"a"}}, {"t", "u", {"a"}}, {"u", "u", {"a"}}};
  const CompatibilityGraph g = compatibility_graph(validate(raw));
  EXPECT_TRUE(g.compatible(1, 2));
  EXPECT_FALSE(g.compatible(0, 1));
  EXPECT_EQ(g.edges(), (std::vector<std::pair<StateId, StateId>>{{1, 2}}));
  EXPECT_THROW(compatibility_graph(fig3_minimizer()), Error);
}

TEST(Compatibility, LowerBoundNeverExceedsDetMinimum) {
  Rng rng(47);
  for (int i = 0; i < 40; ++i) {
    const Filter d = determinize(trim(testing::random_filter(rng, {4, 2, 3, 0.3, false}))).filter;
    const auto clique = pairwise_incompatible_states(compatibility_graph(d));
    ASSERT_LE(clique.size(), minimize_det(d).size());
  }
}

}  // namespace
}  // namespace pfilter
