#include "support.hpp"

#include <pfilter/families.hpp>
#include <pfilter/product.hpp>

#include <gtest/gtest.h>

#include <functional>

namespace pfilter {
namespace {

using testing::Rng;

Filter edited(const Filter& f, const std::function<void(RawFilter&)>& edit) {
  RawFilter raw = f.to_raw();
  edit(raw);
  return validate(raw);
}

Filter fig3b_without(const std::string& from, const std::string& to) {
  return edited(fig3_minimizer(), [&](RawFilter& raw) {
    std::erase_if(raw.transitions, [&](const RawTransition& t) {
      return t.from == from && t.to == to;
    });
  });
}

// A random neighbor of f: one move added or removed, or one state recolored.
Filter mutate(Rng& rng, const Filter& f) {
  return edited(f, [&](RawFilter& raw) {
    switch (rng() % 3) {
      case 0:
        if (!raw.transitions.empty()) {
          raw.transitions.erase(raw.transitions.begin() +
                                static_cast<long>(rng() % raw.transitions.size()));
        }
        break;
      case 1:
        raw.transitions.push_back({raw.states[rng() % raw.states.size()].id,
                                   raw.states[rng() % raw.states.size()].id,
                                   {raw.observations[rng() % raw.observations.size()]}});
        break;
      default: {
        auto& s = raw.states[rng() % raw.states.size()];
        s.colors = {raw.colors[rng() % raw.colors.size()]};
      }
    }
  });
}

TEST(TensorProduct, DeterministicSelfProductIsDiagonal) {
  const Filter a = fig3_input();
  const ProductGraph g = tensor_product(a, a);
  EXPECT_EQ(g.num_vertices(), a.num_states());
  for (const ProductVertex& v : g.vertices()) {
    EXPECT_FALSE(v.is_empty());
    EXPECT_EQ(v.first, v.second);
  }
}

TEST(TensorProduct, Fig3PlaceholdersAreCoveredByOtherBranches) {
  // Under "1" the minimizer branches to p1 and p2; "1d" crashes on the p1
  // branch only, so the product has placeholders while inclusion holds.
  const ProductGraph g = tensor_product(fig3_input(), fig3_minimizer());
  EXPECT_TRUE(g.has_empty_vertex());
  EXPECT_TRUE(check_language_inclusion(fig3_input(), fig3_minimizer()).holds);
}

TEST(TensorProduct, MissingSymbolLeadsToPlaceholder) {
  RawFilter one;
  one.observations = {"a", "y"};
  one.colors = {"c"};
  one.states = {{"s", {"c"}}, {"t", {"c"}}};
  one.initial = {"s"};
  one.transitions = {{"s", "t", {"y"}}, {"t", "t", {"a"}}};
  RawFilter two = one;
  two.observations = {"a"};
  two.transitions = {{"s", "s", {"a"}}};
  const ProductGraph g = tensor_product(validate(one), validate(two));
  const auto empty = g.find({1, kEmptyVertex});
  ASSERT_TRUE(empty.has_value());
  // The placeholder keeps following the first filter.
  ASSERT_EQ(g.successors(*empty, 0).size(), 1u);
  EXPECT_EQ(g.successors(*empty, 0)[0], *empty);
}

TEST(LanguageInclusion, Examples) {
  const Filter a = fig3_input();
  EXPECT_TRUE(check_language_inclusion(a, a).holds);
  EXPECT_TRUE(check_language_inclusion(a, fig3_minimizer()).holds);

  const SimulationVerdict v = check_language_inclusion(a, fig3b_without("p1", "+"));
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.failure, FailureKind::LanguageGap);
  EXPECT_EQ(*v.witness, (std::vector<std::string>{"1", "a"}));
}

TEST(OutputConsistency, Examples) {
  const Filter a = fig3_input();
  EXPECT_TRUE(check_output_consistency(a, a).holds);
  EXPECT_TRUE(check_output_consistency(a, fig3_minimizer()).holds);

  const Filter pink_p3 = edited(fig3_minimizer(), [](RawFilter& raw) {
    for (auto& s : raw.states) {
      if (s.id == "p3") s.colors = {"pink"};
    }
  });
  const SimulationVerdict v = check_output_consistency(a, pink_p3);
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.failure, FailureKind::OutputViolation);
  EXPECT_EQ(*v.color, "pink");
  EXPECT_EQ(*v.witness, (std::vector<std::string>{"2"}));
}

TEST(OutputSimulates, Examples) {
  const Filter a = fig3_input();
  const Filter b = fig3_minimizer();
  EXPECT_TRUE(output_simulates(b, a).holds);
  // Both filters output a single color on every word, so the input also
  // simulates its minimizer.
  EXPECT_TRUE(output_simulates(a, b).holds);

  const Filter d = determinize(b).filter;
  EXPECT_TRUE(output_simulates(d, b).holds);
  EXPECT_TRUE(output_simulates(b, d).holds);
}

TEST(OutputSimulates, Reflexive) {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const Filter f = testing::random_filter(rng, {1 + rng() % 6, 1 + rng() % 3, 1 + rng() % 3, 0.3, false});
    ASSERT_TRUE(output_simulates(f, f).holds);
  }
}

TEST(OutputSimulates, AgreesWithOracleAndWitnessesAreShortest) {
  Rng rng(32);
  int holds = 0;
  for (int i = 0; i < 300; ++i) {
    const testing::FilterShape shape{1 + rng() % 5, 2, 2, 0.3, false};
    const Filter f = testing::random_filter(rng, shape);
    const Filter fp = i % 2 ? testing::random_filter(rng, shape) : mutate(rng, f);
    const SimulationVerdict v = output_simulates(fp, f);
    const testing::BruteVerdict b = testing::brute_simulates(trim(fp), trim(f));
    ASSERT_EQ(v.holds, b.holds) << "pair " << i;
    holds += v.holds;
    if (v.holds) continue;
    if (b.language_gap) {
      ASSERT_EQ(v.failure, FailureKind::LanguageGap);
      ASSERT_EQ(v.witness->size(), b.language_gap->size());
    } else {
      ASSERT_EQ(v.failure, FailureKind::OutputViolation);
      ASSERT_EQ(v.witness->size(), b.output_violation->size());
    }
  }
  EXPECT_GT(holds, 20);
}

TEST(OutputSimulates, AgreesWithPlainEnumeration) {
  Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    const testing::FilterShape shape{1 + rng() % 3, 2, 2, 0.35, false};
    const Filter f = testing::random_filter(rng, shape);
    const Filter fp = i % 2 ? testing::random_filter(rng, shape) : mutate(rng, f);
    const std::size_t bound = f.num_states() * fp.num_states() + 1;
    ASSERT_EQ(output_simulates(fp, f).holds, testing::enumerate_simulates(fp, f, bound));
  }
}

TEST(OutputSimulates, DeletingMovesNeverClosesALanguageGap) {
  Rng rng(34);
  for (int i = 0; i < 100; ++i) {
    const Filter f = testing::random_filter(rng, {4, 2, 2, 0.3, false});
    const Filter fp = testing::random_filter(rng, {4, 2, 2, 0.3, false});
    if (check_language_inclusion(trim(f), trim(fp)).holds) continue;
    RawFilter raw = fp.to_raw();
    for (std::size_t e = 0; e < raw.transitions.size(); ++e) {
      RawFilter smaller = raw;
      smaller.transitions.erase(smaller.transitions.begin() + static_cast<long>(e));
      const Filter g = validate(smaller);
      ASSERT_FALSE(check_language_inclusion(trim(f), trim(g)).holds);
    }
  }
}

TEST(OutputSimulates, SerialAndParallelAgree) {
  Rng rng(35);
  for (int i = 0; i < 100; ++i) {
    const Filter f = testing::random_filter(rng, {5, 2, 3, 0.3, false});
    const Filter fp = mutate(rng, f);
    const SimulationVerdict s = output_simulates(fp, f, Execution::Serial);
    const SimulationVerdict p = output_simulates(fp, f, Execution::Parallel);
    ASSERT_EQ(s.holds, p.holds);
    ASSERT_EQ(s.failure, p.failure);
    ASSERT_EQ(s.witness, p.witness);
    ASSERT_EQ(s.color, p.color);
  }
}

}  // namespace
}  // namespace pfilter
