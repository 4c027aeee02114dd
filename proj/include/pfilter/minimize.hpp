#pragma once

#include <pfilter/execution.hpp>
#include <pfilter/filter.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pfilter {

/// Limits for the exact searches. A zero max_states means "no cap beyond
/// the trivial upper bound".
struct SearchBudget {
  std::size_t max_states = 0;
  std::uint64_t candidate_cap = 20'000'000;
  std::chrono::milliseconds time_cap{std::chrono::minutes(5)};
  std::size_t determinize_cap = kDefaultStateCap;
  Execution execution = Execution::Parallel;
  int jobs = 0;  // OpenMP threads; 0 uses the runtime default
};

struct SearchStats {
  std::uint64_t candidates = 0;  // search nodes expanded
  std::chrono::duration<double> wall{0};
};

enum class Decision { Yes, No, BudgetExhausted };

std::string_view to_string(Decision d) noexcept;

struct SizeDecision {
  Decision answer = Decision::No;
  std::optional<Filter> witness;  // set iff answer == Yes
  SearchStats stats;
};

/// Is there a filter (deterministic or not) with at most k states that
/// output-simulates f? Candidates use f's alphabet and colors; the search
/// builds candidates state by state alongside the subset product with f and
/// discards partial candidates as soon as some word violates language
/// inclusion or output consistency. A Yes witness is the first one in the
/// canonical search order for any thread count, and it is re-verified with
/// output_simulates. Supports k <= 32.
SizeDecision decide_size_k(const Filter& f, std::size_t k,
                           const SearchBudget& budget = {});

/// Same question restricted to deterministic candidates. f may be
/// nondeterministic; it is determinized first.
SizeDecision decide_det_size_k(const Filter& f, std::size_t k,
                               const SearchBudget& budget = {});

struct MinimizationResult {
  Filter minimizer;
  bool proven_optimal = false;
  std::size_t lower_bound = 1;
  SearchStats stats;

  std::size_t size() const { return minimizer.num_states(); }
};

/// Smallest filter output-simulating f, by iterative deepening over
/// decide_size_k. When the budget runs out the trimmed input is returned
/// with proven_optimal false.
MinimizationResult minimize_nondet(const Filter& f,
                                   const SearchBudget& budget = {});

/// Smallest deterministic filter output-simulating f: determinize, then
/// deepen from the compatibility lower bound over deterministic candidates.
/// Throws CapExceeded if determinization blows past the cap.
MinimizationResult minimize_det(const Filter& f,
                                const SearchBudget& budget = {});

/// Compatibility relation of a deterministic filter: u and v are compatible
/// when every word defined from both leads to states whose color sets
/// intersect.
class CompatibilityGraph {
 public:
  explicit CompatibilityGraph(std::vector<BitSet> incompatible)
      : incompatible_(std::move(incompatible)) {}

  std::size_t size() const noexcept { return incompatible_.size(); }
  bool compatible(StateId u, StateId v) const {
    return !incompatible_.at(u).test(v);
  }
  const BitSet& incompatible_with(StateId u) const {
    return incompatible_.at(u);
  }
  /// Edges (u, v) with u < v.
  std::vector<std::pair<StateId, StateId>> edges() const;

 private:
  std::vector<BitSet> incompatible_;
};

/// Throws NotDeterministic.
CompatibilityGraph compatibility_graph(const Filter& d);

/// A largest set of pairwise incompatible states (a clique of the
/// complement graph). Every deterministic filter simulating d needs a
/// distinct state per member, so its size is a lower bound. The search
/// stops after `node_cap` branch-and-bound nodes and returns the best set
/// found so far, which is still a valid bound.
std::vector<StateId> pairwise_incompatible_states(
    const CompatibilityGraph& g, std::uint64_t node_cap = 1'000'000);

}  // namespace pfilter
