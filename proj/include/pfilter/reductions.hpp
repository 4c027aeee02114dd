#pragma once

#include <pfilter/filter.hpp>
#include <pfilter/minimize.hpp>
#include <pfilter/nfa.hpp>

#include <span>
#include <string>
#include <vector>

namespace pfilter {

enum class ReductionKind {
  NfaUniversality,  // answer read off decide_size_k(F, 1)
  DfaUnion,         // answer read off decide_det_size_k(F, 1)
};

std::string_view to_string(ReductionKind kind) noexcept;

/// A filter built from an automata universality question.
struct ReductionInstance {
  ReductionKind kind = ReductionKind::NfaUniversality;
  std::string source;        // one-line description of the input
  Filter filter;
  std::string fresh_symbol;  // the separator symbol, never in the source alphabet
  /// For each filter state, the source state it copies, or "" for states
  /// added by the construction.
  std::vector<std::string> origin;
};

/// Smallest identifier "z", "z1", "z2", ... not in `alphabet`.
std::string fresh_symbol(const std::vector<std::string>& alphabet);

/// Filter whose minimizer has a single state exactly when L(a) = Σ*.
/// States: "v" (initial, loops on Σ), the copies "a:<name>" of a's states,
/// "w" (entered from accepting copies on z) and "u" (entered from v on z).
/// u is blue; every other state is green.
ReductionInstance from_nfa_universality(const Nfa& a);

/// Filter that has a one-state deterministic minimizer exactly when the
/// union of the languages is Σ*. Each automaton is completed with a trap
/// over the shared alphabet; accepting copies are green, the rest red, and
/// a green "goal" state hangs off the first reachable accepting copy under
/// the fresh symbol. Throws NotDeterministic, or NoAcceptingState when no
/// accepting state is reachable in any member.
ReductionInstance from_dfa_union(std::span<const Nfa> dfas);

/// Answer the filter side gives to the source question (true means
/// "universal"). Throws Error(BudgetExhausted) if the search runs out.
bool reduction_answer(const ReductionInstance& instance,
                      const SearchBudget& budget = {});

/// True iff the filter side agrees with `oracle_universal`.
bool verify_reduction(const ReductionInstance& instance, bool oracle_universal,
                      const SearchBudget& budget = {});

}  // namespace pfilter
