#include <pfilter/reductions.hpp>

#include <algorithm>
#include <deque>

namespace pfilter {

std::string_view to_string(ReductionKind kind) noexcept {
  switch (kind) {
    case ReductionKind::NfaUniversality: return "nfa-universality";
    case ReductionKind::DfaUnion: return "dfa-union";
  }
  return "unknown";
}

std::string fresh_symbol(const std::vector<std::string>& alphabet) {
  return fresh_identifier(alphabet, "z");
}

ReductionInstance from_nfa_universality(const Nfa& a) {
  const std::string z = fresh_symbol(a.alphabet());
  RawFilter raw;
  raw.observations = a.alphabet();
  raw.observations.push_back(z);
  raw.colors = {"green", "blue"};

  std::vector<std::string> origin;
  auto copy = [](const std::string& name) { return "a:" + name; };

  raw.states.push_back({"v", {"green"}});
  origin.emplace_back();
  for (StateId q = 0; q < a.num_states(); ++q) {
    raw.states.push_back({copy(a.state_name(q)), {"green"}});
    origin.push_back(a.state_name(q));
  }
  raw.states.push_back({"w", {"green"}});
  raw.states.push_back({"u", {"blue"}});
  origin.emplace_back();
  origin.emplace_back();

  raw.initial.push_back("v");
  for_each_bit(a.initial(), [&](std::size_t q) {
    raw.initial.push_back(copy(a.state_name(static_cast<StateId>(q))));
  });

  if (!a.alphabet().empty()) raw.transitions.push_back({"v", "v", a.alphabet()});
  raw.transitions.push_back({"v", "u", {z}});
  for (const NfaTransition& t : a.transitions()) {
    raw.transitions.push_back({copy(a.state_name(t.from)),
                               copy(a.state_name(t.to)),
                               {a.symbol_name(t.symbol)}});
  }
  for_each_bit(a.accepting(), [&](std::size_t q) {
    raw.transitions.push_back({copy(a.state_name(static_cast<StateId>(q))), "w", {z}});
  });

  return ReductionInstance{ReductionKind::NfaUniversality,
                           "nfa with " + std::to_string(a.num_states()) +
                               " states over " +
                               std::to_string(a.num_symbols()) + " symbols",
                           validate(raw), z, std::move(origin)};
}

ReductionInstance from_dfa_union(std::span<const Nfa> dfas) {
  if (dfas.empty()) {
    throw Error(ErrorKind::InvalidArgument, "dfa-union needs at least one automaton");
  }
  std::vector<std::string> alphabet;
  for (const Nfa& d : dfas) {
    if (!d.is_deterministic()) {
      throw Error(ErrorKind::NotDeterministic,
                  "dfa-union members must be deterministic");
    }
    alphabet = union_alphabet(alphabet, d.alphabet());
  }
  std::vector<Nfa> completed;
  for (const Nfa& d : dfas) completed.push_back(complete_dfa(d.with_alphabet(alphabet)));
  const Nfa b = union_of(completed);

  // First accepting state in breadth-first order from the initial states.
  std::vector<bool> seen(b.num_states(), false);
  std::deque<StateId> queue;
  for_each_bit(b.initial(), [&](std::size_t q) {
    seen[q] = true;
    queue.push_back(static_cast<StateId>(q));
  });
  std::optional<StateId> source;
  while (!queue.empty() && !source) {
    const StateId q = queue.front();
    queue.pop_front();
    if (b.accepting().test(q)) {
      source = q;
      break;
    }
    for (Symbol y = 0; y < b.num_symbols(); ++y) {
      for (StateId r : b.successors(q, y)) {
        if (!seen[r]) {
          seen[r] = true;
          queue.push_back(r);
        }
      }
    }
  }
  if (!source) {
    throw Error(ErrorKind::NoAcceptingState,
                "no member reaches an accepting state; the union is empty");
  }

  const std::string z = fresh_symbol(alphabet);
  RawFilter raw;
  raw.observations = alphabet;
  raw.observations.push_back(z);
  raw.colors = {"green", "red"};
  std::vector<std::string> origin;
  for (StateId q = 0; q < b.num_states(); ++q) {
    raw.states.push_back({b.state_name(q),
                          {b.accepting().test(q) ? "green" : "red"}});
    origin.push_back(b.state_name(q));
  }
  const std::string goal = fresh_identifier(b.state_names(), "goal");
  raw.states.push_back({goal, {"green"}});
  origin.emplace_back();
  for_each_bit(b.initial(), [&](std::size_t q) {
    raw.initial.push_back(b.state_name(static_cast<StateId>(q)));
  });
  for (const NfaTransition& t : b.transitions()) {
    raw.transitions.push_back(
        {b.state_name(t.from), b.state_name(t.to), {b.symbol_name(t.symbol)}});
  }
  raw.transitions.push_back({b.state_name(*source), goal, {z}});

  return ReductionInstance{ReductionKind::DfaUnion,
                           std::to_string(dfas.size()) + " dfas over " +
                               std::to_string(alphabet.size()) + " symbols",
                           validate(raw), z, std::move(origin)};
}

bool reduction_answer(const ReductionInstance& instance,
                      const SearchBudget& budget) {
  const SizeDecision d = instance.kind == ReductionKind::NfaUniversality
                             ? decide_size_k(instance.filter, 1, budget)
                             : decide_det_size_k(instance.filter, 1, budget);
  if (d.answer == Decision::BudgetExhausted) {
    throw Error(ErrorKind::BudgetExhausted, "search budget exhausted at k=1");
  }
  return d.answer == Decision::Yes;
}

bool verify_reduction(const ReductionInstance& instance, bool oracle_universal,
                      const SearchBudget& budget) {
  return reduction_answer(instance, budget) == oracle_universal;
}

}  // namespace pfilter
