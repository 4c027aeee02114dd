#pragma once

#include <pfilter/filter.hpp>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pfilter {

struct RawNfaState {
  std::string id;
  bool accepting = false;
};

struct RawNfa {
  std::vector<std::string> observations;
  std::vector<RawNfaState> states;
  std::vector<std::string> initial;
  std::vector<RawTransition> transitions;
};

struct NfaTransition {
  StateId from = 0;
  Symbol symbol = 0;
  StateId to = 0;
};

/// Finite automaton (Q, Q0, Σ, δ, A). The alphabet may be empty only when
/// the automaton is a pure ε-acceptor/rejector.
class Nfa {
 public:
  Nfa(std::vector<std::string> states, std::vector<std::string> alphabet,
      StateSet initial, StateSet accepting,
      std::span<const NfaTransition> transitions);

  std::size_t num_states() const noexcept { return names_.size(); }
  std::size_t num_symbols() const noexcept { return alphabet_.size(); }

  const std::string& state_name(StateId q) const { return names_.at(q); }
  const std::string& symbol_name(Symbol y) const { return alphabet_.at(y); }
  const std::vector<std::string>& state_names() const { return names_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::optional<Symbol> find_symbol(std::string_view name) const;
  std::optional<StateId> find_state(std::string_view name) const;

  const StateSet& initial() const noexcept { return initial_; }
  const StateSet& accepting() const noexcept { return accepting_; }

  std::span<const StateId> successors(StateId q, Symbol y) const {
    return (*delta_)[q * alphabet_.size() + y];
  }
  StateSet step(const StateSet& from, Symbol y) const;
  std::vector<NfaTransition> transitions() const;

  bool accepts(std::span<const Symbol> word) const;
  bool accepts(std::string_view word) const;
  Word parse_word(std::string_view text) const {
    return tokenize_word(text, alphabet_);
  }

  bool is_deterministic() const;
  bool is_complete() const;

  /// Same automaton over a superset alphabet; new symbols have no
  /// transitions. Throws InvalidArgument if `alphabet` misses a symbol.
  Nfa with_alphabet(const std::vector<std::string>& alphabet) const;
  /// Same transition structure with a different accepting set; the
  /// transition table is shared, not copied.
  Nfa with_accepting(StateSet accepting) const;

  RawNfa to_raw() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::string> alphabet_;
  StateSet initial_;
  StateSet accepting_;
  std::shared_ptr<const std::vector<std::vector<StateId>>> delta_;
};

Nfa validate_nfa(const RawNfa& raw);

/// Outcome of a language comparison. `witness` is a shortest word showing
/// the comparison fails, spelled with symbol names.
struct InclusionResult {
  bool holds = true;
  std::optional<std::vector<std::string>> witness;

  explicit operator bool() const noexcept { return holds; }
};

/// Same transition structure as the filter; colors dropped.
Nfa filter_to_nfa(const Filter& f, const StateSet& accepting);

/// Reachable subset construction. The result is deterministic and complete;
/// the empty subset appears as a dead state "{}" when some move needs it.
Nfa subset_construct(const Nfa& n, std::size_t cap = kDefaultStateCap);

/// Adds a non-accepting trap state with a self loop on every symbol and
/// routes every missing move into it. Returns the input unchanged when
/// already complete. Throws NotDeterministic.
Nfa complete_dfa(const Nfa& d);

/// Product automaton over the union alphabet, restricted to reachable pairs.
Nfa intersect(const Nfa& a, const Nfa& b);
/// Disjoint union over the union alphabet; state i of operand k is named
/// "A<k+1>.<name>".
Nfa union_of(std::span<const Nfa> parts);
/// Flips acceptance. Throws NotDeterministic / NotComplete.
Nfa complement(const Nfa& d);

/// One-state automaton accepting every word over `alphabet`.
Nfa universal_acceptor(const std::vector<std::string>& alphabet);

/// `base` if unused in `taken`, otherwise base1, base2, ...
std::string fresh_identifier(const std::vector<std::string>& taken,
                             const std::string& base);

std::vector<std::string> union_alphabet(const std::vector<std::string>& a,
                                        const std::vector<std::string>& b);

/// Decides L(a) ⊆ L(b) by breadth-first search over pairs (state of a,
/// subset of b), determinizing b lazily. On failure the witness is a
/// shortest word of L(a) \ L(b). Throws CapExceeded when more than `cap`
/// subsets of b are visited.
InclusionResult is_included(const Nfa& a, const Nfa& b,
                            std::size_t cap = kDefaultStateCap);
InclusionResult is_equivalent(const Nfa& a, const Nfa& b,
                              std::size_t cap = kDefaultStateCap);
InclusionResult is_universal(const Nfa& a, std::size_t cap = kDefaultStateCap);

}  // namespace pfilter
