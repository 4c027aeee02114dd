#include <pfilter/nfa.hpp>

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace pfilter {

Nfa::Nfa(std::vector<std::string> states, std::vector<std::string> alphabet,
         StateSet initial, StateSet accepting,
         std::span<const NfaTransition> transitions)
    : names_(std::move(states)),
      alphabet_(std::move(alphabet)),
      initial_(std::move(initial)),
      accepting_(std::move(accepting)) {
  if (initial_.size() != names_.size() || accepting_.size() != names_.size()) {
    throw Error(ErrorKind::InvalidArgument, "state set size mismatch");
  }
  if (initial_.none()) {
    throw Error(ErrorKind::NoInitialState, "automaton has no initial state");
  }
  std::vector<std::vector<StateId>> delta(names_.size() * alphabet_.size());
  for (const NfaTransition& t : transitions) {
    if (t.from >= names_.size() || t.to >= names_.size()) {
      throw Error(ErrorKind::UnknownState, "transition state out of range");
    }
    if (t.symbol >= alphabet_.size()) {
      throw Error(ErrorKind::UnknownSymbol, "transition symbol out of range");
    }
    delta[t.from * alphabet_.size() + t.symbol].push_back(t.to);
  }
  for (auto& list : delta) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  delta_ = std::make_shared<const std::vector<std::vector<StateId>>>(
      std::move(delta));
}

Nfa Nfa::with_accepting(StateSet accepting) const {
  if (accepting.size() != num_states()) {
    throw Error(ErrorKind::InvalidArgument, "accepting set size mismatch");
  }
  Nfa out = *this;
  out.accepting_ = std::move(accepting);
  return out;
}

std::optional<Symbol> Nfa::find_symbol(std::string_view name) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end()) return std::nullopt;
  return static_cast<Symbol>(it - alphabet_.begin());
}

std::optional<StateId> Nfa::find_state(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<StateId>(it - names_.begin());
}

StateSet Nfa::step(const StateSet& from, Symbol y) const {
  StateSet out(num_states());
  for_each_bit(from, [&](std::size_t q) {
    for (StateId r : successors(static_cast<StateId>(q), y)) out.set(r);
  });
  return out;
}

std::vector<NfaTransition> Nfa::transitions() const {
  std::vector<NfaTransition> out;
  for (StateId q = 0; q < num_states(); ++q) {
    for (Symbol y = 0; y < num_symbols(); ++y) {
      for (StateId r : successors(q, y)) out.push_back({q, y, r});
    }
  }
  return out;
}

bool Nfa::accepts(std::span<const Symbol> word) const {
  StateSet current = initial_;
  for (Symbol y : word) {
    if (y >= num_symbols()) {
      throw Error(ErrorKind::UnknownSymbol, "symbol index out of range");
    }
    current = step(current, y);
    if (current.none()) return false;
  }
  return current.intersects(accepting_);
}

bool Nfa::accepts(std::string_view word) const {
  return accepts(parse_word(word));
}

bool Nfa::is_deterministic() const {
  if (initial_.count() != 1) return false;
  return std::all_of(delta_->begin(), delta_->end(),
                     [](const auto& list) { return list.size() <= 1; });
}

bool Nfa::is_complete() const {
  return std::all_of(delta_->begin(), delta_->end(),
                     [](const auto& list) { return !list.empty(); });
}

Nfa Nfa::with_alphabet(const std::vector<std::string>& alphabet) const {
  if (alphabet == alphabet_) return *this;
  std::vector<Symbol> remap(alphabet_.size());
  for (Symbol y = 0; y < alphabet_.size(); ++y) {
    auto it = std::find(alphabet.begin(), alphabet.end(), alphabet_[y]);
    if (it == alphabet.end()) {
      throw Error(ErrorKind::InvalidArgument,
                  "alphabet lacks symbol '" + alphabet_[y] + "'");
    }
    remap[y] = static_cast<Symbol>(it - alphabet.begin());
  }
  std::vector<NfaTransition> moves = transitions();
  for (auto& t : moves) t.symbol = remap[t.symbol];
  return Nfa(names_, alphabet, initial_, accepting_, moves);
}

RawNfa Nfa::to_raw() const {
  RawNfa raw;
  raw.observations = alphabet_;
  for (StateId q = 0; q < num_states(); ++q) {
    raw.states.push_back({names_[q], accepting_.test(q)});
  }
  for_each_bit(initial_, [&](std::size_t q) { raw.initial.push_back(names_[q]); });
  for (StateId q = 0; q < num_states(); ++q) {
    for (StateId r = 0; r < num_states(); ++r) {
      RawTransition t{names_[q], names_[r], {}};
      for (Symbol y = 0; y < num_symbols(); ++y) {
        const auto succ = successors(q, y);
        if (std::binary_search(succ.begin(), succ.end(), r)) {
          t.symbols.push_back(alphabet_[y]);
        }
      }
      if (!t.symbols.empty()) raw.transitions.push_back(std::move(t));
    }
  }
  return raw;
}

Nfa validate_nfa(const RawNfa& raw) {
  std::unordered_map<std::string, StateId> states;
  std::vector<std::string> names;
  for (const auto& s : raw.states) {
    if (!states.emplace(s.id, static_cast<StateId>(names.size())).second) {
      throw Error(ErrorKind::DuplicateState, "duplicate state '" + s.id + "'");
    }
    names.push_back(s.id);
  }
  std::unordered_map<std::string, Symbol> symbols;
  for (const auto& y : raw.observations) {
    if (!symbols.emplace(y, static_cast<Symbol>(symbols.size())).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate observation '" + y + "'");
    }
  }
  auto state = [&](const std::string& id) {
    auto it = states.find(id);
    if (it == states.end()) {
      throw Error(ErrorKind::UnknownState, "unknown state '" + id + "'");
    }
    return it->second;
  };
  StateSet initial(names.size());
  StateSet accepting(names.size());
  for (const auto& id : raw.initial) initial.set(state(id));
  for (StateId q = 0; q < raw.states.size(); ++q) {
    if (raw.states[q].accepting) accepting.set(q);
  }
  std::vector<NfaTransition> moves;
  for (const auto& t : raw.transitions) {
    const StateId from = state(t.from);
    const StateId to = state(t.to);
    for (const auto& y : t.symbols) {
      auto it = symbols.find(y);
      if (it == symbols.end()) {
        throw Error(ErrorKind::UnknownSymbol, "unknown symbol '" + y + "'");
      }
      moves.push_back({from, it->second, to});
    }
  }
  return Nfa(std::move(names), raw.observations, std::move(initial),
             std::move(accepting), moves);
}

Nfa filter_to_nfa(const Filter& f, const StateSet& accepting) {
  if (accepting.size() != f.num_states()) {
    throw Error(ErrorKind::InvalidArgument,
                "accepting set does not match the filter's states");
  }
  std::vector<NfaTransition> moves;
  for (const Edge& e : f.edges()) {
    for (Symbol y : e.symbols) moves.push_back({e.from, y, e.to});
  }
  return Nfa(f.state_names(), f.observations(), f.initial(), accepting, moves);
}

Nfa subset_construct(const Nfa& n, std::size_t cap) {
  std::unordered_map<StateSet, StateId, BitSetHash> index;
  std::vector<StateSet> subsets;
  auto intern = [&](StateSet s) {
    auto [it, inserted] = index.emplace(s, static_cast<StateId>(subsets.size()));
    if (inserted) {
      if (subsets.size() >= cap) throw CapExceeded(cap);
      subsets.push_back(std::move(s));
    }
    return it->second;
  };
  std::vector<NfaTransition> moves;
  intern(n.initial());
  for (StateId i = 0; i < subsets.size(); ++i) {
    for (Symbol y = 0; y < n.num_symbols(); ++y) {
      const StateId j = intern(n.step(subsets[i], y));
      moves.push_back({i, y, j});
    }
  }
  std::vector<std::string> names;
  StateSet initial(subsets.size());
  StateSet accepting(subsets.size());
  initial.set(0);
  for (StateId i = 0; i < subsets.size(); ++i) {
    names.push_back(subset_name(subsets[i], n.state_names()));
    if (subsets[i].intersects(n.accepting())) accepting.set(i);
  }
  return Nfa(std::move(names), n.alphabet(), std::move(initial),
             std::move(accepting), moves);
}

std::string fresh_identifier(const std::vector<std::string>& taken,
                             const std::string& base) {
  if (std::find(taken.begin(), taken.end(), base) == taken.end()) return base;
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (std::find(taken.begin(), taken.end(), candidate) == taken.end()) {
      return candidate;
    }
  }
}

Nfa complete_dfa(const Nfa& d) {
  if (!d.is_deterministic()) {
    throw Error(ErrorKind::NotDeterministic,
                "complete_dfa requires a deterministic automaton");
  }
  if (d.is_complete()) return d;
  std::vector<std::string> names = d.state_names();
  const auto trap = static_cast<StateId>(names.size());
  names.push_back(fresh_identifier(names, "trap"));
  std::vector<NfaTransition> moves = d.transitions();
  for (StateId q = 0; q < d.num_states(); ++q) {
    for (Symbol y = 0; y < d.num_symbols(); ++y) {
      if (d.successors(q, y).empty()) moves.push_back({q, y, trap});
    }
  }
  for (Symbol y = 0; y < d.num_symbols(); ++y) moves.push_back({trap, y, trap});
  StateSet initial = d.initial();
  StateSet accepting = d.accepting();
  initial.push_back(false);
  accepting.push_back(false);
  return Nfa(std::move(names), d.alphabet(), std::move(initial),
             std::move(accepting), moves);
}

std::vector<std::string> union_alphabet(const std::vector<std::string>& a,
                                        const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& y : b) {
    if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
  }
  return out;
}

Nfa intersect(const Nfa& a_in, const Nfa& b_in) {
  const auto alphabet = union_alphabet(a_in.alphabet(), b_in.alphabet());
  const Nfa a = a_in.with_alphabet(alphabet);
  const Nfa b = b_in.with_alphabet(alphabet);

  std::unordered_map<std::uint64_t, StateId> index;
  std::vector<std::pair<StateId, StateId>> pairs;
  auto intern = [&](StateId p, StateId q) {
    const std::uint64_t key = (std::uint64_t{p} << 32) | q;
    auto [it, inserted] = index.emplace(key, static_cast<StateId>(pairs.size()));
    if (inserted) pairs.emplace_back(p, q);
    return it->second;
  };
  for_each_bit(a.initial(), [&](std::size_t p) {
    for_each_bit(b.initial(), [&](std::size_t q) {
      intern(static_cast<StateId>(p), static_cast<StateId>(q));
    });
  });
  const std::size_t num_initial = pairs.size();
  std::vector<NfaTransition> moves;
  for (StateId i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    for (Symbol y = 0; y < alphabet.size(); ++y) {
      for (StateId p2 : a.successors(p, y)) {
        for (StateId q2 : b.successors(q, y)) {
          moves.push_back({i, y, intern(p2, q2)});
        }
      }
    }
  }
  std::vector<std::string> names;
  StateSet initial(pairs.size());
  StateSet accepting(pairs.size());
  for (StateId i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    names.push_back("(" + a.state_name(p) + "," + b.state_name(q) + ")");
    if (i < num_initial) initial.set(i);
    if (a.accepting().test(p) && b.accepting().test(q)) accepting.set(i);
  }
  return Nfa(std::move(names), alphabet, std::move(initial),
             std::move(accepting), moves);
}

Nfa union_of(std::span<const Nfa> parts) {
  if (parts.empty()) {
    throw Error(ErrorKind::InvalidArgument, "union of an empty family");
  }
  std::vector<std::string> alphabet;
  for (const Nfa& n : parts) alphabet = union_alphabet(alphabet, n.alphabet());

  std::vector<std::string> names;
  std::vector<bool> initial_bits;
  std::vector<bool> accepting_bits;
  std::vector<NfaTransition> moves;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Nfa n = parts[k].with_alphabet(alphabet);
    const auto offset = static_cast<StateId>(names.size());
    for (StateId q = 0; q < n.num_states(); ++q) {
      names.push_back("A" + std::to_string(k + 1) + "." + n.state_name(q));
      initial_bits.push_back(n.initial().test(q));
      accepting_bits.push_back(n.accepting().test(q));
    }
    for (NfaTransition t : n.transitions()) {
      moves.push_back({t.from + offset, t.symbol, t.to + offset});
    }
  }
  StateSet initial(names.size());
  StateSet accepting(names.size());
  for (std::size_t q = 0; q < names.size(); ++q) {
    initial[q] = initial_bits[q];
    accepting[q] = accepting_bits[q];
  }
  return Nfa(std::move(names), std::move(alphabet), std::move(initial),
             std::move(accepting), moves);
}

Nfa complement(const Nfa& d) {
  if (!d.is_deterministic()) {
    throw Error(ErrorKind::NotDeterministic,
                "complement requires a deterministic automaton");
  }
  if (!d.is_complete()) {
    throw Error(ErrorKind::NotComplete,
                "complement requires a complete automaton");
  }
  StateSet accepting = d.accepting();
  accepting.flip();
  return Nfa(d.state_names(), d.alphabet(), d.initial(), std::move(accepting),
             d.transitions());
}

Nfa universal_acceptor(const std::vector<std::string>& alphabet) {
  std::vector<NfaTransition> moves;
  for (Symbol y = 0; y < alphabet.size(); ++y) moves.push_back({0, y, 0});
  StateSet one(1);
  one.set(0);
  return Nfa({"all"}, alphabet, one, one, moves);
}

InclusionResult is_included(const Nfa& a_in, const Nfa& b_in,
                            std::size_t cap) {
  const auto alphabet = union_alphabet(a_in.alphabet(), b_in.alphabet());
  const Nfa a = a_in.with_alphabet(alphabet);
  const Nfa b = b_in.with_alphabet(alphabet);

  std::unordered_map<StateSet, std::uint32_t, BitSetHash> subset_index;
  std::vector<StateSet> subsets;
  auto intern_subset = [&](StateSet s) {
    auto [it, inserted] =
        subset_index.emplace(s, static_cast<std::uint32_t>(subsets.size()));
    if (inserted) {
      if (subsets.size() >= cap) throw CapExceeded(cap);
      subsets.push_back(std::move(s));
    }
    return it->second;
  };

  struct Node {
    StateId state;
    std::uint32_t subset;
    std::uint32_t parent;
    Symbol symbol;
  };
  constexpr auto kRoot = static_cast<std::uint32_t>(-1);
  std::vector<Node> nodes;
  std::unordered_set<std::uint64_t> seen;
  auto push = [&](StateId q, std::uint32_t s, std::uint32_t parent, Symbol y) {
    const std::uint64_t key = (std::uint64_t{s} << 32) | q;
    if (seen.insert(key).second) nodes.push_back({q, s, parent, y});
  };

  const std::uint32_t start = intern_subset(b.initial());
  for_each_bit(a.initial(),
               [&](std::size_t q) { push(static_cast<StateId>(q), start, kRoot, 0); });

  // Memo of subset successors; subsets are revisited with many A-states.
  std::unordered_map<std::uint64_t, std::uint32_t> step_memo;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    const Node node = nodes[i];
    if (a.accepting().test(node.state) &&
        !subsets[node.subset].intersects(b.accepting())) {
      std::vector<std::string> witness;
      for (std::uint32_t j = i; nodes[j].parent != kRoot; j = nodes[j].parent) {
        witness.push_back(alphabet[nodes[j].symbol]);
      }
      std::reverse(witness.begin(), witness.end());
      return InclusionResult{false, std::move(witness)};
    }
    for (Symbol y = 0; y < alphabet.size(); ++y) {
      const auto succ = a.successors(node.state, y);
      if (succ.empty()) continue;
      const std::uint64_t memo_key =
          (std::uint64_t{node.subset} << 32) | y;
      std::uint32_t next;
      if (auto it = step_memo.find(memo_key); it != step_memo.end()) {
        next = it->second;
      } else {
        next = intern_subset(b.step(subsets[node.subset], y));
        step_memo.emplace(memo_key, next);
      }
      for (StateId q2 : succ) push(q2, next, i, y);
    }
  }
  return InclusionResult{true, std::nullopt};
}

InclusionResult is_equivalent(const Nfa& a, const Nfa& b, std::size_t cap) {
  InclusionResult forward = is_included(a, b, cap);
  InclusionResult backward = is_included(b, a, cap);
  if (forward.holds && backward.holds) return forward;
  if (forward.holds) return backward;
  if (backward.holds) return forward;
  return backward.witness->size() < forward.witness->size() ? backward
                                                            : forward;
}

InclusionResult is_universal(const Nfa& a, std::size_t cap) {
  return is_included(universal_acceptor(a.alphabet()), a, cap);
}

}  // namespace pfilter
