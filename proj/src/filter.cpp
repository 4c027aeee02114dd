#include <pfilter/filter.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <unordered_map>

namespace pfilter {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyColorSet: return "EmptyColorSet";
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::UnknownColor: return "UnknownColor";
    case ErrorKind::NoInitialState: return "NoInitialState";
    case ErrorKind::DuplicateState: return "DuplicateState";
    case ErrorKind::EmptyAlphabet: return "EmptyAlphabet";
    case ErrorKind::NotDeterministic: return "NotDeterministic";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::NoAcceptingState: return "NoAcceptingState";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Format: return "Format";
  }
  return "Unknown";
}

namespace {

template <typename Index>
std::optional<Index> index_of(const std::vector<std::string>& names,
                              std::string_view key) {
  auto it = std::find(names.begin(), names.end(), key);
  if (it == names.end()) return std::nullopt;
  return static_cast<Index>(it - names.begin());
}

std::unordered_map<std::string, std::uint32_t> make_index(
    const std::vector<std::string>& names, ErrorKind duplicate_kind,
    std::string_view what) {
  std::unordered_map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < names.size(); ++i) {
    if (!index.emplace(names[i], i).second) {
      throw Error(duplicate_kind,
                  "duplicate " + std::string(what) + " '" + names[i] + "'");
    }
  }
  return index;
}

}  // namespace

std::optional<StateId> Filter::find_state(std::string_view id) const {
  return index_of<StateId>(state_ids_, id);
}

std::optional<Symbol> Filter::find_symbol(std::string_view name) const {
  return index_of<Symbol>(observations_, name);
}

std::optional<Color> Filter::find_color(std::string_view name) const {
  return index_of<Color>(color_names_, name);
}

ColorSet Filter::colors_of(const StateSet& states) const {
  ColorSet out = empty_color_set();
  for_each_bit(states, [&](std::size_t v) { out |= coloring_[v]; });
  return out;
}

StateSet Filter::step(const StateSet& from, Symbol y) const {
  StateSet out = empty_state_set();
  for_each_bit(from, [&](std::size_t v) {
    for (StateId w : successors(static_cast<StateId>(v), y)) out.set(w);
  });
  return out;
}

Word Filter::parse_word(std::string_view text) const {
  return tokenize_word(text, observations_);
}

std::vector<std::string> Filter::word_names(const Word& word) const {
  std::vector<std::string> out;
  out.reserve(word.size());
  for (Symbol y : word) out.push_back(observations_.at(y));
  return out;
}

RawFilter Filter::to_raw() const {
  RawFilter raw;
  raw.observations = observations_;
  raw.colors = color_names_;
  for (StateId v = 0; v < num_states(); ++v) {
    RawState s{state_ids_[v], {}};
    for_each_bit(coloring_[v],
                 [&](std::size_t c) { s.colors.push_back(color_names_[c]); });
    raw.states.push_back(std::move(s));
  }
  for_each_bit(initial_,
               [&](std::size_t v) { raw.initial.push_back(state_ids_[v]); });
  for (const Edge& e : edges_) {
    RawTransition t{state_ids_[e.from], state_ids_[e.to], {}};
    for (Symbol y : e.symbols) t.symbols.push_back(observations_[y]);
    raw.transitions.push_back(std::move(t));
  }
  return raw;
}

bool Filter::operator==(const Filter& other) const {
  return state_ids_ == other.state_ids_ &&
         observations_ == other.observations_ &&
         color_names_ == other.color_names_ && coloring_ == other.coloring_ &&
         initial_ == other.initial_ && edges_ == other.edges_;
}

void Filter::rebuild_successors() {
  succ_.assign(num_states() * num_symbols(), {});
  for (const Edge& e : edges_) {
    for (Symbol y : e.symbols) {
      succ_[e.from * num_symbols() + y].push_back(e.to);
    }
  }
  for (auto& list : succ_) std::sort(list.begin(), list.end());
}

Filter validate(const RawFilter& raw) {
  if (raw.observations.empty()) {
    throw Error(ErrorKind::EmptyAlphabet, "filter has no observations");
  }
  Filter f;
  f.observations_ = raw.observations;
  f.color_names_ = raw.colors;
  const auto symbol_index =
      make_index(raw.observations, ErrorKind::InvalidArgument, "observation");
  const auto color_index =
      make_index(raw.colors, ErrorKind::InvalidArgument, "color");

  for (const RawState& s : raw.states) f.state_ids_.push_back(s.id);
  const auto state_index =
      make_index(f.state_ids_, ErrorKind::DuplicateState, "state");

  auto lookup_state = [&](const std::string& id) {
    auto it = state_index.find(id);
    if (it == state_index.end()) {
      throw Error(ErrorKind::UnknownState, "unknown state '" + id + "'");
    }
    return it->second;
  };

  for (const RawState& s : raw.states) {
    ColorSet cs(raw.colors.size());
    for (const std::string& c : s.colors) {
      auto it = color_index.find(c);
      if (it == color_index.end()) {
        throw Error(ErrorKind::UnknownColor,
                    "unknown color '" + c + "' on state '" + s.id + "'");
      }
      cs.set(it->second);
    }
    if (cs.none()) {
      throw Error(ErrorKind::EmptyColorSet,
                  "state '" + s.id + "' has an empty color set");
    }
    f.coloring_.push_back(std::move(cs));
  }

  f.initial_ = StateSet(f.num_states());
  for (const std::string& id : raw.initial) f.initial_.set(lookup_state(id));
  if (f.initial_.none()) {
    throw Error(ErrorKind::NoInitialState, "filter has no initial state");
  }

  std::map<std::pair<StateId, StateId>, std::vector<bool>> labels;
  for (const RawTransition& t : raw.transitions) {
    const StateId from = lookup_state(t.from);
    const StateId to = lookup_state(t.to);
    for (const std::string& sym : t.symbols) {
      auto it = symbol_index.find(sym);
      if (it == symbol_index.end()) {
        throw Error(ErrorKind::UnknownSymbol, "unknown symbol '" + sym +
                                                  "' on transition " + t.from +
                                                  " -> " + t.to);
      }
      auto& mask = labels[{from, to}];
      mask.resize(raw.observations.size());
      mask[it->second] = true;
    }
  }
  for (const auto& [key, mask] : labels) {
    Edge e{key.first, key.second, {}};
    for (Symbol y = 0; y < mask.size(); ++y) {
      if (mask[y]) e.symbols.push_back(y);
    }
    if (!e.symbols.empty()) f.edges_.push_back(std::move(e));
  }
  f.rebuild_successors();
  return f;
}

bool is_deterministic(const Filter& f) {
  if (f.initial().count() != 1) return false;
  for (StateId v = 0; v < f.num_states(); ++v) {
    for (Symbol y = 0; y < f.num_symbols(); ++y) {
      if (f.successors(v, y).size() > 1) return false;
    }
  }
  return true;
}

TraceResult reached_states(const Filter& f, std::span<const Symbol> word) {
  StateSet current = f.initial();
  for (Symbol y : word) {
    if (y >= f.num_symbols()) {
      throw Error(ErrorKind::UnknownSymbol,
                  "symbol index " + std::to_string(y) + " out of range");
    }
    current = f.step(current, y);
    if (current.none()) break;
  }
  return TraceResult{std::move(current)};
}

TraceResult reached_states(const Filter& f, std::string_view word) {
  return reached_states(f, f.parse_word(word));
}

std::optional<ColorSet> output_of(const Filter& f,
                                  std::span<const Symbol> word) {
  TraceResult r = reached_states(f, word);
  if (r.crashed()) return std::nullopt;
  return f.colors_of(r.reached);
}

std::optional<ColorSet> output_of(const Filter& f, std::string_view word) {
  return output_of(f, f.parse_word(word));
}

bool interaction_language_member(const Filter& f,
                                 std::span<const Symbol> word) {
  return !reached_states(f, word).crashed();
}

bool interaction_language_member(const Filter& f, std::string_view word) {
  return interaction_language_member(f, f.parse_word(word));
}

Filter trim(const Filter& f) {
  StateSet seen = f.initial();
  std::deque<StateId> queue;
  for_each_bit(seen, [&](std::size_t v) { queue.push_back(v); });
  while (!queue.empty()) {
    StateId v = queue.front();
    queue.pop_front();
    for (Symbol y = 0; y < f.num_symbols(); ++y) {
      for (StateId w : f.successors(v, y)) {
        if (!seen.test(w)) {
          seen.set(w);
          queue.push_back(w);
        }
      }
    }
  }
  if (seen.count() == f.num_states()) return f;

  RawFilter raw = f.to_raw();
  RawFilter out;
  out.observations = raw.observations;
  out.colors = raw.colors;
  out.initial = raw.initial;
  for (StateId v = 0; v < f.num_states(); ++v) {
    if (seen.test(v)) out.states.push_back(raw.states[v]);
  }
  for (std::size_t i = 0; i < raw.transitions.size(); ++i) {
    if (seen.test(f.edges()[i].from)) {
      out.transitions.push_back(raw.transitions[i]);
    }
  }
  return validate(out);
}

std::string subset_name(const StateSet& s,
                        const std::vector<std::string>& names) {
  std::string out = "{";
  bool first = true;
  for_each_bit(s, [&](std::size_t v) {
    if (!first) out += ',';
    out += names[v];
    first = false;
  });
  out += '}';
  return out;
}

Determinization determinize(const Filter& f, std::size_t cap) {
  std::unordered_map<StateSet, StateId, BitSetHash> index;
  std::vector<StateSet> subsets;

  auto intern = [&](const StateSet& s) -> StateId {
    auto [it, inserted] =
        index.emplace(s, static_cast<StateId>(subsets.size()));
    if (inserted) {
      if (subsets.size() >= cap) throw CapExceeded(cap);
      subsets.push_back(s);
    }
    return it->second;
  };

  struct Move {
    StateId from;
    StateId to;
    Symbol symbol;
  };
  std::vector<Move> moves;
  intern(f.initial());
  for (StateId i = 0; i < subsets.size(); ++i) {
    for (Symbol y = 0; y < f.num_symbols(); ++y) {
      StateSet next = f.step(subsets[i], y);
      if (next.none()) continue;
      StateId j = intern(next);
      moves.push_back({i, j, y});
    }
  }

  RawFilter raw;
  raw.observations = f.observations();
  raw.colors = f.color_names();
  std::vector<std::string> names;
  names.reserve(subsets.size());
  for (const StateSet& s : subsets) {
    names.push_back(subset_name(s, f.state_names()));
    RawState rs{names.back(), {}};
    for_each_bit(f.colors_of(s), [&](std::size_t c) {
      rs.colors.push_back(f.color_name(static_cast<Color>(c)));
    });
    raw.states.push_back(std::move(rs));
  }
  raw.initial = {names.front()};
  for (const Move& m : moves) {
    raw.transitions.push_back(
        {names[m.from], names[m.to], {f.symbol_name(m.symbol)}});
  }
  return Determinization{validate(raw), std::move(subsets)};
}

Word tokenize_word(std::string_view text,
                   const std::vector<std::string>& alphabet) {
  auto lookup = [&](std::string_view tok) -> Symbol {
    auto it = std::find(alphabet.begin(), alphabet.end(), tok);
    if (it == alphabet.end()) {
      throw Error(ErrorKind::UnknownSymbol,
                  "unknown symbol '" + std::string(tok) + "'");
    }
    return static_cast<Symbol>(it - alphabet.begin());
  };

  Word word;
  const bool separated =
      text.find_first_of(", \t") != std::string_view::npos;
  if (separated) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find_first_of(", \t", pos);
      if (end == std::string_view::npos) end = text.size();
      if (end > pos) word.push_back(lookup(text.substr(pos, end - pos)));
      pos = end + 1;
    }
    return word;
  }

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t best_len = 0;
    Symbol best = 0;
    for (Symbol y = 0; y < alphabet.size(); ++y) {
      const std::string& name = alphabet[y];
      if (name.size() > best_len && text.substr(pos, name.size()) == name) {
        best_len = name.size();
        best = y;
      }
    }
    if (best_len == 0) {
      throw Error(ErrorKind::UnknownSymbol,
                  "unknown symbol at '" + std::string(text.substr(pos)) + "'");
    }
    word.push_back(best);
    pos += best_len;
  }
  return word;
}

}  // namespace pfilter
