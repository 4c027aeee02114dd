#pragma once

#include <pfilter/bitset.hpp>
#include <pfilter/errors.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pfilter {

using StateId = std::uint32_t;
using Symbol = std::uint32_t;
using Color = std::uint32_t;
using Word = std::vector<Symbol>;

inline constexpr std::size_t kDefaultStateCap = std::size_t{1} << 20;

// Name-based description of a filter, as read from disk or assembled by a
// generator. Turned into a Filter by validate().
struct RawState {
  std::string id;
  std::vector<std::string> colors;
};

struct RawTransition {
  std::string from;
  std::string to;
  std::vector<std::string> symbols;
};

struct RawFilter {
  std::vector<std::string> observations;
  std::vector<std::string> colors;
  std::vector<RawState> states;
  std::vector<std::string> initial;
  std::vector<RawTransition> transitions;
};

/// One directed edge with the set of observations that drive it.
struct Edge {
  StateId from = 0;
  StateId to = 0;
  std::vector<Symbol> symbols;  // sorted, unique, nonempty

  bool operator==(const Edge&) const = default;
};

/// A procrustean filter: a transition system whose states carry nonempty
/// color sets. Immutable once built by validate().
///
/// Edges are stored per ordered state pair with their symbol set; the
/// per-symbol successor lists are derived at construction.
class Filter {
 public:
  std::size_t num_states() const noexcept { return state_ids_.size(); }
  std::size_t num_symbols() const noexcept { return observations_.size(); }
  std::size_t num_colors() const noexcept { return color_names_.size(); }

  const std::string& state_name(StateId v) const { return state_ids_.at(v); }
  const std::string& symbol_name(Symbol y) const {
    return observations_.at(y);
  }
  const std::string& color_name(Color c) const { return color_names_.at(c); }

  const std::vector<std::string>& state_names() const { return state_ids_; }
  const std::vector<std::string>& observations() const {
    return observations_;
  }
  const std::vector<std::string>& color_names() const { return color_names_; }

  std::optional<StateId> find_state(std::string_view id) const;
  std::optional<Symbol> find_symbol(std::string_view name) const;
  std::optional<Color> find_color(std::string_view name) const;

  const StateSet& initial() const noexcept { return initial_; }
  const ColorSet& colors_of(StateId v) const { return coloring_.at(v); }
  /// Union of the colorings of every member of `states`.
  ColorSet colors_of(const StateSet& states) const;

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const StateId> successors(StateId v, Symbol y) const {
    return succ_[v * observations_.size() + y];
  }
  bool has_outgoing(StateId v, Symbol y) const {
    return !successors(v, y).empty();
  }

  /// States reachable from any member of `from` under `y`.
  StateSet step(const StateSet& from, Symbol y) const;

  StateSet empty_state_set() const { return StateSet(num_states()); }
  ColorSet empty_color_set() const { return ColorSet(num_colors()); }

  /// Splits text into symbols of this filter's alphabet. Comma or whitespace
  /// separated lists are split on the separators; otherwise the longest
  /// matching symbol is taken greedily. Throws UnknownSymbol.
  Word parse_word(std::string_view text) const;
  std::vector<std::string> word_names(const Word& word) const;

  RawFilter to_raw() const;

  bool operator==(const Filter& other) const;

 private:
  friend Filter validate(const RawFilter& raw);

  void rebuild_successors();

  std::vector<std::string> state_ids_;
  std::vector<std::string> observations_;
  std::vector<std::string> color_names_;
  std::vector<ColorSet> coloring_;
  StateSet initial_;
  std::vector<Edge> edges_;
  std::vector<std::vector<StateId>> succ_;
};

struct TraceResult {
  StateSet reached;

  bool crashed() const { return reached.none(); }
};

/// Checks well-formedness and builds a Filter. Repeated transitions between
/// the same pair of states are merged; empty symbol lists add no edge.
Filter validate(const RawFilter& raw);

bool is_deterministic(const Filter& f);

/// The set of states reached by `word` from some initial state. The empty
/// word reaches the initial states.
TraceResult reached_states(const Filter& f, std::span<const Symbol> word);
TraceResult reached_states(const Filter& f, std::string_view word);

/// Union of colors over the reached states; nullopt when the word crashes.
std::optional<ColorSet> output_of(const Filter& f,
                                  std::span<const Symbol> word);
std::optional<ColorSet> output_of(const Filter& f, std::string_view word);

bool interaction_language_member(const Filter& f,
                                 std::span<const Symbol> word);
bool interaction_language_member(const Filter& f, std::string_view word);

/// Removes states not reachable from the initial states. Surviving states
/// keep their relative order.
Filter trim(const Filter& f);

/// Result of the power set construction. subsets[i] lists the members of
/// the input filter that make up state i of `filter`.
struct Determinization {
  Filter filter;
  std::vector<StateSet> subsets;
};

/// Power set construction restricted to subsets reached by some word.
/// States are numbered in breadth-first order (symbols in declared order)
/// and named by their sorted member list, e.g. "{p1,p2}".
/// Throws CapExceeded if more than `cap` subsets are reached.
Determinization determinize(const Filter& f,
                            std::size_t cap = kDefaultStateCap);

/// Splits `text` into symbols drawn from `alphabet`; shared by filters and
/// automata. Throws UnknownSymbol.
Word tokenize_word(std::string_view text,
                   const std::vector<std::string>& alphabet);

/// Renders a member list as "{a,b,c}".
std::string subset_name(const StateSet& s,
                        const std::vector<std::string>& names);

}  // namespace pfilter
