#pragma once

// Random instance generators and brute-force oracles shared by the tests.
// The oracles only look at the raw edge lists of a filter or automaton, so
// they do not share code paths with the library routines they check.

#include <pfilter/filter.hpp>
#include <pfilter/nfa.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace pfilter::testing {

using Rng = std::mt19937_64;

struct FilterShape {
  std::size_t states = 3;
  std::size_t symbols = 2;
  std::size_t colors = 2;
  double edge_density = 0.35;  // probability of each (v, y, w) move
  bool deterministic = false;
};

/// Random valid filter; states "s0".., symbols "a".., colors "c0"...
Filter random_filter(Rng& rng, const FilterShape& shape);
/// Random valid automaton; states "q0".., symbols "a"...
Nfa random_nfa(Rng& rng, std::size_t states, std::size_t symbols,
               double density = 0.35);
/// Random deterministic (partial) automaton.
Nfa random_dfa(Rng& rng, std::size_t states, std::size_t symbols,
               double density = 0.7);

Word random_word(Rng& rng, std::size_t symbols, std::size_t max_len);

/// Every word over {0..symbols-1} with length <= max_len, shortest first.
std::vector<Word> all_words(std::size_t symbols, std::size_t max_len);

/// States reached by `word`, computed from the edge list.
std::vector<bool> brute_reached(const Filter& f, const Word& word);
/// Colors (by name) output by `word`; nullopt on crash.
std::optional<std::set<std::string>> brute_output(const Filter& f,
                                                   const Word& word);
bool brute_accepts(const Nfa& n, const Word& word);

/// Translates a word of `from` into symbol names.
std::vector<std::string> names_of(const Filter& from, const Word& word);

struct BruteVerdict {
  bool holds = true;
  // Shortest word of L(F) \ L(F'), and shortest word of L(F) ∩ L(F')
  // whose F' output is not contained in its F output.
  std::optional<std::vector<std::string>> language_gap;
  std::optional<std::vector<std::string>> output_violation;
};

/// Does fp output-simulate f? Explores words of L(f) in breadth-first
/// order, skipping a word when the pair of reached sets was already seen
/// (its extensions behave identically), so the search is exhaustive over
/// all strings and still terminates.
BruteVerdict brute_simulates(const Filter& fp, const Filter& f);

/// Same comparison restricted to words of length <= max_len, by plain
/// enumeration.
bool enumerate_simulates(const Filter& fp, const Filter& f, std::size_t max_len);

/// Universality by enumerating words up to `max_len`, skipping words whose
/// reached set already appeared for a word at most as long.
bool enumerate_universal(const Nfa& n, std::size_t max_len);

/// Smallest number of states of any filter over f's alphabet and colors
/// that output-simulates f, by enumerating every candidate with up to
/// `limit` states (initial sets, per-state color sets, per-(state, symbol)
/// successor sets). Returns limit + 1 if none is found.
std::size_t brute_min_states(const Filter& f, std::size_t limit);

}  // namespace pfilter::testing
