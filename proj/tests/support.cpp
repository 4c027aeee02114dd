#include "support.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace pfilter::testing {

namespace {

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<std::string> letters(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(1, static_cast<char>('a' + i));
  return out;
}

// Per (state, symbol) successor bitmask, read off the edge list.
struct MaskTable {
  std::size_t symbols = 0;
  std::uint64_t initial = 0;
  std::vector<std::uint64_t> next;
  std::vector<std::uint64_t> colors;  // bitmask over a shared color index

  std::uint64_t step(std::uint64_t from, std::size_t y) const {
    std::uint64_t out = 0;
    for (std::size_t v = 0; from; ++v, from >>= 1) {
      if (from & 1U) out |= next[v * symbols + y];
    }
    return out;
  }
  std::uint64_t output(std::uint64_t set) const {
    std::uint64_t out = 0;
    for (std::size_t v = 0; set; ++v, set >>= 1) {
      if (set & 1U) out |= colors[v];
    }
    return out;
  }
};

MaskTable masks_of(const Filter& f, const std::vector<std::string>& alphabet,
                   const std::vector<std::string>& color_index) {
  if (f.num_states() > 64) throw std::invalid_argument("oracle handles <= 64 states");
  MaskTable t;
  t.symbols = alphabet.size();
  t.next.assign(f.num_states() * t.symbols, 0);
  for (const Edge& e : f.edges()) {
    for (Symbol y : e.symbols) {
      const std::string& name = f.symbol_name(y);
      for (std::size_t k = 0; k < alphabet.size(); ++k) {
        if (alphabet[k] == name) t.next[e.from * t.symbols + k] |= std::uint64_t{1} << e.to;
      }
    }
  }
  for (StateId v = 0; v < f.num_states(); ++v) {
    if (f.initial().test(v)) t.initial |= std::uint64_t{1} << v;
    std::uint64_t c = 0;
    for (Color o = 0; o < f.num_colors(); ++o) {
      if (!f.colors_of(v).test(o)) continue;
      for (std::size_t k = 0; k < color_index.size(); ++k) {
        if (color_index[k] == f.color_name(o)) c |= std::uint64_t{1} << k;
      }
    }
    t.colors.push_back(c);
  }
  return t;
}

std::vector<std::string> merged(const std::vector<std::string>& a,
                                const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& x : b) {
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

struct PairSearch {
  std::optional<std::vector<std::size_t>> gap;
  std::optional<std::vector<std::size_t>> violation;
};

// Breadth-first over words of L(F); a word is dropped when the pair of
// reached sets repeats. Stops as soon as both kinds of failure are known,
// or after the first failure when `first_only` is set.
PairSearch search_pairs(const MaskTable& f, const MaskTable& fp,
                        bool first_only) {
  struct Item {
    std::uint64_t a, b;
    std::vector<std::size_t> word;
  };
  PairSearch result;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  std::deque<Item> queue;
  queue.push_back({f.initial, fp.initial, {}});
  seen.insert({f.initial, fp.initial});
  while (!queue.empty()) {
    Item it = std::move(queue.front());
    queue.pop_front();
    if (it.b == 0) {
      if (!result.gap) result.gap = it.word;
      if (first_only) return result;
      continue;  // words beyond a gap are irrelevant for output consistency
    }
    if ((fp.output(it.b) & ~f.output(it.a)) != 0 && !result.violation) {
      result.violation = it.word;
      if (first_only) return result;
    }
    if (result.gap && result.violation) return result;
    for (std::size_t y = 0; y < f.symbols; ++y) {
      const std::uint64_t a2 = f.step(it.a, y);
      if (a2 == 0) continue;
      const std::uint64_t b2 = fp.step(it.b, y);
      if (!seen.insert({a2, b2}).second) continue;
      Item next{a2, b2, it.word};
      next.word.push_back(y);
      queue.push_back(std::move(next));
    }
  }
  return result;
}

}  // namespace

Filter random_filter(Rng& rng, const FilterShape& shape) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  RawFilter raw;
  raw.observations = letters(shape.symbols);
  raw.colors = numbered("c", shape.colors);
  const auto names = numbered("s", shape.states);
  for (const auto& n : names) {
    RawState s{n, {}};
    while (s.colors.empty()) {
      for (const auto& c : raw.colors) {
        if (coin(rng) < 0.5) s.colors.push_back(c);
      }
    }
    raw.states.push_back(std::move(s));
  }
  if (shape.deterministic) {
    raw.initial = {names[0]};
  } else {
    for (const auto& n : names) {
      if (coin(rng) < 0.3) raw.initial.push_back(n);
    }
    if (raw.initial.empty()) raw.initial.push_back(names[rng() % names.size()]);
  }
  std::uniform_int_distribution<std::size_t> pick(0, shape.states - 1);
  for (std::size_t v = 0; v < shape.states; ++v) {
    for (std::size_t y = 0; y < shape.symbols; ++y) {
      if (shape.deterministic) {
        if (coin(rng) < shape.edge_density * 2) {
          raw.transitions.push_back({names[v], names[pick(rng)], {raw.observations[y]}});
        }
        continue;
      }
      for (std::size_t w = 0; w < shape.states; ++w) {
        if (coin(rng) < shape.edge_density) {
          raw.transitions.push_back({names[v], names[w], {raw.observations[y]}});
        }
      }
    }
  }
  return validate(raw);
}

Nfa random_nfa(Rng& rng, std::size_t states, std::size_t symbols, double density) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  RawNfa raw;
  raw.observations = letters(symbols);
  const auto names = numbered("q", states);
  for (const auto& n : names) raw.states.push_back({n, coin(rng) < 0.5});
  for (const auto& n : names) {
    if (coin(rng) < 0.3) raw.initial.push_back(n);
  }
  if (raw.initial.empty()) raw.initial.push_back(names[rng() % names.size()]);
  for (std::size_t v = 0; v < states; ++v) {
    for (std::size_t y = 0; y < symbols; ++y) {
      for (std::size_t w = 0; w < states; ++w) {
        if (coin(rng) < density) {
          raw.transitions.push_back({names[v], names[w], {raw.observations[y]}});
        }
      }
    }
  }
  return validate_nfa(raw);
}

Nfa random_dfa(Rng& rng, std::size_t states, std::size_t symbols, double density) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, states - 1);
  RawNfa raw;
  raw.observations = letters(symbols);
  const auto names = numbered("q", states);
  for (const auto& n : names) raw.states.push_back({n, coin(rng) < 0.4});
  raw.initial = {names[0]};
  for (std::size_t v = 0; v < states; ++v) {
    for (std::size_t y = 0; y < symbols; ++y) {
      if (coin(rng) < density) {
        raw.transitions.push_back({names[v], names[pick(rng)], {raw.observations[y]}});
      }
    }
  }
  return validate_nfa(raw);
}

Word random_word(Rng& rng, std::size_t symbols, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(symbols - 1));
  Word w(len(rng));
  for (auto& y : w) y = sym(rng);
  return w;
}

std::vector<Word> all_words(std::size_t symbols, std::size_t max_len) {
  std::vector<Word> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Symbol y = 0; y < symbols; ++y) {
        Word w = out[i];
        w.push_back(y);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

std::vector<bool> brute_reached(const Filter& f, const Word& word) {
  std::vector<bool> at(f.num_states(), false);
  for (StateId v = 0; v < f.num_states(); ++v) at[v] = f.initial().test(v);
  for (Symbol y : word) {
    std::vector<bool> next(f.num_states(), false);
    for (const Edge& e : f.edges()) {
      if (at[e.from] && std::find(e.symbols.begin(), e.symbols.end(), y) != e.symbols.end()) {
        next[e.to] = true;
      }
    }
    at = std::move(next);
  }
  return at;
}

std::optional<std::set<std::string>> brute_output(const Filter& f, const Word& word) {
  const auto at = brute_reached(f, word);
  std::set<std::string> out;
  bool any = false;
  for (StateId v = 0; v < f.num_states(); ++v) {
    if (!at[v]) continue;
    any = true;
    for (Color c = 0; c < f.num_colors(); ++c) {
      if (f.colors_of(v).test(c)) out.insert(f.color_name(c));
    }
  }
  if (!any) return std::nullopt;
  return out;
}

bool brute_accepts(const Nfa& n, const Word& word) {
  std::vector<bool> at(n.num_states(), false);
  for (StateId q = 0; q < n.num_states(); ++q) at[q] = n.initial().test(q);
  const auto moves = n.transitions();
  for (Symbol y : word) {
    std::vector<bool> next(n.num_states(), false);
    for (const NfaTransition& t : moves) {
      if (t.symbol == y && at[t.from]) next[t.to] = true;
    }
    at = std::move(next);
  }
  for (StateId q = 0; q < n.num_states(); ++q) {
    if (at[q] && n.accepting().test(q)) return true;
  }
  return false;
}

std::vector<std::string> names_of(const Filter& from, const Word& word) {
  std::vector<std::string> out;
  for (Symbol y : word) out.push_back(from.symbol_name(y));
  return out;
}

BruteVerdict brute_simulates(const Filter& fp, const Filter& f) {
  const auto alphabet = f.observations();
  const auto colors = merged(f.color_names(), fp.color_names());
  const MaskTable a = masks_of(f, alphabet, colors);
  const MaskTable b = masks_of(fp, alphabet, colors);
  const PairSearch s = search_pairs(a, b, false);
  BruteVerdict v;
  auto spell = [&](const std::vector<std::size_t>& w) {
    std::vector<std::string> out;
    for (std::size_t y : w) out.push_back(alphabet[y]);
    return out;
  };
  if (s.gap) v.language_gap = spell(*s.gap);
  if (s.violation) v.output_violation = spell(*s.violation);
  v.holds = !s.gap && !s.violation;
  return v;
}

bool enumerate_simulates(const Filter& fp, const Filter& f, std::size_t max_len) {
  for (const Word& w : all_words(f.num_symbols(), max_len)) {
    const auto out = brute_output(f, w);
    if (!out) continue;
    Word wp;
    bool known = true;
    for (Symbol y : w) {
      const auto z = fp.find_symbol(f.symbol_name(y));
      if (!z) {
        known = false;
        break;
      }
      wp.push_back(*z);
    }
    if (!known) return false;
    const auto outp = brute_output(fp, wp);
    if (!outp) return false;
    for (const auto& c : *outp) {
      if (!out->count(c)) return false;
    }
  }
  return true;
}

bool enumerate_universal(const Nfa& n, std::size_t max_len) {
  // Words are extended one symbol at a time; a word whose reached set was
  // already produced by a word no longer than it is not extended again.
  const auto moves = n.transitions();
  std::set<std::vector<bool>> seen;
  std::vector<std::vector<bool>> layer;
  std::vector<bool> start(n.num_states(), false);
  for (StateId q = 0; q < n.num_states(); ++q) start[q] = n.initial().test(q);
  layer.push_back(start);
  seen.insert(start);
  for (std::size_t len = 0; len <= max_len && !layer.empty(); ++len) {
    std::vector<std::vector<bool>> next_layer;
    for (const auto& at : layer) {
      bool accepted = false;
      for (StateId q = 0; q < n.num_states(); ++q) {
        accepted = accepted || (at[q] && n.accepting().test(q));
      }
      if (!accepted) return false;
      for (Symbol y = 0; y < n.num_symbols(); ++y) {
        std::vector<bool> next(n.num_states(), false);
        for (const NfaTransition& t : moves) {
          if (t.symbol == y && at[t.from]) next[t.to] = true;
        }
        if (seen.insert(next).second) next_layer.push_back(std::move(next));
      }
    }
    layer = std::move(next_layer);
  }
  return true;
}

std::size_t brute_min_states(const Filter& f, std::size_t limit) {
  const auto alphabet = f.observations();
  const auto colors = f.color_names();
  const MaskTable input = masks_of(f, alphabet, colors);
  const std::size_t nsym = alphabet.size();
  const std::uint64_t color_sets = std::uint64_t{1} << colors.size();

  for (std::size_t k = 1; k <= limit; ++k) {
    const std::uint64_t subsets = std::uint64_t{1} << k;
    const std::size_t slots = k * nsym;
    MaskTable cand;
    cand.symbols = nsym;
    cand.next.assign(slots, 0);
    cand.colors.assign(k, 1);
    // Odometer over colorings, then successor sets, then initial sets.
    std::vector<std::uint64_t> coloring(k, 1);
    while (true) {
      for (std::size_t m = 0; m < k; ++m) cand.colors[m] = coloring[m];
      std::fill(cand.next.begin(), cand.next.end(), 0);
      while (true) {
        for (std::uint64_t init = 1; init < subsets; ++init) {
          cand.initial = init;
          const PairSearch s = search_pairs(input, cand, true);
          if (!s.gap && !s.violation) return k;
        }
        std::size_t i = 0;
        while (i < slots && ++cand.next[i] == subsets) cand.next[i++] = 0;
        if (i == slots) break;
      }
      std::size_t j = 0;
      while (j < k && ++coloring[j] == color_sets) coloring[j++] = 1;
      if (j == k) break;
    }
  }
  return limit + 1;
}

}  // namespace pfilter::testing
