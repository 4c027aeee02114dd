#include <pfilter/minimize.hpp>
#include <pfilter/product.hpp>

#include "ordered_search.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace pfilter {

std::string_view to_string(Decision d) noexcept {
  switch (d) {
    case Decision::Yes: return "Yes";
    case Decision::No: return "No";
    case Decision::BudgetExhausted: return "BudgetExhausted";
  }
  return "Unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

// Transition table of a deterministic filter; -1 marks a missing move.
std::vector<std::int32_t> move_table(const Filter& d) {
  std::vector<std::int32_t> next(d.num_states() * d.num_symbols(), -1);
  for (StateId v = 0; v < d.num_states(); ++v) {
    for (Symbol y = 0; y < d.num_symbols(); ++y) {
      const auto succ = d.successors(v, y);
      if (!succ.empty()) next[v * d.num_symbols() + y] = succ.front();
    }
  }
  return next;
}

RawFilter skeleton(const Filter& like) {
  RawFilter raw;
  raw.observations = like.observations();
  raw.colors = like.color_names();
  return raw;
}

std::vector<std::string> color_list(const Filter& f, const ColorSet& cs) {
  std::vector<std::string> out;
  for_each_bit(cs, [&](std::size_t c) {
    out.push_back(f.color_name(static_cast<Color>(c)));
  });
  return out;
}

// Deterministic candidates. A node fixes part of the candidate's move table
// together with the relation "input state d is reached by a word that also
// reaches candidate state m". The next open decision is the first (m, y)
// whose move is unset although some related input state moves on y.
class DeterministicSearch {
 public:
  struct Node {
    std::uint32_t used = 0;
    std::vector<std::int32_t> moves;  // k * |Y|
    std::vector<BitSet> related;      // per candidate state
    std::vector<ColorSet> allowed;    // colors every related state carries
    std::int32_t open_state = -1;
    Symbol open_symbol = 0;
  };

  DeterministicSearch(const Filter& d, std::size_t k,
                      const CompatibilityGraph& compat)
      : d_(d), k_(k), nsym_(d.num_symbols()), next_(move_table(d)),
        compat_(compat) {
    on_symbol_.assign(nsym_, BitSet(d.num_states()));
    for (StateId v = 0; v < d.num_states(); ++v) {
      for (Symbol y = 0; y < nsym_; ++y) {
        if (next_[v * nsym_ + y] >= 0) on_symbol_[y].set(v);
      }
    }
  }

  std::optional<Node> root() const {
    Node n;
    n.used = 1;
    n.moves.assign(k_ * nsym_, -1);
    n.related.assign(k_, BitSet(d_.num_states()));
    ColorSet all(d_.num_colors());
    all.set();
    n.allowed.assign(k_, all);
    const auto start = static_cast<StateId>(d_.initial().find_first());
    if (!relate(n, start, 0)) return std::nullopt;
    find_open(n);
    return n;
  }

  bool is_solution(const Node& n) const { return n.open_state < 0; }

  void children(const Node& n, std::vector<Node>& out) const {
    const auto m = static_cast<std::uint32_t>(n.open_state);
    const Symbol y = n.open_symbol;
    const BitSet sources = n.related[m] & on_symbol_[y];
    const std::uint32_t limit =
        std::min<std::uint32_t>(n.used + 1, static_cast<std::uint32_t>(k_));
    for (std::uint32_t t = 0; t < limit; ++t) {
      Node child = n;
      if (t == child.used) ++child.used;
      child.moves[m * nsym_ + y] = static_cast<std::int32_t>(t);
      bool ok = true;
      for (auto v = sources.find_first(); ok && v != BitSet::npos;
           v = sources.find_next(v)) {
        ok = relate(child, static_cast<StateId>(next_[v * nsym_ + y]), t);
      }
      if (!ok) continue;
      find_open(child);
      out.push_back(std::move(child));
    }
  }

  Filter to_filter(const Node& n) const {
    RawFilter raw = skeleton(d_);
    for (std::uint32_t m = 0; m < n.used; ++m) {
      raw.states.push_back({"m" + std::to_string(m), color_list(d_, n.allowed[m])});
    }
    raw.initial = {"m0"};
    for (std::uint32_t m = 0; m < n.used; ++m) {
      for (Symbol y = 0; y < nsym_; ++y) {
        const std::int32_t t = n.moves[m * nsym_ + y];
        if (t >= 0) {
          raw.transitions.push_back({"m" + std::to_string(m),
                                     "m" + std::to_string(t),
                                     {d_.symbol_name(y)}});
        }
      }
    }
    return validate(raw);
  }

 private:
  // Adds (v, m) and everything it forces through already fixed moves.
  bool relate(Node& n, StateId v, std::uint32_t m) const {
    std::vector<std::pair<StateId, std::uint32_t>> work{{v, m}};
    while (!work.empty()) {
      const auto [s, c] = work.back();
      work.pop_back();
      if (n.related[c].test(s)) continue;
      if (compat_.incompatible_with(s).intersects(n.related[c])) return false;
      n.allowed[c] &= d_.colors_of(s);
      if (n.allowed[c].none()) return false;
      n.related[c].set(s);
      for (Symbol y = 0; y < nsym_; ++y) {
        const std::int32_t s2 = next_[s * nsym_ + y];
        const std::int32_t c2 = n.moves[c * nsym_ + y];
        if (s2 >= 0 && c2 >= 0) {
          work.emplace_back(static_cast<StateId>(s2),
                            static_cast<std::uint32_t>(c2));
        }
      }
    }
    return true;
  }

  void find_open(Node& n) const {
    for (std::uint32_t m = 0; m < n.used; ++m) {
      for (Symbol y = 0; y < nsym_; ++y) {
        if (n.moves[m * nsym_ + y] < 0 && n.related[m].intersects(on_symbol_[y])) {
          n.open_state = static_cast<std::int32_t>(m);
          n.open_symbol = y;
          return;
        }
      }
    }
    n.open_state = -1;
  }

  const Filter& d_;
  std::size_t k_;
  std::size_t nsym_;
  std::vector<std::int32_t> next_;
  std::vector<BitSet> on_symbol_;
  const CompatibilityGraph& compat_;
};

// Candidates with arbitrary nondeterminism. The search walks the subset
// product of the input with the candidate: each pair couples the set of
// input states reached by some word (a state of the input's power set
// construction) with the set of candidate states reached by the same word.
// A pair is expanded symbol by symbol; expanding on y requires the
// y-successor set of every candidate state in the pair, and the first such
// unset successor set is the next decision. Candidate states never touched
// so far are interchangeable, so a decision only ever adds a prefix of them.
class NondeterministicSearch {
 public:
  static constexpr std::size_t kMaxStates = 32;

  struct Node {
    std::uint32_t touched = 0;
    std::uint32_t initial = 0;
    std::vector<std::uint32_t> succ;     // k * |Y| masks
    std::vector<std::uint8_t> decided;   // k * |Y|
    std::vector<ColorSet> allowed;
    std::vector<std::uint64_t> pairs;    // (input subset << 32) | mask
    std::vector<std::uint64_t> seen;     // sorted copy of pairs
    std::size_t cursor = 0;
    Symbol cursor_symbol = 0;
    std::int32_t open_state = -1;
    Symbol open_symbol = 0;
  };

  NondeterministicSearch(const Filter& power, std::size_t k)
      : power_(power), k_(k), nsym_(power.num_symbols()),
        next_(move_table(power)) {}

  std::vector<Node> roots() const {
    std::vector<Node> out;
    ColorSet all(power_.num_colors());
    all.set();
    for (std::uint32_t i = 1; i <= k_; ++i) {
      Node n;
      n.touched = i;
      n.initial = low_bits(i);
      n.succ.assign(k_ * nsym_, 0);
      n.decided.assign(k_ * nsym_, 0);
      n.allowed.assign(k_, all);
      if (!add_pair(n, 0, n.initial) || !advance(n)) continue;
      out.push_back(std::move(n));
    }
    return out;
  }

  bool is_solution(const Node& n) const { return n.open_state < 0; }

  void children(const Node& n, std::vector<Node>& out) const {
    const auto m = static_cast<std::uint32_t>(n.open_state);
    const Symbol y = n.open_symbol;
    const std::uint32_t fresh_max = static_cast<std::uint32_t>(k_) - n.touched;
    for (std::uint32_t j = 0; j <= fresh_max; ++j) {
      const std::uint32_t fresh = low_bits(j) << n.touched;
      for (std::uint32_t old = 0; old <= low_bits(n.touched); ++old) {
        Node child = n;
        child.succ[m * nsym_ + y] = old | fresh;
        child.decided[m * nsym_ + y] = 1;
        child.touched += j;
        if (advance(child)) out.push_back(std::move(child));
      }
    }
  }

  Filter to_filter(const Node& n) const {
    RawFilter raw = skeleton(power_);
    auto name = [](std::uint32_t m) { return "n" + std::to_string(m); };
    for (std::uint32_t m = 0; m < n.touched; ++m) {
      raw.states.push_back({name(m), color_list(power_, n.allowed[m])});
      if (n.initial >> m & 1U) raw.initial.push_back(name(m));
    }
    for (std::uint32_t m = 0; m < n.touched; ++m) {
      for (Symbol y = 0; y < nsym_; ++y) {
        const std::uint32_t mask = n.succ[m * nsym_ + y];
        for (std::uint32_t t = 0; t < n.touched; ++t) {
          if (mask >> t & 1U) {
            raw.transitions.push_back({name(m), name(t), {power_.symbol_name(y)}});
          }
        }
      }
    }
    return validate(raw);
  }

 private:
  static std::uint32_t low_bits(std::uint32_t count) {
    return count >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << count) - 1;
  }

  bool add_pair(Node& n, std::uint32_t subset, std::uint32_t mask) const {
    const std::uint64_t key = (std::uint64_t{subset} << 32) | mask;
    auto it = std::lower_bound(n.seen.begin(), n.seen.end(), key);
    if (it != n.seen.end() && *it == key) return true;
    n.seen.insert(it, key);
    n.pairs.push_back(key);
    const ColorSet& out = power_.colors_of(subset);
    for (std::uint32_t m = 0; m < k_; ++m) {
      if (mask >> m & 1U) {
        n.allowed[m] &= out;
        if (n.allowed[m].none()) return false;
      }
    }
    return true;
  }

  // Expands pairs until a successor set is needed that is not decided yet.
  // False if some word is dropped or gets an illegal color.
  bool advance(Node& n) const {
    while (n.cursor < n.pairs.size()) {
      const std::uint64_t key = n.pairs[n.cursor];
      const auto subset = static_cast<std::uint32_t>(key >> 32);
      const auto mask = static_cast<std::uint32_t>(key);
      for (; n.cursor_symbol < nsym_; ++n.cursor_symbol) {
        const Symbol y = n.cursor_symbol;
        const std::int32_t next = next_[subset * nsym_ + y];
        if (next < 0) continue;
        std::uint32_t target = 0;
        for (std::uint32_t m = 0; m < k_; ++m) {
          if (!(mask >> m & 1U)) continue;
          if (!n.decided[m * nsym_ + y]) {
            n.open_state = static_cast<std::int32_t>(m);
            n.open_symbol = y;
            return true;
          }
          target |= n.succ[m * nsym_ + y];
        }
        if (target == 0) return false;
        if (!add_pair(n, static_cast<std::uint32_t>(next), target)) return false;
      }
      ++n.cursor;
      n.cursor_symbol = 0;
    }
    n.open_state = -1;
    return true;
  }

  const Filter& power_;
  std::size_t k_;
  std::size_t nsym_;
  std::vector<std::int32_t> next_;
};

struct Deadline {
  Clock::time_point start = Clock::now();
  Clock::time_point end;
  std::uint64_t spent = 0;
};

detail::SearchControl make_control(const SearchBudget& budget,
                                   const Deadline& deadline) {
  const std::uint64_t left =
      budget.candidate_cap > deadline.spent ? budget.candidate_cap - deadline.spent : 0;
  return detail::SearchControl(left, deadline.end);
}

void verify_or_throw(const Filter& witness, const Filter& input) {
  const SimulationVerdict v = output_simulates(witness, input);
  if (!v.holds) {
    throw std::logic_error("search produced a filter that does not simulate its input");
  }
}

SizeDecision decide_nondet(const Filter& trimmed, const Filter& power,
                           std::size_t k, const SearchBudget& budget,
                           Deadline& deadline) {
  const auto t0 = Clock::now();
  SizeDecision out;
  if (k > NondeterministicSearch::kMaxStates) {
    throw Error(ErrorKind::InvalidArgument,
                "nondeterministic search supports at most 32 states");
  }
  NondeterministicSearch problem(power, k);
  detail::SearchControl control = make_control(budget, deadline);
  auto found = detail::ordered_search(problem, problem.roots(), control,
                                      budget.execution, budget.jobs);
  out.stats.candidates = control.count();
  deadline.spent += control.count();
  if (found) {
    out.answer = Decision::Yes;
    out.witness = problem.to_filter(*found);
    verify_or_throw(*out.witness, trimmed);
  } else {
    out.answer = control.exhausted() ? Decision::BudgetExhausted : Decision::No;
  }
  out.stats.wall = Clock::now() - t0;
  return out;
}

SizeDecision decide_det(const Filter& original, const Filter& power,
                        const CompatibilityGraph& compat, std::size_t k,
                        const SearchBudget& budget, Deadline& deadline) {
  const auto t0 = Clock::now();
  SizeDecision out;
  DeterministicSearch problem(power, k, compat);
  detail::SearchControl control = make_control(budget, deadline);
  std::optional<DeterministicSearch::Node> found;
  if (auto root = problem.root()) {
    std::vector<DeterministicSearch::Node> roots;
    roots.push_back(std::move(*root));
    found = detail::ordered_search(problem, std::move(roots), control,
                                   budget.execution, budget.jobs);
  }
  out.stats.candidates = control.count();
  deadline.spent += control.count();
  if (found) {
    out.answer = Decision::Yes;
    out.witness = problem.to_filter(*found);
    verify_or_throw(*out.witness, original);
  } else {
    out.answer = control.exhausted() ? Decision::BudgetExhausted : Decision::No;
  }
  out.stats.wall = Clock::now() - t0;
  return out;
}

Deadline start_clock(const SearchBudget& budget) {
  Deadline d;
  d.end = d.start + budget.time_cap;
  return d;
}

}  // namespace

SizeDecision decide_size_k(const Filter& f, std::size_t k,
                           const SearchBudget& budget) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be positive");
  const Filter trimmed = trim(f);
  if (k >= trimmed.num_states()) {
    return SizeDecision{Decision::Yes, trimmed, {}};
  }
  const Filter power = determinize(trimmed, budget.determinize_cap).filter;
  Deadline deadline = start_clock(budget);
  return decide_nondet(trimmed, power, k, budget, deadline);
}

SizeDecision decide_det_size_k(const Filter& f, std::size_t k,
                               const SearchBudget& budget) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be positive");
  const Filter trimmed = trim(f);
  const Filter power = determinize(trimmed, budget.determinize_cap).filter;
  if (k >= power.num_states()) {
    return SizeDecision{Decision::Yes, power, {}};
  }
  const CompatibilityGraph compat = compatibility_graph(power);
  Deadline deadline = start_clock(budget);
  return decide_det(trimmed, power, compat, k, budget, deadline);
}

MinimizationResult minimize_nondet(const Filter& f, const SearchBudget& budget) {
  const Filter trimmed = trim(f);
  const std::size_t n = trimmed.num_states();
  Deadline deadline = start_clock(budget);
  MinimizationResult result{trimmed, true, n, {}};
  if (n <= 1) {
    result.stats.wall = Clock::now() - deadline.start;
    return result;
  }
  const Filter power = determinize(trimmed, budget.determinize_cap).filter;
  std::size_t limit = n - 1;
  if (budget.max_states > 0) limit = std::min(limit, budget.max_states);
  limit = std::min(limit, NondeterministicSearch::kMaxStates);

  for (std::size_t k = 1; k <= limit; ++k) {
    SizeDecision d = decide_nondet(trimmed, power, k, budget, deadline);
    result.stats.candidates += d.stats.candidates;
    if (d.answer == Decision::Yes) {
      result.minimizer = std::move(*d.witness);
      result.proven_optimal = true;
      result.lower_bound = k;
      result.stats.wall = Clock::now() - deadline.start;
      return result;
    }
    if (d.answer == Decision::BudgetExhausted) {
      result.proven_optimal = false;
      result.lower_bound = k;
      result.stats.wall = Clock::now() - deadline.start;
      return result;
    }
  }
  result.proven_optimal = limit == n - 1;
  result.lower_bound = limit + 1;
  result.stats.wall = Clock::now() - deadline.start;
  return result;
}

MinimizationResult minimize_det(const Filter& f, const SearchBudget& budget) {
  const Filter trimmed = trim(f);
  Deadline deadline = start_clock(budget);
  const Filter power = determinize(trimmed, budget.determinize_cap).filter;
  const std::size_t n = power.num_states();
  MinimizationResult result{power, true, n, {}};
  if (n <= 1) {
    result.lower_bound = n;
    result.stats.wall = Clock::now() - deadline.start;
    return result;
  }
  const CompatibilityGraph compat = compatibility_graph(power);
  const std::size_t lower = pairwise_incompatible_states(compat).size();
  std::size_t limit = n - 1;
  if (budget.max_states > 0) limit = std::min(limit, budget.max_states);

  result.lower_bound = lower;
  for (std::size_t k = lower; k <= limit; ++k) {
    SizeDecision d = decide_det(trimmed, power, compat, k, budget, deadline);
    result.stats.candidates += d.stats.candidates;
    if (d.answer == Decision::Yes) {
      result.minimizer = std::move(*d.witness);
      result.proven_optimal = true;
      result.lower_bound = k;
      result.stats.wall = Clock::now() - deadline.start;
      return result;
    }
    if (d.answer == Decision::BudgetExhausted) {
      result.proven_optimal = false;
      result.lower_bound = k;
      result.stats.wall = Clock::now() - deadline.start;
      return result;
    }
    result.lower_bound = k + 1;
  }
  result.proven_optimal = result.lower_bound >= n;
  result.stats.wall = Clock::now() - deadline.start;
  return result;
}

}  // namespace pfilter
