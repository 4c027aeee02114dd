#include <pfilter/minimize.hpp>

#include <algorithm>
#include <numeric>

namespace pfilter {

std::vector<std::pair<StateId, StateId>> CompatibilityGraph::edges() const {
  std::vector<std::pair<StateId, StateId>> out;
  for (StateId u = 0; u < size(); ++u) {
    for (StateId v = u + 1; v < size(); ++v) {
      if (compatible(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

CompatibilityGraph compatibility_graph(const Filter& d) {
  if (!is_deterministic(d)) {
    throw Error(ErrorKind::NotDeterministic,
                "compatibility is defined for deterministic filters");
  }
  const std::size_t n = d.num_states();
  const std::size_t nsym = d.num_symbols();

  // pre[y * n + w] lists the states moving to w under y.
  std::vector<std::vector<StateId>> pre(nsym * n);
  for (StateId u = 0; u < n; ++u) {
    for (Symbol y = 0; y < nsym; ++y) {
      for (StateId w : d.successors(u, y)) pre[y * n + w].push_back(u);
    }
  }

  std::vector<BitSet> bad(n, BitSet(n));
  std::vector<std::pair<StateId, StateId>> work;
  auto mark = [&](StateId u, StateId v) {
    if (bad[u].test(v)) return;
    bad[u].set(v);
    bad[v].set(u);
    work.emplace_back(u, v);
  };
  for (StateId u = 0; u < n; ++u) {
    for (StateId v = u + 1; v < n; ++v) {
      if (!d.colors_of(u).intersects(d.colors_of(v))) mark(u, v);
    }
  }
  while (!work.empty()) {
    const auto [u2, v2] = work.back();
    work.pop_back();
    for (Symbol y = 0; y < nsym; ++y) {
      for (StateId u : pre[y * n + u2]) {
        for (StateId v : pre[y * n + v2]) {
          if (u != v) mark(u, v);
        }
      }
    }
  }
  return CompatibilityGraph(std::move(bad));
}

namespace {

// Branch and bound for a maximum clique with greedy-coloring bounds.
class CliqueSearch {
 public:
  CliqueSearch(const CompatibilityGraph& g, std::uint64_t node_cap)
      : g_(g), node_cap_(node_cap) {}

  std::vector<StateId> run() {
    const std::size_t n = g_.size();
    std::vector<StateId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](StateId a, StateId b) {
      return g_.incompatible_with(a).count() > g_.incompatible_with(b).count();
    });
    // Greedy seed so an early stop still yields a decent bound.
    for (StateId v : order) {
      bool ok = std::all_of(best_.begin(), best_.end(), [&](StateId u) {
        return g_.incompatible_with(u).test(v);
      });
      if (ok) best_.push_back(v);
    }
    std::vector<StateId> current;
    expand(current, order);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  void expand(std::vector<StateId>& current, std::vector<StateId> candidates) {
    if (++nodes_ > node_cap_) return;
    // Color candidates greedily; color classes bound the clique size.
    std::vector<StateId> ordered;
    std::vector<std::size_t> bound;
    std::vector<std::vector<StateId>> classes;
    for (StateId v : candidates) {
      std::size_t c = 0;
      for (; c < classes.size(); ++c) {
        bool clash = std::any_of(classes[c].begin(), classes[c].end(),
                                 [&](StateId u) {
                                   return g_.incompatible_with(u).test(v);
                                 });
        if (!clash) break;
      }
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(v);
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (StateId v : classes[c]) {
        ordered.push_back(v);
        bound.push_back(c + 1);
      }
    }
    for (std::size_t i = ordered.size(); i-- > 0;) {
      if (current.size() + bound[i] <= best_.size()) return;
      const StateId v = ordered[i];
      current.push_back(v);
      std::vector<StateId> next;
      for (std::size_t j = 0; j < i; ++j) {
        if (g_.incompatible_with(v).test(ordered[j])) next.push_back(ordered[j]);
      }
      if (next.empty()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, std::move(next));
      }
      current.pop_back();
      if (nodes_ > node_cap_) return;
    }
  }

  const CompatibilityGraph& g_;
  std::uint64_t node_cap_;
  std::uint64_t nodes_ = 0;
  std::vector<StateId> best_;
};

}  // namespace

std::vector<StateId> pairwise_incompatible_states(const CompatibilityGraph& g,
                                                  std::uint64_t node_cap) {
  if (g.size() == 0) return {};
  return CliqueSearch(g, node_cap).run();
}

}  // namespace pfilter
