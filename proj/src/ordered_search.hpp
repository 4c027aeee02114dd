#pragma once

#include "parallel.hpp"

#include <pfilter/execution.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace pfilter::detail {

/// Shared node counter and deadline for one search.
class SearchControl {
 public:
  using Clock = std::chrono::steady_clock;

  SearchControl(std::uint64_t node_cap, Clock::time_point deadline)
      : node_cap_(node_cap), deadline_(deadline) {}

  /// Accounts for one expanded node; false once the budget is spent.
  bool tick() {
    const std::uint64_t n = count_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (n > node_cap_) {
      exhausted_.store(true, std::memory_order_relaxed);
    } else if ((n & 0xff) == 0 && Clock::now() > deadline_) {
      exhausted_.store(true, std::memory_order_relaxed);
    }
    return !exhausted_.load(std::memory_order_relaxed);
  }

  bool exhausted() const { return exhausted_.load(std::memory_order_relaxed); }
  std::uint64_t count() const { return count_.load(std::memory_order_relaxed); }

 private:
  std::uint64_t node_cap_;
  Clock::time_point deadline_;
  std::atomic<std::uint64_t> count_{0};
  std::atomic<bool> exhausted_{false};
};

// A Problem provides
//   using Node = ...;
//   bool is_solution(const Node&) const;
//   void children(const Node&, std::vector<Node>& out) const;
// where children are appended in canonical order. The search returns the
// first solution in depth-first preorder.

template <typename Problem>
std::optional<typename Problem::Node> depth_first(
    const Problem& problem, typename Problem::Node root, SearchControl& control,
    const std::atomic<std::size_t>* winner = nullptr, std::size_t slot = 0) {
  using Node = typename Problem::Node;
  std::vector<Node> stack;
  std::vector<Node> kids;
  stack.push_back(std::move(root));
  while (!stack.empty()) {
    if (winner && winner->load(std::memory_order_relaxed) < slot) {
      return std::nullopt;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    if (problem.is_solution(node)) return node;
    if (!control.tick()) return std::nullopt;
    kids.clear();
    problem.children(node, kids);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      stack.push_back(std::move(*it));
    }
  }
  return std::nullopt;
}

/// Searches the forest rooted at `roots` (in order). The parallel variant
/// splits the forest into a frontier of subtrees, explores them on OpenMP
/// threads and keeps the solution of the lowest-indexed subtree, so the
/// answer matches the serial one whenever the budget is not hit.
template <typename Problem>
std::optional<typename Problem::Node> ordered_search(
    const Problem& problem, std::vector<typename Problem::Node> roots,
    SearchControl& control, Execution execution, int threads = 0) {
  using Node = typename Problem::Node;
  if (execution == Execution::Serial) {
    for (Node& root : roots) {
      if (auto found = depth_first(problem, std::move(root), control)) {
        return found;
      }
      if (control.exhausted()) return std::nullopt;
    }
    return std::nullopt;
  }

  const int team = threads > 0 ? threads : omp_get_max_threads();
  const std::size_t target = 16 * static_cast<std::size_t>(team);
  std::vector<Node> frontier = std::move(roots);
  std::vector<Node> kids;
  while (frontier.size() < target) {
    std::vector<Node> next;
    bool grew = false;
    for (Node& node : frontier) {
      if (problem.is_solution(node) || next.size() >= 4 * target) {
        next.push_back(std::move(node));
        continue;
      }
      if (!control.tick()) return std::nullopt;
      kids.clear();
      problem.children(node, kids);
      for (Node& k : kids) next.push_back(std::move(k));
      grew = true;
    }
    frontier = std::move(next);
    if (!grew) break;
  }
  if (frontier.empty()) return std::nullopt;

  std::atomic<std::size_t> winner{frontier.size()};
  std::vector<std::optional<Node>> found(frontier.size());
  parallel_for(
      frontier.size(), Execution::Parallel,
      [&](std::size_t i) {
        if (winner.load(std::memory_order_relaxed) < i) return;
        auto hit = depth_first(problem, std::move(frontier[i]), control,
                               &winner, i);
        if (!hit) return;
        found[i] = std::move(hit);
        std::size_t current = winner.load();
        while (i < current && !winner.compare_exchange_weak(current, i)) {
        }
      },
      team);
  const std::size_t best = winner.load();
  if (best < found.size()) return std::move(found[best]);
  return std::nullopt;
}

}  // namespace pfilter::detail
