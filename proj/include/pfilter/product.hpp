#pragma once

#include <pfilter/execution.hpp>
#include <pfilter/filter.hpp>
#include <pfilter/nfa.hpp>

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pfilter {

/// Second coordinate of a product vertex whose second filter has crashed.
inline constexpr StateId kEmptyVertex = std::numeric_limits<StateId>::max();

struct ProductVertex {
  StateId first = 0;
  StateId second = 0;  // kEmptyVertex for the placeholder

  bool is_empty() const noexcept { return second == kEmptyVertex; }
  bool operator==(const ProductVertex&) const = default;
};

/// Synchronized product F1 ⊗ F2 over the alphabet of F1, restricted to
/// vertices reachable from V0(F1) × V0(F2). A vertex (v, ⊖) records that
/// the tracked path of F2 has no move for the last symbol.
class ProductGraph {
 public:
  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_symbols() const noexcept { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }

  std::span<const ProductVertex> vertices() const { return vertices_; }
  const ProductVertex& vertex(std::size_t i) const { return vertices_.at(i); }
  const StateSet& initial() const { return initial_; }
  std::span<const StateId> successors(StateId i, Symbol y) const {
    return succ_[i * alphabet_.size() + y];
  }

  std::optional<StateId> find(ProductVertex v) const;
  bool has_empty_vertex() const;

  /// The graph as an automaton accepting at `accepting`.
  Nfa to_nfa(const StateSet& accepting) const;
  /// Copy with every (v, ⊖) vertex removed.
  ProductGraph without_empty_vertices() const;

 private:
  friend ProductGraph tensor_product(const Filter& f1, const Filter& f2);

  std::vector<std::string> alphabet_;
  std::vector<std::string> names_;
  std::vector<ProductVertex> vertices_;
  StateSet initial_;
  std::vector<std::vector<StateId>> succ_;
};

ProductGraph tensor_product(const Filter& f1, const Filter& f2);

enum class FailureKind { LanguageGap, OutputViolation };

std::string_view to_string(FailureKind kind) noexcept;

/// Result of an output-simulation check. On failure `witness` is a shortest
/// word exhibiting the failure of that kind; `color` names the offending
/// output of an OutputViolation.
struct SimulationVerdict {
  bool holds = true;
  std::optional<FailureKind> failure;
  std::optional<std::vector<std::string>> witness;
  std::optional<std::string> color;

  explicit operator bool() const noexcept { return holds; }

  static SimulationVerdict pass() { return {}; }
};

/// L(f) ⊆ L(fp): looks for (v, ⊖) vertices in f ⊗ fp and, if any exist,
/// compares the automaton accepting at them with its intersection with fp.
SimulationVerdict check_language_inclusion(const Filter& f, const Filter& fp,
                                           std::size_t cap = kDefaultStateCap);

/// For every product vertex (v, w) and every color o of w missing from v,
/// checks that the words reaching (v, w) all reach an o-colored state of f.
/// Assumes language inclusion holds. The independent checks run in
/// parallel under Execution::Parallel; the reported failure is the one
/// with the shortest witness, ties broken by vertex then color order.
SimulationVerdict check_output_consistency(
    const Filter& f, const Filter& fp,
    Execution execution = Execution::Parallel,
    std::size_t cap = kDefaultStateCap);

/// Does `fp` output-simulate `f`? Both filters are trimmed first; a
/// language gap is reported before any output violation.
SimulationVerdict output_simulates(const Filter& fp, const Filter& f,
                                   Execution execution = Execution::Parallel,
                                   std::size_t cap = kDefaultStateCap);

}  // namespace pfilter
