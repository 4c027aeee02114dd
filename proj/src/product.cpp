#include <pfilter/product.hpp>

#include "parallel.hpp"

#include <unordered_map>

namespace pfilter {

std::string_view to_string(FailureKind kind) noexcept {
  switch (kind) {
    case FailureKind::LanguageGap: return "LanguageGap";
    case FailureKind::OutputViolation: return "OutputViolation";
  }
  return "Unknown";
}

std::optional<StateId> ProductGraph::find(ProductVertex v) const {
  for (StateId i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] == v) return i;
  }
  return std::nullopt;
}

bool ProductGraph::has_empty_vertex() const {
  for (const auto& v : vertices_) {
    if (v.is_empty()) return true;
  }
  return false;
}

Nfa ProductGraph::to_nfa(const StateSet& accepting) const {
  std::vector<NfaTransition> moves;
  for (StateId i = 0; i < num_vertices(); ++i) {
    for (Symbol y = 0; y < num_symbols(); ++y) {
      for (StateId j : successors(i, y)) moves.push_back({i, y, j});
    }
  }
  return Nfa(names_, alphabet_, initial_, accepting, moves);
}

ProductGraph ProductGraph::without_empty_vertices() const {
  std::vector<StateId> remap(num_vertices(), kEmptyVertex);
  ProductGraph out;
  out.alphabet_ = alphabet_;
  for (StateId i = 0; i < num_vertices(); ++i) {
    if (vertices_[i].is_empty()) continue;
    remap[i] = static_cast<StateId>(out.vertices_.size());
    out.vertices_.push_back(vertices_[i]);
    out.names_.push_back(names_[i]);
  }
  out.initial_ = StateSet(out.vertices_.size());
  out.succ_.assign(out.vertices_.size() * alphabet_.size(), {});
  for (StateId i = 0; i < num_vertices(); ++i) {
    if (remap[i] == kEmptyVertex) continue;
    if (initial_.test(i)) out.initial_.set(remap[i]);
    for (Symbol y = 0; y < num_symbols(); ++y) {
      for (StateId j : successors(i, y)) {
        if (remap[j] != kEmptyVertex) {
          out.succ_[remap[i] * alphabet_.size() + y].push_back(remap[j]);
        }
      }
    }
  }
  return out;
}

ProductGraph tensor_product(const Filter& f1, const Filter& f2) {
  ProductGraph g;
  g.alphabet_ = f1.observations();
  const std::size_t nsym = f1.num_symbols();

  std::vector<std::optional<Symbol>> in_f2(nsym);
  for (Symbol y = 0; y < nsym; ++y) in_f2[y] = f2.find_symbol(f1.symbol_name(y));

  std::unordered_map<std::uint64_t, StateId> index;
  auto intern = [&](StateId v, StateId w) {
    const std::uint64_t key = (std::uint64_t{v} << 32) | w;
    auto [it, inserted] =
        index.emplace(key, static_cast<StateId>(g.vertices_.size()));
    if (inserted) {
      g.vertices_.push_back({v, w});
      g.succ_.resize(g.vertices_.size() * nsym);
    }
    return it->second;
  };

  for_each_bit(f1.initial(), [&](std::size_t v) {
    for_each_bit(f2.initial(), [&](std::size_t w) {
      intern(static_cast<StateId>(v), static_cast<StateId>(w));
    });
  });
  const std::size_t num_initial = g.vertices_.size();

  for (StateId i = 0; i < g.vertices_.size(); ++i) {
    const ProductVertex at = g.vertices_[i];
    for (Symbol y = 0; y < nsym; ++y) {
      const auto next1 = f1.successors(at.first, y);
      if (next1.empty()) continue;
      std::vector<StateId> targets;
      if (at.is_empty()) {
        for (StateId v2 : next1) targets.push_back(intern(v2, kEmptyVertex));
      } else {
        std::span<const StateId> next2;
        if (in_f2[y]) next2 = f2.successors(at.second, *in_f2[y]);
        for (StateId v2 : next1) {
          if (next2.empty()) {
            targets.push_back(intern(v2, kEmptyVertex));
          } else {
            for (StateId w2 : next2) targets.push_back(intern(v2, w2));
          }
        }
      }
      g.succ_[i * nsym + y] = std::move(targets);
    }
  }

  g.initial_ = StateSet(g.vertices_.size());
  for (std::size_t i = 0; i < num_initial; ++i) g.initial_.set(i);
  for (const ProductVertex& v : g.vertices_) {
    g.names_.push_back("(" + f1.state_name(v.first) + "," +
                       (v.is_empty() ? std::string("⊖")
                                     : f2.state_name(v.second)) +
                       ")");
  }
  return g;
}

SimulationVerdict check_language_inclusion(const Filter& f, const Filter& fp,
                                           std::size_t cap) {
  const ProductGraph g = tensor_product(f, fp);
  if (!g.has_empty_vertex()) return SimulationVerdict::pass();

  StateSet crash_vertices(g.num_vertices());
  for (StateId i = 0; i < g.num_vertices(); ++i) {
    if (g.vertex(i).is_empty()) crash_vertices.set(i);
  }
  const Nfa a = g.to_nfa(crash_vertices);
  StateSet all(fp.num_states());
  all.set();
  const Nfa b = filter_to_nfa(fp, all);
  InclusionResult same = is_equivalent(a, intersect(a, b), cap);
  if (same.holds) return SimulationVerdict::pass();
  return SimulationVerdict{false, FailureKind::LanguageGap,
                           std::move(same.witness), std::nullopt};
}

SimulationVerdict check_output_consistency(const Filter& f, const Filter& fp,
                                           Execution execution,
                                           std::size_t cap) {
  const ProductGraph g = tensor_product(f, fp).without_empty_vertices();

  std::vector<std::optional<Color>> color_in_f(fp.num_colors());
  for (Color c = 0; c < fp.num_colors(); ++c) {
    color_in_f[c] = f.find_color(fp.color_name(c));
  }

  struct Task {
    StateId vertex;
    Color color;  // index into fp's colors
  };
  std::vector<Task> tasks;
  for (StateId i = 0; i < g.num_vertices(); ++i) {
    const ProductVertex& pv = g.vertex(i);
    for_each_bit(fp.colors_of(pv.second), [&](std::size_t c) {
      const auto o = color_in_f[c];
      if (!o || !f.colors_of(pv.first).test(*o)) {
        tasks.push_back({i, static_cast<Color>(c)});
      }
    });
  }
  if (tasks.empty()) return SimulationVerdict::pass();

  const Nfa reaching = g.to_nfa(StateSet(g.num_vertices()));
  std::vector<Nfa> carrying;  // per color of f, plus one empty acceptor
  for (Color o = 0; o <= f.num_colors(); ++o) {
    StateSet acc(f.num_states());
    if (o < f.num_colors()) {
      for (StateId v = 0; v < f.num_states(); ++v) {
        if (f.colors_of(v).test(o)) acc.set(v);
      }
    }
    carrying.push_back(filter_to_nfa(f, acc));
  }

  std::vector<InclusionResult> results(tasks.size());
  detail::parallel_for(tasks.size(), execution, [&](std::size_t t) {
    StateSet target(g.num_vertices());
    target.set(tasks[t].vertex);
    const auto o = color_in_f[tasks[t].color];
    results[t] = is_included(reaching.with_accepting(std::move(target)),
                             carrying[o ? *o : f.num_colors()], cap);
  });

  std::optional<std::size_t> worst;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (results[t].holds) continue;
    if (!worst || results[t].witness->size() < results[*worst].witness->size()) {
      worst = t;
    }
  }
  if (!worst) return SimulationVerdict::pass();
  return SimulationVerdict{false, FailureKind::OutputViolation,
                           std::move(results[*worst].witness),
                           fp.color_name(tasks[*worst].color)};
}

SimulationVerdict output_simulates(const Filter& fp, const Filter& f,
                                   Execution execution, std::size_t cap) {
  const Filter tf = trim(f);
  const Filter tfp = trim(fp);
  SimulationVerdict language = check_language_inclusion(tf, tfp, cap);
  if (!language.holds) return language;
  return check_output_consistency(tf, tfp, execution, cap);
}

}  // namespace pfilter
