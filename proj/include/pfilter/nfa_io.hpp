#pragma once

#include <pfilter/nfa.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace pfilter {

// Automaton files mirror filter files: `observations`, `states` (objects
// with `id` and a boolean `accepting`), `initial`, `transitions`.
RawNfa parse_nfa_text(std::string_view text);
Nfa read_nfa(std::string_view text);
Nfa load_nfa(const std::filesystem::path& path);
std::string emit_nfa(const Nfa& n, std::span<const std::string> header = {});

}  // namespace pfilter
