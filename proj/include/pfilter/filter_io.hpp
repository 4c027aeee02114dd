#pragma once

#include <pfilter/filter.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pfilter {

/// Filter files are JSON objects with the keys `observations`, `colors`,
/// `states` (objects with `id` and `colors`), `initial` and `transitions`
/// (objects with `from`, `to` and `symbols`). Lines whose first
/// non-blank character is '#' are comments and are skipped.
RawFilter parse_filter_text(std::string_view text);
Filter read_filter(std::string_view text);
Filter load_filter(const std::filesystem::path& path);

/// Canonical rendering; `header` lines are emitted as '# ' comments.
std::string emit_filter(const Filter& f,
                        std::span<const std::string> header = {});
void save_filter(const std::filesystem::path& path, const Filter& f,
                 std::span<const std::string> header = {});

/// Graphviz rendering: nodes filled with their first color, edges labeled
/// with comma-joined symbols, initial states marked by an arrow from a
/// point node.
std::string to_dot(const Filter& f);

/// Maps a color identifier to something Graphviz understands. Known color
/// names pass through; others get a fixed palette entry chosen by `slot`.
std::string dot_color(std::string_view name, std::size_t slot);

std::string strip_comment_lines(std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace pfilter
