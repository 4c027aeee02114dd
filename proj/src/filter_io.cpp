#include <pfilter/filter_io.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace pfilter {

using nlohmann::ordered_json;

std::string strip_comment_lines(std::string_view text) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] != '#') {
      out.append(line);
      out.push_back('\n');
    }
    pos = end + 1;
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Format, "cannot open '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

const ordered_json& require(const ordered_json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorKind::Format, std::string("missing key '") + key + "'");
  }
  return obj.at(key);
}

std::vector<std::string> string_list(const ordered_json& j, const char* key) {
  const ordered_json& arr = require(j, key);
  if (!arr.is_array()) {
    throw Error(ErrorKind::Format, std::string("'") + key + "' must be a list");
  }
  std::vector<std::string> out;
  for (const auto& item : arr) {
    if (!item.is_string()) {
      throw Error(ErrorKind::Format,
                  std::string("'") + key + "' must contain strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string string_field(const ordered_json& j, const char* key) {
  const ordered_json& v = require(j, key);
  if (!v.is_string()) {
    throw Error(ErrorKind::Format, std::string("'") + key + "' must be a string");
  }
  return v.get<std::string>();
}

ordered_json parse_json(std::string_view text) {
  try {
    return ordered_json::parse(strip_comment_lines(text));
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorKind::Format, std::string("malformed input: ") + e.what());
  }
}

}  // namespace

RawFilter parse_filter_text(std::string_view text) {
  const ordered_json doc = parse_json(text);
  if (!doc.is_object()) {
    throw Error(ErrorKind::Format, "filter document must be an object");
  }
  static constexpr std::array kKeys = {"observations", "colors", "states",
                                       "initial", "transitions"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw Error(ErrorKind::Format, "unexpected key '" + key + "'");
    }
  }
  RawFilter raw;
  raw.observations = string_list(doc, "observations");
  raw.colors = string_list(doc, "colors");
  for (const auto& s : require(doc, "states")) {
    raw.states.push_back({string_field(s, "id"), string_list(s, "colors")});
  }
  raw.initial = string_list(doc, "initial");
  for (const auto& t : require(doc, "transitions")) {
    raw.transitions.push_back({string_field(t, "from"), string_field(t, "to"),
                               string_list(t, "symbols")});
  }
  return raw;
}

Filter read_filter(std::string_view text) {
  return validate(parse_filter_text(text));
}

Filter load_filter(const std::filesystem::path& path) {
  return read_filter(read_text_file(path));
}

std::string emit_filter(const Filter& f, std::span<const std::string> header) {
  const RawFilter raw = f.to_raw();
  std::ostringstream out;
  for (const std::string& line : header) out << "# " << line << '\n';
  out << "{\n";
  out << "  \"observations\": " << ordered_json(raw.observations).dump()
      << ",\n";
  out << "  \"colors\": " << ordered_json(raw.colors).dump() << ",\n";
  out << "  \"states\": [";
  for (std::size_t i = 0; i < raw.states.size(); ++i) {
    ordered_json s;
    s["id"] = raw.states[i].id;
    s["colors"] = raw.states[i].colors;
    out << (i == 0 ? "\n    " : ",\n    ") << s.dump();
  }
  out << "\n  ],\n";
  out << "  \"initial\": " << ordered_json(raw.initial).dump() << ",\n";
  out << "  \"transitions\": [";
  for (std::size_t i = 0; i < raw.transitions.size(); ++i) {
    ordered_json t;
    t["from"] = raw.transitions[i].from;
    t["to"] = raw.transitions[i].to;
    t["symbols"] = raw.transitions[i].symbols;
    out << (i == 0 ? "\n    " : ",\n    ") << t.dump();
  }
  out << (raw.transitions.empty() ? "]\n" : "\n  ]\n");
  out << "}\n";
  return out.str();
}

void save_filter(const std::filesystem::path& path, const Filter& f,
                 std::span<const std::string> header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::Format, "cannot write '" + path.string() + "'");
  }
  out << emit_filter(f, header);
}

std::string dot_color(std::string_view name, std::size_t slot) {
  static constexpr std::array<std::string_view, 20> kNamed = {
      "black", "blue",   "brown",  "cyan",  "gold",    "gray",   "green",
      "grey",  "magenta", "orange", "pink", "purple",  "red",    "salmon",
      "tan",   "violet", "white",  "yellow", "khaki",  "turquoise"};
  static constexpr std::array<std::string_view, 8> kPalette = {
      "#8dd3c7", "#ffffb3", "#bebada", "#fb8072",
      "#80b1d3", "#fdb462", "#b3de69", "#fccde5"};
  if (std::find(kNamed.begin(), kNamed.end(), name) != kNamed.end()) {
    return std::string(name);
  }
  return std::string(kPalette[slot % kPalette.size()]);
}

namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string to_dot(const Filter& f) {
  std::vector<std::string> fill(f.num_colors());
  std::size_t unknown = 0;
  for (Color c = 0; c < f.num_colors(); ++c) {
    std::string mapped = dot_color(f.color_name(c), unknown);
    if (mapped != f.color_name(c)) ++unknown;
    fill[c] = std::move(mapped);
  }

  std::ostringstream out;
  out << "digraph filter {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box, style=filled];\n";
  for (StateId v = 0; v < f.num_states(); ++v) {
    const Color first = static_cast<Color>(f.colors_of(v).find_first());
    out << "  " << dot_quote(f.state_name(v)) << " [fillcolor="
        << dot_quote(fill[first]) << "];\n";
  }
  std::size_t k = 0;
  for_each_bit(f.initial(), [&](std::size_t v) {
    const std::string point = "__init" + std::to_string(k++);
    out << "  " << point << " [shape=point, style=solid];\n";
    out << "  " << point << " -> " << dot_quote(f.state_name(v)) << ";\n";
  });
  for (const Edge& e : f.edges()) {
    std::string label;
    for (Symbol y : e.symbols) {
      if (!label.empty()) label += ',';
      label += f.symbol_name(y);
    }
    out << "  " << dot_quote(f.state_name(e.from)) << " -> "
        << dot_quote(f.state_name(e.to)) << " [label=" << dot_quote(label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace pfilter
