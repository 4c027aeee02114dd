#include <pfilter/filter_io.hpp>
#include <pfilter/nfa_io.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <sstream>

namespace pfilter {

using nlohmann::ordered_json;

namespace {

const ordered_json& require(const ordered_json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorKind::Format, std::string("missing key '") + key + "'");
  }
  return obj.at(key);
}

std::vector<std::string> string_list(const ordered_json& j, const char* key) {
  const ordered_json& arr = require(j, key);
  if (!arr.is_array() ||
      !std::all_of(arr.begin(), arr.end(),
                   [](const auto& x) { return x.is_string(); })) {
    throw Error(ErrorKind::Format,
                std::string("'") + key + "' must be a list of strings");
  }
  return arr.get<std::vector<std::string>>();
}

std::string string_field(const ordered_json& j, const char* key) {
  const ordered_json& v = require(j, key);
  if (!v.is_string()) {
    throw Error(ErrorKind::Format, std::string("'") + key + "' must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

RawNfa parse_nfa_text(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(strip_comment_lines(text));
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorKind::Format, std::string("malformed input: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorKind::Format, "automaton document must be an object");
  }
  static constexpr std::array kKeys = {"observations", "states", "initial",
                                       "transitions"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw Error(ErrorKind::Format, "unexpected key '" + key + "'");
    }
  }
  RawNfa raw;
  raw.observations = string_list(doc, "observations");
  for (const auto& s : require(doc, "states")) {
    const ordered_json& acc = require(s, "accepting");
    if (!acc.is_boolean()) {
      throw Error(ErrorKind::Format, "'accepting' must be a boolean");
    }
    raw.states.push_back({string_field(s, "id"), acc.get<bool>()});
  }
  raw.initial = string_list(doc, "initial");
  for (const auto& t : require(doc, "transitions")) {
    raw.transitions.push_back({string_field(t, "from"), string_field(t, "to"),
                               string_list(t, "symbols")});
  }
  return raw;
}

Nfa read_nfa(std::string_view text) { return validate_nfa(parse_nfa_text(text)); }

Nfa load_nfa(const std::filesystem::path& path) {
  return read_nfa(read_text_file(path));
}

std::string emit_nfa(const Nfa& n, std::span<const std::string> header) {
  const RawNfa raw = n.to_raw();
  std::ostringstream out;
  for (const std::string& line : header) out << "# " << line << '\n';
  out << "{\n";
  out << "  \"observations\": " << ordered_json(raw.observations).dump()
      << ",\n";
  out << "  \"states\": [";
  for (std::size_t i = 0; i < raw.states.size(); ++i) {
    ordered_json s;
    s["id"] = raw.states[i].id;
    s["accepting"] = raw.states[i].accepting;
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

}  // namespace pfilter
