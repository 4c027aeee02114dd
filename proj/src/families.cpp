#include <pfilter/families.hpp>

#include <limits>

namespace pfilter {

std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t candidate = 2; out.size() < count; ++candidate) {
    bool prime = true;
    for (std::uint64_t p : out) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(candidate);
  }
  return out;
}

PrimeFamilyParams PrimeFamilyParams::of(std::size_t r) {
  if (r == 0) throw Error(ErrorKind::InvalidArgument, "row count must be positive");
  PrimeFamilyParams params;
  params.r = r;
  params.primes = first_primes(r);
  for (std::uint64_t p : params.primes) {
    params.sum += p;
    if (params.product > std::numeric_limits<std::uint64_t>::max() / p) {
      throw Error(ErrorKind::InvalidArgument, "primorial overflows 64 bits");
    }
    params.product *= p;
  }
  return params;
}

namespace {

PrimeFamilyParams checked_params(std::size_t r, std::size_t cap) {
  PrimeFamilyParams params = PrimeFamilyParams::of(r);
  if (params.product > cap) {
    throw Error(ErrorKind::InvalidArgument,
                "rows=" + std::to_string(r) + " gives a cycle of " +
                    std::to_string(params.product) +
                    " states, above the cap of " + std::to_string(cap));
  }
  return params;
}

std::vector<std::string> family_alphabet(std::size_t r) {
  std::vector<std::string> out{"a"};
  for (std::size_t i = 1; i <= r; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

std::vector<std::string> family_colors(std::uint64_t outputs) {
  std::vector<std::string> out{"black", "white"};
  for (std::uint64_t j = 1; j <= outputs; ++j) out.push_back("o" + std::to_string(j));
  return out;
}

}  // namespace

Filter prime_family(std::size_t r, std::size_t cap) {
  const PrimeFamilyParams params = checked_params(r, cap);
  RawFilter raw;
  raw.observations = family_alphabet(r);
  raw.colors = family_colors(params.largest());
  raw.states.push_back({"init", {"black"}});
  raw.initial = {"init"};

  for (std::size_t i = 1; i <= r; ++i) {
    const std::uint64_t p = params.primes[i - 1];
    const std::string row = std::to_string(i);
    auto cycle = [&](std::uint64_t j) { return "q" + row + "_" + std::to_string(j); };
    auto child = [&](std::uint64_t j) { return "p" + row + "_" + std::to_string(j); };
    for (std::uint64_t j = 1; j <= p; ++j) raw.states.push_back({cycle(j), {"white"}});
    for (std::uint64_t j = 1; j <= p; ++j) {
      raw.states.push_back({child(j), {"o" + std::to_string(j)}});
    }
    raw.transitions.push_back({"init", cycle(1), {"a"}});
    for (std::uint64_t j = 1; j <= p; ++j) {
      raw.transitions.push_back({cycle(j), cycle(j % p + 1), {"a"}});
      raw.transitions.push_back({cycle(j), child(j), {"x" + row}});
    }
  }
  return validate(raw);
}

Filter prime_family_minimizer(std::size_t r, std::size_t cap) {
  const PrimeFamilyParams params = checked_params(r, cap);
  const std::uint64_t period = params.product;
  RawFilter raw;
  raw.observations = family_alphabet(r);
  raw.colors = family_colors(params.largest());
  auto cycle = [](std::uint64_t j) { return "r" + std::to_string(j); };
  auto sink = [](std::uint64_t j) { return "s" + std::to_string(j); };

  raw.states.push_back({"init", {"black"}});
  raw.initial = {"init"};
  for (std::uint64_t j = 1; j <= period; ++j) raw.states.push_back({cycle(j), {"white"}});
  for (std::uint64_t o = 1; o <= params.largest(); ++o) {
    raw.states.push_back({sink(o), {"o" + std::to_string(o)}});
  }

  raw.transitions.push_back({"init", cycle(1), {"a"}});
  for (std::uint64_t j = 1; j <= period; ++j) {
    raw.transitions.push_back({cycle(j), cycle(j % period + 1), {"a"}});
    for (std::size_t i = 1; i <= r; ++i) {
      const std::uint64_t o = (j - 1) % params.primes[i - 1] + 1;
      raw.transitions.push_back({cycle(j), sink(o), {"x" + std::to_string(i)}});
    }
  }
  return validate(raw);
}

namespace {

const std::vector<std::string> kFig3Symbols = {"1", "2", "3", "4", "5", "6", "7",
                                               "a", "b", "c", "d", "e", "f", "g", "h"};
const std::vector<std::string> kFig3Colors = {"blue", "white", "pink", "green"};

}  // namespace

Filter fig3_input() {
  RawFilter raw;
  raw.observations = kFig3Symbols;
  raw.colors = kFig3Colors;
  raw.states.push_back({"q0", {"blue"}});
  for (int i = 1; i <= 7; ++i) raw.states.push_back({"q" + std::to_string(i), {"white"}});
  raw.states.push_back({"+", {"pink"}});
  raw.states.push_back({"-", {"green"}});
  raw.initial = {"q0"};
  for (int i = 1; i <= 7; ++i) {
    raw.transitions.push_back({"q0", "q" + std::to_string(i), {std::to_string(i)}});
  }
  raw.transitions.insert(raw.transitions.end(), {
      {"q1", "+", {"a", "b", "c", "d", "e"}},
      {"q2", "+", {"d", "e", "f"}},
      {"q2", "-", {"a"}},
      {"q3", "+", {"f", "g", "h"}},
      {"q3", "-", {"a", "d"}},
      {"q4", "+", {"a", "b", "c", "g", "h"}},
      {"q4", "-", {"d"}},
      {"q5", "+", {"d", "e"}},
      {"q5", "-", {"b", "f", "g"}},
      {"q6", "-", {"b", "c", "e", "f", "g", "h"}},
      {"q7", "+", {"f"}},
      {"q7", "-", {"a", "c", "e", "h"}},
  });
  return validate(raw);
}

Filter fig3_minimizer() {
  RawFilter raw;
  raw.observations = kFig3Symbols;
  raw.colors = kFig3Colors;
  raw.states.push_back({"p0", {"blue"}});
  for (int i = 1; i <= 6; ++i) raw.states.push_back({"p" + std::to_string(i), {"white"}});
  raw.states.push_back({"+", {"pink"}});
  raw.states.push_back({"-", {"green"}});
  raw.initial = {"p0"};
  raw.transitions = {
      {"p0", "p1", {"1", "4"}},
      {"p0", "p2", {"1", "2", "5"}},
      {"p0", "p3", {"2", "3", "7"}},
      {"p0", "p4", {"3", "4"}},
      {"p0", "p5", {"5", "6"}},
      {"p0", "p6", {"6", "7"}},
      {"p1", "+", {"a", "b", "c"}},
      {"p2", "+", {"d", "e"}},
      {"p3", "+", {"f"}},
      {"p3", "-", {"a"}},
      {"p4", "+", {"g", "h"}},
      {"p4", "-", {"d"}},
      {"p5", "-", {"b", "f", "g"}},
      {"p6", "-", {"c", "e", "h"}},
  };
  return validate(raw);
}

Filter donut_world() {
  // Beam k separates region k from region (k + 1) mod 3.
  const std::vector<std::string> beams = {"a", "b", "c"};
  RawFilter raw;
  raw.observations = beams;
  raw.colors = {"red", "cyan"};
  auto name = [](int i, int j) { return "r" + std::to_string(i) + std::to_string(j); };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      raw.states.push_back({name(i, j), {i == j ? "red" : "cyan"}});
    }
  }
  raw.initial = {name(0, 0)};
  auto across = [](int region, int beam) {
    if (region == beam) return (beam + 1) % 3;
    if (region == (beam + 1) % 3) return beam;
    return -1;
  };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const int i2 = across(i, k);
        const int j2 = across(j, k);
        if (i2 >= 0) raw.transitions.push_back({name(i, j), name(i2, j), {beams[k]}});
        if (j2 >= 0) raw.transitions.push_back({name(i, j), name(i, j2), {beams[k]}});
      }
    }
  }
  return validate(raw);
}

}  // namespace pfilter
