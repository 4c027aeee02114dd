#pragma once

#include <pfilter/filter.hpp>

#include <cstdint>
#include <vector>

namespace pfilter {

/// Sizes attached to the prime-cycle family with r rows: p_i is the i-th
/// prime, S the sum and P the product of p_1..p_r.
struct PrimeFamilyParams {
  std::size_t r = 1;
  std::vector<std::uint64_t> primes;
  std::uint64_t sum = 0;
  std::uint64_t product = 1;

  static PrimeFamilyParams of(std::size_t r);

  std::uint64_t largest() const { return primes.back(); }
  /// State count of prime_family(r): 2*S + 1.
  std::uint64_t n() const { return 2 * sum + 1; }
  /// State count of prime_family_minimizer(r): 1 + P + p_r.
  std::uint64_t z() const { return 1 + product + largest(); }
};

/// First `count` primes by trial division.
std::vector<std::uint64_t> first_primes(std::size_t count);

/// Rows i = 1..r: a cycle q{i}_1..q{i}_{p_i} of white states under "a",
/// entered from the black initial state "init" at q{i}_1; each q{i}_j moves
/// under x{i} to a child p{i}_j colored o{j}. Throws InvalidArgument for
/// r = 0 or when P(r) exceeds `cap`.
Filter prime_family(std::size_t r, std::size_t cap = kDefaultStateCap);

/// Deterministic filter with a single white cycle r_1..r_P under "a" and one
/// sink per color o1..o{p_r}; r_j moves under x{i} to the sink of color
/// o{((j-1) mod p_i) + 1}.
Filter prime_family_minimizer(std::size_t r, std::size_t cap = kDefaultStateCap);

/// The ten-state deterministic filter (q0..q7 plus "+" and "-") and the
/// nine-state nondeterministic filter (p0..p6 plus "+" and "-") that
/// output-simulates it.
Filter fig3_input();
Filter fig3_minimizer();

/// Two agents on a ring of three regions separated by beams a (0|1),
/// b (1|2) and c (2|0). States are ordered region pairs "r{i}{j}", both
/// agents start in region 0, and each beam crossing moves one agent across
/// that beam. Red when the agents share a region, cyan otherwise.
Filter donut_world();

}  // namespace pfilter
