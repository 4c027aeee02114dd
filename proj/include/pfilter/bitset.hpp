#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pfilter {

/// Set of states (or colors) over a fixed universe, stored as a bit vector.
using BitSet = boost::dynamic_bitset<std::uint64_t>;
using StateSet = BitSet;
using ColorSet = BitSet;

struct BitSetHash {
  std::size_t operator()(const BitSet& s) const noexcept {
    std::size_t h = s.size() * 0x9e3779b97f4a7c15ULL;
    std::vector<std::uint64_t> blocks(s.num_blocks());
    boost::to_block_range(s, blocks.begin());
    for (auto b : blocks) {
      h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Calls fn(i) for every set bit, ascending.
template <typename Fn>
void for_each_bit(const BitSet& s, Fn&& fn) {
  for (auto i = s.find_first(); i != BitSet::npos; i = s.find_next(i)) {
    fn(i);
  }
}

inline std::vector<std::size_t> members(const BitSet& s) {
  std::vector<std::size_t> out;
  out.reserve(s.count());
  for_each_bit(s, [&](std::size_t i) { out.push_back(i); });
  return out;
}

inline bool intersects(const BitSet& a, const BitSet& b) {
  return a.intersects(b);
}

}  // namespace pfilter
