#pragma once

#include <cstdint>
#include <vector>

#include "itlab/errors.hpp"

namespace itlab {

// Lexicographic indexing of length-n blocks over a finite alphabet.
// Symbol 0 is the most significant digit, so index order equals
// lexicographic order on the symbol strings.

inline std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) throw ResourceError("block count overflows 64 bits");
    r *= base;
  }
  return r;
}

inline void block_from_index(std::uint64_t idx, int n, std::uint64_t base,
                             std::vector<std::uint8_t>& out) {
  out.resize(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(idx % base);
    idx /= base;
  }
}

inline std::uint64_t index_from_block(const std::vector<std::uint8_t>& block, std::uint64_t base) {
  std::uint64_t idx = 0;
  for (std::uint8_t s : block) idx = idx * base + s;
  return idx;
}

// Default exact-enumeration budget shared by codes/induced.
inline constexpr std::uint64_t kDefaultBlockBudget = std::uint64_t{1} << 24;

inline std::uint64_t checked_block_count(std::uint64_t base, int n,
                                         std::uint64_t budget = kDefaultBlockBudget) {
  const std::uint64_t count = pow_u64(base, n);
  if (count > budget) {
    throw ResourceError("enumeration budget exceeded: " + std::to_string(count) + " blocks > " +
                        std::to_string(budget));
  }
  return count;
}

}  // namespace itlab
