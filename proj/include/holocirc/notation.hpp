#pragma once

// Text forms used on the command line.
//
// Elements of Hol(Z_{2^n}):
//   element := "1" | "e" | factor { ["*"] factor }
//   factor  := ("a" | "x" | "y") [ "^" ["+" | "-"] digits ]
// Factors multiply left to right, so "a^3*x*y^2" is a^3 x y^2 and acts as
// g -> (g + 3) * (-1) * 25. Whitespace is ignored. Printing gives the normal
// form with zero parts dropped and exponent 1 omitted ("a*x", "y^3", "1").
//
// Connection sets: comma-separated residues "1,3,13,15"; "A..B" inside a
// list expands to the inclusive run. Ranges "3..5" or "4". Shards "i/k".

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "holocirc/holomorph.hpp"

namespace holocirc {

HolElem2 parse_element(std::string_view text, int n);
std::string format_element(const HolElem2& h);
std::string format_affine(const AffineMap& h);  // "(t,m)"
std::ostream& operator<<(std::ostream& os, const HolElem2& h);
std::ostream& operator<<(std::ostream& os, const AffineMap& h);

// Sorted, duplicates removed; residues must be < n.
std::vector<u64> parse_residue_set(std::string_view text, u64 n);
std::string format_residue_set(const std::vector<u64>& s);

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};
IntRange parse_range(std::string_view text);

struct Shard {
  std::uint64_t index = 0;
  std::uint64_t count = 1;
  // [begin, end) of a total-length sequence cut into `count` contiguous pieces.
  std::pair<std::uint64_t, std::uint64_t> slice(std::uint64_t total) const;
};
Shard parse_shard(std::string_view text);

}  // namespace holocirc
