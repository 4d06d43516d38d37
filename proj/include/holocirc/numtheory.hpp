#pragma once

// Exact arithmetic in Z/2^n for n <= 62: 2-adic splits, powers of 5 (with
// negative exponents through the unit-group inverse) and the geometric /
// alternating sums of powers of 5^{-j} that drive element powers in the
// holomorph. Residues are always canonical, in [0, 2^n).

#include <cstdint>

namespace holocirc::numtheory {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr int kMaxExponent = 62;

// value = two_part * odd_part with odd_part odd. exponent = log2(two_part).
struct TwoAdicSplit {
  u64 value = 0;
  u64 two_part = 0;
  u64 odd_part = 0;
  int exponent = 0;
};

// Throws UndefinedSplitError for m == 0.
TwoAdicSplit val2(u64 m);

// The 2-part m_2 of m, with the convention that 0 has 2-part `zero_as`
// (callers working mod 2^k pass 2^k).
u64 two_part_or(u64 m, u64 zero_as);

class Modulus2n {
 public:
  explicit Modulus2n(int n);

  int exponent() const { return n_; }
  u64 modulus() const { return n_ == 64 ? 0 : (u64{1} << n_); }
  u64 mask() const { return mask_; }

  u64 reduce(u64 v) const { return v & mask_; }
  u64 reduce_signed(std::int64_t v) const { return static_cast<u64>(v) & mask_; }
  u64 add(u64 a, u64 b) const { return (a + b) & mask_; }
  u64 sub(u64 a, u64 b) const { return (a - b) & mask_; }
  u64 neg(u64 a) const { return (u64{0} - a) & mask_; }
  u64 mul(u64 a, u64 b) const {
    return static_cast<u64>((static_cast<u128>(a) * b)) & mask_;
  }
  u64 pow(u64 base, u64 e) const;

  // Inverse of an odd residue; throws ContractError for even input.
  u64 inverse(u64 odd) const;

  bool operator==(const Modulus2n&) const = default;

 private:
  int n_;
  u64 mask_;
};

// 5^k mod 2^n; negative k uses the inverse of 5.
u64 pow5(std::int64_t k, int n);

// sum_{s=0}^{count-1} ratio^s mod 2^n, by doubling (no division).
u64 geometric_sum(u64 ratio, u64 count, const Modulus2n& mod);

// Result of a power-of-5 sum: the residue, its split when it is nonzero, and
// a flag raised when the residue is 0 so the true 2-part is >= 2^n and
// cannot be read off at this modulus.
struct SumResult {
  u64 value = 0;
  TwoAdicSplit split;
  bool truncated = false;
};

// M = sum_{s<k} 5^{-s j} mod 2^n, i.e. (1 - 5^{-kj}) / (1 - 5^{-j}) computed
// as a sum. Requires k, j >= 1.
SumResult geom_sum_M(u64 k, u64 j, int n);

// L = sum_{s<k} (-1)^s 5^{-s j} mod 2^n, i.e. (1 - 5^{-kj}) / (1 + 5^{-j}).
// Requires k even and >= 2, j >= 1.
SumResult alt_sum_L(u64 k, u64 j, int n);

// Alternating partial sum for any count (used for odd powers).
u64 alt_partial_sum(u64 count, u64 j, int n);

// Discrete log base 5 of a residue u == 1 (mod 4) modulo 2^n, n >= 3.
// Returns gamma in [0, 2^{n-2}).
u64 dlog5(u64 u, int n);

}  // namespace holocirc::numtheory
