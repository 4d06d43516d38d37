#include "holocirc/numtheory.hpp"

#include <bit>
#include <string>

#include "holocirc/error.hpp"

namespace holocirc::numtheory {

TwoAdicSplit val2(u64 m) {
  if (m == 0) throw UndefinedSplitError();
  TwoAdicSplit s;
  s.value = m;
  s.exponent = std::countr_zero(m);
  s.two_part = u64{1} << s.exponent;
  s.odd_part = m >> s.exponent;
  return s;
}

u64 two_part_or(u64 m, u64 zero_as) {
  return m == 0 ? zero_as : (m & (~m + 1));
}

Modulus2n::Modulus2n(int n) : n_(n) {
  if (n < 1 || n > kMaxExponent)
    throw ContractError("modulus exponent out of range [1, 62]: " + std::to_string(n));
  mask_ = (u64{1} << n) - 1;
}

u64 Modulus2n::pow(u64 base, u64 e) const {
  u64 r = 1 & mask_;
  base &= mask_;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

u64 Modulus2n::inverse(u64 odd) const {
  if ((odd & 1) == 0) throw ContractError("inverse of an even residue mod 2^n");
  // Newton iteration doubles correct bits each step; 3 bits are right at start.
  u64 x = odd;
  for (int i = 0; i < 6; ++i) x *= 2 - odd * x;
  return x & mask_;
}

u64 pow5(std::int64_t k, int n) {
  Modulus2n mod(n);
  if (k >= 0) return mod.pow(5, static_cast<u64>(k));
  u64 mag = static_cast<u64>(-(k + 1)) + 1;
  return mod.pow(mod.inverse(5), mag);
}

u64 geometric_sum(u64 ratio, u64 count, const Modulus2n& mod) {
  // Walk the bits of count from the top, keeping (sum of first c terms, ratio^c).
  u64 sum = 0, pw = 1 & mod.mask();
  ratio = mod.reduce(ratio);
  for (int b = 63; b >= 0; --b) {
    sum = mod.add(sum, mod.mul(pw, sum));
    pw = mod.mul(pw, pw);
    if ((count >> b) & 1) {
      sum = mod.add(sum, pw);
      pw = mod.mul(pw, ratio);
    }
  }
  return sum;
}

namespace {

SumResult finish(u64 v) {
  SumResult r;
  r.value = v;
  if (v == 0)
    r.truncated = true;
  else
    r.split = val2(v);
  return r;
}

}  // namespace

SumResult geom_sum_M(u64 k, u64 j, int n) {
  if (k < 1 || j < 1) throw ContractError("geom_sum_M needs k, j >= 1");
  Modulus2n mod(n);
  u64 ratio = mod.pow(mod.inverse(5), j);
  return finish(geometric_sum(ratio, k, mod));
}

SumResult alt_sum_L(u64 k, u64 j, int n) {
  if (k < 2 || (k & 1)) throw ContractError("alt_sum_L needs an even k >= 2");
  if (j < 1) throw ContractError("alt_sum_L needs j >= 1");
  Modulus2n mod(n);
  u64 ratio = mod.neg(mod.pow(mod.inverse(5), j));
  return finish(geometric_sum(ratio, k, mod));
}

u64 alt_partial_sum(u64 count, u64 j, int n) {
  Modulus2n mod(n);
  u64 ratio = mod.neg(mod.pow(mod.inverse(5), j));
  return geometric_sum(ratio, count, mod);
}

u64 dlog5(u64 u, int n) {
  Modulus2n mod(n);
  u = mod.reduce(u);
  if ((u & 3 & mod.mask()) != 1) throw ContractError("dlog5 needs u == 1 mod 4");
  if (n <= 2) return 0;
  // 5^{2^i} == 1 + 2^{i+2} mod 2^{i+3}: peel one bit of the exponent per step.
  u64 gamma = 0;
  u64 inv5 = mod.inverse(5);
  u64 v = u;
  for (int i = 0; i + 3 <= n; ++i) {
    u64 m = (u64{1} << (i + 3)) - 1;
    if ((v & m) != 1) {
      gamma |= u64{1} << i;
      v = mod.mul(v, mod.pow(inv5, u64{1} << i));
    }
  }
  return gamma;
}

}  // namespace holocirc::numtheory
