#pragma once

// Hol(Z_{2^n}) in normal form a^alpha x^beta y^gamma, acting by
//   g -> (g + alpha) * (-1)^beta * 5^gamma   (mod 2^n),
// and the generic affine group of Z_n with its CRT splitting.
// Products read left to right: compose(h1, h2) applies h1 first.

#include <cstdint>
#include <utility>
#include <vector>

#include "holocirc/numtheory.hpp"

namespace holocirc {

using numtheory::u64;

struct HolElem2 {
  int n = 3;
  u64 alpha = 0;
  unsigned beta = 0;
  u64 gamma = 0;

  // Reduces alpha mod 2^n, beta mod 2, gamma mod 2^{n-2}; n must be in [3, 62].
  static HolElem2 make(int n, u64 alpha, unsigned beta, u64 gamma);
  static HolElem2 identity(int n) { return make(n, 0, 0, 0); }
  static HolElem2 a(int n) { return make(n, 1, 0, 0); }
  static HolElem2 x(int n) { return make(n, 0, 1, 0); }
  static HolElem2 y(int n) { return make(n, 0, 0, 1); }
  // g -> (g + t) * u with u odd.
  static HolElem2 from_affine(int n, u64 t, u64 u);

  u64 modulus() const { return u64{1} << n; }
  u64 multiplier() const;
  bool is_identity() const { return alpha == 0 && beta == 0 && gamma == 0; }
  bool is_translation() const { return beta == 0 && gamma == 0; }

  // Dense index in [0, 2^{2n-1}).
  u64 code() const { return (alpha << (n - 1)) | (u64{beta} << (n - 2)) | gamma; }
  static HolElem2 from_code(int n, u64 code);

  auto operator<=>(const HolElem2&) const = default;
};

inline u64 hol_order(int n) { return u64{1} << (2 * n - 1); }

HolElem2 compose(const HolElem2& h1, const HolElem2& h2);
HolElem2 inverse(const HolElem2& h);
// w^{-1} h w
HolElem2 conjugate(const HolElem2& h, const HolElem2& w);
u64 act(const HolElem2& h, u64 g);

// Closed form via the 5-power sums; negative r goes through the inverse.
HolElem2 power(const HolElem2& h, std::int64_t r);
HolElem2 power_iterated(const HolElem2& h, std::uint64_t r);

u64 order(const HolElem2& h);
u64 order_iterated(const HolElem2& h);

struct ConjugateForm {
  HolElem2 form;
  HolElem2 conjugator;  // rho with rho h rho^{-1} == form
};
ConjugateForm conj_normal_form(const HolElem2& h);

// Generators of the stabilizer of g in Hol(Z_{2^n}).
std::pair<HolElem2, HolElem2> point_stabilizer(u64 g, int n);

std::vector<std::uint32_t> to_images(const HolElem2& h);

// ---------------------------------------------------------------------------

struct AffineMap {
  u64 n = 1;
  u64 t = 0;
  u64 m = 1;

  static AffineMap make(u64 n, u64 t, u64 m);
  static AffineMap identity(u64 n) { return make(n, 0, 1); }
  static AffineMap translation(u64 n, u64 t) { return make(n, t, 1); }
  static AffineMap multiplier(u64 n, u64 m) { return make(n, 0, m); }

  bool is_identity() const { return t == 0 && m == 1 % n; }
  auto operator<=>(const AffineMap&) const = default;
};

AffineMap compose(const AffineMap& h1, const AffineMap& h2);
AffineMap inverse(const AffineMap& h);
AffineMap conjugate(const AffineMap& h, const AffineMap& w);
AffineMap power(const AffineMap& h, std::int64_t r);
u64 act(const AffineMap& h, u64 g);
u64 order(const AffineMap& h);
std::vector<std::uint32_t> to_images(const AffineMap& h);

u64 mod_mul(u64 a, u64 b, u64 n);
u64 mod_inverse(u64 a, u64 n);  // throws ContractError if gcd(a, n) != 1

struct PrimePower {
  u64 p = 0;
  int k = 0;
  u64 q = 0;  // p^k
};

struct CrtFrame {
  u64 n = 1;
  std::vector<PrimePower> parts;  // increasing p

  // Residue with the given coordinates (one per part).
  u64 combine(const std::vector<u64>& coords) const;
  std::vector<u64> split(u64 r) const;
};

CrtFrame crt_decompose(u64 n);
std::vector<AffineMap> crt_map(const CrtFrame& frame, const AffineMap& h);
AffineMap crt_lift(const CrtFrame& frame, const std::vector<AffineMap>& coords);

struct Centralizer {
  u64 modulus = 1;
  std::vector<u64> multipliers;  // sorted
  u64 order() const { return multipliers.size(); }
  bool is_cyclic() const;
};

// Units u mod p^k with u == 1 mod p^m, i.e. those fixing the order-p^m subgroup.
Centralizer centralizer_in_aut(u64 p, int k, int m);
// Product over the frame, N = prod Z_{p_i^{m_i}}.
Centralizer centralizer_in_aut(const std::vector<int>& m, const CrtFrame& frame);

}  // namespace holocirc
