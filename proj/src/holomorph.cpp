#include "holocirc/holomorph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "holocirc/error.hpp"
#include "holocirc/simd/kernels.hpp"

namespace holocirc {

using numtheory::Modulus2n;

namespace {

void require_same(int n1, int n2) {
  if (n1 != n2) throw ContractError("holomorph elements over different moduli");
}

// 5^e mod 2^n for e in [0, 2^{n-2}).
u64 five_pow(const Modulus2n& mod, u64 e) { return mod.pow(5, e); }

u64 gamma_mask(int n) { return (u64{1} << (n - 2)) - 1; }

// m^{-1} for m = (-1)^beta 5^gamma, using 5^{2^{n-2}} = 1.
u64 multiplier_inverse(const HolElem2& h, const Modulus2n& mod) {
  u64 v = five_pow(mod, (gamma_mask(h.n) + 1 - h.gamma) & gamma_mask(h.n));
  return h.beta ? mod.neg(v) : v;
}

}  // namespace

HolElem2 HolElem2::make(int n, u64 alpha, unsigned beta, u64 gamma) {
  if (n < 3 || n > numtheory::kMaxExponent)
    throw ContractError("HolElem2 needs 3 <= n <= 62, got " + std::to_string(n));
  HolElem2 h;
  h.n = n;
  h.alpha = alpha & ((u64{1} << n) - 1);
  h.beta = beta & 1;
  h.gamma = gamma & gamma_mask(n);
  return h;
}

HolElem2 HolElem2::from_affine(int n, u64 t, u64 u) {
  Modulus2n mod(n);
  u = mod.reduce(u);
  if ((u & 1) == 0) throw ContractError("multiplier must be odd");
  unsigned beta = (u & 3) == 3;
  u64 pos = beta ? mod.neg(u) : u;
  return make(n, t, beta, numtheory::dlog5(pos, n));
}

HolElem2 HolElem2::from_code(int n, u64 code) {
  return make(n, code >> (n - 1), (code >> (n - 2)) & 1, code & gamma_mask(n));
}

u64 HolElem2::multiplier() const {
  Modulus2n mod(n);
  u64 v = five_pow(mod, gamma);
  return beta ? mod.neg(v) : v;
}

HolElem2 compose(const HolElem2& h1, const HolElem2& h2) {
  require_same(h1.n, h2.n);
  Modulus2n mod(h1.n);
  u64 t = mod.add(h1.alpha, mod.mul(h2.alpha, multiplier_inverse(h1, mod)));
  return HolElem2::make(h1.n, t, h1.beta ^ h2.beta, h1.gamma + h2.gamma);
}

HolElem2 inverse(const HolElem2& h) {
  Modulus2n mod(h.n);
  u64 t = mod.neg(mod.mul(h.alpha, h.multiplier()));
  return HolElem2::make(h.n, t, h.beta, (gamma_mask(h.n) + 1 - h.gamma));
}

HolElem2 conjugate(const HolElem2& h, const HolElem2& w) {
  return compose(compose(inverse(w), h), w);
}

u64 act(const HolElem2& h, u64 g) {
  Modulus2n mod(h.n);
  return mod.mul(mod.add(g, h.alpha), h.multiplier());
}

HolElem2 power(const HolElem2& h, std::int64_t r) {
  if (r < 0) {
    u64 mag = static_cast<u64>(-(r + 1)) + 1;
    if (mag > static_cast<u64>(INT64_MAX)) mag = static_cast<u64>(INT64_MAX) + 1;
    // h^r = (h^{-1})^{|r|}; |r| reduced mod the order keeps it representable
    return power(inverse(h), static_cast<std::int64_t>(mag % order(h)));
  }
  const u64 ur = static_cast<u64>(r);
  const int n = h.n;
  if (ur == 0) return HolElem2::identity(n);
  Modulus2n mod(n);
  u64 gamma_r = static_cast<u64>((static_cast<numtheory::u128>(ur) * h.gamma) & gamma_mask(n));
  u64 sum;
  if (h.beta == 0) {
    sum = h.gamma == 0 ? mod.reduce(ur) : numtheory::geom_sum_M(ur, h.gamma, n).value;
    return HolElem2::make(n, mod.mul(h.alpha, sum), 0, gamma_r);
  }
  if (ur % 2 == 0 && h.gamma != 0)
    sum = numtheory::alt_sum_L(ur, h.gamma, n).value;
  else
    sum = numtheory::alt_partial_sum(ur, h.gamma, n);
  return HolElem2::make(n, mod.mul(h.alpha, sum), ur & 1, gamma_r);
}

HolElem2 power_iterated(const HolElem2& h, std::uint64_t r) {
  HolElem2 acc = HolElem2::identity(h.n);
  for (std::uint64_t i = 0; i < r; ++i) acc = compose(acc, h);
  return acc;
}

u64 order(const HolElem2& h) {
  const int n = h.n;
  const u64 N = u64{1} << n;
  if (h.beta == 0) {
    u64 ty = h.gamma == 0 ? 1 : (u64{1} << (n - 2)) / numtheory::val2(h.gamma).two_part;
    u64 ta = h.alpha == 0 ? 1 : N / numtheory::val2(h.alpha).two_part;
    return std::max(ty, ta);
  }
  if (h.gamma == 0) return 2;
  u64 g2 = numtheory::val2(h.gamma).two_part;
  return (N / 2) / (g2 * (h.alpha % 2 == 0 ? 2 : 1));
}

u64 order_iterated(const HolElem2& h) {
  HolElem2 acc = h;
  u64 r = 1;
  while (!acc.is_identity()) {
    acc = compose(acc, h);
    ++r;
  }
  return r;
}

ConjugateForm conj_normal_form(const HolElem2& h) {
  if (h.alpha == 0) return {h, HolElem2::identity(h.n)};
  auto split = numtheory::val2(h.alpha);
  HolElem2 rho = HolElem2::from_affine(h.n, 0, split.odd_part);
  HolElem2 form = compose(compose(rho, h), inverse(rho));
  return {form, rho};
}

std::pair<HolElem2, HolElem2> point_stabilizer(u64 g, int n) {
  Modulus2n mod(n);
  g = mod.reduce(g);
  if (g == 0) return {HolElem2::x(n), HolElem2::y(n)};
  u64 inv5 = mod.inverse(5);
  HolElem2 first = HolElem2::make(n, mod.neg(mod.mul(2, g)), 1, 0);
  HolElem2 second = HolElem2::make(n, mod.mul(g, mod.sub(inv5, 1)), 0, 1);
  return {first, second};
}

std::vector<std::uint32_t> to_images(const HolElem2& h) {
  if (h.n > 24) throw ResourceBoundError("permutation image of Hol(Z_2^n) needs n <= 24");
  std::vector<std::uint32_t> out(std::size_t{1} << h.n);
  simd::affine_images_pow2(static_cast<std::uint32_t>(h.alpha),
                           static_cast<std::uint32_t>(h.multiplier()),
                           static_cast<std::uint32_t>(h.modulus() - 1), out.data(), out.size());
  return out;
}

// ---------------------------------------------------------------------------

u64 mod_mul(u64 a, u64 b, u64 n) {
  return static_cast<u64>((static_cast<numtheory::u128>(a) * b) % n);
}

u64 mod_inverse(u64 a, u64 n) {
  if (n == 1) return 0;
  __int128 r0 = n, r1 = a % n, s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
  }
  if (r0 != 1) throw ContractError("no inverse: gcd(" + std::to_string(a) + ", " +
                                   std::to_string(n) + ") != 1");
  __int128 v = s0 % static_cast<__int128>(n);
  if (v < 0) v += n;
  return static_cast<u64>(v);
}

AffineMap AffineMap::make(u64 n, u64 t, u64 m) {
  if (n < 1) throw ContractError("affine modulus must be positive");
  AffineMap h;
  h.n = n;
  h.t = t % n;
  h.m = m % n;
  if (std::gcd(h.m, n) != 1 && n != 1)
    throw ContractError("affine multiplier is not a unit mod " + std::to_string(n));
  return h;
}

AffineMap compose(const AffineMap& h1, const AffineMap& h2) {
  if (h1.n != h2.n) throw ContractError("affine maps over different moduli");
  const u64 n = h1.n;
  u64 t = (h1.t + mod_mul(h2.t, mod_inverse(h1.m, n), n)) % n;
  return AffineMap::make(n, t, mod_mul(h1.m, h2.m, n));
}

AffineMap inverse(const AffineMap& h) {
  const u64 n = h.n;
  u64 t = (n - mod_mul(h.t, h.m, n)) % n;
  return AffineMap::make(n, t, mod_inverse(h.m, n));
}

AffineMap conjugate(const AffineMap& h, const AffineMap& w) {
  return compose(compose(inverse(w), h), w);
}

AffineMap power(const AffineMap& h, std::int64_t r) {
  AffineMap base = r < 0 ? inverse(h) : h;
  u64 e = r < 0 ? static_cast<u64>(-(r + 1)) + 1 : static_cast<u64>(r);
  AffineMap acc = AffineMap::identity(h.n);
  while (e) {
    if (e & 1) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1;
  }
  return acc;
}

u64 act(const AffineMap& h, u64 g) { return mod_mul((g + h.t) % h.n, h.m, h.n); }

u64 order(const AffineMap& h) {
  AffineMap acc = h;
  u64 r = 1;
  while (!acc.is_identity()) {
    acc = compose(acc, h);
    ++r;
  }
  return r;
}

std::vector<std::uint32_t> to_images(const AffineMap& h) {
  if (h.n > (u64{1} << 24)) throw ResourceBoundError("affine permutation too large");
  std::vector<std::uint32_t> out(h.n);
  for (u64 g = 0; g < h.n; ++g) out[g] = static_cast<std::uint32_t>(act(h, g));
  return out;
}

CrtFrame crt_decompose(u64 n) {
  if (n < 2) throw ContractError("CRT frame needs n >= 2");
  CrtFrame f;
  f.n = n;
  u64 rest = n;
  for (u64 p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    PrimePower pp{p, 0, 1};
    while (rest % p == 0) {
      rest /= p;
      ++pp.k;
      pp.q *= p;
    }
    f.parts.push_back(pp);
  }
  if (rest > 1) f.parts.push_back({rest, 1, rest});
  return f;
}

u64 CrtFrame::combine(const std::vector<u64>& coords) const {
  if (coords.size() != parts.size()) throw ContractError("CRT coordinate count mismatch");
  u64 r = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    u64 q = parts[i].q, rest = n / q;
    u64 coef = mod_mul(rest, mod_inverse(rest % q, q), n);
    r = (r + mod_mul(coords[i] % q, coef, n)) % n;
  }
  return r;
}

std::vector<u64> CrtFrame::split(u64 r) const {
  std::vector<u64> out;
  for (const auto& pp : parts) out.push_back(r % pp.q);
  return out;
}

std::vector<AffineMap> crt_map(const CrtFrame& frame, const AffineMap& h) {
  if (h.n != frame.n) throw ContractError("affine map modulus differs from the frame");
  std::vector<AffineMap> out;
  for (const auto& pp : frame.parts) out.push_back(AffineMap::make(pp.q, h.t, h.m));
  return out;
}

AffineMap crt_lift(const CrtFrame& frame, const std::vector<AffineMap>& coords) {
  std::vector<u64> ts, ms;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i >= frame.parts.size() || coords[i].n != frame.parts[i].q)
      throw ContractError("coordinate maps do not match the frame");
    ts.push_back(coords[i].t);
    ms.push_back(coords[i].m);
  }
  return AffineMap::make(frame.n, frame.combine(ts), frame.combine(ms));
}

bool Centralizer::is_cyclic() const {
  const u64 ord = order();
  for (u64 u : multipliers) {
    u64 v = u % modulus, r = 1;
    while (v != 1 % modulus) {
      v = mod_mul(v, u, modulus);
      ++r;
    }
    if (r == ord) return true;
  }
  return false;
}

Centralizer centralizer_in_aut(u64 p, int k, int m) {
  if (k < 1 || m < 1 || m > k)
    throw ContractError("centralizer exponents need 1 <= m <= k");
  u64 q = 1, pm = 1;
  for (int i = 0; i < k; ++i) q *= p;
  for (int i = 0; i < m; ++i) pm *= p;
  Centralizer c;
  c.modulus = q;
  for (u64 u = 1 % q; c.multipliers.size() < q / pm; u += pm) c.multipliers.push_back(u % q);
  std::sort(c.multipliers.begin(), c.multipliers.end());
  return c;
}

Centralizer centralizer_in_aut(const std::vector<int>& m, const CrtFrame& frame) {
  if (m.size() != frame.parts.size()) throw ContractError("one exponent per prime expected");
  std::vector<Centralizer> pieces;
  for (std::size_t i = 0; i < m.size(); ++i)
    pieces.push_back(centralizer_in_aut(frame.parts[i].p, frame.parts[i].k, m[i]));
  Centralizer out;
  out.modulus = frame.n;
  std::vector<u64> coords(m.size());
  // odometer over the per-prime choices
  std::vector<std::size_t> idx(m.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < m.size(); ++i) coords[i] = pieces[i].multipliers[idx[i]];
    out.multipliers.push_back(frame.combine(coords));
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == pieces[i].multipliers.size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  std::sort(out.multipliers.begin(), out.multipliers.end());
  return out;
}

}  // namespace holocirc
