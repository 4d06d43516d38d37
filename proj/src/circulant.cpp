#include "holocirc/circulant.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "holocirc/error.hpp"
#include "holocirc/parallel.hpp"
#include "holocirc/simd/kernels.hpp"

namespace holocirc {

namespace {

std::uint64_t low_mask(u64 n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

std::uint64_t rotate(std::uint64_t s, u64 by, u64 n) {
  if (by == 0) return s;
  return ((s << by) | (s >> (n - by))) & low_mask(n);
}

bool power_of_two(u64 v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

Circulant Circulant::build(u64 n, const std::vector<u64>& S) {
  if (n < 2 || n > kMaxCirculantOrder)
    throw ContractError("circulant order must be in [2, 64], got " + std::to_string(n));
  Circulant g;
  g.n_ = n;
  for (u64 s : S) {
    if (s >= n) throw ContractError("connection-set residue " + std::to_string(s) + " >= n");
    if (s == 0) throw ContractError("connection set contains 0");
    g.s_ |= std::uint64_t{1} << s;
  }
  for (u64 s : S)
    if (!g.contains(n - s))
      throw ContractError("connection set is not inverse-closed: " + std::to_string(n - s) +
                          " missing");
  g.rows_.resize(n);
  for (u64 v = 0; v < n; ++v) g.rows_[v] = rotate(g.s_, v, n);
  return g;
}

Circulant Circulant::from_pair_mask(u64 n, std::uint64_t mask) {
  if (n < 2) throw ContractError("circulant order must be >= 2");
  if (pair_orbit_count(n) < 64 && (mask >> pair_orbit_count(n)) != 0)
    throw ContractError("pair mask has bits beyond the orbit count");
  std::vector<u64> S;
  for (u64 i = 0; i < pair_orbit_count(n); ++i)
    if ((mask >> i) & 1) {
      u64 s = i + 1;
      S.push_back(s);
      if (n - s != s) S.push_back(n - s);
    }
  return build(n, S);
}

std::vector<u64> Circulant::connection_set() const {
  std::vector<u64> out;
  for (u64 s = 1; s < n_; ++s)
    if (contains(s)) out.push_back(s);
  return out;
}

std::size_t Circulant::valency() const { return static_cast<std::size_t>(std::popcount(s_)); }

bool Circulant::connected() const {
  u64 g = n_;
  for (u64 s : connection_set()) g = std::gcd(g, s);
  return g == 1;
}

bool Circulant::degenerate() const {
  return s_ == 0 || (n_ % 2 == 0 && s_ == (std::uint64_t{1} << (n_ / 2)));
}

std::uint64_t Circulant::pair_mask() const {
  std::uint64_t m = 0;
  for (u64 i = 0; i < pair_orbit_count(n_); ++i)
    if (contains(i + 1)) m |= std::uint64_t{1} << i;
  return m;
}

std::vector<std::pair<u64, u64>> Circulant::edges() const {
  std::vector<std::pair<u64, u64>> out;
  for (u64 u = 0; u < n_; ++u)
    for (u64 v = u + 1; v < n_; ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

std::optional<AffineMap> as_affine(const Perm& p) {
  const u64 n = p.degree();
  if (n < 2) return AffineMap::identity(n == 0 ? 1 : n);
  const u64 c = p[0];
  const u64 m = (p[1] + n - c) % n;
  if (std::gcd(m, n) != 1) return std::nullopt;
  for (u64 g = 0; g < n; ++g)
    if (p[g] != (c + mod_mul(g, m, n)) % n) return std::nullopt;
  // p(g) = c + g m = (g + t) m with t = c / m
  return AffineMap::make(n, mod_mul(c, mod_inverse(m, n), n), m);
}

std::vector<u64> aut_G_S(const Circulant& g) {
  const u64 n = g.order();
  std::vector<u64> out;
  const auto S = g.connection_set();
  for (u64 m = 1; m < n; ++m) {
    if (std::gcd(m, n) != 1) continue;
    bool ok = std::all_of(S.begin(), S.end(), [&](u64 s) { return g.contains(mod_mul(m, s, n)); });
    if (ok) out.push_back(m);
  }
  return out;
}

bool is_normal_cayley(const Circulant& g, const AutResult& aut) {
  const u64 n = g.order();
  const Perm& rho = aut.generators.front();
  for (const auto& s : aut.generators) {
    Perm c = rho.conjugate_by(s);
    const u64 d = c[0];
    for (u64 v = 0; v < n; ++v)
      if (c[v] != (v + d) % n) return false;
  }
  return true;
}

bool is_normal_cayley(const Circulant& g) { return is_normal_cayley(g, automorphism_group(g)); }

// ---------------------------------------------------------------------------

namespace {

// Elements of G_R x| A as affine maps, A a multiplier set closed under products.
std::vector<AffineMap> affine_group(u64 n, const std::vector<u64>& A) {
  std::vector<AffineMap> out;
  for (u64 t = 0; t < n; ++t)
    for (u64 m : A) out.push_back(AffineMap::make(n, t, m));
  return out;
}

std::vector<AffineMap> cyclic_members(const AffineMap& h) {
  std::vector<AffineMap> out;
  AffineMap p = AffineMap::identity(h.n);
  do {
    out.push_back(p);
    p = compose(p, h);
  } while (!p.is_identity());
  std::sort(out.begin(), out.end());
  return out;
}

bool fixed_point_free(const AffineMap& h) {
  for (u64 g = 0; g < h.n; ++g)
    if (act(h, g) == g) return false;
  return true;
}

}  // namespace

NnnVerdict nnn_verdict(const Circulant& g, const AutResult& aut) {
  NnnVerdict v;
  v.aut_order = aut.order;
  v.is_normal_for_GR = is_normal_cayley(g, aut);
  if (!v.is_normal_for_GR) return v;

  const u64 n = g.order();
  const auto A = aut_G_S(g);
  const auto all = affine_group(n, A);
  const AffineMap rho = AffineMap::translation(n, 1);
  std::vector<AffineMap> gens{rho};
  for (u64 m : A) gens.push_back(AffineMap::multiplier(n, m));

  std::set<std::vector<AffineMap>> seen;
  const auto gr = cyclic_members(rho);
  for (const auto& h : all) {
    u64 len = 0, x = 0;
    do {
      x = act(h, x);
      ++len;
    } while (x != 0);
    if (len != n) continue;
    auto members = cyclic_members(h);
    if (!seen.insert(members).second) continue;
    auto in_h = [&](const AffineMap& q) { return std::binary_search(members.begin(), members.end(), q); };
    CyclicRegularCopy c;
    c.generator = h;
    c.is_gr = members == gr;
    c.normal = std::all_of(gens.begin(), gens.end(),
                           [&](const AffineMap& w) { return in_h(conjugate(h, w)); });
    c.conjugate_to_gr = std::any_of(all.begin(), all.end(),
                                    [&](const AffineMap& w) { return in_h(conjugate(rho, w)); });
    v.regular_cyclic_subgroups.push_back(c);
    if (!c.is_gr && !c.normal) {
      v.nnn_distinct = true;
      if (!c.conjugate_to_gr) v.nnn_nonconjugate = true;
      if (!v.witness) v.witness = std::make_pair(rho, h);
    }
  }
  v.nnn = v.nnn_distinct;
  return v;
}

NnnVerdict nnn_verdict(const Circulant& g) { return nnn_verdict(g, automorphism_group(g)); }

WSubgroups w_subgroups(const Circulant& g) {
  WSubgroups out;
  const u64 n = g.order();
  out.degenerate = g.set_bits() == 0;
  for (u64 d = 2; d < n; ++d) {
    if (n % d) continue;
    // S \ <d> must be a union of cosets s + <d>
    bool ok = true;
    for (u64 s : g.connection_set()) {
      if (s % d == 0) continue;
      for (u64 h = d; h < n && ok; h += d)
        if (!g.contains((s + h) % n)) ok = false;
      if (!ok) break;
    }
    if (ok) out.divisors.push_back(d);
  }
  return out;
}

LexBound lex_nonnormal_bound(int k, int t) {
  if (k < 2 || k > 62 || t < 1 || t > k - 1)
    throw ContractError("lexicographic bound needs 1 <= t <= k-1 <= 61");
  LexBound b;
  const numtheory::u128 lhs = (numtheory::u128{1} << (k - t)) * static_cast<unsigned>(t) +
                              static_cast<unsigned>(k - t);
  const numtheory::u128 rhs = 2 * static_cast<numtheory::u128>(k) - 1;
  b.holds = lhs >= rhs;
  b.equality = lhs == rhs;
  b.lhs = lhs > UINT64_MAX ? UINT64_MAX : static_cast<u64>(lhs);
  b.rhs = static_cast<u64>(rhs);
  return b;
}

ThetaCheck verify_theta(const Circulant& g, const Perm& theta) {
  ThetaCheck c;
  const u64 n = g.order();
  if (theta.degree() != n) return c;
  c.edge_preserving = simd::preserves_edges(g.rows().data(), theta.data(), n);
  c.fixes_zero = theta[0] == 0;
  c.fixes_generator = n > 1 && theta[1] == 1;
  // an element of Aut(G) is g -> g * theta(1); theta is outside it unless it is that map
  bool is_multiplier = true;
  for (u64 v = 0; v < n; ++v)
    if (theta[v] != mod_mul(v, theta[1], n)) is_multiplier = false;
  c.outside_aut_gs = !is_multiplier;
  return c;
}

std::optional<ThetaWitness> theta_witness_p_odd(const Circulant& g, u64 p1) {
  const u64 n = g.order();
  if (p1 < 3 || p1 % 2 == 0) throw ContractError("theta_witness_p_odd needs an odd prime");
  for (u64 d = 2; d * d <= p1; ++d)
    if (p1 % d == 0) throw ContractError("theta_witness_p_odd needs a prime");
  if (n % (p1 * p1)) throw ContractError("theta_witness_p_odd needs p1^2 | n");
  u64 q = 1;
  int k1 = 0;
  while (n % (q * p1) == 0) {
    q *= p1;
    ++k1;
  }
  const u64 rest = n / q, pk1 = q / p1;
  // m == 1 + p1^{k1-1} (mod p1^{k1}), m == 1 (mod n / p1^{k1})
  CrtFrame two{n, {{p1, k1, q}, {rest, 1, rest}}};
  std::vector<u64> coords{(1 + pk1) % q, 1 % rest};
  u64 m = rest == 1 ? (1 + pk1) % q : two.combine(coords);
  for (u64 s : g.connection_set())
    if (!g.contains(mod_mul(m, s, n))) return std::nullopt;
  const u64 shift = rest * pk1;  // generator of the order-p1 subgroup
  std::vector<std::uint32_t> img(n);
  for (u64 r = 0; r < n; ++r)
    img[r] = static_cast<std::uint32_t>(r % p1 == 2 % p1 ? (r + shift) % n : r);
  ThetaWitness w;
  w.kind = "p-odd";
  w.prime = p1;
  w.multiplier = m;
  w.theta = Perm(img);
  w.check = verify_theta(g, w.theta);
  return w;
}

std::optional<ThetaWitness> theta_witness_2part(const Circulant& g) {
  const u64 n = g.order();
  const int k1 = std::countr_zero(n);
  if (k1 < 4) throw ContractError("theta_witness_2part needs 16 | n");
  const u64 q = u64{1} << k1, rest = n >> k1;
  const u64 m2 = numtheory::Modulus2n(k1).pow(5, u64{1} << (k1 - 4));
  u64 m = m2;
  if (rest > 1) {
    CrtFrame two{n, {{2, k1, q}, {rest, 1, rest}}};
    m = two.combine({m2, 1});
  }
  for (u64 s : g.connection_set())
    if (!g.contains(mod_mul(m, s, n))) return std::nullopt;
  // the a_1^2 coset of <a_1^4> x B is the set of residues == 2 mod 4
  std::vector<std::uint32_t> img(n);
  for (u64 r = 0; r < n; ++r)
    img[r] = static_cast<std::uint32_t>(r % 4 == 2 ? (r + n / 2) % n : r);
  ThetaWitness w;
  w.kind = "2-part";
  w.prime = 2;
  w.multiplier = m;
  w.theta = Perm(img);
  w.check = verify_theta(g, w.theta);
  return w;
}

std::vector<ThetaWitness> theta_witnesses(const Circulant& g) {
  std::vector<ThetaWitness> out;
  const u64 n = g.order();
  for (const auto& pp : crt_decompose(n).parts) {
    if (pp.p == 2 && pp.k >= 4) {
      if (auto w = theta_witness_2part(g)) out.push_back(std::move(*w));
    } else if (pp.p != 2 && pp.k >= 2) {
      if (auto w = theta_witness_p_odd(g, pp.p)) out.push_back(std::move(*w));
    }
  }
  return out;
}

std::vector<u64> unit_group(u64 n) {
  std::vector<u64> out;
  for (u64 u = 0; u < n; ++u)
    if (std::gcd(u, n) == 1) out.push_back(u % n);
  if (n == 1) out = {0};
  return out;
}

std::vector<std::vector<AffineMap>> abelian_regular_affine(u64 n, const std::vector<u64>& A) {
  std::vector<AffineMap> fpf;
  for (const auto& h : affine_group(n, A))
    if (fixed_point_free(h)) fpf.push_back(h);

  // Breadth-first over semiregular abelian subgroups, extending by commuting
  // fixed-point-free elements.
  using Group = std::vector<AffineMap>;  // sorted
  std::set<Group> level{{AffineMap::identity(n)}};
  std::set<Group> regular;
  while (!level.empty()) {
    std::set<Group> next;
    for (const auto& K : level) {
      for (const auto& h : fpf) {
        if (std::binary_search(K.begin(), K.end(), h)) continue;
        bool commutes = std::all_of(K.begin(), K.end(), [&](const AffineMap& k) {
          return compose(k, h) == compose(h, k);
        });
        if (!commutes) continue;
        // <K, h> = union of K h^i
        Group G;
        AffineMap p = AffineMap::identity(n);
        bool ok = true;
        do {
          for (const auto& k : K) {
            AffineMap e = compose(k, p);
            if (!e.is_identity() && !fixed_point_free(e)) ok = false;
            G.push_back(e);
          }
          p = compose(p, h);
        } while (ok && !std::binary_search(K.begin(), K.end(), p));
        if (!ok) continue;
        std::sort(G.begin(), G.end());
        G.erase(std::unique(G.begin(), G.end()), G.end());
        if (G.size() > n) continue;
        if (G.size() == n)
          regular.insert(G);
        else
          next.insert(G);
      }
    }
    level = std::move(next);
  }
  return {regular.begin(), regular.end()};
}

AbelianRegularReport abelian_regular_subgroups(const Circulant& g) {
  AbelianRegularReport rep;
  const auto aut = automorphism_group(g);
  rep.normal = is_normal_cayley(g, aut);
  if (!rep.normal) return rep;
  const u64 n = g.order();
  rep.subgroups = abelian_regular_affine(n, aut_G_S(g));
  for (const auto& H : rep.subgroups) {
    u64 translations = 0;
    for (const auto& e : H) translations += e.m == 1 % n;
    rep.gr_index.push_back(n / translations);
  }
  return rep;
}

AbelianScan abelian_regular_scan(u64 n, unsigned jobs) {
  AbelianScan scan;
  scan.n = n;
  const std::uint64_t total = census_size(n);
  std::vector<AbelianRegularReport> reps(total);
  std::vector<NnnVerdict> verdicts(total);
  parallel_for(total, jobs, [&](std::size_t mask) {
    auto g = Circulant::from_pair_mask(n, mask);
    reps[mask] = abelian_regular_subgroups(g);
    if (n % 8 != 0 && reps[mask].normal) verdicts[mask] = nnn_verdict(g);
  });
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    auto g = Circulant::from_pair_mask(n, mask);
    if (g.degenerate()) continue;
    ++scan.circulants;
    const auto& r = reps[mask];
    if (!r.normal) continue;
    ++scan.normal;
    std::string label = "n=" + std::to_string(n) + " mask=" + std::to_string(mask);
    if (n % 4 != 0 && r.subgroups.size() != 1) {
      ++scan.uniqueness_failures;
      scan.counterexamples.push_back(label + ": " + std::to_string(r.subgroups.size()) +
                                     " abelian regular subgroups");
    }
    for (u64 idx : r.gr_index)
      if (!power_of_two(idx)) {
        ++scan.index_failures;
        scan.counterexamples.push_back(label + ": index " + std::to_string(idx));
      }
    if (n % 8 != 0 && verdicts[mask].nnn) {
      ++scan.nnn_found;
      scan.counterexamples.push_back(label + ": NNN");
    }
  }
  return scan;
}

ScanRecord scan_one(u64 n, std::uint64_t mask) {
  auto g = Circulant::from_pair_mask(n, mask);
  ScanRecord r;
  r.n = n;
  r.mask = mask;
  r.S = g.connection_set();
  r.degenerate = g.degenerate();
  r.connected = g.connected();
  auto aut = automorphism_group(g);
  r.aut_order = aut.order;
  auto v = nnn_verdict(g, aut);
  r.normal = v.is_normal_for_GR;
  r.nnn = v.nnn;
  r.nnn_nonconjugate = v.nnn_nonconjugate;
  r.w_subgroups = w_subgroups(g).divisors;
  r.witnesses = theta_witnesses(g);
  return r;
}

}  // namespace holocirc
