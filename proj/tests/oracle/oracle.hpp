#pragma once

// Brute-force reference implementations for the tests. Nothing here calls
// into the library: elements of the holomorph are plain image tables built
// from the defining formula, groups are closed by breadth-first search, and
// graph automorphisms are counted by exhaustive search.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Img = std::vector<int>;  // permutation of {0..d-1}

inline Img compose(const Img& a, const Img& b) {  // a first, then b
  Img r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}
inline Img inverse(const Img& a) {
  Img r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
  return r;
}
inline Img identity(int d) {
  Img r(d);
  std::iota(r.begin(), r.end(), 0);
  return r;
}
inline bool is_identity(const Img& a) { return a == identity(static_cast<int>(a.size())); }

inline std::uint64_t perm_order(const Img& a) {
  std::uint64_t k = 1;
  Img p = a;
  while (!is_identity(p)) {
    p = compose(p, a);
    ++k;
  }
  return k;
}

// 5^-1 mod 2^n by search
inline std::int64_t inv5(int n) {
  const std::int64_t M = std::int64_t{1} << n;
  for (std::int64_t z = 1; z < M; ++z)
    if (5 * z % M == 1) return z;
  return -1;
}

inline std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t M) {
  std::int64_t r = 1 % M;
  for (std::int64_t i = 0; i < e; ++i) r = r * b % M;
  return r;
}

// g -> (g + alpha) * (-1)^beta * 5^gamma  mod 2^n
inline Img hol(int n, std::int64_t alpha, int beta, std::int64_t gamma) {
  const std::int64_t M = std::int64_t{1} << n;
  const std::int64_t m = pow_mod(5, gamma, M) * (beta ? M - 1 : 1) % M;
  Img r(M);
  for (std::int64_t g = 0; g < M; ++g) r[g] = static_cast<int>(((g + alpha) % M + M) % M * m % M);
  return r;
}

// All 2^{2n-1} elements.
inline std::vector<Img> hol_elements(int n) {
  std::vector<Img> out;
  const std::int64_t M = std::int64_t{1} << n;
  for (std::int64_t a = 0; a < M; ++a)
    for (int b = 0; b < 2; ++b)
      for (std::int64_t c = 0; c < M / 4; ++c) out.push_back(hol(n, a, b, c));
  return out;
}

using Group = std::set<Img>;

inline Group close(const std::vector<Img>& gens, int d, std::size_t cap = 1u << 20) {
  Group g{identity(d)};
  std::vector<Img> frontier{identity(d)};
  while (!frontier.empty()) {
    std::vector<Img> next;
    for (const auto& e : frontier)
      for (const auto& s : gens) {
        Img p = compose(e, s);
        if (g.insert(p).second) {
          next.push_back(p);
          if (g.size() > cap) return g;
        }
      }
    frontier.swap(next);
  }
  return g;
}

inline bool fixed_point_free(const Img& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] == static_cast<int>(i)) return false;
  return true;
}

inline bool semiregular(const Group& g) {
  for (const auto& e : g)
    if (!is_identity(e) && !fixed_point_free(e)) return false;
  return true;
}

inline bool regular(const Group& g, int d) {
  return semiregular(g) && g.size() == static_cast<std::size_t>(d);
}

inline Group conjugate(const Group& g, const Img& w) {  // w^{-1} g w
  Group out;
  const Img wi = inverse(w);
  for (const auto& e : g) out.insert(compose(compose(wi, e), w));
  return out;
}

inline bool normal_in(const Group& s, const std::vector<Img>& ambient_gens) {
  for (const auto& w : ambient_gens)
    if (conjugate(s, w) != s) return false;
  return true;
}

// Every regular subgroup of Hol(Z_{2^n}), grown one generator at a time.
inline std::vector<Group> regular_subgroups(int n) {
  const int d = 1 << n;
  auto H = hol_elements(n);
  std::vector<Img> fpf;
  for (const auto& h : H)
    if (fixed_point_free(h)) fpf.push_back(h);
  std::set<Group> seen{Group{identity(d)}};
  std::vector<Group> frontier{Group{identity(d)}};
  std::vector<Group> regs;
  while (!frontier.empty()) {
    std::vector<Group> next;
    for (const auto& K : frontier) {
      for (const auto& h : fpf) {
        if (K.count(h)) continue;
        std::vector<Img> gens(K.begin(), K.end());
        gens.push_back(h);
        Group G = close(gens, d, d);
        if (G.size() > static_cast<std::size_t>(d) || !semiregular(G)) continue;
        if (!seen.insert(G).second) continue;
        if (G.size() == static_cast<std::size_t>(d))
          regs.push_back(G);
        else
          next.push_back(G);
      }
    }
    frontier.swap(next);
  }
  return regs;
}

// Number of Hol-conjugacy classes among the given subgroups.
inline std::size_t conjugacy_classes(const std::vector<Group>& gs, int n) {
  auto H = hol_elements(n);
  std::vector<int> cls(gs.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = next;
    std::set<Group> orbit;
    for (const auto& w : H) orbit.insert(conjugate(gs[i], w));
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      if (cls[j] < 0 && orbit.count(gs[j])) cls[j] = next;
    ++next;
  }
  return static_cast<std::size_t>(next);
}

inline std::vector<int> cycle_lengths(const Img& a) {
  std::vector<int> out;
  std::vector<char> seen(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = a[j]) {
      seen[j] = 1;
      ++len;
    }
    out.push_back(len);
  }
  return out;
}

inline std::uint64_t order_by_cycles(const Img& a) {
  std::uint64_t l = 1;
  for (int c : cycle_lengths(a)) l = std::lcm(l, static_cast<std::uint64_t>(c));
  return l;
}

// <h> is semiregular iff all cycles of h have the same length
inline bool element_semiregular(const Img& a) {
  auto c = cycle_lengths(a);
  return std::all_of(c.begin(), c.end(), [&](int l) { return l == c[0]; });
}

inline Img perm_pow(Img a, std::uint64_t e) {
  Img r = identity(static_cast<int>(a.size()));
  for (; e; e >>= 1, a = compose(a, a))
    if (e & 1) r = compose(r, a);
  return r;
}

// g -> m g + c on Z_n
inline Img affine(int n, int m, int c) {
  Img r(n);
  for (int g = 0; g < n; ++g) r[g] = (m * g + c) % n;
  return r;
}

inline bool abelian(const Group& g) {
  for (const auto& a : g)
    for (const auto& b : g)
      if (compose(a, b) != compose(b, a)) return false;
  return true;
}

// Abelian regular subgroups of the group with element list `elems`, degree d.
inline std::vector<Group> abelian_regular_subgroups(const std::vector<Img>& elems, int d) {
  std::vector<Img> fpf;
  for (const auto& h : elems)
    if (fixed_point_free(h)) fpf.push_back(h);
  std::set<Group> seen{Group{identity(d)}};
  std::vector<Group> frontier{Group{identity(d)}};
  std::vector<Group> regs;
  while (!frontier.empty()) {
    std::vector<Group> next;
    for (const auto& K : frontier)
      for (const auto& h : fpf) {
        if (K.count(h)) continue;
        std::vector<Img> gens(K.begin(), K.end());
        gens.push_back(h);
        Group G = close(gens, d, d);
        if (G.size() > static_cast<std::size_t>(d) || !semiregular(G) || !abelian(G)) continue;
        if (!seen.insert(G).second) continue;
        (G.size() == static_cast<std::size_t>(d) ? regs : next).push_back(G);
      }
    frontier.swap(next);
  }
  return regs;
}

// Isomorphism type of a group of order 2^n with a cyclic subgroup of index 2,
// read off from element orders and the number of involutions.
inline std::string iso_2group(const Group& g) {
  const std::uint64_t N = g.size();
  std::uint64_t maxo = 1, inv = 0;
  for (const auto& e : g) {
    auto o = order_by_cycles(e);
    maxo = std::max(maxo, o);
    inv += o == 2;
  }
  if (maxo == N) return "Z";
  if (maxo != N / 2) return "other";
  if (abelian(g)) return "Z2xZ";
  if (inv == N / 2 + 1) return "D";
  if (inv == 1) return "Q";
  if (N >= 16 && inv == N / 4 + 1) return "QD";
  if (N >= 16 && inv == 3) return "M";
  return "other";
}

// ---------------------------------------------------------------------------
// graphs

struct Graph {
  int n = 0;
  std::vector<std::vector<char>> adj;
};

inline Graph circulant(int n, const std::vector<int>& S) {
  Graph g{n, std::vector<std::vector<char>>(n, std::vector<char>(n, 0))};
  for (int u = 0; u < n; ++u)
    for (int s : S) g.adj[u][(u + s) % n] = 1;
  return g;
}

// Inverse-closed S from a pair-orbit mask, bit i <-> {i+1, n-i-1}.
inline std::vector<int> pair_mask_set(int n, std::uint64_t mask) {
  std::set<int> s;
  for (int i = 0; i < n / 2; ++i)
    if ((mask >> i) & 1) {
      s.insert(i + 1);
      s.insert(n - i - 1);
    }
  return {s.begin(), s.end()};
}

inline bool is_automorphism(const Graph& g, const Img& p) {
  for (int u = 0; u < g.n; ++u)
    for (int v = 0; v < g.n; ++v)
      if (g.adj[u][v] != g.adj[p[u]][p[v]]) return false;
  return true;
}

// |Aut| by running through all n! permutations (n <= 9).
inline std::uint64_t aut_order_all_perms(const Graph& g) {
  Img p = identity(g.n);
  std::uint64_t count = 0;
  do count += is_automorphism(g, p);
  while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// Automorphisms fixing `fixed` (pass -1 for none), counted by extending
// partial maps vertex by vertex; stops once the count exceeds cap.
inline std::uint64_t count_automorphisms(const Graph& g, int fixed, std::uint64_t cap) {
  std::vector<int> img(g.n, -1);
  std::vector<char> used(g.n, 0);
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, int v) -> void {
    if (count > cap) return;
    if (v == g.n) {
      ++count;
      return;
    }
    for (int w = 0; w < g.n; ++w) {
      if (used[w]) continue;
      if (v == fixed && w != fixed) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = g.adj[u][v] == g.adj[img[u]][w];
      ok = ok && g.adj[v][v] == g.adj[w][w];
      if (!ok) continue;
      img[v] = w;
      used[w] = 1;
      self(self, v + 1);
      used[w] = 0;
      img[v] = -1;
    }
  };
  rec(rec, 0);
  return count;
}

inline std::vector<int> multipliers_preserving(int n, const std::vector<int>& S) {
  std::set<int> s(S.begin(), S.end());
  std::vector<int> out;
  for (int m = 1; m < n; ++m) {
    if (std::gcd(m, n) != 1) continue;
    bool ok = true;
    for (int x : S) ok = ok && s.count(x * m % n);
    if (ok) out.push_back(m);
  }
  if (n == 1) out.push_back(0);
  return out;
}

// Normal for G_R iff the stabilizer of 0 in Aut is exactly Aut(G,S).
inline bool normal_cayley(int n, const std::vector<int>& S) {
  const auto A = multipliers_preserving(n, S);
  return count_automorphisms(circulant(n, S), 0, A.size()) == A.size();
}

inline int val2(std::uint64_t m) {
  int e = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++e;
  }
  return e;
}

}  // namespace oracle
