#pragma once

// Circulant graphs Cay(Z_n, S) for n <= 64 with bitset rows, their
// automorphism groups, and the normality / NNN tests built on them.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holocirc/holomorph.hpp"
#include "holocirc/permgroup.hpp"

namespace holocirc {

inline constexpr std::size_t kMaxCirculantOrder = 64;

// Graph-size cap: HOLOCIRC_MAX_DEGREE if set, else 32; set_graph_bound overrides both.
std::size_t graph_bound();
void set_graph_bound(std::size_t bound);

class Circulant {
 public:
  // Throws ContractError if 0 is in S, S is not inverse-closed, or a residue is >= n.
  static Circulant build(u64 n, const std::vector<u64>& S);
  // S as the union of the pair orbits {s, n-s}, s = i+1, selected by bit i of mask.
  static Circulant from_pair_mask(u64 n, std::uint64_t mask);

  u64 order() const { return n_; }
  std::uint64_t set_bits() const { return s_; }
  std::vector<u64> connection_set() const;
  const std::vector<std::uint64_t>& rows() const { return rows_; }
  bool adjacent(u64 u, u64 v) const { return (rows_[u] >> v) & 1; }
  bool contains(u64 s) const { return (s_ >> s) & 1; }
  std::size_t valency() const;
  bool connected() const;
  // S empty, or S = {n/2}
  bool degenerate() const;
  std::uint64_t pair_mask() const;
  std::vector<std::pair<u64, u64>> edges() const;  // u < v

 private:
  u64 n_ = 0;
  std::uint64_t s_ = 0;
  std::vector<std::uint64_t> rows_;
};

inline u64 pair_orbit_count(u64 n) { return n / 2; }
inline std::uint64_t census_size(u64 n) { return std::uint64_t{1} << pair_orbit_count(n); }

struct AutResult {
  BigInt order = 1;
  std::vector<Perm> generators;  // translation by 1 first
  bool within_holomorph = false;
  std::vector<u64> base;
  std::vector<std::size_t> orbit_lengths;
};

// Individualize-and-refine search; throws ResourceBoundError above graph_bound().
AutResult automorphism_group(const Circulant& g);

// p(g) = (g + t) m for all g?
std::optional<AffineMap> as_affine(const Perm& p);

std::vector<u64> aut_G_S(const Circulant& g);
bool is_normal_cayley(const Circulant& g, const AutResult& aut);
bool is_normal_cayley(const Circulant& g);

struct CyclicRegularCopy {
  AffineMap generator;
  bool is_gr = false;
  bool normal = false;           // normal in Aut(Gamma)
  bool conjugate_to_gr = false;  // some w in Aut(Gamma) has w^{-1} G_R w = H
};

struct NnnVerdict {
  bool is_normal_for_GR = false;
  BigInt aut_order = 1;
  std::vector<CyclicRegularCopy> regular_cyclic_subgroups;  // filled when normal
  // Definition 1.1 asks for a copy H != G_R; whether H must also be
  // non-conjugate to G_R is left open, so both readings are kept.
  bool nnn_distinct = false;
  bool nnn_nonconjugate = false;
  bool nnn = false;  // == nnn_distinct
  std::optional<std::pair<AffineMap, AffineMap>> witness;  // (normal copy, non-normal copy)
};
NnnVerdict nnn_verdict(const Circulant& g, const AutResult& aut);
NnnVerdict nnn_verdict(const Circulant& g);

struct WSubgroups {
  std::vector<u64> divisors;  // d with 1 < d < n, d | n and H = <d> a W-subgroup
  bool degenerate = false;    // S empty: every H qualifies vacuously
};
WSubgroups w_subgroups(const Circulant& g);

struct LexBound {
  u64 lhs = 0;  // 2^{k-t} t + k - t
  u64 rhs = 0;  // 2k - 1
  bool holds = false;
  bool equality = false;
};
// Throws ContractError unless 1 <= t <= k-1 and k <= 62.
LexBound lex_nonnormal_bound(int k, int t);

struct ThetaCheck {
  bool edge_preserving = false;
  bool fixes_zero = false;
  bool fixes_generator = false;
  bool outside_aut_gs = false;
  bool ok() const { return edge_preserving && fixes_zero && fixes_generator && outside_aut_gs; }
};
ThetaCheck verify_theta(const Circulant& g, const Perm& theta);

struct ThetaWitness {
  std::string kind;  // "p-odd" or "2-part"
  u64 prime = 2;
  u64 multiplier = 1;
  Perm theta;
  ThetaCheck check;
};
// Requires p1 odd prime with p1^2 | n; none when the order-p1 multiplier
// does not preserve S.
std::optional<ThetaWitness> theta_witness_p_odd(const Circulant& g, u64 p1);
// Requires 16 | n; none when 5^{2^{k1-4}} (identity on the odd part) does not preserve S.
std::optional<ThetaWitness> theta_witness_2part(const Circulant& g);
// Every applicable construction for this n.
std::vector<ThetaWitness> theta_witnesses(const Circulant& g);

std::vector<u64> unit_group(u64 n);  // sorted residues coprime to n

// Abelian regular subgroups of G_R x| A (A a multiplier group), as sorted element lists.
std::vector<std::vector<AffineMap>> abelian_regular_affine(u64 n, const std::vector<u64>& A);

struct AbelianRegularReport {
  bool normal = false;
  std::vector<std::vector<AffineMap>> subgroups;  // abelian regular subgroups of Aut(Gamma)
  std::vector<u64> gr_index;                      // |G_R : G_R cap H|, parallel to subgroups
};
// Only meaningful for normal circulants, where Aut(Gamma) = G_R x| Aut(G,S).
AbelianRegularReport abelian_regular_subgroups(const Circulant& g);

struct AbelianScan {
  u64 n = 0;
  std::size_t circulants = 0;
  std::size_t normal = 0;
  std::size_t uniqueness_failures = 0;  // 4 !| n and more than one abelian regular subgroup
  std::size_t index_failures = 0;       // |G_R : G_R cap H| not a power of 2
  std::size_t nnn_found = 0;            // checked when 8 !| n
  std::vector<std::string> counterexamples;
};
AbelianScan abelian_regular_scan(u64 n, unsigned jobs = 1);

struct ScanRecord {
  u64 n = 0;
  std::uint64_t mask = 0;
  std::vector<u64> S;
  BigInt aut_order = 1;
  bool normal = false;
  std::vector<u64> w_subgroups;
  bool nnn = false;
  bool nnn_nonconjugate = false;
  bool degenerate = false;
  bool connected = false;
  std::vector<ThetaWitness> witnesses;
};
ScanRecord scan_one(u64 n, std::uint64_t mask);

}  // namespace holocirc
