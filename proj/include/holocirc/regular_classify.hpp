#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holocirc/holomorph.hpp"
#include "holocirc/permgroup.hpp"

namespace holocirc {

// The seven families of regular subgroups of Hol(Z_{2^n}), numbered as in the
// classification theorem. Case6/Case7 are named by position: case 6 is
// <a^{2*5^-1 + 2^{n-2}} y> x| <ax>, case 7 is <a^2 y^{2^{n-3}}> x| <ax>.
enum class RegularKind { GR = 1, Cyclic = 2, Dihedral = 3, Quaternion = 4, Direct = 5, Case6 = 6, Case7 = 7 };

struct RegularType {
  RegularKind kind = RegularKind::GR;
  int t = 0;  // only for Cyclic, 0 <= t <= n-3

  std::string tag() const;  // "T1", "T2(t=1)", ...
  bool operator==(const RegularType&) const = default;
};

// T1, T2(0..n-3), T3..T7 in that order.
std::vector<RegularType> all_regular_types(int n);

bool is_semiregular_closed_form(const HolElem2& h);
// <h> is semiregular iff all cycles of h have the same length.
bool is_semiregular_by_orbits(const HolElem2& h);

std::vector<HolElem2> representative_generators(const RegularType& rt, int n);

struct Expectation {
  IsoType iso;
  u64 intersection_d = 1;  // R cap G_R = <a^d>
};
Expectation expected(const RegularType& rt, int n);

struct Representative {
  RegularType rtype;
  int n = 3;
  std::vector<HolElem2> generators;
  PermSubgroup group;
  bool regular = false;
  IsoType iso;
  u64 intersection_d = 0;
  Expectation expect;

  bool matches() const {
    return regular && iso == expect.iso && intersection_d == expect.intersection_d;
  }
};
Representative representative(const RegularType& rt, int n);

// d with g cap G_R = <a^d>, degree 2^n; returns 2^n when the intersection is trivial.
u64 intersection_exponent(const PermSubgroup& g);

struct ClassificationRecord {
  PermSubgroup subgroup;
  std::vector<HolElem2> generators;
  RegularType rtype;
  IsoType iso;
  u64 intersection_d = 0;
  std::optional<HolElem2> conjugator;  // w with w^{-1} R w == representative
};

struct EnumerationResult {
  int n = 3;
  bool full = true;
  std::vector<std::size_t> level_counts;  // semiregular subgroups of order 2^k (full mode)
  std::vector<Representative> representatives;
  std::vector<std::size_t> distinct_reps;  // indices into representatives used for matching
  std::vector<std::size_t> class_sizes;    // parallel to distinct_reps
  std::vector<ClassificationRecord> records;
  std::vector<std::string> notes;  // coincidences and non-regular representatives
  std::size_t unmatched = 0;
  std::size_t multiply_matched = 0;
  std::size_t witness_failures = 0;
  bool reps_pairwise_nonconjugate = true;

  std::size_t classes_found() const;
  bool ok() const { return unmatched == 0 && multiply_matched == 0 && witness_failures == 0; }
};

// Full enumeration for 3 <= n <= 5, structured search for 6 <= n <= 8.
EnumerationResult enumerate_regular_subgroups(int n, unsigned jobs = 1);

// Closed form: true iff R is G_R or R = <a y^{2^{n-3}}>.
bool is_normal_cyclic_regular_in_hol(const RegularType& rt, int n);

struct CyclicRegular {
  HolElem2 generator;
  bool is_gr = false;
  int t = -1;  // log2|R cap G_R| - 2 for R != G_R
  bool normal_in_hol = false;  // conjugation by a, x, y
};
// All cyclic regular subgroups of Hol(Z_{2^n}), one entry per subgroup.
std::vector<CyclicRegular> cyclic_regular_subgroups(int n);

}  // namespace holocirc
