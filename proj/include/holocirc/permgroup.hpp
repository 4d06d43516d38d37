#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "holocirc/error.hpp"

namespace holocirc {

using BigInt = boost::multiprecision::cpp_int;

class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<std::uint32_t> images);  // validates bijectivity
  static Perm identity(std::size_t degree);
  // Skips the bijectivity check; for images produced by trusted code.
  static Perm trusted(std::vector<std::uint32_t> images);

  std::size_t degree() const { return img_.size(); }
  std::uint32_t operator[](std::size_t i) const { return img_[i]; }
  const std::vector<std::uint32_t>& images() const { return img_; }
  const std::uint32_t* data() const { return img_.data(); }

  // apply *this, then other
  Perm then(const Perm& other) const;
  Perm inverse() const;
  // w^{-1} * this * w
  Perm conjugate_by(const Perm& w) const;
  Perm pow(std::uint64_t e) const;

  bool is_identity() const;
  bool fixed_point_free() const;
  std::uint64_t order() const;  // lcm of cycle lengths

  auto operator<=>(const Perm&) const = default;

 private:
  std::vector<std::uint32_t> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

// Base and strong generating set built by deterministic Schreier-Sims.
class StabChain {
 public:
  StabChain() = default;
  StabChain(std::size_t degree, const std::vector<Perm>& generators);

  BigInt order() const;
  bool contains(const Perm& p) const;
  const std::vector<std::uint32_t>& base() const { return base_; }
  std::vector<std::size_t> orbit_lengths() const;

 private:
  struct Level {
    std::uint32_t point = 0;
    std::vector<Perm> gens;                     // strong generators fixing earlier base points
    std::vector<std::optional<Perm>> transversal;  // transversal[b] sends point to b
  };

  // Residue of p after sifting from level `from`; second = level where it stopped.
  std::pair<Perm, std::size_t> sift(const Perm& p, std::size_t from = 0) const;
  void rebuild_orbit(Level& lv) const;
  void build(const std::vector<Perm>& generators);

  std::size_t degree_ = 0;
  std::vector<std::uint32_t> base_;
  std::vector<Level> levels_;
};

inline constexpr std::size_t kDefaultElementBound = std::size_t{1} << 16;

class PermSubgroup {
 public:
  PermSubgroup() = default;

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  bool has_elements() const { return elements_.has_value(); }
  // Sorted; throws ResourceBoundError when only a chain is stored.
  const std::vector<Perm>& elements() const;
  const BigInt& order() const { return order_; }
  std::uint64_t small_order() const;  // throws if order does not fit 64 bits
  bool contains(const Perm& p) const;
  bool operator==(const PermSubgroup& other) const;

  friend PermSubgroup closure(const std::vector<Perm>&, std::size_t, std::size_t);
  friend PermSubgroup from_elements(std::vector<Perm>, std::vector<Perm>, std::size_t);

 private:
  std::size_t degree_ = 0;
  std::vector<Perm> gens_;
  std::optional<std::vector<Perm>> elements_;
  std::optional<StabChain> chain_;
  BigInt order_ = 1;
};

// Full element set when the order is at most `bound`, stabilizer chain otherwise.
PermSubgroup closure(const std::vector<Perm>& generators, std::size_t degree,
                     std::size_t bound = kDefaultElementBound);
// From a known complete, closed element set (not re-checked beyond size).
PermSubgroup from_elements(std::vector<Perm> elements, std::vector<Perm> generators,
                           std::size_t degree);

std::vector<std::vector<std::uint32_t>> orbits(const std::vector<Perm>& generators,
                                               std::size_t degree);
bool is_transitive(const PermSubgroup& g);
bool is_semiregular(const PermSubgroup& g);
bool is_regular(const PermSubgroup& g);

class NotContainedError : public ContractError {
 public:
  using ContractError::ContractError;
};

// Throws NotContainedError when some generator of s is outside t.
bool is_normal_in(const PermSubgroup& s, const PermSubgroup& t);

// w in ambient with w^{-1} s w == t; ambient must carry its element set.
std::optional<Perm> are_conjugate(const PermSubgroup& s, const PermSubgroup& t,
                                  const PermSubgroup& ambient);
PermSubgroup conjugate_subgroup(const PermSubgroup& s, const Perm& w);

enum class IsoKind {
  Cyclic,
  Dihedral,
  GeneralizedQuaternion,
  Quasidihedral,
  Modular,
  DirectZ2xCyclic,
  Other
};

struct IsoType {
  IsoKind kind = IsoKind::Other;
  std::uint64_t order = 1;
  bool operator==(const IsoType&) const = default;
};

std::string iso_name(IsoKind k);
std::string to_string(const IsoType& t);  // e.g. "QD_16", "Z_8", "Z2xZ_4"

// Recognizes the cyclic groups, Z2 x Z_{m/2}, and the four nonabelian
// 2-groups with a cyclic subgroup of index 2. Needs the element set.
IsoType iso_type(const PermSubgroup& g);

}  // namespace holocirc
