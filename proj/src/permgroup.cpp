#include "holocirc/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "holocirc/simd/kernels.hpp"

namespace holocirc {

Perm::Perm(std::vector<std::uint32_t> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (auto v : img_) {
    if (v >= img_.size() || seen[v]) throw ContractError("images do not form a permutation");
    seen[v] = 1;
  }
}

Perm Perm::identity(std::size_t degree) {
  std::vector<std::uint32_t> v(degree);
  std::iota(v.begin(), v.end(), 0u);
  return trusted(std::move(v));
}

Perm Perm::trusted(std::vector<std::uint32_t> images) {
  Perm p;
  p.img_ = std::move(images);
  return p;
}

Perm Perm::then(const Perm& other) const {
  if (other.degree() != degree()) throw ContractError("permutation degrees differ");
  std::vector<std::uint32_t> out(degree());
  simd::compose_u32(img_.data(), other.img_.data(), out.data(), out.size());
  return trusted(std::move(out));
}

Perm Perm::inverse() const {
  std::vector<std::uint32_t> out(degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[img_[i]] = static_cast<std::uint32_t>(i);
  return trusted(std::move(out));
}

Perm Perm::conjugate_by(const Perm& w) const { return w.inverse().then(*this).then(w); }

Perm Perm::pow(std::uint64_t e) const {
  Perm acc = identity(degree()), base = *this;
  while (e) {
    if (e & 1) acc = acc.then(base);
    base = base.then(base);
    e >>= 1;
  }
  return acc;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

bool Perm::fixed_point_free() const { return simd::fixed_point_free(img_.data(), img_.size()); }

std::uint64_t Perm::order() const {
  std::vector<char> seen(degree(), 0);
  std::uint64_t l = 1;
  for (std::size_t i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = 1;
      ++len;
    }
    l = std::lcm(l, len);
  }
  return l;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto v : p.images()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------

const std::vector<Perm>& PermSubgroup::elements() const {
  if (!elements_) throw ResourceBoundError("element set not stored (order above bound)");
  return *elements_;
}

std::uint64_t PermSubgroup::small_order() const {
  if (order_ > BigInt(UINT64_MAX)) throw ResourceBoundError("group order exceeds 64 bits");
  return static_cast<std::uint64_t>(order_);
}

bool PermSubgroup::contains(const Perm& p) const {
  if (p.degree() != degree_) return false;
  if (elements_) return std::binary_search(elements_->begin(), elements_->end(), p);
  if (chain_) return chain_->contains(p);
  return p.is_identity();
}

bool PermSubgroup::operator==(const PermSubgroup& other) const {
  if (degree_ != other.degree_ || order_ != other.order_) return false;
  return std::all_of(other.gens_.begin(), other.gens_.end(),
                     [&](const Perm& g) { return contains(g); });
}

PermSubgroup closure(const std::vector<Perm>& generators, std::size_t degree,
                     std::size_t bound) {
  for (const auto& g : generators)
    if (g.degree() != degree) throw ContractError("generator degree mismatch");
  PermSubgroup out;
  out.degree_ = degree;
  out.gens_ = generators;

  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> list;
  Perm id = Perm::identity(degree);
  seen.insert(id);
  list.push_back(id);
  bool overflow = false;
  for (std::size_t head = 0; head < list.size() && !overflow; ++head) {
    for (const auto& g : generators) {
      Perm p = list[head].then(g);
      if (seen.insert(p).second) {
        list.push_back(std::move(p));
        if (list.size() > bound) {
          overflow = true;
          break;
        }
      }
    }
  }
  if (!overflow) {
    std::sort(list.begin(), list.end());
    out.order_ = list.size();
    out.elements_ = std::move(list);
  } else {
    out.chain_ = StabChain(degree, generators);
    out.order_ = out.chain_->order();
  }
  return out;
}

PermSubgroup from_elements(std::vector<Perm> elements, std::vector<Perm> generators,
                           std::size_t degree) {
  PermSubgroup out;
  out.degree_ = degree;
  out.gens_ = std::move(generators);
  std::sort(elements.begin(), elements.end());
  out.order_ = elements.size();
  out.elements_ = std::move(elements);
  return out;
}

std::vector<std::vector<std::uint32_t>> orbits(const std::vector<Perm>& generators,
                                               std::size_t degree) {
  std::vector<char> seen(degree, 0);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t s = 0; s < degree; ++s) {
    if (seen[s]) continue;
    std::vector<std::uint32_t> orb{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const auto& g : generators) {
        auto v = g[orb[i]];
        if (!seen[v]) {
          seen[v] = 1;
          orb.push_back(v);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

bool is_transitive(const PermSubgroup& g) {
  return g.degree() <= 1 || orbits(g.generators(), g.degree()).size() == 1;
}

bool is_semiregular(const PermSubgroup& g) {
  // |G_p| = |G| / |p^G|, so trivial stabilizers means every orbit has size |G|.
  for (const auto& orb : orbits(g.generators(), g.degree()))
    if (BigInt(orb.size()) != g.order()) return false;
  return true;
}

bool is_regular(const PermSubgroup& g) {
  return BigInt(g.degree()) == g.order() && is_transitive(g);
}

bool is_normal_in(const PermSubgroup& s, const PermSubgroup& t) {
  for (const auto& g : s.generators())
    if (!t.contains(g)) throw NotContainedError("subgroup is not contained in the ambient group");
  for (const auto& w : t.generators())
    for (const auto& g : s.generators())
      if (!s.contains(g.conjugate_by(w))) return false;
  return true;
}

std::optional<Perm> are_conjugate(const PermSubgroup& s, const PermSubgroup& t,
                                  const PermSubgroup& ambient) {
  const auto& elems = ambient.elements();
  if (s.order() != t.order() || s.degree() != t.degree()) return std::nullopt;
  for (const auto& w : elems) {
    bool ok = std::all_of(s.generators().begin(), s.generators().end(),
                          [&](const Perm& g) { return t.contains(g.conjugate_by(w)); });
    if (ok) return w;
  }
  return std::nullopt;
}

PermSubgroup conjugate_subgroup(const PermSubgroup& s, const Perm& w) {
  std::vector<Perm> gens;
  for (const auto& g : s.generators()) gens.push_back(g.conjugate_by(w));
  if (s.has_elements()) {
    std::vector<Perm> el;
    Perm wi = w.inverse();
    for (const auto& e : s.elements()) el.push_back(wi.then(e).then(w));
    return from_elements(std::move(el), std::move(gens), s.degree());
  }
  return closure(gens, s.degree());
}

std::string iso_name(IsoKind k) {
  switch (k) {
    case IsoKind::Cyclic: return "cyclic";
    case IsoKind::Dihedral: return "dihedral";
    case IsoKind::GeneralizedQuaternion: return "quaternion";
    case IsoKind::Quasidihedral: return "quasidihedral";
    case IsoKind::Modular: return "modular";
    case IsoKind::DirectZ2xCyclic: return "z2_x_cyclic";
    case IsoKind::Other: return "other";
  }
  return "other";
}

std::string to_string(const IsoType& t) {
  auto m = std::to_string(t.order);
  switch (t.kind) {
    case IsoKind::Cyclic: return "Z_" + m;
    case IsoKind::Dihedral: return "D_" + m;
    case IsoKind::GeneralizedQuaternion: return "Q_" + m;
    case IsoKind::Quasidihedral: return "QD_" + m;
    case IsoKind::Modular: return "M_" + m;
    case IsoKind::DirectZ2xCyclic: return "Z2xZ_" + std::to_string(t.order / 2);
    case IsoKind::Other: return "other_" + m;
  }
  return m;
}

IsoType iso_type(const PermSubgroup& g) {
  const auto& el = g.elements();
  const std::uint64_t m = el.size();
  IsoType out{IsoKind::Other, m};
  if (m == 1) {
    out.kind = IsoKind::Cyclic;
    return out;
  }
  std::vector<std::uint64_t> ord(el.size());
  for (std::size_t i = 0; i < el.size(); ++i) ord[i] = el[i].order();
  if (std::find(ord.begin(), ord.end(), m) != ord.end()) {
    out.kind = IsoKind::Cyclic;
    return out;
  }
  const auto& gens = g.generators();
  bool abelian = true;
  for (std::size_t i = 0; i < gens.size() && abelian; ++i)
    for (std::size_t j = i + 1; j < gens.size() && abelian; ++j)
      abelian = gens[i].then(gens[j]) == gens[j].then(gens[i]);
  auto sigma_it = std::find(ord.begin(), ord.end(), m / 2);
  if (m % 2 != 0 || sigma_it == ord.end()) return out;
  if (abelian) {
    out.kind = IsoKind::DirectZ2xCyclic;
    return out;
  }
  if ((m & (m - 1)) != 0 || m < 8) return out;

  const Perm& sigma = el[sigma_it - ord.begin()];
  const std::uint64_t half = m / 2;
  std::vector<Perm> powers;
  Perm p = Perm::identity(g.degree());
  for (std::uint64_t i = 0; i < half; ++i) {
    powers.push_back(p);
    p = p.then(sigma);
  }
  std::vector<Perm> cyc = powers;
  std::sort(cyc.begin(), cyc.end());
  auto in_cyc = [&](const Perm& q) { return std::binary_search(cyc.begin(), cyc.end(), q); };

  const Perm* tau = nullptr;
  bool involution_outside = false;
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (in_cyc(el[i])) continue;
    if (!tau) tau = &el[i];
    if (ord[i] == 2) involution_outside = true;
  }
  Perm conj = sigma.conjugate_by(*tau);
  std::uint64_t k = 0;
  for (; k < half; ++k)
    if (powers[k] == conj) break;

  if (k == half - 1) {
    if (involution_outside)
      out.kind = IsoKind::Dihedral;
    else if (tau->then(*tau) == powers[half / 2])
      out.kind = IsoKind::GeneralizedQuaternion;
  } else if (m >= 16 && k == half / 2 - 1) {
    out.kind = IsoKind::Quasidihedral;
  } else if (m >= 16 && k == half / 2 + 1) {
    out.kind = IsoKind::Modular;
  }
  return out;
}

}  // namespace holocirc
