#include "holocirc/regular_classify.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_set>

#include "holocirc/error.hpp"
#include "holocirc/parallel.hpp"

namespace holocirc {

std::string RegularType::tag() const {
  std::string s = "T" + std::to_string(static_cast<int>(kind));
  if (kind == RegularKind::Cyclic) s += "(t=" + std::to_string(t) + ")";
  return s;
}

std::vector<RegularType> all_regular_types(int n) {
  std::vector<RegularType> out{{RegularKind::GR, 0}};
  for (int t = 0; t <= n - 3; ++t) out.push_back({RegularKind::Cyclic, t});
  for (auto k : {RegularKind::Dihedral, RegularKind::Quaternion, RegularKind::Direct,
                 RegularKind::Case6, RegularKind::Case7})
    out.push_back({k, 0});
  return out;
}

bool is_semiregular_closed_form(const HolElem2& h) {
  if (h.is_identity()) return true;
  const HolElem2 f = conj_normal_form(h).form;
  if (f.beta == 1) return f.alpha == 1;
  if (f.gamma == 0) return f.alpha != 0;
  if (f.alpha == 0) return false;
  return f.alpha < 4 * numtheory::val2(f.gamma).two_part;
}

bool is_semiregular_by_orbits(const HolElem2& h) {
  auto img = to_images(h);
  std::vector<char> seen(img.size(), 0);
  std::size_t first = 0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = img[j]) {
      seen[j] = 1;
      ++len;
    }
    if (first == 0) first = len;
    if (len != first) return false;
  }
  return true;
}

std::vector<HolElem2> representative_generators(const RegularType& rt, int n) {
  const u64 e = numtheory::pow5(-1, n);
  const u64 N = u64{1} << n;
  const u64 top = u64{1} << (n - 3);
  auto M = [n](u64 al, unsigned be, u64 ga) { return HolElem2::make(n, al, be, ga); };
  switch (rt.kind) {
    case RegularKind::GR: return {M(1, 0, 0)};
    case RegularKind::Cyclic:
      if (rt.t < 0 || rt.t > n - 3) throw ContractError("T2 needs 0 <= t <= n-3");
      return {M(1, 0, u64{1} << rt.t)};
    case RegularKind::Dihedral: return {M(2, 0, 0), M(1, 1, 0)};
    case RegularKind::Quaternion: return {M(2, 0, 0), M(1, 1, top)};
    case RegularKind::Direct: return {M((2 * e) % N, 0, 1), M(1, 1, 0)};
    case RegularKind::Case6: return {M((2 * e + (N >> 2)) % N, 0, 1), M(1, 1, 0)};
    case RegularKind::Case7: return {M(2, 0, top), M(1, 1, 0)};
  }
  throw ContractError("unknown regular type");
}

Expectation expected(const RegularType& rt, int n) {
  const u64 N = u64{1} << n;
  Expectation ex;
  ex.iso.order = N;
  switch (rt.kind) {
    case RegularKind::GR:
      ex.iso.kind = IsoKind::Cyclic;
      ex.intersection_d = 1;
      break;
    case RegularKind::Cyclic:
      ex.iso.kind = IsoKind::Cyclic;
      ex.intersection_d = u64{1} << (n - rt.t - 2);
      break;
    case RegularKind::Dihedral:
      ex.iso.kind = IsoKind::Dihedral;
      ex.intersection_d = 2;
      break;
    case RegularKind::Quaternion:
      ex.iso.kind = IsoKind::GeneralizedQuaternion;
      ex.intersection_d = 2;
      break;
    case RegularKind::Direct:
      ex.iso.kind = IsoKind::DirectZ2xCyclic;
      ex.intersection_d = N / 2;
      break;
    case RegularKind::Case6:
      // M_3(2) collapses to D_8
      ex.iso.kind = n == 3 ? IsoKind::Dihedral : IsoKind::Modular;
      ex.intersection_d = N / 2;
      break;
    case RegularKind::Case7:
      // QD_8 collapses to Z2 x Z4
      ex.iso.kind = n == 3 ? IsoKind::DirectZ2xCyclic : IsoKind::Quasidihedral;
      ex.intersection_d = 4;
      break;
  }
  return ex;
}

u64 intersection_exponent(const PermSubgroup& g) {
  const u64 N = g.degree();
  u64 d = N;
  auto consider = [&](const Perm& p) {
    u64 c = p[0];
    for (u64 i = 1; i < N; ++i)
      if (p[i] != (i + c) % N) return;
    if (c != 0) d = std::gcd(d, c);
  };
  if (g.has_elements()) {
    for (const auto& p : g.elements()) consider(p);
  } else {
    // chain-only: translations by multiples of d lie in g iff a^d does
    for (u64 c = 1; c < N; c *= 2) {
      std::vector<std::uint32_t> img(N);
      for (u64 i = 0; i < N; ++i) img[i] = static_cast<std::uint32_t>((i + c) % N);
      if (g.contains(Perm::trusted(img))) {
        d = c;
        break;
      }
    }
  }
  return d;
}

namespace {

PermSubgroup perm_group(const std::vector<HolElem2>& gens, int n, std::size_t bound) {
  std::vector<Perm> pg;
  for (const auto& h : gens) pg.push_back(Perm::trusted(to_images(h)));
  return closure(pg, std::size_t{1} << n, bound);
}

}  // namespace

Representative representative(const RegularType& rt, int n) {
  if (n < 3 || n > 12) throw ContractError("representatives are built for 3 <= n <= 12");
  Representative r;
  r.rtype = rt;
  r.n = n;
  r.generators = representative_generators(rt, n);
  r.group = perm_group(r.generators, n, kDefaultElementBound);
  r.regular = is_regular(r.group);
  r.iso = r.group.has_elements() ? iso_type(r.group) : IsoType{IsoKind::Other, 0};
  r.intersection_d = intersection_exponent(r.group);
  r.expect = expected(rt, n);
  return r;
}

std::size_t EnumerationResult::classes_found() const {
  return static_cast<std::size_t>(
      std::count_if(class_sizes.begin(), class_sizes.end(), [](std::size_t c) { return c > 0; }));
}

bool is_normal_cyclic_regular_in_hol(const RegularType& rt, int n) {
  if (rt.kind == RegularKind::GR) return true;
  if (rt.kind == RegularKind::Cyclic) return rt.t == n - 3;
  throw ContractError("normality closed form covers cyclic regular subgroups only");
}

std::vector<CyclicRegular> cyclic_regular_subgroups(int n) {
  if (n < 3 || n > 10) throw ContractError("cyclic regular scan needs 3 <= n <= 10");
  const u64 N = u64{1} << n;
  const u64 total = hol_order(n);
  std::vector<char> covered(total, 0);
  std::vector<CyclicRegular> out;
  for (u64 c = 0; c < total; ++c) {
    if (covered[c]) continue;
    HolElem2 h = HolElem2::from_code(n, c);
    if (order(h) != N) continue;
    // an element of order 2^n generates a regular group iff the orbit of 0 is everything
    u64 g = 0, len = 0;
    do {
      g = act(h, g);
      ++len;
    } while (g != 0);
    if (len != N) continue;
    std::vector<u64> members;
    HolElem2 p = HolElem2::identity(n);
    for (u64 k = 0; k < N; ++k) {
      members.push_back(p.code());
      p = compose(p, h);
    }
    for (u64 k = 1; k < N; k += 2) covered[members[k]] = 1;
    std::sort(members.begin(), members.end());
    auto in_r = [&](const HolElem2& q) {
      return std::binary_search(members.begin(), members.end(), q.code());
    };
    CyclicRegular cr;
    cr.generator = h;
    std::size_t translations = 0;
    for (u64 code : members) translations += HolElem2::from_code(n, code).is_translation();
    cr.is_gr = translations == N;
    if (!cr.is_gr) cr.t = std::countr_zero(translations) - 2;
    cr.normal_in_hol = true;
    for (const auto& w : {HolElem2::a(n), HolElem2::x(n), HolElem2::y(n)})
      if (!in_r(conjugate(h, w))) cr.normal_in_hol = false;
    out.push_back(cr);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

using Bits = std::vector<std::uint64_t>;

inline bool bit(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1; }
inline void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

// Multiplication table of Hol(Z_{2^n}) on element codes (n <= 5).
struct HolTable {
  int n;
  std::size_t N;
  std::vector<std::uint32_t> mul, inv;
  std::vector<char> fpf;

  explicit HolTable(int n_) : n(n_), N(hol_order(n_)) {
    std::vector<HolElem2> el(N);
    for (std::size_t c = 0; c < N; ++c) el[c] = HolElem2::from_code(n, c);
    mul.resize(N * N);
    inv.resize(N);
    fpf.resize(N);
    for (std::size_t a = 0; a < N; ++a) {
      for (std::size_t b = 0; b < N; ++b)
        mul[a * N + b] = static_cast<std::uint32_t>(compose(el[a], el[b]).code());
      inv[a] = static_cast<std::uint32_t>(inverse(el[a]).code());
      fpf[a] = a != 0 && Perm::trusted(to_images(el[a])).fixed_point_free();
    }
  }
  std::uint32_t m(std::uint32_t a, std::uint32_t b) const { return mul[a * N + b]; }
  std::uint32_t conj(std::uint32_t g, std::uint32_t w) const { return m(m(inv[w], g), w); }

  Bits closure(const std::vector<std::uint32_t>& gens, std::vector<std::uint32_t>* list) const {
    Bits b((N + 63) / 64, 0);
    std::vector<std::uint32_t> el{0};
    set_bit(b, 0);
    for (std::size_t i = 0; i < el.size(); ++i)
      for (auto g : gens) {
        auto p = m(el[i], g);
        if (!bit(b, p)) {
          set_bit(b, p);
          el.push_back(p);
        }
      }
    if (list) *list = std::move(el);
    return b;
  }
};

struct Sub {
  Bits bits;
  std::vector<std::uint32_t> elems;
  std::vector<std::uint32_t> gens;
};

std::vector<HolElem2> decode(int n, const std::vector<std::uint32_t>& codes) {
  std::vector<HolElem2> out;
  for (auto c : codes) out.push_back(HolElem2::from_code(n, c));
  return out;
}

PermSubgroup perm_subgroup_from_codes(int n, const std::vector<std::uint32_t>& elems,
                                      const std::vector<std::uint32_t>& gens) {
  std::vector<Perm> el, gp;
  for (auto c : elems) el.push_back(Perm::trusted(to_images(HolElem2::from_code(n, c))));
  for (auto c : gens) gp.push_back(Perm::trusted(to_images(HolElem2::from_code(n, c))));
  return from_elements(std::move(el), std::move(gp), std::size_t{1} << n);
}

// Picks representatives that are distinct as subgroups and regular; notes the rest.
void select_distinct(EnumerationResult& res, const std::vector<Bits>& rep_bits) {
  for (std::size_t i = 0; i < res.representatives.size(); ++i) {
    const auto& r = res.representatives[i];
    if (!r.regular) {
      res.notes.push_back(r.rtype.tag() + " is not regular at n=" + std::to_string(res.n));
      continue;
    }
    bool dup = false;
    for (auto j : res.distinct_reps)
      if (rep_bits[j] == rep_bits[i]) {
        res.notes.push_back(r.rtype.tag() + " coincides with " +
                            res.representatives[j].rtype.tag() + " at n=" +
                            std::to_string(res.n));
        dup = true;
        break;
      }
    if (!dup) res.distinct_reps.push_back(i);
  }
  res.class_sizes.assign(res.distinct_reps.size(), 0);
}

EnumerationResult enumerate_full(int n, unsigned jobs) {
  EnumerationResult res;
  res.n = n;
  res.full = true;
  HolTable T(n);
  const std::size_t words = (T.N + 63) / 64;

  std::vector<Sub> level{Sub{Bits(words, 0), {0}, {}}};
  set_bit(level[0].bits, 0);
  res.level_counts.push_back(1);
  for (int k = 1; k <= n; ++k) {
    std::map<Bits, Sub> next;
    for (const auto& K : level) {
      for (std::uint32_t g = 1; g < T.N; ++g) {
        if (!T.fpf[g] || bit(K.bits, g) || !bit(K.bits, T.m(g, g))) continue;
        bool ok = true;
        for (auto s : K.gens)
          if (!bit(K.bits, T.conj(s, g))) {
            ok = false;
            break;
          }
        if (!ok) continue;
        // <K, g> = K u Kg; every new element must move every point
        Sub S{K.bits, K.elems, K.gens};
        for (auto e : K.elems) {
          auto p = T.m(e, g);
          if (!T.fpf[p]) {
            ok = false;
            break;
          }
          set_bit(S.bits, p);
          S.elems.push_back(p);
        }
        if (!ok || next.count(S.bits)) continue;
        S.gens.push_back(g);
        next.emplace(S.bits, std::move(S));
      }
    }
    level.clear();
    for (auto& [b, s] : next) level.push_back(std::move(s));
    res.level_counts.push_back(level.size());
  }

  for (const auto& rt : all_regular_types(n)) res.representatives.push_back(representative(rt, n));
  std::vector<Bits> rep_bits;
  for (const auto& r : res.representatives) {
    std::vector<std::uint32_t> gens;
    for (const auto& h : r.generators) gens.push_back(static_cast<std::uint32_t>(h.code()));
    rep_bits.push_back(T.closure(gens, nullptr));
  }
  select_distinct(res, rep_bits);

  // pairwise non-conjugacy of the distinct representatives
  auto conj_witness = [&](const std::vector<std::uint32_t>& gens, const Bits& target)
      -> std::optional<std::uint32_t> {
    for (std::uint32_t w = 0; w < T.N; ++w) {
      bool ok = true;
      for (auto g : gens)
        if (!bit(target, T.conj(g, w))) {
          ok = false;
          break;
        }
      if (ok) return w;
    }
    return std::nullopt;
  };

  res.records.resize(level.size());
  std::vector<std::vector<std::size_t>> matched(level.size());
  parallel_for(level.size(), jobs, [&](std::size_t i) {
    const Sub& R = level[i];
    ClassificationRecord rec;
    rec.subgroup = perm_subgroup_from_codes(n, R.elems, R.gens);
    rec.generators = decode(n, R.gens);
    rec.iso = iso_type(rec.subgroup);
    rec.intersection_d = intersection_exponent(rec.subgroup);
    for (std::size_t j = 0; j < res.distinct_reps.size(); ++j) {
      const auto& target = rep_bits[res.distinct_reps[j]];
      auto w = conj_witness(R.gens, target);
      if (!w) continue;
      matched[i].push_back(j);
      if (matched[i].size() == 1) {
        rec.rtype = res.representatives[res.distinct_reps[j]].rtype;
        rec.conjugator = HolElem2::from_code(n, *w);
      }
    }
    res.records[i] = std::move(rec);
  });

  for (std::size_t i = 0; i < level.size(); ++i) {
    if (matched[i].empty()) {
      ++res.unmatched;
      continue;
    }
    if (matched[i].size() > 1) ++res.multiply_matched;
    ++res.class_sizes[matched[i][0]];
    // verify the witness on the whole element set
    const auto w = static_cast<std::uint32_t>(res.records[i].conjugator->code());
    const auto& target = rep_bits[res.distinct_reps[matched[i][0]]];
    Bits img(words, 0);
    for (auto e : level[i].elems) set_bit(img, T.conj(e, w));
    if (img != target || !is_regular(res.records[i].subgroup)) ++res.witness_failures;
  }
  for (std::size_t a = 0; a < res.distinct_reps.size(); ++a)
    for (std::size_t b = a + 1; b < res.distinct_reps.size(); ++b) {
      std::vector<std::uint32_t> gens;
      for (const auto& h : res.representatives[res.distinct_reps[a]].generators)
        gens.push_back(static_cast<std::uint32_t>(h.code()));
      if (conj_witness(gens, rep_bits[res.distinct_reps[b]])) res.reps_pairwise_nonconjugate = false;
    }
  return res;
}

// ---- structured mode (6 <= n <= 8): generic closure on element codes

std::optional<std::vector<u64>> close_codes(int n, const std::vector<HolElem2>& gens,
                                            std::size_t cap) {
  std::unordered_set<u64> seen{0};
  std::vector<HolElem2> el{HolElem2::identity(n)};
  for (std::size_t i = 0; i < el.size(); ++i)
    for (const auto& g : gens) {
      HolElem2 p = compose(el[i], g);
      if (seen.insert(p.code()).second) {
        if (seen.size() > cap) return std::nullopt;
        el.push_back(p);
      }
    }
  std::vector<u64> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

u64 multiplier_group_order(int n, const std::vector<HolElem2>& gens) {
  numtheory::Modulus2n mod(n);
  std::set<u64> seen{1};
  std::vector<u64> el{1};
  for (std::size_t i = 0; i < el.size(); ++i)
    for (const auto& g : gens) {
      u64 p = mod.mul(el[i], g.multiplier());
      if (seen.insert(p).second) el.push_back(p);
    }
  return el.size();
}

EnumerationResult enumerate_structured(int n, unsigned jobs) {
  EnumerationResult res;
  res.n = n;
  res.full = false;
  const u64 N = u64{1} << n;
  const u64 G = u64{1} << (n - 2);
  auto M = [n](u64 al, unsigned be, u64 ga) { return HolElem2::make(n, al, be, ga); };

  // Candidate sets H of non-translation generators, by shape.
  std::vector<std::vector<HolElem2>> shapes;
  for (u64 ga = 1; ga < G; ++ga) {
    const u64 g2 = numtheory::val2(ga).two_part;
    for (u64 tt = 1; tt < 4 * g2 && tt < N; tt *= 2) shapes.push_back({M(tt, 0, ga)});
    shapes.push_back({M(1, 1, ga)});
    for (u64 eps = 2; eps < N; eps += 2)
      if (numtheory::val2(eps).two_part <= 4 * g2) shapes.push_back({M(1, 1, 0), M(eps, 0, ga)});
  }
  shapes.push_back({M(1, 1, 0)});

  std::vector<std::optional<std::vector<u64>>> found(shapes.size());
  std::vector<std::vector<HolElem2>> found_gens(shapes.size());
  parallel_for(shapes.size(), jobs, [&](std::size_t i) {
    const auto& H = shapes[i];
    const u64 q = multiplier_group_order(n, H);
    if (q > N / 2) return;
    std::vector<HolElem2> gens{M(q % N, 0, 0)};
    gens.insert(gens.end(), H.begin(), H.end());
    auto el = close_codes(n, gens, N);
    if (!el || el->size() != N) return;
    for (u64 c : *el)
      if (c != 0 && !Perm::trusted(to_images(HolElem2::from_code(n, c))).fixed_point_free()) return;
    found[i] = std::move(el);
    found_gens[i] = gens;
  });

  std::map<std::vector<u64>, std::vector<HolElem2>> uniq;
  uniq.emplace(*close_codes(n, {M(1, 0, 0)}, N), std::vector<HolElem2>{M(1, 0, 0)});
  for (std::size_t i = 0; i < shapes.size(); ++i)
    if (found[i]) uniq.emplace(*found[i], found_gens[i]);

  for (const auto& rt : all_regular_types(n)) res.representatives.push_back(representative(rt, n));
  const u64 total = hol_order(n);
  std::vector<Bits> rep_bits;
  for (const auto& r : res.representatives) {
    Bits b((total + 63) / 64, 0);
    for (const auto& p : r.group.elements()) {
      // p(g) = (g + alpha) u, so u = p(1) - p(0) and alpha = p(0) / u
      numtheory::Modulus2n mod(n);
      u64 u = mod.sub(p[1], p[0]);
      set_bit(b, HolElem2::from_affine(n, mod.mul(p[0], mod.inverse(u)), u).code());
    }
    rep_bits.push_back(std::move(b));
  }
  select_distinct(res, rep_bits);

  auto find_conj = [&](const std::vector<HolElem2>& gens,
                       const Bits& target) -> std::optional<HolElem2> {
    for (u64 wc = 0; wc < total; ++wc) {
      HolElem2 w = HolElem2::from_code(n, wc), wi = inverse(w);
      bool ok = true;
      for (const auto& g : gens)
        if (!bit(target, compose(compose(wi, g), w).code())) {
          ok = false;
          break;
        }
      if (ok) return w;
    }
    return std::nullopt;
  };

  std::vector<std::pair<std::vector<u64>, std::vector<HolElem2>>> subs(uniq.begin(), uniq.end());
  res.records.resize(subs.size());
  std::vector<int> hit(subs.size(), -1);
  parallel_for(subs.size(), jobs, [&](std::size_t i) {
    const auto& gens = subs[i].second;
    ClassificationRecord rec;
    std::vector<std::uint32_t> el32(subs[i].first.begin(), subs[i].first.end());
    std::vector<std::uint32_t> g32;
    for (const auto& g : gens) g32.push_back(static_cast<std::uint32_t>(g.code()));
    PermSubgroup full = perm_subgroup_from_codes(n, el32, g32);
    rec.iso = iso_type(full);
    rec.intersection_d = intersection_exponent(full);
    rec.generators = gens;
    rec.subgroup = perm_group(gens, n, 0);
    // try representatives with matching invariants first
    std::vector<std::size_t> order(res.distinct_reps.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_partition(order.begin(), order.end(), [&](std::size_t j) {
      const auto& r = res.representatives[res.distinct_reps[j]];
      return r.iso == rec.iso && r.intersection_d == rec.intersection_d;
    });
    for (std::size_t j : order) {
      if (auto w = find_conj(gens, rep_bits[res.distinct_reps[j]])) {
        hit[i] = static_cast<int>(j);
        rec.rtype = res.representatives[res.distinct_reps[j]].rtype;
        rec.conjugator = *w;
        break;
      }
    }
    if (hit[i] >= 0) {
      const auto& target = rep_bits[res.distinct_reps[hit[i]]];
      HolElem2 w = *rec.conjugator, wi = inverse(w);
      std::size_t good = 0;
      for (u64 c : subs[i].first)
        good += bit(target, compose(compose(wi, HolElem2::from_code(n, c)), w).code());
      if (good != N) hit[i] = -2;
    }
    res.records[i] = std::move(rec);
  });
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (hit[i] == -1) ++res.unmatched;
    else if (hit[i] == -2) ++res.witness_failures;
    else ++res.class_sizes[hit[i]];
  }
  // representatives with different invariants cannot be conjugate; equal ones are checked
  for (std::size_t a = 0; a < res.distinct_reps.size(); ++a)
    for (std::size_t b = a + 1; b < res.distinct_reps.size(); ++b) {
      const auto& ra = res.representatives[res.distinct_reps[a]];
      const auto& rb = res.representatives[res.distinct_reps[b]];
      if (ra.iso == rb.iso && ra.intersection_d == rb.intersection_d &&
          find_conj(ra.generators, rep_bits[res.distinct_reps[b]]))
        res.reps_pairwise_nonconjugate = false;
    }
  return res;
}

}  // namespace

EnumerationResult enumerate_regular_subgroups(int n, unsigned jobs) {
  if (n >= 3 && n <= 5) return enumerate_full(n, jobs);
  if (n >= 6 && n <= 8) return enumerate_structured(n, jobs);
  throw RangeError("regular-subgroup enumeration supports 3 <= n <= 8, got " +
                   std::to_string(n));
}

}  // namespace holocirc
