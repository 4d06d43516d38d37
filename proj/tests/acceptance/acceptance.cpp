// Acceptance run: each criterion is checked against the brute-force oracles in
// oracle/oracle.hpp and reported as one PASS/FAIL line with its runtime.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "holocirc/circulant.hpp"
#include "holocirc/holomorph.hpp"
#include "holocirc/notation.hpp"
#include "holocirc/numtheory.hpp"
#include "holocirc/regular_classify.hpp"
#include "oracle/oracle.hpp"

using namespace holocirc;
using oracle::Group;
using oracle::Img;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream info;
  std::vector<std::string> problems;

  void fail(const std::string& what) {
    ok = false;
    if (problems.size() < 5) problems.push_back(what);
  }
};

Img img(const HolElem2& h) {
  auto v = to_images(h);
  return Img(v.begin(), v.end());
}
Img img(const Perm& p) { return Img(p.images().begin(), p.images().end()); }
Img ref(const HolElem2& h) {
  return oracle::hol(h.n, static_cast<std::int64_t>(h.alpha), static_cast<int>(h.beta),
                     static_cast<std::int64_t>(h.gamma));
}

Group group_of(const std::vector<HolElem2>& gens, int n) {
  std::vector<Img> g;
  for (const auto& h : gens) g.push_back(ref(h));
  return oracle::close(g, 1 << n);
}

std::vector<Img> hol_gens(int n) {
  return {oracle::hol(n, 1, 0, 0), oracle::hol(n, 0, 1, 0), oracle::hol(n, 0, 0, 1)};
}

std::size_t translations(const Group& g) {
  const int N = static_cast<int>(g.begin()->size());
  std::size_t c = 0;
  for (const auto& e : g) {
    bool tr = true;
    for (int x = 0; x < N && tr; ++x) tr = e[x] == (x + e[0]) % N;
    c += tr;
  }
  return c;
}

int log2u(u64 v) { return 63 - __builtin_clzll(v); }

std::string elem(const HolElem2& h) { return format_element(h); }

// ---------------------------------------------------------------------------

void number_theory(Outcome& o) {
  {
    const int n = 20;
    const u64 M = u64{1} << n;
    u64 v = 5;  // 5^{2^t}, by squaring
    for (int t = 0; t <= 17; ++t, v = v * v % M) {
      if (numtheory::pow5(std::int64_t{1} << t, n) != v) o.fail("pow5 at t=" + std::to_string(t));
      if (v % (u64{1} << (t + 2)) != 1) o.fail("5^(2^t) != 1 mod 2^(t+2), t=" + std::to_string(t));
      if (v % (u64{1} << (t + 3)) == 1) o.fail("5^(2^t) == 1 mod 2^(t+3), t=" + std::to_string(t));
    }
  }
  const int n = 40;
  const u64 mask = (u64{1} << n) - 1;
  u64 inv = 1;  // Newton iteration for 5^{-1}
  for (int i = 0; i < 7; ++i) inv = inv * (2 - 5 * inv) & mask;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<u64> d(1, 1024);
  u64 truncated = 0, counted = 0;
  for (int i = 0; i < 10000; ++i) {
    const u64 j = d(rng);
    u64 r = 1;
    for (u64 s = 0; s < j; ++s) r = static_cast<u64>(static_cast<u128>(r) * inv) & mask;
    for (int alt = 0; alt < 2; ++alt) {
      u64 k = d(rng);
      if (alt) k += k & 1;
      u64 direct = 0, term = 1;
      for (u64 s = 0; s < k; ++s) {
        direct = (alt && (s & 1) ? direct - term : direct + term) & mask;
        term = static_cast<u64>(static_cast<u128>(term) * r) & mask;
      }
      const auto res = alt ? numtheory::alt_sum_L(k, j, n) : numtheory::geom_sum_M(k, j, n);
      const std::string where = std::string(alt ? "L" : "M") + "(k=" + std::to_string(k) +
                                ", j=" + std::to_string(j) + ")";
      if (res.value != direct) {
        o.fail(where + " residue");
        continue;
      }
      const u64 k2 = k & (~k + 1), j2 = j & (~j + 1);
      const u64 expect = alt ? 2 * k2 * j2 : k2;
      if (direct == 0 || expect >= (u64{1} << n)) {
        ++truncated;
        if (!res.truncated && direct == 0) o.fail(where + " zero residue not flagged");
        continue;
      }
      ++counted;
      if (res.truncated || res.split.two_part != (direct & (~direct + 1)) ||
          res.split.two_part != expect)
        o.fail(where + " 2-part");
    }
  }
  o.info << "t<=17 at n=20; " << counted << " sums at n=40, " << truncated << " truncated";
}

void powers_and_orders(Outcome& o) {
  u64 pairs = 0;
  for (int n = 3; n <= 5; ++n)
    for (u64 c = 0; c < hol_order(n); ++c) {
      const auto h = HolElem2::from_code(n, c);
      const Img base = ref(h);
      Img p = oracle::identity(1 << n);
      for (u64 r = 0; r <= (u64{1} << n); ++r, p = oracle::compose(p, base)) {
        ++pairs;
        if (img(power(h, static_cast<std::int64_t>(r))) != p)
          o.fail(elem(h) + "^" + std::to_string(r));
      }
      if (order(h) != oracle::perm_order(base)) o.fail("order of " + elem(h));
    }
  std::mt19937_64 rng(7);
  u64 samples = 0;
  for (int n = 6; n <= 8; ++n) {
    std::uniform_int_distribution<u64> cd(0, hol_order(n) - 1), rd(0, u64{1} << n);
    for (int i = 0; i < 100000; ++i, ++samples) {
      const auto h = HolElem2::from_code(n, cd(rng));
      const u64 r = rd(rng);
      const Img base = ref(h);
      if (img(power(h, static_cast<std::int64_t>(r))) != oracle::perm_pow(base, r))
        o.fail(elem(h) + "^" + std::to_string(r));
      if (order(h) != oracle::order_by_cycles(base)) o.fail("order of " + elem(h));
    }
  }
  o.info << pairs << " exhaustive pairs (n=3..5), " << samples << " random samples (n=6..8)";
}

void semiregular(Outcome& o) {
  u64 total = 0, semi = 0;
  for (int n = 3; n <= 7; ++n)
    for (u64 c = 0; c < hol_order(n); ++c, ++total) {
      const auto h = HolElem2::from_code(n, c);
      const bool want = oracle::element_semiregular(ref(h));
      semi += want;
      if (is_semiregular_closed_form(h) != want) o.fail("closed form at " + elem(h));
    }
  o.info << total << " elements, " << semi << " semiregular";
}

std::string iso_code(IsoKind k) {
  switch (k) {
    case IsoKind::Cyclic: return "Z";
    case IsoKind::Dihedral: return "D";
    case IsoKind::GeneralizedQuaternion: return "Q";
    case IsoKind::Quasidihedral: return "QD";
    case IsoKind::Modular: return "M";
    case IsoKind::DirectZ2xCyclic: return "Z2xZ";
    default: return "other";
  }
}

void regular_subgroups(Outcome& o) {
  std::ostringstream counts;
  for (int n = 3; n <= 5; ++n) {
    const auto regs = oracle::regular_subgroups(n);
    const std::size_t classes = oracle::conjugacy_classes(regs, n);
    const std::set<Group> regset(regs.begin(), regs.end());
    const auto res = enumerate_regular_subgroups(n);
    const std::string at = " (n=" + std::to_string(n) + ")";
    if (!res.full) o.fail("enumeration not exhaustive" + at);
    if (res.records.size() != regs.size()) o.fail("regular subgroup count" + at);

    std::vector<Group> reps;
    for (std::size_t i : res.distinct_reps) reps.push_back(group_of(res.representatives[i].generators, n));
    if (reps.size() != classes || oracle::conjugacy_classes(reps, n) != classes)
      o.fail("representatives do not match the conjugacy classes" + at);

    std::set<Group> seen;
    for (const auto& rec : res.records) {
      const Group g = group_of(rec.generators, n);
      seen.insert(g);
      if (!regset.count(g)) o.fail("record is not a regular subgroup" + at);
      if (!rec.conjugator) {
        o.fail("record without conjugator" + at);
        continue;
      }
      const Group target = group_of(representative(rec.rtype, n).generators, n);
      if (oracle::conjugate(g, ref(*rec.conjugator)) != target)
        o.fail("conjugator " + elem(*rec.conjugator) + " fails for " + rec.rtype.tag() + at);
      std::size_t hits = 0;
      for (const auto& r : reps) hits += r == target;
      if (hits != 1) o.fail(rec.rtype.tag() + " is not a single representative" + at);
    }
    if (seen != regset) o.fail("records miss regular subgroups" + at);
    for (const auto& note : res.notes) std::printf("  note n=%d: %s\n", n, note.c_str());
    counts << "n=" << n << ": " << regs.size() << "/" << classes << "  ";
  }

  for (int n = 3; n <= 8; ++n) {
    const u64 N = u64{1} << n;
    for (const auto& rt : all_regular_types(n)) {
      const Group g = group_of(representative_generators(rt, n), n);
      const std::string at = rt.tag() + " (n=" + std::to_string(n) + ")";
      if (!oracle::regular(g, static_cast<int>(N))) {
        o.fail(at + " is not regular");
        continue;
      }
      const auto ex = expected(rt, n);
      u64 d = ex.intersection_d;
      if (rt.kind == RegularKind::Cyclic) d = N >> (rt.t + 2);
      if (rt.kind == RegularKind::Direct || rt.kind == RegularKind::Case6) d = N / 2;
      if (rt.kind == RegularKind::Case7) d = 4;
      const std::string iso = oracle::iso_2group(g);
      if (iso != iso_code(ex.iso.kind)) o.fail(at + " has type " + iso);
      if (translations(g) != N / d) o.fail(at + " meets G_R wrongly");
    }
  }
  o.info << counts.str() << "| representatives n=3..8";
}

void normality_in_hol(Outcome& o) {
  std::ostringstream info;
  for (int n = 3; n <= 6; ++n) {
    const int N = 1 << n;
    const auto gens = hol_gens(n);
    std::set<Group> cyc;
    for (const auto& e : oracle::hol_elements(n))
      if (oracle::cycle_lengths(e).size() == 1) cyc.insert(oracle::close({e}, N));
    std::map<Group, bool> normal;
    std::size_t normal_count = 0;
    for (const auto& g : cyc) {
      const bool is_gr = g.count(gens[0]) > 0;
      const int t = log2u(translations(g)) - 2;
      const bool nrm = oracle::normal_in(g, gens);
      normal[g] = nrm;
      normal_count += nrm;
      if (nrm != (is_gr || t == n - 3))
        o.fail("n=" + std::to_string(n) + " t=" + std::to_string(t) + " normal=" + std::to_string(nrm));
    }
    const auto lib = cyclic_regular_subgroups(n);
    if (lib.size() != cyc.size()) o.fail("cyclic regular count at n=" + std::to_string(n));
    for (const auto& c : lib) {
      const Group g = group_of({c.generator}, n);
      auto it = normal.find(g);
      if (it == normal.end() || it->second != c.normal_in_hol)
        o.fail("library normality for " + elem(c.generator));
      RegularType rt = c.is_gr ? RegularType{RegularKind::GR, 0} : RegularType{RegularKind::Cyclic, c.t};
      if (is_normal_cyclic_regular_in_hol(rt, n) != c.normal_in_hol)
        o.fail("closed form for " + rt.tag());
    }
    info << "n=" << n << ": " << normal_count << "/" << cyc.size() << " normal  ";
  }
  o.info << info.str();
}

bool degenerate(int n, const std::vector<int>& S) { return S.empty() || (S.size() == 1 && 2 * S[0] == n); }

std::vector<Img> affine_aut(int n, const std::vector<int>& A) {
  std::vector<Img> out;
  for (int m : A)
    for (int c = 0; c < n; ++c) out.push_back(oracle::affine(n, m, c));
  return out;
}

void nnn_scan(Outcome& o) {
  u64 graphs = 0, normal = 0;
  for (int n : {8, 9, 10, 12, 16}) {
    for (u64 mask = 0; mask < census_size(n); ++mask) {
      const auto S = oracle::pair_mask_set(n, mask);
      if (degenerate(n, S)) continue;
      ++graphs;
      const auto v = nnn_verdict(Circulant::from_pair_mask(n, mask));
      const std::string at = "n=" + std::to_string(n) + " mask=" + std::to_string(mask);
      if (v.nnn) o.fail(at + " reported NNN");
      const bool nrm = oracle::normal_cayley(n, S);
      if (v.is_normal_for_GR != nrm) o.fail(at + " normality disagrees");
      if (!nrm) continue;
      ++normal;
      // Aut is the affine group; every cyclic regular subgroup in it must be normal
      const auto aut = affine_aut(n, oracle::multipliers_preserving(n, S));
      std::set<Group> cyc;
      for (const auto& e : aut)
        if (oracle::cycle_lengths(e).size() == 1) cyc.insert(oracle::close({e}, n));
      for (const auto& h : cyc)
        if (!oracle::normal_in(h, aut)) o.fail(at + " has a non-normal cyclic regular subgroup");
    }
  }
  o.info << graphs << " non-degenerate circulants, " << normal << " normal, 0 NNN expected";
}

void abelian_regular(Outcome& o) {
  u64 normal = 0, subgroups = 0;
  for (int n : {9, 10, 12}) {
    for (u64 mask = 0; mask < census_size(n); ++mask) {
      const auto S = oracle::pair_mask_set(n, mask);
      if (degenerate(n, S)) continue;
      const auto g = Circulant::from_pair_mask(n, mask);
      const std::string at = "n=" + std::to_string(n) + " mask=" + std::to_string(mask);
      const bool nrm = oracle::normal_cayley(n, S);
      if (is_normal_cayley(g) != nrm) o.fail(at + " normality disagrees");
      if (!nrm) continue;
      ++normal;
      const auto hs = oracle::abelian_regular_subgroups(affine_aut(n, oracle::multipliers_preserving(n, S)), n);
      subgroups += hs.size();
      if (abelian_regular_affine(n, aut_G_S(g)).size() != hs.size()) o.fail(at + " abelian regular count");
      if (n % 4 != 0 && hs.size() != 1) o.fail(at + " has " + std::to_string(hs.size()) + " abelian regular subgroups");
      for (const auto& h : hs) {
        const u64 index = n / translations(h);
        if (index & (index - 1)) o.fail(at + " index " + std::to_string(index));
      }
    }
  }
  o.info << normal << " normal circulants, " << subgroups << " abelian regular subgroups";
}

void theta(Outcome& o) {
  u64 applicable = 0;
  for (int n : {9, 16}) {
    const int mult = n == 9 ? 4 : 5;
    for (u64 mask = 0; mask < census_size(n); ++mask) {
      const auto S = oracle::pair_mask_set(n, mask);
      const std::set<int> s(S.begin(), S.end());
      bool pre = true;
      for (int x : S) pre = pre && s.count(x * mult % n);
      const auto g = Circulant::from_pair_mask(n, mask);
      const auto w = n == 9 ? theta_witness_p_odd(g, 3) : theta_witness_2part(g);
      const std::string at = "n=" + std::to_string(n) + " mask=" + std::to_string(mask);
      if (w.has_value() != pre) {
        o.fail(at + " witness presence");
        continue;
      }
      if (!pre) continue;
      ++applicable;
      const Img th = img(w->theta);
      if (!oracle::is_automorphism(oracle::circulant(n, S), th)) o.fail(at + " theta not an automorphism");
      if (th[0] != 0) o.fail(at + " theta moves 0");
      for (int m : oracle::multipliers_preserving(n, S))
        if (th == oracle::affine(n, m, 0)) o.fail(at + " theta lies in Aut(G,S)");
      if (!w->check.ok()) o.fail(at + " library check");
      if (oracle::normal_cayley(n, S)) o.fail(at + " witness on a normal circulant");
    }
  }
  o.info << applicable << " connection sets meet the multiplier condition";
}

void lex_bound(Outcome& o) {
  u64 cases = 0;
  for (int k = 2; k <= 20; ++k)
    for (int t = 1; t <= k - 1; ++t, ++cases) {
      const u64 lhs = (u64{1} << (k - t)) * t + k - t, rhs = 2 * k - 1;
      const auto b = lex_nonnormal_bound(k, t);
      const std::string at = "k=" + std::to_string(k) + " t=" + std::to_string(t);
      if (b.lhs != lhs || b.rhs != rhs || b.holds != (lhs >= rhs) || b.equality != (lhs == rhs))
        o.fail(at + " library");
      if (lhs < rhs || (lhs == rhs) != (t == k - 1)) o.fail(at);
    }
  o.info << cases << " (k, t) pairs";
}

void stabilizers(Outcome& o) {
  u64 points = 0;
  for (int n = 3; n <= 6; ++n) {
    const int N = 1 << n;
    const auto all = oracle::hol_elements(n);
    for (int g = 0; g < N; ++g, ++points) {
      auto [s1, s2] = point_stabilizer(static_cast<u64>(g), n);
      const Group gen = oracle::close({ref(s1), ref(s2)}, N);
      Group brute;
      for (const auto& e : all)
        if (e[g] == g) brute.insert(e);
      const std::string at = "n=" + std::to_string(n) + " g=" + std::to_string(g);
      if (gen != brute) o.fail(at + " generated group differs");
      if (gen.size() != static_cast<std::size_t>(N / 2)) o.fail(at + " order");
    }
  }
  o.info << points << " points";
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "number theory", 5, number_theory},
      {2, "closed-form powers and orders", 60, powers_and_orders},
      {3, "semiregular classification", 120, semiregular},
      {4, "regular-subgroup classification", 600, regular_subgroups},
      {5, "normality of cyclic regular subgroups in Hol", 60, normality_in_hol},
      {6, "no NNN circulants", 600, nnn_scan},
      {7, "abelian regular subgroups of normal circulants", 300, abelian_regular},
      {8, "theta witnesses", 120, theta},
      {9, "lexicographic bound", 1, lex_bound},
      {10, "point stabilizers", 30, stabilizers},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.limit_s) o.fail("over time limit");
    failed += !o.ok;
    std::printf("%s  criterion %2d  %-46s %8.2f s (limit %g s)  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name,
                s, c.limit_s, o.info.str().c_str());
    for (const auto& p : o.problems) std::printf("      %s\n", p.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
