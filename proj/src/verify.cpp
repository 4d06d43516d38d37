#include "holocirc/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "holocirc/circulant.hpp"
#include "holocirc/holomorph.hpp"
#include "holocirc/numtheory.hpp"
#include "holocirc/parallel.hpp"
#include "holocirc/regular_classify.hpp"

namespace holocirc {

using json = nlohmann::json;
using numtheory::Modulus2n;

namespace {

constexpr std::size_t kMaxCounterexamples = 5;
constexpr int kHolHardMax = 12;

struct Ctx {
  const VerifyOptions& opts;
  std::vector<u64> moduli;
};

// One unit of work (a single n or a single modulus) reports here.
struct Unit {
  json ev = json::object();
  json ce = json::array();
  bool skipped = false;
  std::size_t failures = 0;

  void fail(json c) {
    ++failures;
    if (ce.size() < kMaxCounterexamples) ce.push_back(std::move(c));
  }
  void skip(std::string why) {
    skipped = true;
    ev["skipped"] = std::move(why);
  }
  json finish() {
    if (!skipped) {
      ev["failures"] = failures;
      if (failures) ev["counterexamples"] = ce;
    }
    return ev;
  }
};

bool is_pow2(u64 v) { return v && !(v & (v - 1)); }

u64 low_bits(u64 v, int bits) { return bits >= 64 ? v : v & ((u64{1} << bits) - 1); }

std::vector<u64> odd_prime_square_divisors(u64 n) {
  std::vector<u64> out;
  for (const auto& pp : crt_decompose(n).parts)
    if (pp.p != 2 && pp.k >= 2) out.push_back(pp.p);
  return out;
}

// Results for every inverse-closed S on Z_n, computed in parallel, read in mask order.
template <class T, class Fn>
std::vector<T> census(u64 n, unsigned jobs, Fn&& fn) {
  std::vector<T> out(census_size(n));
  parallel_for(out.size(), jobs, [&](std::size_t mask) {
    out[mask] = fn(Circulant::from_pair_mask(n, mask));
  });
  return out;
}

json s_json(const Circulant& g) { return format_residue_set(g.connection_set()); }

// ---------------------------------------------------------------------------
// number theory

json lem31(std::int64_t n, const Ctx&) {
  Unit u;
  u.ev["n"] = n;
  u64 checked = 0;
  for (int t = 0; t <= n - 3; ++t) {
    u64 v = numtheory::pow5(std::int64_t{1} << t, static_cast<int>(n));
    ++checked;
    if (low_bits(v, t + 2) != 1 % (u64{1} << (t + 2)))
      u.fail({{"t", t}, {"value", v}, {"clause", "== 1 mod 2^(t+2)"}});
    if (low_bits(v, t + 3) == 1)
      u.fail({{"t", t}, {"value", v}, {"clause", "!= 1 mod 2^(t+3)"}});
  }
  u.ev["t_checked"] = checked;
  return u.finish();
}

json lem32(std::int64_t n_, const Ctx& ctx) {
  Unit u;
  const int n = static_cast<int>(n_);
  const Modulus2n mod(n);
  const u64 samples = ctx.opts.samples ? ctx.opts.samples : 10000;
  std::mt19937_64 rng(ctx.opts.seed * 0x9E3779B97F4A7C15ull + static_cast<u64>(n));
  std::uniform_int_distribution<u64> kd(1, 1024), jd(1, 1024), evenk(1, 512);
  const bool wide = n >= 63;
  u64 m_trunc = 0, l_trunc = 0;
  for (u64 i = 0; i < samples; ++i) {
    const u64 j = jd(rng);
    const u64 r = numtheory::pow5(-static_cast<std::int64_t>(j), n);
    for (int which = 0; which < 2; ++which) {
      const bool alt = which == 1;
      const u64 k = alt ? 2 * evenk(rng) : kd(rng);
      // direct summation
      u64 direct = 0, term = 1;
      for (u64 s = 0; s < k; ++s) {
        direct = mod.add(direct, (alt && (s & 1)) ? mod.neg(term) : term);
        term = mod.mul(term, r);
      }
      auto res = alt ? numtheory::alt_sum_L(k, j, n) : numtheory::geom_sum_M(k, j, n);
      json where{{"sum", alt ? "L" : "M"}, {"k", k}, {"j", j}};
      if (res.value != direct) {
        where["value"] = res.value;
        where["direct"] = direct;
        u.fail(where);
        continue;
      }
      // telescoping identity
      const u64 lhs = mod.mul(res.value, alt ? mod.add(1, r) : mod.sub(1, r));
      if (lhs != mod.sub(1, mod.pow(r, k))) {
        where["clause"] = "telescoping";
        u.fail(where);
      }
      const u64 k2 = k & (~k + 1), j2 = j & (~j + 1);
      const u64 expect = alt ? 2 * k2 * j2 : k2;
      if (!wide && expect >= mod.modulus()) {
        ++(alt ? l_trunc : m_trunc);
        continue;
      }
      if (res.truncated || res.split.two_part != expect) {
        where["two_part"] = res.truncated ? 0 : res.split.two_part;
        where["expected"] = expect;
        u.fail(where);
      }
    }
  }
  u.ev["n"] = n;
  u.ev["samples"] = samples;
  u.ev["seed"] = ctx.opts.seed;
  u.ev["truncated_M"] = m_trunc;
  u.ev["truncated_L"] = l_trunc;
  return u.finish();
}

// ---------------------------------------------------------------------------
// holomorph

json lem33(std::int64_t n_, const Ctx& ctx) {
  Unit u;
  const int n = static_cast<int>(n_);
  const u64 top = u64{1} << n;
  u.ev["n"] = n;
  if (n <= 5) {
    u64 checked = 0;
    for (u64 c = 0; c < hol_order(n); ++c) {
      const HolElem2 h = HolElem2::from_code(n, c);
      HolElem2 p = HolElem2::identity(n);
      for (u64 r = 0; r <= top; ++r, p = compose(p, h)) {
        ++checked;
        if (power(h, static_cast<std::int64_t>(r)) != p)
          u.fail({{"h", format_element(h)}, {"r", r}});
        if (r && power(h, -static_cast<std::int64_t>(r)) != inverse(p))
          u.fail({{"h", format_element(h)}, {"r", -static_cast<std::int64_t>(r)}});
      }
    }
    u.ev["mode"] = "exhaustive";
    u.ev["pairs"] = checked;
  } else {
    const u64 samples = ctx.opts.samples ? ctx.opts.samples : 100000;
    std::mt19937_64 rng(ctx.opts.seed * 0x9E3779B97F4A7C15ull + static_cast<u64>(n));
    std::uniform_int_distribution<u64> cd(0, hol_order(n) - 1), rd(0, top);
    for (u64 i = 0; i < samples; ++i) {
      const HolElem2 h = HolElem2::from_code(n, cd(rng));
      const u64 r = rd(rng);
      if (power(h, static_cast<std::int64_t>(r)) != power_iterated(h, r))
        u.fail({{"h", format_element(h)}, {"r", r}});
    }
    u.ev["mode"] = "random";
    u.ev["samples"] = samples;
    u.ev["seed"] = ctx.opts.seed;
  }
  return u.finish();
}

json lem34(std::int64_t n_, const Ctx&) {
  Unit u;
  const int n = static_cast<int>(n_);
  for (u64 c = 0; c < hol_order(n); ++c) {
    const HolElem2 h = HolElem2::from_code(n, c);
    const u64 o = order(h), b = order_iterated(h);
    if (o != b) u.fail({{"h", format_element(h)}, {"closed", o}, {"iterated", b}});
  }
  u.ev["n"] = n;
  u.ev["elements"] = hol_order(n);
  return u.finish();
}

json lem35(std::int64_t n_, const Ctx&) {
  Unit u;
  const int n = static_cast<int>(n_);
  for (u64 c = 0; c < hol_order(n); ++c) {
    const HolElem2 h = HolElem2::from_code(n, c);
    const auto cf = conj_normal_form(h);
    const u64 a2 = h.alpha ? (h.alpha & (~h.alpha + 1)) : 0;
    const bool shape = cf.form.alpha == a2 && cf.form.beta == h.beta && cf.form.gamma == h.gamma;
    const bool witnessed = conjugate(h, inverse(cf.conjugator)) == cf.form;
    if (!shape || !witnessed)
      u.fail({{"h", format_element(h)},
              {"form", format_element(cf.form)},
              {"conjugator", format_element(cf.conjugator)}});
  }
  u.ev["n"] = n;
  u.ev["elements"] = hol_order(n);
  return u.finish();
}

json lem310(std::int64_t n_, const Ctx&) {
  Unit u;
  const int n = static_cast<int>(n_);
  const u64 N = hol_order(n);
  for (u64 g = 0; g < (u64{1} << n); ++g) {
    auto [s1, s2] = point_stabilizer(g, n);
    std::vector<char> seen(N, 0);
    std::vector<HolElem2> queue{HolElem2::identity(n)};
    seen[queue[0].code()] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const auto& s : {s1, s2}) {
        auto e = compose(queue[i], s);
        if (!seen[e.code()]) {
          seen[e.code()] = 1;
          queue.push_back(e);
        }
      }
    u64 brute = 0;
    bool equal = true;
    for (u64 c = 0; c < N; ++c) {
      const bool fixes = act(HolElem2::from_code(n, c), g) == g;
      brute += fixes;
      if (fixes != static_cast<bool>(seen[c])) equal = false;
    }
    if (!equal || queue.size() != (u64{1} << (n - 1)))
      u.fail({{"g", g},
              {"generators", {format_element(s1), format_element(s2)}},
              {"generated", queue.size()},
              {"stabilizer", brute}});
  }
  u.ev["n"] = n;
  u.ev["points"] = u64{1} << n;
  u.ev["stabilizer_order"] = u64{1} << (n - 1);
  return u.finish();
}

json thm314(std::int64_t n_, const Ctx&) {
  Unit u;
  const int n = static_cast<int>(n_);
  u64 semi = 0;
  for (u64 c = 0; c < hol_order(n); ++c) {
    const HolElem2 h = HolElem2::from_code(n, c);
    const bool a = is_semiregular_closed_form(h), b = is_semiregular_by_orbits(h);
    semi += b;
    if (a != b) u.fail({{"h", format_element(h)}, {"closed", a}, {"orbits", b}});
  }
  u.ev["n"] = n;
  u.ev["elements"] = hol_order(n);
  u.ev["semiregular"] = semi;
  return u.finish();
}

json thm14(std::int64_t n_, const Ctx& ctx) {
  Unit u;
  const int n = static_cast<int>(n_);
  auto res = enumerate_regular_subgroups(n, ctx.opts.jobs);
  u.ev["n"] = n;
  u.ev["mode"] = res.full ? "full" : "structured";
  if (res.full) u.ev["semiregular_by_order"] = res.level_counts;
  u.ev["regular_subgroups"] = res.records.size();
  u.ev["classes"] = res.classes_found();
  u.ev["distinct_representatives"] = res.distinct_reps.size();
  u.ev["class_sizes"] = res.class_sizes;
  u.ev["notes"] = res.notes;
  // cyclic families for t in [0, n-3]; t = n-2 collapses onto the translations
  u.ev["cyclic_types_t_le_n_minus_3"] = n - 2;
  u.ev["t_eq_n_minus_2_is_translations"] =
      HolElem2::make(n, 1, 0, u64{1} << (n - 2)) == HolElem2::a(n);
  if (res.unmatched) u.fail({{"unmatched", res.unmatched}});
  if (res.multiply_matched) u.fail({{"multiply_matched", res.multiply_matched}});
  if (res.witness_failures) u.fail({{"conjugator_failures", res.witness_failures}});
  if (!res.reps_pairwise_nonconjugate) u.fail({{"representatives", "conjugate pair"}});
  if (res.classes_found() != res.distinct_reps.size())
    u.fail({{"classes", res.classes_found()}, {"representatives", res.distinct_reps.size()}});
  for (const auto& rep : res.representatives) {
    if (rep.matches()) continue;
    std::vector<std::string> gens;
    for (const auto& g : rep.generators) gens.push_back(format_element(g));
    u.fail({{"type", rep.rtype.tag()},
            {"generators", gens},
            {"regular", rep.regular},
            {"iso", to_string(rep.iso)},
            {"expected_iso", to_string(rep.expect.iso)},
            {"intersection_d", rep.intersection_d},
            {"expected_d", rep.expect.intersection_d}});
  }
  return u.finish();
}

json thm34(std::int64_t n_, const Ctx&) {
  Unit u;
  const int n = static_cast<int>(n_);
  auto list = cyclic_regular_subgroups(n);
  u64 normal = 0;
  for (const auto& c : list) {
    const bool closed = c.is_gr || c.t == n - 3;
    normal += c.normal_in_hol;
    RegularType rt = c.is_gr ? RegularType{RegularKind::GR, 0} : RegularType{RegularKind::Cyclic, c.t};
    const bool library = is_normal_cyclic_regular_in_hol(rt, n);
    if (closed != c.normal_in_hol || library != c.normal_in_hol)
      u.fail({{"generator", format_element(c.generator)},
              {"t", c.t},
              {"brute_normal", c.normal_in_hol},
              {"closed_form", closed}});
  }
  u.ev["n"] = n;
  u.ev["cyclic_regular"] = list.size();
  u.ev["normal"] = normal;
  return u.finish();
}

// ---------------------------------------------------------------------------
// graphs

json cor34(u64 m, const Ctx& ctx) {
  Unit u;
  u.ev["n"] = m;
  if (!is_pow2(m) || m < 16) {
    u.skip("needs n = 2^k with k >= 4");
    return u.finish();
  }
  const int k = std::countr_zero(m);
  const u64 mult = numtheory::pow5(std::int64_t{1} << (k - 4), k);
  struct R {
    bool candidate = false;
    bool has_mult = false;
  };
  auto rs = census<R>(m, ctx.opts.jobs, [&](const Circulant& g) {
    R r;
    auto v = nnn_verdict(g);
    for (const auto& c : v.regular_cyclic_subgroups) r.candidate |= !c.is_gr && !c.normal;
    auto A = aut_G_S(g);
    r.has_mult = std::find(A.begin(), A.end(), mult) != A.end();
    return r;
  });
  u64 candidates = 0, with_mult = 0;
  for (std::size_t mask = 0; mask < rs.size(); ++mask) {
    with_mult += rs[mask].has_mult;
    if (!rs[mask].candidate) continue;
    ++candidates;
    if (!rs[mask].has_mult)
      u.fail({{"mask", mask}, {"S", s_json(Circulant::from_pair_mask(m, mask))}});
  }
  u.ev["circulants"] = rs.size();
  u.ev["multiplier"] = mult;
  u.ev["preserving_multiplier"] = with_mult;
  u.ev["candidates"] = candidates;
  u.ev["vacuous"] = candidates == 0;
  return u.finish();
}

json lemlex_bound(std::int64_t k, const Ctx&) {
  Unit u;
  for (int t = 1; t <= k - 1; ++t) {
    auto b = lex_nonnormal_bound(static_cast<int>(k), t);
    if (!b.holds || b.equality != (t == k - 1))
      u.fail({{"k", k}, {"t", t}, {"lhs", b.lhs}, {"rhs", b.rhs}});
  }
  u.ev["k"] = k;
  u.ev["t_checked"] = k - 1;
  return u.finish();
}

json lemlex_graphs(u64 m, const Ctx& ctx) {
  Unit u;
  u.ev["n"] = m;
  if (!is_pow2(m) || m < 8) {
    u.skip("needs n = 2^k with k >= 3");
    return u.finish();
  }
  struct R {
    bool w = false;
    bool normal = false;
    bool degenerate = false;
  };
  auto rs = census<R>(m, ctx.opts.jobs, [](const Circulant& g) {
    return R{!w_subgroups(g).divisors.empty(), is_normal_cayley(g), g.degenerate()};
  });
  u64 with_w = 0;
  for (std::size_t mask = 0; mask < rs.size(); ++mask) {
    if (rs[mask].degenerate || !rs[mask].w) continue;
    ++with_w;
    if (rs[mask].normal) u.fail({{"mask", mask}, {"S", s_json(Circulant::from_pair_mask(m, mask))}});
  }
  u.ev["circulants"] = rs.size();
  u.ev["with_w_subgroup"] = with_w;
  return u.finish();
}

json lemy(u64 m, const Ctx& ctx) {
  Unit u;
  u.ev["n"] = m;
  if (!is_pow2(m) || m < 8) {
    u.skip("needs n = 2^k with k >= 3");
    return u.finish();
  }
  struct R {
    bool fixed = false;
    bool normal = false;
  };
  auto rs = census<R>(m, ctx.opts.jobs, [&](const Circulant& g) {
    R r;
    r.fixed = true;
    for (u64 s : g.connection_set()) r.fixed &= g.contains(5 * s % m);
    if (r.fixed) r.normal = is_normal_cayley(g);
    return r;
  });
  u64 fixed = 0;
  for (std::size_t mask = 0; mask < rs.size(); ++mask) {
    if (!rs[mask].fixed) continue;
    ++fixed;
    if (rs[mask].normal) u.fail({{"mask", mask}, {"S", s_json(Circulant::from_pair_mask(m, mask))}});
  }
  u.ev["circulants"] = rs.size();
  u.ev["five_invariant"] = fixed;
  return u.finish();
}

u64 ipow(u64 p, int k) {
  u64 q = 1;
  while (k--) q *= p;
  return q;
}

u64 mult_order(u64 u, u64 q) {
  u64 o = 1, x = u % q;
  while (x != 1 % q) {
    x = mod_mul(x, u, q);
    ++o;
  }
  return o;
}

json lem21(std::int64_t k, const Ctx& ctx) {
  Unit u;
  u64 cases = 0;
  for (u64 p : ctx.moduli) {
    const u64 q = ipow(p, static_cast<int>(k));
    for (int m = 1; m <= k - 1; ++m) {
      ++cases;
      const auto C = centralizer_in_aut(p, static_cast<int>(k), m);
      const u64 gen = ipow(p, static_cast<int>(k) - m);  // N = <p^{k-m}>
      std::vector<u64> brute;
      for (u64 v = 1; v < q; ++v)
        if (std::gcd(v, q) == 1 && mod_mul(v, gen, q) == gen) brute.push_back(v);
      const bool whole = p == 2 && m == 1;
      const u64 expect = whole ? q / 2 : ipow(p, static_cast<int>(k) - m);
      bool cyclic = false;
      for (u64 v : brute) cyclic |= mult_order(v, q) == brute.size();
      json where{{"p", p}, {"k", k}, {"m", m}, {"order", C.order()}, {"expected", expect}};
      if (C.multipliers != brute || brute.size() != expect) u.fail(where);
      if (!whole && (!cyclic || !C.is_cyclic())) {
        where["clause"] = "cyclic";
        u.fail(where);
      }
    }
  }
  u.ev["k"] = k;
  u.ev["primes"] = ctx.moduli;
  u.ev["cases"] = cases;
  return u.finish();
}

json cor23(u64 n, const Ctx&) {
  Unit u;
  const auto frame = crt_decompose(n);
  const auto Hs = abelian_regular_affine(n, unit_group(n));
  for (const auto& H : Hs) {
    std::vector<u64> N;
    for (const auto& e : H)
      if (e.m == 1 % n) N.push_back(e.t);
    const u64 index = n / N.size();
    std::vector<int> ms;
    bool full_support = true;
    for (const auto& pp : frame.parts) {
      int m = 0;
      for (u64 s = N.size(); s % pp.p == 0; s /= pp.p) ++m;
      full_support &= m >= 1;
      ms.push_back(m);
    }
    u64 brute = 0;
    for (u64 v : unit_group(n))
      brute += std::all_of(N.begin(), N.end(), [&](u64 t) { return mod_mul(v, t, n) == t; });
    const u64 formula = full_support ? centralizer_in_aut(ms, frame).order() : 0;
    if (!full_support || brute != formula || brute != index) {
      std::vector<std::string> gens;
      for (const auto& e : H) gens.push_back(format_affine(e));
      u.fail({{"H", gens},
              {"N_order", N.size()},
              {"centralizer", brute},
              {"formula", formula},
              {"index", index}});
    }
  }
  u.ev["n"] = n;
  u.ev["abelian_regular"] = Hs.size();
  return u.finish();
}

json theta_claim(u64 m, const Ctx& ctx, bool two_part) {
  Unit u;
  u.ev["n"] = m;
  const auto primes = odd_prime_square_divisors(m);
  if (two_part ? m % 16 != 0 : primes.empty()) {
    u.skip(two_part ? "needs 16 | n" : "needs p^2 | n for an odd prime p");
    return u.finish();
  }
  struct R {
    std::vector<ThetaWitness> ws;
    bool normal = false;
  };
  auto rs = census<R>(m, ctx.opts.jobs, [&](const Circulant& g) {
    R r;
    if (two_part) {
      if (auto w = theta_witness_2part(g)) r.ws.push_back(std::move(*w));
    } else {
      for (u64 p : primes)
        if (auto w = theta_witness_p_odd(g, p)) r.ws.push_back(std::move(*w));
    }
    if (!r.ws.empty()) r.normal = is_normal_cayley(g);
    return r;
  });
  u64 applicable = 0, witnesses = 0;
  for (std::size_t mask = 0; mask < rs.size(); ++mask) {
    applicable += !rs[mask].ws.empty();
    for (const auto& w : rs[mask].ws) {
      ++witnesses;
      if (!w.check.ok() || rs[mask].normal)
        u.fail({{"mask", mask},
                {"S", s_json(Circulant::from_pair_mask(m, mask))},
                {"prime", w.prime},
                {"multiplier", w.multiplier},
                {"edge_preserving", w.check.edge_preserving},
                {"fixes_zero", w.check.fixes_zero},
                {"outside_aut_gs", w.check.outside_aut_gs},
                {"normal", rs[mask].normal}});
    }
  }
  u.ev["circulants"] = rs.size();
  u.ev["precondition_met"] = applicable;
  u.ev["witnesses"] = witnesses;
  return u.finish();
}

json lem24(u64 m, const Ctx& ctx) { return theta_claim(m, ctx, false); }
json thm43(u64 m, const Ctx& ctx) { return theta_claim(m, ctx, true); }

json abelian_claim(u64 m, const Ctx& ctx, bool uniqueness) {
  Unit u;
  u.ev["n"] = m;
  if (uniqueness && m % 4 == 0) {
    u.skip("needs 4 !| n");
    return u.finish();
  }
  auto scan = abelian_regular_scan(m, ctx.opts.jobs);
  for (const auto& c : scan.counterexamples) {
    const bool is_unique_msg = c.find("abelian regular") != std::string::npos;
    const bool is_index_msg = c.find("index") != std::string::npos;
    if ((uniqueness && is_unique_msg) || (!uniqueness && is_index_msg)) u.fail(c);
  }
  u.ev["circulants"] = scan.circulants;
  u.ev["normal"] = scan.normal;
  return u.finish();
}

json lem26(u64 m, const Ctx& ctx) { return abelian_claim(m, ctx, false); }
json thm27(u64 m, const Ctx& ctx) { return abelian_claim(m, ctx, true); }

json nnn_claim(u64 m, const Ctx& ctx, bool only_not_8) {
  Unit u;
  u.ev["n"] = m;
  if (only_not_8 && m % 8 == 0) {
    u.skip("needs 8 !| n");
    return u.finish();
  }
  struct R {
    bool normal = false;
    bool nnn = false;
    bool nonconj = false;
    bool degenerate = false;
  };
  auto rs = census<R>(m, ctx.opts.jobs, [](const Circulant& g) {
    auto v = nnn_verdict(g);
    return R{v.is_normal_for_GR, v.nnn, v.nnn_nonconjugate, g.degenerate()};
  });
  u64 normal = 0, degenerate = 0;
  for (std::size_t mask = 0; mask < rs.size(); ++mask) {
    normal += rs[mask].normal;
    degenerate += rs[mask].degenerate;
    if (rs[mask].nnn || rs[mask].nonconj)
      u.fail({{"mask", mask},
              {"S", s_json(Circulant::from_pair_mask(m, mask))},
              {"nnn_nonconjugate", rs[mask].nonconj}});
  }
  u.ev["circulants"] = rs.size();
  u.ev["degenerate"] = degenerate;
  u.ev["normal"] = normal;
  u.ev["nnn"] = u.failures;
  return u.finish();
}

json thm28(u64 m, const Ctx& ctx) { return nnn_claim(m, ctx, true); }
json thm13(u64 m, const Ctx& ctx) { return nnn_claim(m, ctx, false); }

// ---------------------------------------------------------------------------

enum class Scale { Plain, Hol, Graph };

struct Entry {
  ClaimInfo info;
  Scale n_scale = Scale::Plain;
  IntRange n_hard{};
  bool random = false;
  std::function<json(std::int64_t, const Ctx&)> per_n;
  std::function<json(u64, const Ctx&)> per_modulus;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    auto add = [&](std::string id, std::string anchor, Entry e) {
      e.info.id = std::move(id);
      e.info.anchor = std::move(anchor);
      e.info.takes_n = static_cast<bool>(e.per_n);
      e.info.takes_modulus = static_cast<bool>(e.per_modulus) || !e.info.default_moduli.empty();
      t.push_back(std::move(e));
    };
    auto n_entry = [](IntRange def, IntRange hard, Scale sc, auto fn, bool random = false) {
      Entry e;
      e.info.default_n = def;
      e.n_hard = hard;
      e.n_scale = sc;
      e.random = random;
      e.per_n = fn;
      return e;
    };
    auto m_entry = [](std::vector<u64> def, auto fn) {
      Entry e;
      e.info.default_moduli = std::move(def);
      e.per_modulus = fn;
      return e;
    };

    add("lem-3.1", "5^(2^t) is 1 mod 2^(t+2) and not 1 mod 2^(t+3), 0 <= t <= n-3",
        n_entry({3, 20}, {3, 62}, Scale::Plain, lem31));
    add("lem-3.2", "2-parts of the 5^(-j) geometric sum (k_2) and alternating sum (2 k_2 j_2)",
        n_entry({40, 40}, {1, 62}, Scale::Plain, lem32, true));
    add("lem-3.3", "closed-form powers of a^alpha x^beta y^gamma equal iterated products",
        n_entry({3, 5}, {3, kHolHardMax}, Scale::Hol, lem33, true));
    add("lem-3.4", "closed-form element orders in Hol(Z_2^n) equal brute-force orders",
        n_entry({3, 7}, {3, kHolHardMax}, Scale::Hol, lem34));
    add("lem-3.5", "a^alpha x^beta y^gamma is conjugate to a^(alpha_2) x^beta y^gamma",
        n_entry({3, 6}, {3, kHolHardMax}, Scale::Hol, lem35));
    add("lem-3.10", "stabilizer of g is generated by a^(-2g) x and a^(g(5^-1 - 1)) y",
        n_entry({3, 6}, {3, kHolHardMax}, Scale::Hol, lem310));
    add("thm-3.14", "closed-form semiregularity criterion equals the orbit test",
        n_entry({3, 7}, {3, kHolHardMax}, Scale::Hol, thm314));
    add("thm-1.4", "every regular subgroup of Hol(Z_2^n) is conjugate to one of seven families",
        n_entry({3, 5}, {3, 8}, Scale::Hol, thm14));
    add("thm-3.4-normality", "a cyclic regular subgroup is normal in Hol iff it is G_R or <a y^(2^(n-3))>",
        n_entry({3, 6}, {3, 10}, Scale::Hol, thm34));
    add("cor-3.4", "an NNN circulant on Z_2^k admits the multiplier 5^(2^(k-4))",
        m_entry({16}, cor34));
    {
      Entry e = n_entry({3, 20}, {2, 62}, Scale::Plain, lemlex_bound);
      e.info.default_moduli = {8, 16};
      e.per_modulus = lemlex_graphs;
      add("lem-lex", "lexicographic products on Z_2^k are non-normal; 2^(k-t) t + k - t >= 2k - 1",
          std::move(e));
    }
    add("lem-y-nonnormal", "a circulant on Z_2^k preserved by multiplication by 5 is non-normal",
        m_entry({8, 16}, lemy));
    {
      Entry e = n_entry({2, 5}, {2, 20}, Scale::Plain, lem21);
      e.info.default_moduli = {2, 3, 5, 7};
      add("lem-2.1", "the centralizer of Z_p^m in Aut(Z_p^k) has order p^(k-m) and is cyclic",
          std::move(e));
    }
    add("cor-2.3", "for abelian regular H in Hol(Z_n), |C_Aut(G)(G_R cap H)| = |H : G_R cap H|",
        m_entry({9, 10, 12}, cor23));
    add("lem-2.4-theta", "an order-p multiplier in Aut(G,S) with p^2 | n yields a non-normality witness",
        m_entry({9}, lem24));
    add("lem-2.6-2power", "a second abelian regular subgroup meets G_R with 2-power index",
        m_entry({12}, lem26));
    add("thm-2.7-unique", "a normal circulant with 4 !| n has G_R as its only abelian regular subgroup",
        m_entry({9, 10}, thm27));
    add("thm-2.8-no8", "no circulant of order n with 8 !| n is an NNN-graph",
        m_entry({9, 10, 12}, thm28));
    add("thm-4.3-theta", "the multiplier 5^(2^(k1-4)) in Aut(G,S) yields a non-normality witness",
        m_entry({16}, thm43));
    add("thm-1.3-scan", "no circulant is an NNN-graph (exhaustive over inverse-closed S)",
        m_entry({8}, thm13));
    return t;
  }();
  return table;
}

const Entry& find_entry(std::string_view id) {
  for (const auto& e : entries())
    if (e.info.id == id) return e;
  throw UnknownClaimError("unknown claim '" + std::string(id) + "'");
}

std::string range_arg(IntRange r) {
  return r.lo == r.hi ? std::to_string(r.lo) : std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

// Restores the global graph bound after a forced run.
struct GraphBoundGuard {
  std::size_t saved;
  bool active = false;
  GraphBoundGuard() : saved(graph_bound()) {}
  void raise(std::size_t b) {
    active = true;
    set_graph_bound(b);
  }
  ~GraphBoundGuard() {
    if (active) set_graph_bound(saved);
  }
};

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

json VerificationReport::to_json() const {
  json j{{"claim_id", claim_id},
         {"parameters", parameters},
         {"status", status_name(status)},
         {"evidence", evidence},
         {"runtime", runtime}};
  if (status == Status::Fail) j["replay"] = replay;
  return j;
}

Bounds bounds_from_json(const json& j) {
  Bounds b;
  if (!j.is_object()) throw ParseError("bounds config must be a JSON object");
  if (j.contains("hol_max_n")) b.hol_max_n = j.at("hol_max_n").get<int>();
  if (j.contains("graph_max")) b.graph_max = j.at("graph_max").get<std::uint64_t>();
  return b;
}

Bounds load_bounds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config '" + path + "'");
  try {
    return bounds_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw ParseError("bad config '" + path + "': " + e.what());
  }
}

const std::vector<ClaimInfo>& claim_registry() {
  static const std::vector<ClaimInfo> infos = [] {
    std::vector<ClaimInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const ClaimInfo& find_claim(std::string_view id) { return find_entry(id).info; }

VerificationReport verify_claim(std::string_view id, const VerifyOptions& opts) {
  const Entry& e = find_entry(id);
  const auto start = std::chrono::steady_clock::now();

  IntRange nr = opts.n.value_or(e.info.default_n);
  Ctx ctx{opts, opts.moduli.empty() ? e.info.default_moduli : opts.moduli};

  // validation before any work
  if (e.per_n) {
    if (nr.lo < e.n_hard.lo || nr.hi > e.n_hard.hi)
      throw RangeError(e.info.id + ": --n must lie in " + range_arg(e.n_hard));
    if (e.n_scale == Scale::Hol && nr.hi > opts.bounds.hol_max_n && !opts.force)
      throw ResourceBoundError(e.info.id + ": n = " + std::to_string(nr.hi) +
                               " exceeds the holomorph bound " +
                               std::to_string(opts.bounds.hol_max_n) + " (use --force)");
  } else if (opts.n) {
    throw ContractError(e.info.id + " does not take --n");
  }
  if (!e.info.takes_modulus && !opts.moduli.empty())
    throw ContractError(e.info.id + " does not take --modulus");
  GraphBoundGuard guard;
  if (e.per_modulus) {
    u64 top = 0;
    for (u64 m : ctx.moduli) {
      if (m < 2 || m > kMaxCirculantOrder)
        throw RangeError(e.info.id + ": modulus must lie in 2..64");
      top = std::max(top, m);
    }
    const u64 soft = std::min<u64>(opts.bounds.graph_max, graph_bound());
    if (top > soft) {
      if (!opts.force)
        throw ResourceBoundError(e.info.id + ": modulus " + std::to_string(top) +
                                 " exceeds the graph bound " + std::to_string(soft) +
                                 " (use --force)");
      guard.raise(top);
    }
  } else if (e.info.id == "lem-2.1") {
    for (u64 p : ctx.moduli) {
      bool prime = p >= 2;
      for (u64 d = 2; d * d <= p; ++d) prime &= p % d != 0;
      if (!prime) throw ContractError("lem-2.1: --modulus lists primes, got " + std::to_string(p));
      if (ipow(p, static_cast<int>(nr.hi)) > (u64{1} << 20))
        throw ResourceBoundError("lem-2.1: p^k above 2^20");
    }
  }

  VerificationReport rep;
  rep.claim_id = e.info.id;
  rep.parameters["anchor"] = e.info.anchor;
  if (e.per_n) rep.parameters["n"] = range_arg(nr);
  if (e.info.takes_modulus) rep.parameters["modulus"] = ctx.moduli;
  if (e.random) {
    rep.parameters["seed"] = opts.seed;
    if (opts.samples) rep.parameters["samples"] = opts.samples;
  }

  std::string base = "holocirc verify " + e.info.id;
  std::string tail;
  if (e.random) {
    tail += " --seed " + std::to_string(opts.seed);
    if (opts.samples) tail += " --samples " + std::to_string(opts.samples);
  }
  if (opts.force) tail += " --force";

  bool failed = false, ran = false;
  auto record = [&](json ev, const std::string& args) {
    const bool skipped = ev.contains("skipped");
    ran |= !skipped;
    if (!skipped && ev.value("failures", 0) > 0 && !failed) {
      failed = true;
      rep.replay = base + args + tail;
    }
    rep.evidence.push_back(std::move(ev));
  };
  if (e.per_n) {
    std::string mod_args;
    if (!e.per_modulus && !opts.moduli.empty()) {
      mod_args = " --modulus " + format_residue_set(ctx.moduli);
    }
    for (auto n = nr.lo; n <= nr.hi; ++n)
      record(e.per_n(n, ctx), " --n " + std::to_string(n) + mod_args);
  }
  if (e.per_modulus) {
    for (u64 m : ctx.moduli) {
      // keep the n range in the replay line only when the claim reads it
      std::string args = " --modulus " + std::to_string(m);
      if (e.per_n) args += " --n " + range_arg(nr);
      record(e.per_modulus(m, ctx), args);
    }
  }
  rep.status = failed ? Status::Fail : ran ? Status::Pass : Status::Skipped;
  rep.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace holocirc
