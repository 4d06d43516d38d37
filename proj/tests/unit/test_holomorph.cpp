#include <gtest/gtest.h>

#include <random>

#include "holocirc/error.hpp"
#include "holocirc/holomorph.hpp"
#include "holocirc/notation.hpp"
#include "oracle/oracle.hpp"

using namespace holocirc;

namespace {

oracle::Img img(const HolElem2& h) {
  return oracle::hol(h.n, static_cast<std::int64_t>(h.alpha), static_cast<int>(h.beta),
                     static_cast<std::int64_t>(h.gamma));
}

HolElem2 E(const char* s, int n) { return parse_element(s, n); }

}  // namespace

TEST(HolElem2, ReducesComponents) {
  auto h = HolElem2::make(4, 19, 3, 5);
  EXPECT_EQ(h.alpha, 3u);
  EXPECT_EQ(h.beta, 1u);
  EXPECT_EQ(h.gamma, 1u);
  EXPECT_THROW(HolElem2::make(2, 0, 0, 0), ContractError);
}

TEST(HolElem2, CodeRoundTrip) {
  for (int n = 3; n <= 6; ++n)
    for (u64 c = 0; c < hol_order(n); ++c) EXPECT_EQ(HolElem2::from_code(n, c).code(), c);
}

TEST(HolElem2, ActionMatchesFormula) {
  for (int n = 3; n <= 5; ++n)
    for (u64 c = 0; c < hol_order(n); ++c) {
      auto h = HolElem2::from_code(n, c);
      auto ref = img(h);
      for (u64 g = 0; g < h.modulus(); ++g) EXPECT_EQ(act(h, g), static_cast<u64>(ref[g]));
    }
}

TEST(Compose, PointwiseAgainstImages) {
  const int n = 4;
  for (u64 c1 = 0; c1 < hol_order(n); ++c1)
    for (u64 c2 = 0; c2 < hol_order(n); ++c2) {
      auto h1 = HolElem2::from_code(n, c1), h2 = HolElem2::from_code(n, c2);
      ASSERT_EQ(img(compose(h1, h2)), oracle::compose(img(h1), img(h2)));
    }
}

TEST(Compose, Examples) {
  const int n = 4;
  auto ay = E("a*y", n);
  EXPECT_EQ(compose(ay, ay), HolElem2::make(n, 14, 0, 2));
  auto h = E("a^5*x*y", n);
  EXPECT_EQ(compose(h, HolElem2::identity(n)), h);
  EXPECT_TRUE(compose(E("a*x", n), E("a*x", n)).is_identity());
}

TEST(Inverse, IsTwoSided) {
  const int n = 5;
  for (u64 c = 0; c < hol_order(n); ++c) {
    auto h = HolElem2::from_code(n, c);
    EXPECT_TRUE(compose(h, inverse(h)).is_identity());
    EXPECT_TRUE(compose(inverse(h), h).is_identity());
  }
}

TEST(Power, Examples) {
  EXPECT_EQ(power(E("a*y", 4), 2), E("a^14*y^2", 4));
  for (int n = 3; n <= 8; ++n) {
    EXPECT_TRUE(power(E("a*x", n), 2).is_identity());
    auto q = HolElem2::make(n, 1, 1, u64{1} << (n - 3));
    EXPECT_EQ(power(q, 2), HolElem2::make(n, u64{1} << (n - 1), 0, 0)) << n;
  }
}

TEST(Power, AgreesWithRepeatedImages) {
  for (int n = 3; n <= 4; ++n)
    for (u64 c = 0; c < hol_order(n); ++c) {
      auto h = HolElem2::from_code(n, c);
      auto ref = oracle::identity(1 << n);
      for (std::int64_t r = 0; r <= (1 << n); ++r) {
        ASSERT_EQ(img(power(h, r)), ref);
        ASSERT_EQ(img(power(h, -r)), oracle::inverse(ref));
        ref = oracle::compose(ref, img(h));
      }
    }
}

TEST(Power, RandomLargeExponent) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 400; ++i) {
    int n = 3 + static_cast<int>(rng() % 8);
    auto h = HolElem2::from_code(n, rng() % hol_order(n));
    std::uint64_t r = rng() % 3000;
    EXPECT_EQ(power(h, static_cast<std::int64_t>(r)), power_iterated(h, r));
  }
}

TEST(Order, Examples) {
  EXPECT_EQ(order(HolElem2::a(4)), 16u);
  EXPECT_EQ(order(E("a^2*y^2", 4)), 8u);
  EXPECT_EQ(order(E("a*x*y", 4)), 8u);
  EXPECT_EQ(order(HolElem2::identity(5)), 1u);
}

TEST(Order, MatchesPermutationOrder) {
  for (int n = 3; n <= 6; ++n)
    for (u64 c = 0; c < hol_order(n); ++c) {
      auto h = HolElem2::from_code(n, c);
      ASSERT_EQ(order(h), oracle::perm_order(img(h))) << format_element(h);
    }
}

TEST(ConjugateNormalForm, Examples) {
  EXPECT_EQ(conj_normal_form(E("a^6*x*y", 4)).form, E("a^2*x*y", 4));
  EXPECT_EQ(conj_normal_form(E("a^3", 4)).form, E("a", 4));
}

TEST(ConjugateNormalForm, ConjugatorWitnesses) {
  for (int n = 3; n <= 6; ++n)
    for (u64 c = 0; c < hol_order(n); ++c) {
      auto h = HolElem2::from_code(n, c);
      auto cf = conj_normal_form(h);
      auto rho = img(cf.conjugator);
      // rho h rho^{-1}, read left to right
      auto lhs = oracle::compose(oracle::compose(rho, img(h)), oracle::inverse(rho));
      ASSERT_EQ(lhs, img(cf.form));
      u64 a2 = h.alpha ? (h.alpha & (~h.alpha + 1)) : 0;
      ASSERT_EQ(cf.form.alpha, a2);
    }
}

TEST(Act, Examples) {
  for (int n = 3; n <= 10; ++n) {
    auto h = HolElem2::make(n, u64{1} << (n - 1), 0, u64{1} << (n - 3));
    EXPECT_EQ(act(h, 1), 1u);  // the point a is fixed
    EXPECT_EQ(act(HolElem2::identity(n), 5 % (u64{1} << n)), 5 % (u64{1} << n));
    EXPECT_EQ(act(E("a*x", n), 0), (u64{1} << n) - 1);
  }
}

TEST(PointStabilizer, Examples) {
  auto [s1, s2] = point_stabilizer(0, 5);
  EXPECT_EQ(s1, HolElem2::x(5));
  EXPECT_EQ(s2, HolElem2::y(5));
  const int n = 4;
  auto [t1, t2] = point_stabilizer(1, n);
  const std::int64_t e = oracle::inv5(n);
  EXPECT_EQ(t1, HolElem2::make(n, (16 - 2) % 16, 1, 0));
  EXPECT_EQ(t2, HolElem2::make(n, static_cast<u64>((e - 1 + 16) % 16), 0, 1));
}

TEST(PointStabilizer, EqualsBruteStabilizer) {
  for (int n = 3; n <= 5; ++n) {
    auto all = oracle::hol_elements(n);
    for (u64 g = 0; g < (u64{1} << n); ++g) {
      auto [s1, s2] = point_stabilizer(g, n);
      auto gen = oracle::close({img(s1), img(s2)}, 1 << n);
      oracle::Group brute;
      for (const auto& h : all)
        if (h[g] == static_cast<int>(g)) brute.insert(h);
      EXPECT_EQ(gen, brute) << "n=" << n << " g=" << g;
      EXPECT_EQ(gen.size(), std::size_t{1} << (n - 1));
    }
  }
}

TEST(AffineMap, GroupLaws) {
  const u64 n = 12;
  for (u64 t1 = 0; t1 < n; ++t1)
    for (u64 m1 : {1u, 5u, 7u, 11u})
      for (u64 t2 = 0; t2 < n; t2 += 5)
        for (u64 m2 : {5u, 11u}) {
          auto h1 = AffineMap::make(n, t1, m1), h2 = AffineMap::make(n, t2, m2);
          auto c = compose(h1, h2);
          for (u64 g = 0; g < n; ++g) EXPECT_EQ(act(c, g), act(h2, act(h1, g)));
          EXPECT_TRUE(compose(h1, inverse(h1)).is_identity());
        }
  EXPECT_THROW(AffineMap::make(12, 0, 4), ContractError);
  EXPECT_EQ(order(AffineMap::translation(12, 1)), 12u);
}

TEST(Crt, Examples) {
  auto f = crt_decompose(12);
  ASSERT_EQ(f.parts.size(), 2u);
  EXPECT_EQ(f.parts[0].q, 4u);
  EXPECT_EQ(f.parts[1].q, 3u);
  auto parts = crt_map(f, AffineMap::translation(12, 1));
  EXPECT_EQ(parts[0], AffineMap::translation(4, 1));
  EXPECT_EQ(parts[1], AffineMap::translation(3, 1));
  auto g = crt_decompose(24);
  auto m = crt_map(g, AffineMap::multiplier(24, 5));
  EXPECT_EQ(m[0], AffineMap::multiplier(8, 5));
  EXPECT_EQ(m[1], AffineMap::multiplier(3, 2));
  EXPECT_EQ(crt_lift(g, m), AffineMap::multiplier(24, 5));
  for (u64 r = 0; r < 360; ++r) EXPECT_EQ(crt_decompose(360).combine(crt_decompose(360).split(r)), r);
}

TEST(Centralizer, Examples) {
  EXPECT_EQ(centralizer_in_aut(3, 2, 1).order(), 3u);
  EXPECT_EQ(centralizer_in_aut(2, 4, 1).order(), 8u);
  auto c = centralizer_in_aut(2, 4, 2);
  EXPECT_EQ(c.order(), 4u);
  EXPECT_TRUE(c.is_cyclic());
}

TEST(Centralizer, ExhaustiveFiltering) {
  for (u64 p : {2u, 3u, 5u})
    for (int k = 2; k <= 4; ++k)
      for (int m = 1; m < k; ++m) {
        u64 q = 1, gen = 1;
        for (int i = 0; i < k; ++i) q *= p;
        for (int i = 0; i < k - m; ++i) gen *= p;
        std::vector<u64> brute;
        for (u64 u = 1; u < q; ++u)
          if (u % p && u * gen % q == gen) brute.push_back(u);
        EXPECT_EQ(centralizer_in_aut(p, k, m).multipliers, brute) << p << ' ' << k << ' ' << m;
      }
}
