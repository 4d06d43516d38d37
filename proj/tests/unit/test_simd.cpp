#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <vector>

#include "holocirc/simd/kernels.hpp"

using namespace holocirc::simd;

namespace {

std::vector<std::uint32_t> shuffled(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0u);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

class Avx2 : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!avx2_available()) GTEST_SKIP() << "no AVX2 on this CPU";
  }
};

}  // namespace

TEST_F(Avx2, ComposeMatchesScalar) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {1u, 7u, 8u, 9u, 31u, 64u, 100u, 1000u}) {
    for (int rep = 0; rep < 20; ++rep) {
      auto a = shuffled(rng, n), b = shuffled(rng, n);
      std::vector<std::uint32_t> o1(n), o2(n);
      scalar::compose_u32(a.data(), b.data(), o1.data(), n);
      avx2::compose_u32(a.data(), b.data(), o2.data(), n);
      EXPECT_EQ(o1, o2);
    }
  }
}

TEST_F(Avx2, AffineImagesMatchScalar) {
  std::mt19937_64 rng(2);
  for (int k = 1; k <= 16; ++k) {
    const std::uint32_t mask = (1u << k) - 1;
    for (int rep = 0; rep < 20; ++rep) {
      const std::uint32_t t = static_cast<std::uint32_t>(rng()) & mask;
      const std::uint32_t m = (static_cast<std::uint32_t>(rng()) | 1) & mask;
      const std::size_t count = mask + 1;
      std::vector<std::uint32_t> o1(count), o2(count);
      scalar::affine_images_pow2(t, m, mask, o1.data(), count);
      avx2::affine_images_pow2(t, m, mask, o2.data(), count);
      EXPECT_EQ(o1, o2);
    }
  }
}

TEST_F(Avx2, FixedPointFreeMatchesScalar) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 2000; ++rep) {
    const std::size_t n = 1 + rng() % 70;
    auto a = shuffled(rng, n);
    EXPECT_EQ(scalar::fixed_point_free(a.data(), n), avx2::fixed_point_free(a.data(), n));
  }
}

TEST_F(Avx2, PreservesEdgesMatchesScalar) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 3000; ++rep) {
    const std::size_t n = 2 + rng() % 63;
    // circulant rows so that some permutations (multipliers) preserve edges
    std::uint64_t s = 0;
    for (std::size_t i = 1; i <= n / 2; ++i)
      if (rng() & 1) s |= (std::uint64_t{1} << i) | (std::uint64_t{1} << (n - i));
    std::vector<std::uint64_t> rows(n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if ((s >> ((v + n - u) % n)) & 1) rows[u] |= std::uint64_t{1} << v;
    std::vector<std::uint32_t> p;
    if (rep % 2) {
      std::uint32_t m = 1;
      for (std::uint32_t c = 1 + rng() % n; c < n; ++c)
        if (std::gcd<std::size_t>(c, n) == 1) {
          m = c;
          break;
        }
      for (std::size_t g = 0; g < n; ++g) p.push_back(static_cast<std::uint32_t>(g * m % n));
    } else {
      p = shuffled(rng, n);
    }
    EXPECT_EQ(scalar::preserves_edges(rows.data(), p.data(), n),
              avx2::preserves_edges(rows.data(), p.data(), n));
  }
}

TEST(Dispatch, ForcingScalarSticks) {
  const Isa before = active_isa();
  set_isa(Isa::Scalar);
  EXPECT_EQ(active_isa(), Isa::Scalar);
  set_isa(Isa::Avx2);
  EXPECT_EQ(active_isa(), avx2_available() ? Isa::Avx2 : Isa::Scalar);
  set_isa(before);
  EXPECT_STREQ(isa_name(Isa::Scalar), "scalar");
}

TEST(Dispatch, PublicEntryPointsAgreeAcrossVariants) {
  std::mt19937_64 rng(5);
  auto a = shuffled(rng, 50), b = shuffled(rng, 50);
  std::vector<std::uint32_t> o1(50), o2(50);
  const Isa before = active_isa();
  set_isa(Isa::Scalar);
  compose_u32(a.data(), b.data(), o1.data(), 50);
  set_isa(Isa::Avx2);
  compose_u32(a.data(), b.data(), o2.data(), 50);
  set_isa(before);
  EXPECT_EQ(o1, o2);
}
