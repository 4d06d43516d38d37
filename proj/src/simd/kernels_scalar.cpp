#include "holocirc/simd/kernels.hpp"

namespace holocirc::simd::scalar {

void compose_u32(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = b[a[i]];
}

void affine_images_pow2(std::uint32_t t, std::uint32_t m, std::uint32_t mask,
                        std::uint32_t* out, std::size_t count) {
  for (std::size_t g = 0; g < count; ++g)
    out[g] = ((static_cast<std::uint32_t>(g) + t) * m) & mask;
}

bool fixed_point_free(const std::uint32_t* img, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (img[i] == i) return false;
  return true;
}

bool preserves_edges(const std::uint64_t* rows, const std::uint32_t* p, std::size_t n) {
  for (std::size_t v = 0; v < n; ++v) {
    std::uint64_t src = rows[v], dst = rows[p[v]];
    std::uint64_t mapped = 0;
    while (src) {
      unsigned w = __builtin_ctzll(src);
      src &= src - 1;
      mapped |= std::uint64_t{1} << p[w];
    }
    if (mapped != dst) return false;
  }
  return true;
}

}  // namespace holocirc::simd::scalar
