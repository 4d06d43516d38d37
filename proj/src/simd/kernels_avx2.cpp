// Built with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "holocirc/simd/kernels.hpp"

namespace holocirc::simd::avx2 {

void compose_u32(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                 std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i v = _mm256_i32gather_epi32(reinterpret_cast<const int*>(b), idx, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), v);
  }
  for (; i < n; ++i) out[i] = b[a[i]];
}

void affine_images_pow2(std::uint32_t t, std::uint32_t m, std::uint32_t mask,
                        std::uint32_t* out, std::size_t count) {
  const __m256i vt = _mm256_set1_epi32(static_cast<int>(t));
  const __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
  const __m256i vmask = _mm256_set1_epi32(static_cast<int>(mask));
  const __m256i step = _mm256_set1_epi32(8);
  __m256i g = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    __m256i v = _mm256_mullo_epi32(_mm256_add_epi32(g, vt), vm);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_and_si256(v, vmask));
    g = _mm256_add_epi32(g, step);
  }
  for (; i < count; ++i) out[i] = ((static_cast<std::uint32_t>(i) + t) * m) & mask;
}

bool fixed_point_free(const std::uint32_t* img, std::size_t n) {
  const __m256i step = _mm256_set1_epi32(8);
  __m256i iota = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(img + i));
    if (_mm256_movemask_epi8(_mm256_cmpeq_epi32(v, iota))) return false;
    iota = _mm256_add_epi32(iota, step);
  }
  for (; i < n; ++i)
    if (img[i] == i) return false;
  return true;
}

bool preserves_edges(const std::uint64_t* rows, const std::uint32_t* p, std::size_t n) {
  // For each v compare bit w of rows[v] with bit p[w] of rows[p[v]], four w at a time.
  const __m256i one = _mm256_set1_epi64x(1);
  for (std::size_t v = 0; v < n; ++v) {
    const __m256i src = _mm256_set1_epi64x(static_cast<long long>(rows[v]));
    const __m256i dst = _mm256_set1_epi64x(static_cast<long long>(rows[p[v]]));
    __m256i w = _mm256_setr_epi64x(0, 1, 2, 3);
    const __m256i four = _mm256_set1_epi64x(4);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      __m256i pw = _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p + i)));
      __m256i a = _mm256_and_si256(_mm256_srlv_epi64(src, w), one);
      __m256i b = _mm256_and_si256(_mm256_srlv_epi64(dst, pw), one);
      if (_mm256_movemask_epi8(_mm256_cmpeq_epi64(a, b)) != -1) return false;
      w = _mm256_add_epi64(w, four);
    }
    for (; i < n; ++i)
      if (((rows[v] >> i) & 1) != ((rows[p[v]] >> p[i]) & 1)) return false;
  }
  return true;
}

}  // namespace holocirc::simd::avx2
