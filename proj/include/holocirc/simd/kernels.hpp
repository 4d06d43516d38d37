#pragma once

// Hot loops shared by the group and graph code. Each kernel has a scalar
// reference and an AVX2 variant; the public entry points dispatch at runtime.

#include <cstddef>
#include <cstdint>

namespace holocirc::simd {

enum class Isa { Scalar, Avx2 };

// out[i] = b[a[i]]  (apply a, then b)
void compose_u32(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                 std::size_t n);

// out[g] = ((g + t) * m) & mask  for g < count; mask + 1 must be a power of 2 <= 2^32.
void affine_images_pow2(std::uint32_t t, std::uint32_t m, std::uint32_t mask,
                        std::uint32_t* out, std::size_t count);

// True iff no i < n has img[i] == i.
bool fixed_point_free(const std::uint32_t* img, std::size_t n);

// rows[v] is the adjacency bitset of v (n <= 64). True iff p maps edges to edges.
bool preserves_edges(const std::uint64_t* rows, const std::uint32_t* p, std::size_t n);

Isa active_isa();
const char* isa_name(Isa isa);
bool avx2_available();
// Force a variant (tests, HOLOCIRC_SIMD=scalar). Requesting AVX2 on a CPU
// without it falls back to scalar.
void set_isa(Isa isa);

namespace scalar {
void compose_u32(const std::uint32_t*, const std::uint32_t*, std::uint32_t*, std::size_t);
void affine_images_pow2(std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t*,
                        std::size_t);
bool fixed_point_free(const std::uint32_t*, std::size_t);
bool preserves_edges(const std::uint64_t*, const std::uint32_t*, std::size_t);
}  // namespace scalar

namespace avx2 {
void compose_u32(const std::uint32_t*, const std::uint32_t*, std::uint32_t*, std::size_t);
void affine_images_pow2(std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t*,
                        std::size_t);
bool fixed_point_free(const std::uint32_t*, std::size_t);
bool preserves_edges(const std::uint64_t*, const std::uint32_t*, std::size_t);
}  // namespace avx2

}  // namespace holocirc::simd
