#include <atomic>
#include <cstdlib>
#include <cstring>

#include "holocirc/simd/kernels.hpp"

namespace holocirc::simd {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  const char* env = std::getenv("HOLOCIRC_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

bool avx2_available() { return cpu_has_avx2(); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::Avx2 && !cpu_has_avx2()) isa = Isa::Scalar;
  current().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void compose_u32(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                 std::size_t n) {
  if (active_isa() == Isa::Avx2)
    avx2::compose_u32(a, b, out, n);
  else
    scalar::compose_u32(a, b, out, n);
}

void affine_images_pow2(std::uint32_t t, std::uint32_t m, std::uint32_t mask,
                        std::uint32_t* out, std::size_t count) {
  if (active_isa() == Isa::Avx2)
    avx2::affine_images_pow2(t, m, mask, out, count);
  else
    scalar::affine_images_pow2(t, m, mask, out, count);
}

bool fixed_point_free(const std::uint32_t* img, std::size_t n) {
  return active_isa() == Isa::Avx2 ? avx2::fixed_point_free(img, n)
                                   : scalar::fixed_point_free(img, n);
}

bool preserves_edges(const std::uint64_t* rows, const std::uint32_t* p, std::size_t n) {
  return active_isa() == Isa::Avx2 ? avx2::preserves_edges(rows, p, n)
                                   : scalar::preserves_edges(rows, p, n);
}

}  // namespace holocirc::simd
