#include "dynspan/bitset_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define DYNSPAN_HAVE_X86 1
#endif

namespace dynspan::kernels::avx2 {

#ifdef DYNSPAN_HAVE_X86

bool available() noexcept { return __builtin_cpu_supports("avx2"); }

__attribute__((target("avx2"))) void or_into(std::uint64_t* dst, const std::uint64_t* src,
                                               std::size_t words) noexcept {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(d, s));
  }
  for (; i < words; ++i) dst[i] |= src[i];
}

__attribute__((target("avx2"))) bool intersects(const std::uint64_t* a, const std::uint64_t* b,
                                                 std::size_t words) noexcept {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    if (!_mm256_testz_si256(x, y)) return true;
  }
  for (; i < words; ++i) {
    if ((a[i] & b[i]) != 0) return true;
  }
  return false;
}

#else

bool available() noexcept { return false; }

void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) noexcept {
  scalar::or_into(dst, src, words);
}

bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) noexcept {
  return scalar::intersects(a, b, words);
}

#endif

}  // namespace dynspan::kernels::avx2
