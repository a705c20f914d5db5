#include <immintrin.h>

#include "formring/kernels/matmul.hpp"

namespace formring::kernels {

namespace {

// Rows of B widened to eight u32 lanes, zero padded.
struct WideRows {
  __m256i row[kMaxDim];
};

inline WideRows widen(const std::uint8_t* b, int m) {
  WideRows w;
  alignas(32) std::uint32_t tmp[8];
  for (int k = 0; k < kMaxDim; ++k) {
    for (int j = 0; j < 8; ++j) tmp[j] = (k < m && j < m) ? b[k * m + j] : 0u;
    w.row[k] = _mm256_load_si256(reinterpret_cast<const __m256i*>(tmp));
  }
  return w;
}

// Sums stay below 8 * 255^2 < 2^24, so the float quotient is off by at most one.
inline __m256i reduce(__m256i acc, __m256 inv, __m256i modv) {
  __m256 q = _mm256_floor_ps(_mm256_mul_ps(_mm256_cvtepi32_ps(acc), inv));
  __m256i r = _mm256_sub_epi32(acc, _mm256_mullo_epi32(_mm256_cvttps_epi32(q), modv));
  __m256i neg = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
  r = _mm256_add_epi32(r, _mm256_and_si256(neg, modv));
  __m256i big = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(modv, _mm256_set1_epi32(1)));
  return _mm256_sub_epi32(r, _mm256_and_si256(big, modv));
}

inline void one_product(const std::uint8_t* a, const WideRows& w, std::uint8_t* c, int m, __m256 inv, __m256i modv) {
  alignas(32) std::uint32_t out[8];
  for (int i = 0; i < m; ++i) {
    __m256i acc = _mm256_setzero_si256();
    for (int k = 0; k < m; ++k)
      acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(_mm256_set1_epi32(a[i * m + k]), w.row[k]));
    _mm256_store_si256(reinterpret_cast<__m256i*>(out), reduce(acc, inv, modv));
    for (int j = 0; j < m; ++j) c[i * m + j] = static_cast<std::uint8_t>(out[j]);
  }
}

}  // namespace

void matmul_mod_avx2(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* c, int m, std::uint32_t mod) {
  const WideRows w = widen(b, m);
  one_product(a, w, c, m, _mm256_set1_ps(1.0f / static_cast<float>(mod)),
              _mm256_set1_epi32(static_cast<int>(mod)));
}

void matmul_mod_batch_avx2(const std::uint8_t* a, std::size_t count, const std::uint8_t* b, std::uint8_t* c, int m,
                           std::uint32_t mod) {
  const WideRows w = widen(b, m);
  const __m256 inv = _mm256_set1_ps(1.0f / static_cast<float>(mod));
  const __m256i modv = _mm256_set1_epi32(static_cast<int>(mod));
  const std::size_t stride = static_cast<std::size_t>(m) * m;
  for (std::size_t t = 0; t < count; ++t) one_product(a + t * stride, w, c + t * stride, m, inv, modv);
}

}  // namespace formring::kernels
