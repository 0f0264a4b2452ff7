#include "sigtamp/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <bit>

namespace sigtamp::kernels::avx2 {

namespace {

inline std::int64_t horizontal_add_epi64(__m256i v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

inline __m256i abs_epi64(__m256i v) {
  const __m256i sign = _mm256_cmpgt_epi64(_mm256_setzero_si256(), v);
  return _mm256_sub_epi64(_mm256_xor_si256(v, sign), sign);
}

}  // namespace

std::int64_t sum(std::span<const std::int32_t> values) {
  const std::size_t n = values.size();
  const std::int32_t* p = values.data();
  __m256i acc_lo = _mm256_setzero_si256();
  __m256i acc_hi = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    acc_lo = _mm256_add_epi64(acc_lo, _mm256_cvtepi32_epi64(_mm256_castsi256_si128(v)));
    acc_hi = _mm256_add_epi64(acc_hi, _mm256_cvtepi32_epi64(_mm256_extracti128_si256(v, 1)));
  }
  std::int64_t total = horizontal_add_epi64(_mm256_add_epi64(acc_lo, acc_hi));
  for (; i < n; ++i) total += p[i];
  return total;
}

std::int64_t l1_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  const std::size_t n = std::min(a.size(), b.size());
  const std::int32_t* pa = a.data();
  const std::int32_t* pb = b.data();
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pa + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pb + i));
    const __m256i d_lo = _mm256_sub_epi64(_mm256_cvtepi32_epi64(_mm256_castsi256_si128(va)),
                                          _mm256_cvtepi32_epi64(_mm256_castsi256_si128(vb)));
    const __m256i d_hi = _mm256_sub_epi64(_mm256_cvtepi32_epi64(_mm256_extracti128_si256(va, 1)),
                                          _mm256_cvtepi32_epi64(_mm256_extracti128_si256(vb, 1)));
    acc = _mm256_add_epi64(acc, _mm256_add_epi64(abs_epi64(d_lo), abs_epi64(d_hi)));
  }
  std::int64_t total = horizontal_add_epi64(acc);
  for (; i < n; ++i) {
    const std::int64_t d = static_cast<std::int64_t>(pa[i]) - pb[i];
    total += d < 0 ? -d : d;
  }
  return total;
}

std::size_t count_out_of_bounds(std::span<const std::int32_t> values,
                                std::span<const std::int32_t> upper) {
  const std::size_t n = std::min(values.size(), upper.size());
  const std::int32_t* pv = values.data();
  const std::int32_t* pu = upper.data();
  const __m256i zero = _mm256_setzero_si256();
  std::size_t bad = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pv + i));
    const __m256i u = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pu + i));
    const __m256i violated = _mm256_or_si256(_mm256_cmpgt_epi32(zero, v), _mm256_cmpgt_epi32(v, u));
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(violated));
    bad += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) {
    if (pv[i] < 0 || pv[i] > pu[i]) ++bad;
  }
  return bad;
}

std::uint64_t max_abs(std::span<const std::int64_t> values) {
  const std::size_t n = values.size();
  const std::int64_t* p = values.data();
  // Unsigned compare through the signed instruction: flip the top bit first.
  const __m256i bias = _mm256_set1_epi64x(INT64_MIN);
  __m256i best = bias;  // biased encoding of 0
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    const __m256i biased = _mm256_xor_si256(abs_epi64(v), bias);
    best = _mm256_blendv_epi8(best, biased, _mm256_cmpgt_epi64(biased, best));
  }
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), best);
  std::uint64_t result = 0;
  for (std::int64_t lane : lanes) {
    result = std::max(result, static_cast<std::uint64_t>(lane) ^ (std::uint64_t{1} << 63));
  }
  for (; i < n; ++i) {
    const std::int64_t v = p[i];
    result = std::max(result, v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v));
  }
  return result;
}

}  // namespace sigtamp::kernels::avx2
