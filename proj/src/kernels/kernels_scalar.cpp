#include "sigtamp/kernels.hpp"

#include <algorithm>

namespace sigtamp::kernels::scalar {

std::int64_t sum(std::span<const std::int32_t> values) {
  std::int64_t total = 0;
  for (std::int32_t v : values) total += v;
  return total;
}

std::int64_t l1_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  std::int64_t total = 0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t d = static_cast<std::int64_t>(a[i]) - b[i];
    total += d < 0 ? -d : d;
  }
  return total;
}

std::size_t count_out_of_bounds(std::span<const std::int32_t> values,
                                std::span<const std::int32_t> upper) {
  std::size_t bad = 0;
  const std::size_t n = std::min(values.size(), upper.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] < 0 || values[i] > upper[i]) ++bad;
  }
  return bad;
}

std::uint64_t max_abs(std::span<const std::int64_t> values) {
  std::uint64_t best = 0;
  for (std::int64_t v : values) {
    const std::uint64_t m = v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    best = std::max(best, m);
  }
  return best;
}

}  // namespace sigtamp::kernels::scalar
