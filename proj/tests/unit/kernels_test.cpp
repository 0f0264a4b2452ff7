#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <vector>

#include "sigtamp/kernels.hpp"

namespace sigtamp::kernels {
namespace {

std::vector<std::int32_t> random_i32(std::mt19937_64& rng, std::size_t n, std::int32_t lo, std::int32_t hi) {
  std::uniform_int_distribution<std::int32_t> dist(lo, hi);
  std::vector<std::int32_t> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

TEST(Kernels, ScalarReferenceValues) {
  const std::vector<std::int32_t> a{3, -1, 7, 0};
  const std::vector<std::int32_t> b{1, 1, 7, -2};
  const std::vector<std::int32_t> upper{3, 5, 6, 0};
  EXPECT_EQ(scalar::sum(a), 9);
  EXPECT_EQ(scalar::l1_distance(a, b), 2 + 2 + 0 + 2);
  EXPECT_EQ(scalar::count_out_of_bounds(a, upper), 2u);  // -1 below zero, 7 above 6
  const std::vector<std::int64_t> w{4, -9, std::numeric_limits<std::int64_t>::min()};
  EXPECT_EQ(scalar::max_abs(w), std::uint64_t{1} << 63);
  EXPECT_EQ(scalar::sum({}), 0);
  EXPECT_EQ(scalar::max_abs({}), 0u);
}

TEST(Kernels, DispatchMatchesScalarAcrossLengths) {
  std::mt19937_64 rng(3);
  const auto lim = std::numeric_limits<std::int32_t>::max();
  for (std::size_t n : {0u, 1u, 3u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 1000u, 4099u}) {
    const auto a = random_i32(rng, n, -lim, lim);
    const auto b = random_i32(rng, n, -lim, lim);
    const auto small = random_i32(rng, n, -2, 6);
    const auto upper = random_i32(rng, n, 0, 4);
    std::vector<std::int64_t> w(n);
    for (auto& x : w) x = static_cast<std::int64_t>(rng());
    EXPECT_EQ(sum(a), scalar::sum(a)) << n;
    EXPECT_EQ(l1_distance(a, b), scalar::l1_distance(a, b)) << n;
    EXPECT_EQ(count_out_of_bounds(small, upper), scalar::count_out_of_bounds(small, upper)) << n;
    EXPECT_EQ(max_abs(w), scalar::max_abs(w)) << n;
  }
}

#if defined(__x86_64__)
TEST(Kernels, Avx2EquivalentOnExtremes) {
  if (!isa_available(Isa::avx2)) GTEST_SKIP() << "no AVX2 on this machine";
  const auto lo = std::numeric_limits<std::int32_t>::min();
  const auto hi = std::numeric_limits<std::int32_t>::max();
  std::vector<std::int32_t> a(37, hi);
  std::vector<std::int32_t> b(37, lo);
  a[5] = lo;
  b[20] = hi;
  EXPECT_EQ(avx2::sum(a), scalar::sum(a));
  EXPECT_EQ(avx2::sum(b), scalar::sum(b));
  EXPECT_EQ(avx2::l1_distance(a, b), scalar::l1_distance(a, b));
  EXPECT_EQ(avx2::count_out_of_bounds(a, b), scalar::count_out_of_bounds(a, b));
  std::vector<std::int64_t> w(13, std::numeric_limits<std::int64_t>::max());
  w[12] = std::numeric_limits<std::int64_t>::min();
  EXPECT_EQ(avx2::max_abs(w), scalar::max_abs(w));
  w[12] = -1;
  EXPECT_EQ(avx2::max_abs(w), scalar::max_abs(w));

  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = rng() % 300;
    const auto x = random_i32(rng, n, lo, hi);
    const auto y = random_i32(rng, n, lo, hi);
    const auto u = random_i32(rng, n, -3, 3);
    ASSERT_EQ(avx2::sum(x), scalar::sum(x));
    ASSERT_EQ(avx2::l1_distance(x, y), scalar::l1_distance(x, y));
    const auto cap = random_i32(rng, n, -1, 3);
    ASSERT_EQ(avx2::count_out_of_bounds(u, cap), scalar::count_out_of_bounds(u, cap));
    std::vector<std::int64_t> z(n);
    for (auto& v : z) v = static_cast<std::int64_t>(rng());
    ASSERT_EQ(avx2::max_abs(z), scalar::max_abs(z));
  }
}
#endif

TEST(Kernels, ForceScalarIsHonoured) {
  const Isa before = active_isa();
  force_isa(Isa::scalar);
  EXPECT_EQ(active_isa(), Isa::scalar);
  EXPECT_EQ(isa_name(Isa::scalar), "scalar");
  force_isa(before);
  EXPECT_EQ(active_isa(), before);
}

}  // namespace
}  // namespace sigtamp::kernels
