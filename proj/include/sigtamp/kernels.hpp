#pragma once

// Dense per-arc vector passes used by objective evaluation, feasibility
// checks and the solver's overflow guard. Each kernel has a scalar reference
// and, on x86-64, an AVX2 variant picked at runtime. Set SIGTAMP_ISA=scalar
// in the environment to pin the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sigtamp::kernels {

enum class Isa { scalar, avx2 };

bool isa_available(Isa isa);
Isa active_isa();
// Overrides the dispatch choice; throws if the ISA is unavailable.
void force_isa(Isa isa);
std::string_view isa_name(Isa isa);

std::int64_t sum(std::span<const std::int32_t> values);
// Σ |a_i − b_i|, computed in 64-bit so no 32-bit difference overflows.
std::int64_t l1_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b);
// Number of i with values[i] < 0 or values[i] > upper[i].
std::size_t count_out_of_bounds(std::span<const std::int32_t> values,
                                std::span<const std::int32_t> upper);
// max_i |values[i]| as unsigned so INT64_MIN is representable.
std::uint64_t max_abs(std::span<const std::int64_t> values);

namespace scalar {
std::int64_t sum(std::span<const std::int32_t> values);
std::int64_t l1_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b);
std::size_t count_out_of_bounds(std::span<const std::int32_t> values,
                                std::span<const std::int32_t> upper);
std::uint64_t max_abs(std::span<const std::int64_t> values);
}  // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
std::int64_t sum(std::span<const std::int32_t> values);
std::int64_t l1_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b);
std::size_t count_out_of_bounds(std::span<const std::int32_t> values,
                                std::span<const std::int32_t> upper);
std::uint64_t max_abs(std::span<const std::int64_t> values);
}  // namespace avx2
#endif

}  // namespace sigtamp::kernels
