#include <atomic>
#include <cstdlib>
#include <string>

#include "sigtamp/errors.hpp"
#include "sigtamp/kernels.hpp"

namespace sigtamp::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("SIGTAMP_ISA")) {
    const std::string choice(env);
    if (choice == "scalar") return Isa::scalar;
    if (choice == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SIGTAMP_BUILD_AVX2) && defined(__x86_64__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw InputError("kernel ISA '" + std::string(isa_name(isa)) + "' is not available on this CPU");
  }
  current().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

#if defined(SIGTAMP_BUILD_AVX2) && defined(__x86_64__)
#define SIGTAMP_DISPATCH(fn, ...) \
  (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define SIGTAMP_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

std::int64_t sum(std::span<const std::int32_t> values) { return SIGTAMP_DISPATCH(sum, values); }

std::int64_t l1_distance(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  return SIGTAMP_DISPATCH(l1_distance, a, b);
}

std::size_t count_out_of_bounds(std::span<const std::int32_t> values,
                                std::span<const std::int32_t> upper) {
  return SIGTAMP_DISPATCH(count_out_of_bounds, values, upper);
}

std::uint64_t max_abs(std::span<const std::int64_t> values) {
  return SIGTAMP_DISPATCH(max_abs, values);
}

#undef SIGTAMP_DISPATCH

}  // namespace sigtamp::kernels
