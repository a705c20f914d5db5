#include <atomic>

#include "formring/kernels/matmul.hpp"

namespace formring::kernels {

namespace {

std::atomic<int> forced{-1};

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool has = __builtin_cpu_supports("avx2");
  return has;
#else
  return false;
#endif
}

Isa active_isa() {
  const int f = forced.load(std::memory_order_relaxed);
  if (f == static_cast<int>(Isa::scalar)) return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

void force_isa(Isa isa) { forced.store(static_cast<int>(isa), std::memory_order_relaxed); }

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void matmul_mod(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* c, int m, std::uint32_t mod) {
#if defined(__x86_64__) || defined(__i386__)
  if (active_isa() == Isa::avx2) return matmul_mod_avx2(a, b, c, m, mod);
#endif
  matmul_mod_scalar(a, b, c, m, mod);
}

void matmul_mod_batch(const std::uint8_t* a, std::size_t count, const std::uint8_t* b, std::uint8_t* c, int m,
                      std::uint32_t mod) {
#if defined(__x86_64__) || defined(__i386__)
  if (active_isa() == Isa::avx2) return matmul_mod_batch_avx2(a, count, b, c, m, mod);
#endif
  const std::size_t stride = static_cast<std::size_t>(m) * m;
  for (std::size_t t = 0; t < count; ++t) matmul_mod_scalar(a + t * stride, b, c + t * stride, m, mod);
}

}  // namespace formring::kernels
