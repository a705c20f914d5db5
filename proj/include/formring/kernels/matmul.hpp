#pragma once

// Dense m x m (m <= 8) matrix product over Z/n (n <= 256), entries stored as bytes.
// A scalar reference kernel and an AVX2 kernel share one signature; the
// dispatcher picks the widest kernel the running CPU supports.

#include <cstddef>
#include <cstdint>

namespace formring::kernels {

constexpr int kMaxDim = 8;

using MatmulFn = void (*)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* c, int m,
                          std::uint32_t mod);

enum class Isa { scalar, avx2 };

void matmul_mod_scalar(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* c, int m, std::uint32_t mod);
#if defined(__x86_64__) || defined(__i386__)
void matmul_mod_avx2(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* c, int m, std::uint32_t mod);
// C_k = A_k * B for count left factors stored back to back.
void matmul_mod_batch_avx2(const std::uint8_t* a, std::size_t count, const std::uint8_t* b, std::uint8_t* c, int m,
                           std::uint32_t mod);
#endif

bool cpu_has_avx2();
Isa active_isa();
// Test hook: pin the dispatcher to a kernel (ignored when the CPU lacks it).
void force_isa(Isa isa);
const char* isa_name(Isa isa);

void matmul_mod(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* c, int m, std::uint32_t mod);
void matmul_mod_batch(const std::uint8_t* a, std::size_t count, const std::uint8_t* b, std::uint8_t* c, int m,
                      std::uint32_t mod);

}  // namespace formring::kernels
