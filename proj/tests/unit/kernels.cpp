#include "doctest.h"

#include <random>
#include <vector>

#include "formring/kernels/matmul.hpp"

using namespace formring::kernels;

namespace {

std::vector<std::uint8_t> reference(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b, int m,
                                    unsigned mod) {
  std::vector<std::uint8_t> c(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      unsigned acc = 0;
      for (int k = 0; k < m; ++k) acc += unsigned(a[i * m + k]) * b[k * m + j];
      c[i * m + j] = static_cast<std::uint8_t>(acc % mod);
    }
  return c;
}

}  // namespace

TEST_CASE("matmul kernels agree with a plain product") {
  std::mt19937 rng(1);
  for (unsigned mod : {2u, 3u, 4u, 5u, 6u, 8u, 9u, 16u, 251u, 256u})
    for (int m = 1; m <= kMaxDim; ++m)
      for (int t = 0; t < 10; ++t) {
        std::vector<std::uint8_t> a(m * m), b(m * m), c(m * m);
        for (auto& x : a) x = static_cast<std::uint8_t>(rng() % mod);
        for (auto& x : b) x = static_cast<std::uint8_t>(rng() % mod);
        const auto want = reference(a, b, m, mod);
        matmul_mod_scalar(a.data(), b.data(), c.data(), m, mod);
        CHECK(c == want);
        matmul_mod(a.data(), b.data(), c.data(), m, mod);
        CHECK(c == want);
#if defined(__x86_64__) || defined(__i386__)
        if (cpu_has_avx2()) {
          matmul_mod_avx2(a.data(), b.data(), c.data(), m, mod);
          CHECK(c == want);
        }
#endif
      }
}

TEST_CASE("batched products") {
  std::mt19937 rng(2);
  const int m = 6;
  const unsigned mod = 5;
  const std::size_t count = 7;
  std::vector<std::uint8_t> a(count * m * m), b(m * m), c(count * m * m);
  for (auto& x : a) x = static_cast<std::uint8_t>(rng() % mod);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng() % mod);
  for (Isa isa : {Isa::scalar, Isa::avx2}) {
    force_isa(isa);
    matmul_mod_batch(a.data(), count, b.data(), c.data(), m, mod);
    for (std::size_t k = 0; k < count; ++k) {
      std::vector<std::uint8_t> ak(a.begin() + k * m * m, a.begin() + (k + 1) * m * m);
      CHECK(std::vector<std::uint8_t>(c.begin() + k * m * m, c.begin() + (k + 1) * m * m) == reference(ak, b, m, mod));
    }
  }
  force_isa(cpu_has_avx2() ? Isa::avx2 : Isa::scalar);
  CHECK(std::string(isa_name(active_isa())).size() > 0);
}
