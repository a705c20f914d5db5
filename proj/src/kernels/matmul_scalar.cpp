#include "formring/kernels/matmul.hpp"

namespace formring::kernels {

void matmul_mod_scalar(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* c, int m, std::uint32_t mod) {
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::uint32_t acc = 0;
      for (int k = 0; k < m; ++k) acc += std::uint32_t{a[i * m + k]} * b[k * m + j];
      c[i * m + j] = static_cast<std::uint8_t>(acc % mod);
    }
}

}  // namespace formring::kernels
