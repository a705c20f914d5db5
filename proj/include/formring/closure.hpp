#pragma once

// Breadth-first closure of the elementary subgroup under right multiplication by generator matrices.
// Elements are packed (ceil(log2 |R|) bits per entry) into fixed-width keys held in a flat
// open-addressing table; the all-zero key never occurs in a group and marks empty slots.

#include <cstdint>
#include <string>
#include <vector>

#include "formring/generators.hpp"

namespace formring {

struct ClosureCaps {
  std::size_t max_elements = 50'000'000;
  std::size_t max_bytes = std::size_t{2} << 30;  // 2 GiB
};

class Closure {
 public:
  Closure(const GroupDescriptor& g, std::vector<Matrix<Elem>> generators, ClosureCaps caps);

  bool complete() const { return complete_; }
  std::size_t size() const { return count_; }
  std::size_t bytes() const;
  const std::string& reason() const { return reason_; }
  double seconds() const { return seconds_; }
  std::size_t generator_count() const { return gens_.size(); }
  // Exact when complete(); otherwise a "false" only means not reached within the caps.
  bool contains(const Matrix<Elem>& m) const;

 private:
  void run();
  void encode(const std::uint8_t* entries, std::uint64_t* key) const;
  void decode(const std::uint64_t* key, std::uint8_t* entries) const;
  bool insert(const std::uint64_t* key);  // true when new
  bool find(const std::uint64_t* key) const;
  void grow();
  std::size_t slot_of(const std::uint64_t* key) const;
  void product(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* c) const;

  GroupDescriptor g_;
  ClosureCaps caps_;
  std::vector<std::vector<std::uint8_t>> gens_;
  std::size_t m_ = 0, bits_ = 0, words_ = 0;
  std::vector<std::uint64_t> table_;  // capacity_ * words_
  std::size_t capacity_ = 0;
  std::vector<std::uint64_t> arena_;  // discovered elements in BFS order
  std::size_t count_ = 0;
  bool complete_ = false;
  std::string reason_;
  double seconds_ = 0;
};

// Distinct generator matrices for the group (all symbols with all payloads).
std::vector<Matrix<Elem>> generator_matrices(const GroupDescriptor& g);

Closure bfs_closure(const GroupDescriptor& g, ClosureCaps caps = {});

// |Sp(2n, q)| = q^{n^2} prod_{i=1..n} (q^{2i} - 1).
std::uint64_t symplectic_group_order(std::uint64_t q, int n);
// |GL(n, q)| = prod_{i=0..n-1} (q^n - q^i).
std::uint64_t general_linear_order(std::uint64_t q, int n);

// Exhaustive check of gl_embedding for g = GQ(2n) over the hyperbolic double of base.
struct GlEmbeddingCheck {
  std::size_t gl_elements = 0;          // invertible n x n matrices over base
  std::size_t elementary_elements = 0;  // closure of I + a E(i, j) inside GL(n, base)
  std::size_t non_members = 0, roundtrip_failures = 0, generator_failures = 0;
  std::size_t pairs = 0, multiplicative_failures = 0;
  std::size_t embedded_closure = 0;  // closure of the embedded elementary generators inside GQ
  bool closure_complete = false, closure_equal = false;
  bool ok() const {
    return non_members == 0 && roundtrip_failures == 0 && generator_failures == 0 && multiplicative_failures == 0 &&
           closure_complete && closure_equal;
  }
};

// Enumerates all |base|^{n^2} matrices; refuses more than 2^24. Multiplicativity is checked on all
// pairs up to 4e6 of them, otherwise on every element times every elementary matrix.
GlEmbeddingCheck check_gl_embedding(const GroupDescriptor& g, const FiniteRing& base, ClosureCaps caps = {});

}  // namespace formring
