#include "formring/closure.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <set>

#include "formring/kernels/matmul.hpp"

namespace formring {

namespace {

std::size_t bits_for(std::size_t size) {
  std::size_t b = 1;
  while ((std::size_t{1} << b) < size) ++b;
  return b;
}

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

}  // namespace

std::vector<Matrix<Elem>> generator_matrices(const GroupDescriptor& g) {
  const ScalarAlgebra alg = g.scalar();
  std::set<std::vector<std::uint16_t>> seen;
  std::vector<Matrix<Elem>> out;
  for (const auto& s : enumerate_symbols(g, g.ring().elements())) {
    auto m = gen_matrix(alg, g, s);
    std::vector<std::uint16_t> key;
    for (const auto& e : m.a) key.push_back(e.index);
    if (seen.insert(key).second) out.push_back(std::move(m));
  }
  return out;
}

Closure::Closure(const GroupDescriptor& g, std::vector<Matrix<Elem>> generators, ClosureCaps caps) : g_(g), caps_(caps) {
  m_ = static_cast<std::size_t>(g.dim());
  if (g.ring().size() > 256) fail(ErrorKind::resource_limit, "closure needs |R| <= 256");
  bits_ = bits_for(g.ring().size());
  words_ = (m_ * m_ * bits_ + 63) / 64;
  for (const auto& x : generators) {
    std::vector<std::uint8_t> e;
    for (const auto& v : x.a) e.push_back(static_cast<std::uint8_t>(v.index));
    gens_.push_back(std::move(e));
  }
  run();
}

std::size_t Closure::bytes() const { return (table_.capacity() + arena_.capacity()) * sizeof(std::uint64_t); }

void Closure::encode(const std::uint8_t* entries, std::uint64_t* key) const {
  std::fill(key, key + words_, 0);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < m_ * m_; ++k, pos += bits_) {
    const std::uint64_t v = entries[k];
    key[pos / 64] |= v << (pos % 64);
    if (pos % 64 + bits_ > 64) key[pos / 64 + 1] |= v >> (64 - pos % 64);
  }
}

void Closure::decode(const std::uint64_t* key, std::uint8_t* entries) const {
  const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
  std::size_t pos = 0;
  for (std::size_t k = 0; k < m_ * m_; ++k, pos += bits_) {
    std::uint64_t v = key[pos / 64] >> (pos % 64);
    if (pos % 64 + bits_ > 64) v |= key[pos / 64 + 1] << (64 - pos % 64);
    entries[k] = static_cast<std::uint8_t>(v & mask);
  }
}

std::size_t Closure::slot_of(const std::uint64_t* key) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::size_t w = 0; w < words_; ++w) h = mix(h ^ key[w]);
  return static_cast<std::size_t>(h) & (capacity_ - 1);
}

bool Closure::find(const std::uint64_t* key) const {
  if (capacity_ == 0) return false;
  for (std::size_t s = slot_of(key);; s = (s + 1) & (capacity_ - 1)) {
    const std::uint64_t* t = &table_[s * words_];
    bool empty = true;
    for (std::size_t w = 0; w < words_; ++w) empty = empty && t[w] == 0;
    if (empty) return false;
    if (std::equal(key, key + words_, t)) return true;
  }
}

void Closure::grow() {
  std::vector<std::uint64_t> old;
  old.swap(table_);
  const std::size_t old_cap = capacity_;
  capacity_ = old_cap ? old_cap * 2 : 1024;
  table_.assign(capacity_ * words_, 0);
  for (std::size_t s = 0; s < old_cap; ++s) {
    const std::uint64_t* t = &old[s * words_];
    bool empty = true;
    for (std::size_t w = 0; w < words_; ++w) empty = empty && t[w] == 0;
    if (empty) continue;
    for (std::size_t d = slot_of(t);; d = (d + 1) & (capacity_ - 1)) {
      std::uint64_t* u = &table_[d * words_];
      if (std::all_of(u, u + words_, [](std::uint64_t x) { return x == 0; })) {
        std::copy(t, t + words_, u);
        break;
      }
    }
  }
}

bool Closure::insert(const std::uint64_t* key) {
  if ((count_ + 1) * 10 > capacity_ * 7) grow();
  for (std::size_t s = slot_of(key);; s = (s + 1) & (capacity_ - 1)) {
    std::uint64_t* t = &table_[s * words_];
    if (std::all_of(t, t + words_, [](std::uint64_t x) { return x == 0; })) {
      std::copy(key, key + words_, t);
      ++count_;
      return true;
    }
    if (std::equal(key, key + words_, t)) return false;
  }
}

void Closure::product(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* c) const {
  const FiniteRing& r = g_.ring();
  const int m = static_cast<int>(m_);
  if (r.modulus() != 0 && r.modulus() <= 256 && m <= kernels::kMaxDim) {
    kernels::matmul_mod(a, b, c, m, r.modulus());
    return;
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Elem acc = r.zero();
      for (int k = 0; k < m; ++k) acc = r.add(acc, r.mul(Elem{a[i * m + k]}, Elem{b[k * m + j]}));
      c[i * m + j] = static_cast<std::uint8_t>(acc.index);
    }
}

void Closure::run() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::uint8_t> cur(m_ * m_), next(m_ * m_);
  std::vector<std::uint64_t> key(words_);
  for (std::size_t i = 0; i < m_; ++i) cur[i * m_ + i] = static_cast<std::uint8_t>(g_.ring().one().index);
  encode(cur.data(), key.data());
  insert(key.data());
  arena_.insert(arena_.end(), key.begin(), key.end());
  complete_ = true;
  for (std::size_t head = 0; head < count_; ++head) {
    decode(&arena_[head * words_], cur.data());
    for (const auto& gen : gens_) {
      product(cur.data(), gen.data(), next.data());
      encode(next.data(), key.data());
      if (find(key.data())) continue;
      if (count_ + 1 > caps_.max_elements) {
        complete_ = false;
        reason_ = "element cap " + std::to_string(caps_.max_elements) + " reached";
      } else if ((table_.size() * 2 + arena_.size() + words_) * sizeof(std::uint64_t) > caps_.max_bytes &&
                 (count_ + 1) * 10 > capacity_ * 7) {
        complete_ = false;
        reason_ = "memory cap reached";
      }
      if (!complete_) {
        seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return;
      }
      insert(key.data());
      arena_.insert(arena_.end(), key.begin(), key.end());
    }
  }
  seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool Closure::contains(const Matrix<Elem>& x) const {
  if (x.rows != m_ || x.cols != m_) return false;
  std::vector<std::uint8_t> e;
  for (const auto& v : x.a) e.push_back(static_cast<std::uint8_t>(v.index));
  std::vector<std::uint64_t> key(words_);
  encode(e.data(), key.data());
  return find(key.data());
}

Closure bfs_closure(const GroupDescriptor& g, ClosureCaps caps) { return Closure(g, generator_matrices(g), caps); }

std::uint64_t symplectic_group_order(std::uint64_t q, int n) {
  std::uint64_t order = 1;
  for (int k = 0; k < n * n; ++k) order *= q;
  std::uint64_t q2 = 1;
  for (int i = 1; i <= n; ++i) {
    q2 *= q * q;
    order *= q2 - 1;
  }
  return order;
}

std::uint64_t general_linear_order(std::uint64_t q, int n) {
  std::uint64_t qn = 1;
  for (int k = 0; k < n; ++k) qn *= q;
  std::uint64_t order = 1, qi = 1;
  for (int i = 0; i < n; ++i) {
    order *= qn - qi;
    qi *= q;
  }
  return order;
}

namespace {

using Flat = std::vector<std::uint16_t>;

Flat flat(const Matrix<Elem>& x) {
  Flat out;
  for (const auto& e : x.a) out.push_back(e.index);
  return out;
}

Matrix<Elem> small_mul(const FiniteRing& ring, const Matrix<Elem>& a, const Matrix<Elem>& b) {
  Matrix<Elem> c(a.rows, b.cols, ring.zero());
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k)
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) = ring.add(c(i, j), ring.mul(a(i, k), b(k, j)));
  return c;
}

}  // namespace

GlEmbeddingCheck check_gl_embedding(const GroupDescriptor& g, const FiniteRing& base, ClosureCaps caps) {
  const std::size_t n = static_cast<std::size_t>(g.n), q = base.size();
  double total = 1;
  for (std::size_t k = 0; k < n * n; ++k) total *= static_cast<double>(q);
  if (total > double(1 << 24)) fail(ErrorKind::resource_limit, "GL enumeration over more than 2^24 matrices");
  const ScalarAlgebra alg = g.scalar();
  GlEmbeddingCheck out;

  // All invertible matrices, by counting through entry vectors.
  std::vector<Matrix<Elem>> gl;
  Matrix<Elem> x(n, n, base.zero());
  for (std::size_t code = 0; code < static_cast<std::size_t>(total); ++code) {
    std::size_t c = code;
    for (auto& e : x.a) {
      e = base.element(c % q);
      c /= q;
    }
    if (base.is_unit(determinant(base, x))) gl.push_back(x);
  }
  out.gl_elements = gl.size();

  Matrix<Elem> id(n, n, base.zero());
  for (std::size_t i = 0; i < n; ++i) id(i, i) = base.one();
  std::vector<Matrix<Elem>> images;
  for (const auto& y : gl) {
    images.push_back(gl_embedding(g, base, y));
    if (!is_member(alg, g, images.back())) ++out.non_members;
    if (!(gl_embedding_inverse(g, base, images.back()) == y)) ++out.roundtrip_failures;
  }
  // Elementary matrices and their images as generator words.
  std::vector<Matrix<Elem>> elem_gens, embedded_gens;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 1; k < q && i != j; ++k) {
        Matrix<Elem> e = id;
        e(i, j) = base.element(k);
        const auto w = gl_generator_word(g, base, static_cast<int>(i), static_cast<int>(j), base.element(k));
        const auto m = eval(alg, g, w);
        if (!(m == gl_embedding(g, base, e))) ++out.generator_failures;
        elem_gens.push_back(e);
        embedded_gens.push_back(m);
      }

  // All pairs when there are at most 4e6 of them, otherwise every element against every elementary matrix.
  const bool all_pairs = gl.size() * gl.size() <= 4'000'000;
  const std::vector<Matrix<Elem>>& right = all_pairs ? gl : elem_gens;
  for (std::size_t a = 0; a < gl.size(); ++a)
    for (const auto& b : right) {
      ++out.pairs;
      if (!(gl_embedding(g, base, small_mul(base, gl[a], b)) == mat_mul(alg, images[a], gl_embedding(g, base, b))))
        ++out.multiplicative_failures;
    }

  std::set<Flat> seen{flat(id)};
  std::vector<Matrix<Elem>> frontier{id}, elementary{id};
  while (!frontier.empty()) {
    std::vector<Matrix<Elem>> next;
    for (const auto& y : frontier)
      for (const auto& e : elem_gens) {
        auto z = small_mul(base, y, e);
        if (seen.insert(flat(z)).second) {
          next.push_back(z);
          elementary.push_back(z);
        }
      }
    frontier = std::move(next);
  }
  out.elementary_elements = elementary.size();

  const Closure cl(g, embedded_gens, caps);
  out.embedded_closure = cl.size();
  out.closure_complete = cl.complete();
  out.closure_equal = cl.complete() && cl.size() == elementary.size();
  for (const auto& y : elementary)
    if (out.closure_equal && !cl.contains(gl_embedding(g, base, y))) out.closure_equal = false;
  return out;
}

}  // namespace formring
